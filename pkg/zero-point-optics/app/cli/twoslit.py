from typing import Annotated

import numpy as np
import typer

from app.cli.common import (
    FormatOption,
    OutputOption,
    PointsOption,
    emit,
    translate_errors,
)
from app.models import Document, Grid
from app.types import OutputFormat
from physics import twoslit
from physics.twoslit import SlitGeometry
from physics.types import PatternMode, SlitConvention

router = typer.Typer()

MICRO = 1e-6
MILLI = 1e-3

LambdaOption = Annotated[
    float, typer.Option("--lambda-um", help="Wavelength in micrometres.")
]
WidthOption = Annotated[
    float, typer.Option("--w-um", help="Slit width in micrometres.")
]
DistanceOption = Annotated[
    float, typer.Option("--D-m", help="Screen distance in metres.")
]
MinimaOption = Annotated[
    int, typer.Option(min=1, help="Number of dark fringes to locate.")
]


def _screen(
    x_min_mm: float | None, x_max_mm: float | None, points: int, half_width: float
) -> Grid:
    """The requested window, or +/- half_width around the axis"""
    return Grid(
        start=-half_width if x_min_mm is None else x_min_mm * MILLI,
        stop=half_width if x_max_mm is None else x_max_mm * MILLI,
        count=points,
    )


@router.command(
    "twoslit",
    help=(
        "Two-slit photon intensity on a screen at distance D for slit width w "
        "and half-separation d. Modes: closed (the cos^2(Kx) sinc^2(beta K x) "
        "form), limit (the beta -> 0 interference limit), quadratic and exact "
        "(the slit density-matrix integral with the linearized or the exact "
        "path phase). Positions are in metres."
    ),
)
def twoslit_table(
    ctx: typer.Context,
    lambda_um: LambdaOption = 0.58,
    d_um: Annotated[
        float, typer.Option("--d-um", help="Half slit separation in micrometres.")
    ] = 50.0,
    w_um: WidthOption = 5.0,
    D_m: DistanceOption = 1.0,
    mode: Annotated[PatternMode, typer.Option(help="Pattern evaluator.")] = (
        PatternMode.CLOSED
    ),
    convention: Annotated[
        SlitConvention, typer.Option(help="Slit function used by the integrals.")
    ] = SlitConvention.ENVELOPE,
    x_min_mm: Annotated[
        float | None, typer.Option("--x-min-mm", help="Screen start in mm.")
    ] = None,
    x_max_mm: Annotated[
        float | None, typer.Option("--x-max-mm", help="Screen end in mm.")
    ] = None,
    points: PointsOption = twoslit.DEFAULT_POINTS,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
):
    with translate_errors():
        geom = SlitGeometry(
            slit_width=w_um * MICRO,
            half_separation=d_um * MICRO,
            screen_distance=D_m,
            wavelength=lambda_um * MICRO,
        )
        grid = _screen(
            x_min_mm, x_max_mm, points, twoslit.DEFAULT_FRINGES * geom.fringe_spacing
        )
        result = twoslit.pattern(geom, mode, grid.points(), convention)
        states = geom.transversal_states
        document = Document.from_columns(
            {
                "lambda_um": lambda_um,
                "d_um": d_um,
                "w_um": w_um,
                "D_m": D_m,
                "mode": mode.value,
                "convention": convention.value,
                "wavenumber": twoslit.wavenumber(geom),
                "beta": geom.aspect_ratio.beta,
                "fringe_spacing_m": geom.fringe_spacing,
                "fraunhofer_warning": geom.fraunhofer_warning,
                "transversal_states": states.count,
                "ground_state_confined": states.ground_state_confined,
            },
            {"x_m": result.positions, "intensity": result.values},
        )
    emit(ctx, document, output_format, output)


@router.command(
    "single-slit",
    help=(
        "Single-slit pattern sinc^2(2 pi x w/(lambda D)) with its dark fringes "
        "located as roots; the first sits at x/D = lambda/(2w). Positions in metres."
    ),
)
def single_slit_table(
    ctx: typer.Context,
    lambda_um: LambdaOption = 0.579,
    w_um: WidthOption = 6000.0,
    D_m: DistanceOption = 1.0,
    minima: MinimaOption = 3,
    x_min_mm: Annotated[
        float | None, typer.Option("--x-min-mm", help="Screen start in mm.")
    ] = None,
    x_max_mm: Annotated[
        float | None, typer.Option("--x-max-mm", help="Screen end in mm.")
    ] = None,
    points: PointsOption = 401,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
):
    with translate_errors():
        w, wavelength = w_um * MICRO, lambda_um * MICRO
        dark = twoslit.single_slit_minima(w, wavelength, D_m, minima)
        positions = _screen(x_min_mm, x_max_mm, points, dark[-1]).points()
        params = {
            "lambda_um": lambda_um,
            "w_um": w_um,
            "D_m": D_m,
            "first_minimum_over_D": dark[0] / D_m,
        }
        params |= {f"minimum_{i + 1}_m": x for i, x in enumerate(dark)}
        document = Document.from_columns(
            params,
            {
                "x_m": positions.tolist(),
                "intensity": np.asarray(
                    twoslit.single_slit(positions, w, wavelength, D_m)
                ).tolist(),
            },
        )
    emit(ctx, document, output_format, output)


@router.command(
    "aperture",
    help=(
        "Circular-aperture pattern [2 J1(eta)/eta]^2 with eta = (2 pi/lambda)(w/D) R "
        "and its dark rings from the zeros of J1. Radii in metres."
    ),
)
def aperture_table(
    ctx: typer.Context,
    lambda_um: LambdaOption = 0.58,
    w_um: WidthOption = 5.0,
    D_m: DistanceOption = 1.0,
    rings: MinimaOption = 3,
    r_max_mm: Annotated[
        float | None, typer.Option("--r-max-mm", help="Largest radius in mm.")
    ] = None,
    points: PointsOption = 401,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
):
    with translate_errors():
        w, wavelength = w_um * MICRO, lambda_um * MICRO
        dark = twoslit.dark_ring_radii(w, wavelength, D_m, rings)
        grid = Grid(
            start=0.0,
            stop=dark[-1] if r_max_mm is None else r_max_mm * MILLI,
            count=points,
        )
        radii = grid.points()
        params = {"lambda_um": lambda_um, "w_um": w_um, "D_m": D_m}
        params |= {f"dark_ring_{i + 1}_m": r for i, r in enumerate(dark)}
        document = Document.from_columns(
            params,
            {
                "r_m": radii.tolist(),
                "intensity": np.asarray(
                    twoslit.circular_pattern(radii, w, wavelength, D_m)
                ).tolist(),
            },
        )
    emit(ctx, document, output_format, output)
