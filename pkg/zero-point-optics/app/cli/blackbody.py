from typing import Annotated

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
from physics import blackbody
from physics.blackbody import DimensionlessMode
from physics.errors import DomainError

router = typer.Typer()


@router.command(
    "blackbody",
    help=(
        "Planck energetics of one radiation mode over a grid of x = hbar*omega/k_B*T: "
        "mean occupation, mean energy (units hbar*omega), energy including the "
        "zero-point term (units hbar*omega/2, equal to coth(x/2)) and the "
        "Einstein-Stern excess. With --temperature-k the grid runs over angular "
        "frequency in rad/s instead."
    ),
)
def blackbody_table(
    ctx: typer.Context,
    x_min: Annotated[float, typer.Option(help="Lowest x; signed, never 0.")] = 0.01,
    x_max: Annotated[float, typer.Option(help="Highest x.")] = 10.0,
    points: PointsOption = 100,
    temperature_k: Annotated[
        float | None, typer.Option("--temperature-k", help="Temperature in kelvin.")
    ] = None,
    omega_min: Annotated[
        float | None, typer.Option(help="Lowest angular frequency in rad/s.")
    ] = None,
    omega_max: Annotated[
        float | None, typer.Option(help="Highest angular frequency in rad/s.")
    ] = None,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
):
    with translate_errors():
        params: dict[str, float | int | str | None] = {"points": points}
        columns: dict[str, list[float | None]] = {}
        if temperature_k is None:
            grid = Grid(start=x_min, stop=x_max, count=points)
            modes = [DimensionlessMode(x=x) for x in grid.points()]
            params |= {"x_min": x_min, "x_max": x_max}
        else:
            if omega_min is None or omega_max is None:
                raise DomainError(
                    "--temperature-k needs both --omega-min and --omega-max"
                )
            grid = Grid(start=omega_min, stop=omega_max, count=points)
            omegas = grid.points()
            modes = [
                DimensionlessMode.from_si(omega, temperature_k) for omega in omegas
            ]
            params |= {
                "temperature_k": temperature_k,
                "omega_min": omega_min,
                "omega_max": omega_max,
            }
            columns["omega"] = omegas.tolist()
        columns |= {
            "x": [mode.x for mode in modes],
            "occupation": [blackbody.mean_occupation(mode.x) for mode in modes],
            "energy": [blackbody.mean_energy(mode.x) for mode in modes],
            "energy_with_zpe": [blackbody.energy_with_zpe(mode.x) for mode in modes],
            # the excess is defined on the forward branch only
            "excess": [
                blackbody.einstein_stern_excess(mode.x) if mode.x > 0 else None
                for mode in modes
            ],
        }
        document = Document.from_columns(params, columns)
    emit(ctx, document, output_format, output)
