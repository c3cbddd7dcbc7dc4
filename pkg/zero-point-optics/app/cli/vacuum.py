from typing import Annotated

import typer
from scipy import constants

from app.cli.common import (
    FormatOption,
    OutputOption,
    PointsOption,
    emit,
    translate_errors,
)
from app.models import Document, Grid
from app.types import OutputFormat
from physics import vacuum
from physics.errors import DomainError
from physics.types import Branch
from physics.vacuum import ChargedFieldSpec, FieldStrength, HyperbolicPath

router = typer.Typer()

KappaOption = Annotated[
    float, typer.Option(help="Mass scale kappa = mc/hbar; 1 in critical units.")
]
SpinOption = Annotated[float, typer.Option(help="Field spin, a half-integer.")]
EpsOption = Annotated[
    float, typer.Option(help="Electric field in critical units, eE/(hbar c kappa^2).")
]


def _field_eps(
    eps: float, e_volt_per_m: float | None, kappa_per_m: float | None
) -> float:
    """eps from the flag, or from an SI field when one is given"""
    if e_volt_per_m is None:
        return eps
    if kappa_per_m is None:
        raise DomainError("--e-volt-per-m needs --kappa-per-m")
    return FieldStrength.from_si(0.0, e_volt_per_m, kappa_per_m).eps


@router.command(
    "vacuum-energy",
    help=(
        "Renormalized vacuum energy density U(b) of a charged scalar in a uniform "
        "magnetic field b = eB/(hbar kappa^2) (--b-*-tesla-critical), from the "
        "proper-time integral with the charge-renormalization term subtracted. "
        "Units hbar c kappa^4."
    ),
)
def vacuum_energy_table(
    ctx: typer.Context,
    b_min: Annotated[
        float, typer.Option("--b-min-tesla-critical", help="Lowest field.")
    ] = 0.0,
    b_max: Annotated[
        float, typer.Option("--b-max-tesla-critical", help="Highest field.")
    ] = 1.0,
    points: PointsOption = 11,
    kappa: KappaOption = 1.0,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
):
    with translate_errors():
        spec = ChargedFieldSpec(kappa=kappa)
        fields = Grid(start=b_min, stop=b_max, count=points).points()
        results = [vacuum.vacuum_energy_quadrature(b, spec) for b in fields]
        document = Document.from_columns(
            {"b_min": b_min, "b_max": b_max, "points": points, "kappa": kappa},
            {
                "b": fields.tolist(),
                "energy_density": [result.value for result in results],
                "abs_error": [result.abs_error_estimate for result in results],
                "evaluations": [result.evaluations for result in results],
            },
        )
    emit(ctx, document, output_format, output)


@router.command(
    "magnetization",
    help="Vacuum magnetization M = -dU/db of a charged scalar at field b.",
)
def magnetization_record(
    ctx: typer.Context,
    b: Annotated[
        float, typer.Option("--b-tesla-critical", help="Magnetic field, b > 0.")
    ] = 1.0,
    kappa: KappaOption = 1.0,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
):
    with translate_errors():
        spec = ChargedFieldSpec(kappa=kappa)
        document = Document.from_record(
            {"b": b, "kappa": kappa},
            {
                "b": b,
                "energy_density": vacuum.vacuum_energy_density(b, spec),
                "magnetization": vacuum.magnetization(b, spec),
            },
        )
    emit(ctx, document, output_format, output)


@router.command(
    "pair-rate",
    help=(
        "Pair-production rate per unit time and volume in a constant electric "
        "field, summed over instanton number for any spin (units c kappa^4). "
        "Also reports the Euclidean action W/hbar = pi/eps, the pair partition "
        "function and the field temperature eps/2pi."
    ),
)
def pair_rate_record(
    ctx: typer.Context,
    eps: EpsOption = 1.0,
    spin: SpinOption = 0.0,
    kappa: KappaOption = 1.0,
    e_volt_per_m: Annotated[
        float | None, typer.Option(help="SI electric field, overrides --eps.")
    ] = None,
    kappa_per_m: Annotated[
        float | None, typer.Option(help="SI mass scale for --e-volt-per-m.")
    ] = None,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
):
    with translate_errors():
        spec = ChargedFieldSpec(kappa=kappa, spin=spin)
        field = _field_eps(eps, e_volt_per_m, kappa_per_m)
        rate = vacuum.pair_rate_spin(field, spec)
        action = vacuum.euclidean_action(field, spec)
        document = Document.from_record(
            {
                "eps": field,
                "spin": spin,
                "kappa": kappa,
                "statistics": spec.eta.name.lower(),
            },
            {
                "value": rate.value,
                "terms_used": rate.terms_used,
                "last_term": rate.last_term_magnitude,
                "euclidean_action": action,
                "partition": vacuum.pair_partition(action),
                "temperature": vacuum.temperature_from_field(field),
            },
        )
    emit(ctx, document, output_format, output)


@router.command(
    "pair-rate-1d",
    help=(
        "Pair-production rate per unit time and length of a (1+1)-dimensional "
        "boson, (eps/2pi) ln[1 + exp(-pi/eps)], with its alternating series."
    ),
)
def pair_rate_1d_record(
    ctx: typer.Context,
    eps: EpsOption = 1.0,
    kappa: KappaOption = 1.0,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
):
    with translate_errors():
        spec = ChargedFieldSpec(kappa=kappa)
        series = vacuum.pair_rate_1d_series(eps, spec)
        document = Document.from_record(
            {"eps": eps, "kappa": kappa},
            {
                "value": vacuum.pair_rate_1d(eps, spec),
                "series_value": series.value,
                "terms_used": series.terms_used,
                "last_term": series.last_term_magnitude,
            },
        )
    emit(ctx, document, output_format, output)


@router.command(
    "unruh",
    help=(
        "Unruh temperature k_B T = hbar a/(2 pi c) of a uniformly accelerated "
        "observer. --accel is in natural units; --accel-m-s2 gives a in m/s^2 "
        "and reports T in kelvin. With --eps the electric-field and entropy "
        "routes are reported as well (units m c^2/k_B)."
    ),
)
def unruh_record(
    ctx: typer.Context,
    accel: Annotated[float, typer.Option(help="Acceleration, natural units.")] = 1.0,
    accel_m_s2: Annotated[
        float | None, typer.Option("--accel-m-s2", help="Acceleration in m/s^2.")
    ] = None,
    eps: Annotated[
        float | None, typer.Option(help="Electric field in critical units.")
    ] = None,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
):
    with translate_errors():
        params: dict[str, float | None] = {"accel": accel, "eps": eps}
        record: dict[str, float] = {"temperature": vacuum.unruh_temperature(accel)}
        if accel_m_s2 is not None:
            # hbar a/(2 pi c k_B) with a in m/s^2
            scale = constants.hbar / (constants.c * constants.k)
            params["accel_m_s2"] = accel_m_s2
            record["temperature_k"] = scale * vacuum.unruh_temperature(accel_m_s2)
        if eps is not None:
            record["field_temperature"] = vacuum.temperature_from_field(eps)
            record["entropy_temperature"] = vacuum.temperature_from_entropy(eps)
        document = Document.from_record(params, record)
    emit(ctx, document, output_format, output)


@router.command(
    "path",
    help=(
        "Classical hyperbolic path x(t) = +/- sqrt(c^2 t^2 + (c^2/a)^2) of a "
        "charge under constant acceleration a, with the invariant interval "
        "x^2 - c^2 t^2 = (c^2/a)^2."
    ),
)
def path_table(
    ctx: typer.Context,
    accel: Annotated[float, typer.Option(help="Acceleration a > 0.")] = 1.0,
    branch: Annotated[Branch, typer.Option(help="Forward or backward branch.")] = (
        Branch.FORWARD
    ),
    c: Annotated[float, typer.Option(help="Speed of light.")] = 1.0,
    t_min: Annotated[float, typer.Option(help="Earliest time.")] = -2.0,
    t_max: Annotated[float, typer.Option(help="Latest time.")] = 2.0,
    points: PointsOption = 41,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
):
    with translate_errors():
        path = HyperbolicPath(accel=accel, branch=branch, c=c)
        times = Grid(start=t_min, stop=t_max, count=points).points()
        positions = [vacuum.classical_path(t, path) for t in times]
        document = Document.from_columns(
            {
                "accel": accel,
                "branch": branch.value,
                "c": c,
                "turning_point": path.turning_point,
            },
            {
                "t": times.tolist(),
                "x": positions,
                "interval": [
                    x * x - (c * t) ** 2 for t, x in zip(times.tolist(), positions)
                ],
            },
        )
    emit(ctx, document, output_format, output)
