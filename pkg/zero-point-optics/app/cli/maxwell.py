import math
from typing import Annotated

import numpy as np
import typer
from scipy import constants

from app.cli.common import FormatOption, OutputOption, emit, translate_errors
from app.models import Document
from app.types import OutputFormat
from physics import maxwell
from physics.errors import DomainError
from physics.maxwell import FieldPair, PhotonKinematics
from physics.types import Helicity

router = typer.Typer()

Triple = tuple[float, float, float]


def _kinematics(
    wavelength: float, helicity: int, direction: Triple
) -> PhotonKinematics:
    norm = math.hypot(*direction)
    if norm == 0 or helicity not in (1, -1):
        raise DomainError(
            f"Need a nonzero direction and helicity +1 or -1, "
            f"got '{direction}' and '{helicity}'"
        )
    return PhotonKinematics(
        wavelength=wavelength,
        helicity=Helicity(helicity),
        direction=tuple(component / norm for component in direction),
    )


@router.command(
    "maxwell-check",
    help=(
        "Spin-1 operator algebra of the Maxwell field for one photon: the su(2) "
        "residual, the spectrum of H = c beta (x) p.S at p = 2 pi/lambda, the "
        "helicity eigenstate, the expectation of the transverse velocity "
        "commutator on the forward and on the backward branch (i c^2 Lambda) and the "
        "field invariants of F = E + iB. Rows are quantity, real, imag."
    ),
)
def maxwell_check(
    ctx: typer.Context,
    direction: Annotated[
        Triple, typer.Option(help="Propagation direction, normalized on input.")
    ] = (0.0, 0.0, 1.0),
    helicity: Annotated[int, typer.Option(help="Helicity, +1 or -1.")] = 1,
    wavelength: Annotated[float, typer.Option(help="Wavelength, natural units.")] = (
        2.0 * math.pi
    ),
    c: Annotated[float, typer.Option(help="Speed of light.")] = 1.0,
    e_field: Annotated[Triple, typer.Option(help="Electric field E.")] = (
        1.0,
        0.0,
        0.0,
    ),
    b_field: Annotated[Triple, typer.Option(help="Magnetic field B.")] = (
        0.0,
        1.0,
        0.0,
    ),
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
):
    with translate_errors():
        photon = _kinematics(wavelength, helicity, direction)
        momentum = 2.0 * math.pi / photon.wavelength * np.asarray(photon.direction)
        eigenvalues, _ = maxwell.eigh_jacobi(maxwell.hamiltonian(momentum, c))
        state = maxwell.helicity_eigenstate(photon.direction, photon.helicity)
        scalar, pseudo = maxwell.field_invariants(
            FieldPair(e_field=e_field, b_field=b_field)
        )
        rows: list[tuple[str, complex]] = [
            ("spin_algebra_residual", maxwell.spin_algebra_residual()),
            *((f"eigenvalue_{i}", value) for i, value in enumerate(eigenvalues)),
            *((f"state_{i}", component) for i, component in enumerate(state)),
            *(
                (
                    f"commutator_{pair.value}",
                    maxwell.velocity_commutator(
                        photon.direction, photon.helicity, pair, c
                    ),
                )
                for pair in maxwell.SAME_BRANCH_PAIRS
            ),
            ("expected_commutator", 1j * c * c * int(photon.helicity)),
            ("invariant_scalar", scalar),
            ("invariant_pseudoscalar", pseudo),
        ]
        document = Document(
            params={
                "direction": ",".join(f"{x!r}" for x in photon.direction),
                "helicity": int(photon.helicity),
                "wavelength": photon.wavelength,
                "c": c,
            },
            columns=["quantity", "real", "imag"],
            rows=[
                [name, complex(value).real, complex(value).imag]
                for name, value in rows
            ],
        )
    emit(ctx, document, output_format, output)


@router.command(
    "state-count",
    help=(
        "Transversal photon states in a slit: the quantized radii "
        "R_n = (lambda/2pi) sqrt(2n+1), the state density 2 pi/lambda^2, the state "
        "count (pi^2/2)(w/lambda)^2 and whether only the ground state fits "
        "(w <= lambda/pi). Lengths in metres, flags in micrometres."
    ),
)
def state_count_table(
    ctx: typer.Context,
    lambda_um: Annotated[
        float, typer.Option("--lambda-um", help="Wavelength in micrometres.")
    ] = 0.58,
    w_um: Annotated[
        float, typer.Option("--w-um", help="Slit width in micrometres.")
    ] = 5.0,
    levels: Annotated[int, typer.Option(min=1, help="Number of radius levels.")] = 5,
    output_format: FormatOption = OutputFormat.JSON,
    output: OutputOption = None,
):
    with translate_errors():
        wavelength = lambda_um * 1e-6
        width = w_um * 1e-6
        states = maxwell.slit_state_count(width, wavelength)
        document = Document.from_columns(
            {
                "lambda_um": lambda_um,
                "w_um": w_um,
                "count": states.count,
                "ground_state_confined": states.ground_state_confined,
                "density_per_m2": maxwell.transversal_state_density(wavelength),
                "precession_rad_s": maxwell.precession_frequency(
                    wavelength, constants.c
                ),
            },
            {
                "n": list(range(levels)),
                "radius_m": [
                    maxwell.quantized_radius(n, wavelength) for n in range(levels)
                ],
            },
        )
    emit(ctx, document, output_format, output)
