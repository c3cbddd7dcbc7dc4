"""Invariant suites run by the `verify` command.

Each suite returns one CheckResult per property with the measured deviation and
the limit it is held to. Random draws use a fixed seed so reports are repeatable.
"""

import logging
import math
from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict

from physics import blackbody, maxwell, twoslit, vacuum
from physics.specfun import integrability_probe, subtracted_kernel
from physics.types import Helicity, PatternMode, PhaseMode

logger = logging.getLogger(__name__)

SEED = 20_240_607


class CheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    suite: str
    name: str
    passed: bool
    measured: float
    limit: float


def _within(suite: str, name: str, measured: float, limit: float) -> CheckResult:
    result = CheckResult(
        suite=suite,
        name=name,
        passed=bool(measured <= limit),
        measured=float(measured),
        limit=limit,
    )
    logger.info("%s/%s: %s (%.3e <= %.3e)", suite, name, result.passed, measured, limit)
    return result


def _holds(suite: str, name: str, condition: bool) -> CheckResult:
    return _within(suite, name, 0.0 if condition else 1.0, 0.0)


def _relative(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


## BLACKBODY
def blackbody_suite() -> list[CheckResult]:
    suite = "blackbody"
    rng = np.random.default_rng(SEED)
    modes = rng.uniform(1e-3, 50.0, 100) * rng.choice([-1.0, 1.0], 100)
    symmetrized = max(
        _relative(blackbody.symmetrize(x), 0.5 / math.tanh(0.5 * abs(x))) for x in modes
    )
    # energy_with_zpe raises ConsistencyError itself if its two forms disagree
    zpe = max(
        _relative(
            0.5 * blackbody.energy_with_zpe(x), blackbody.mean_occupation(x) + 0.5
        )
        for x in modes
    )
    xs = np.logspace(-4, -2, 21)
    excess = [blackbody.einstein_stern_excess(x) for x in xs]
    slope = np.polyfit(np.log(xs), np.log(excess), 1)[0]
    limit = abs(blackbody.symmetrize(80.0) - 0.5)
    return [
        _within(suite, "symmetrization", symmetrized, 1e-13),
        _within(suite, "planck-with-zero-point", zpe, 1e-13),
        _within(suite, "zero-point-limit", limit, 1e-12),
        _within(suite, "einstein-stern-slope", abs(slope - 2.0), 1e-2),
    ]


## VACUUM
def vacuum_suite() -> list[CheckResult]:
    suite = "vacuum"
    rng = np.random.default_rng(SEED)
    scalar = vacuum.ChargedFieldSpec()

    fields = np.logspace(-3, -2, 6)
    energies = np.array([vacuum.vacuum_energy_density(b, scalar) for b in fields])
    slope = np.polyfit(np.log(fields), np.log(np.abs(energies)), 1)[0]
    coefficient = float(np.mean(np.abs(energies) / fields**4))
    expected_coefficient = 7.0 / (5760.0 * math.pi**2)

    divergent = integrability_probe(vacuum.unsubtracted_integrand(1.0), 3.0)
    convergent = integrability_probe(vacuum.renormalized_integrand(1.0), 3.0)

    pairs = rng.uniform(0.1, 10.0, (20, 2))
    subtraction = max(
        _relative(
            subtracted_kernel(a, b).value,
            2.0 * math.sqrt(math.pi) * (math.sqrt(a) - math.sqrt(b)),
        )
        for a, b in pairs
    )

    transverse = max(
        _relative(
            vacuum.pair_rate_transverse_oracle(eps, scalar, 20),
            vacuum.pair_rate_boson(eps, scalar).value,
        )
        for eps in (0.5, 1.0, 2.0)
    )
    reduction = all(
        vacuum.pair_rate_spin(eps, scalar) == vacuum.pair_rate_boson(eps, scalar)
        for eps in (0.1, 0.5, 1.0, 2.0, 10.0)
    )
    one_dimensional = max(
        _relative(
            vacuum.pair_rate_1d(eps, scalar),
            vacuum.pair_rate_1d_series(eps, scalar).value,
        )
        for eps in np.logspace(-1, 1, 9)
    )

    times = rng.uniform(-2.0, 2.0, 100)
    accels = rng.uniform(0.5, 5.0, 100)
    hyperbola = max(
        _relative(
            vacuum.classical_path(t, vacuum.HyperbolicPath(accel=a)) ** 2 - t * t,
            (1.0 / a) ** 2,
        )
        for t, a in zip(times, accels)
    )

    levels = range(5)
    momenta = np.linspace(0.0, 2.0, 5)
    strengths = np.linspace(0.5, 2.0, 5)
    grid = np.array(
        [
            [
                [vacuum.landau_frequency(n, k, b, scalar) for b in strengths]
                for k in momenta
            ]
            for n in levels
        ]
    )
    monotone = all(np.all(np.diff(grid, axis=axis) > 0) for axis in range(3))

    entropy = max(
        _relative(
            vacuum.temperature_from_entropy(eps), vacuum.temperature_from_field(eps)
        )
        for eps in rng.uniform(0.1, 10.0, 10)
    )
    return [
        _within(suite, "quartic-slope", abs(slope - 4.0), 0.05),
        _within(
            suite,
            "quartic-coefficient",
            _relative(coefficient, expected_coefficient),
            0.01,
        ),
        _holds(suite, "unsubtracted-diverges", None in divergent),
        _holds(suite, "subtracted-converges", None not in convergent),
        _within(suite, "subtraction-theorem", subtraction, 1e-9),
        _within(suite, "transverse-oracle", transverse, 1e-8),
        _holds(suite, "spin-zero-reduction", reduction),
        _within(suite, "one-dimensional-series", one_dimensional, 1e-12),
        _within(suite, "hyperbola", hyperbola, 1e-12),
        _holds(suite, "landau-monotonic", monotone),
        _within(suite, "unruh-entropy-route", entropy, 1e-6),
    ]


## MAXWELL
def maxwell_suite() -> list[CheckResult]:
    suite = "maxwell"
    rng = np.random.default_rng(SEED)
    operators = maxwell.OperatorSet.build()

    spectrum = 0.0
    hermitian = 0.0
    commuting = 0.0
    for p in rng.normal(size=(50, 3)):
        h = maxwell.hamiltonian(p)
        size = float(np.linalg.norm(p))
        values, _ = maxwell.eigh_jacobi(h)
        expected = np.array([-size, -size, 0.0, 0.0, size, size])
        spectrum = max(spectrum, float(np.abs(values - expected).max()) / size)
        hermitian = max(hermitian, float(np.abs(h - h.conj().T).max()))
        branch_change = h @ operators.beta - operators.beta @ h
        commuting = max(commuting, float(np.abs(branch_change).max()))

    forward, backward = operators.forward, operators.backward
    projectors = max(
        float(np.abs(forward @ forward - forward).max()),
        float(np.abs(backward @ backward - backward).max()),
        float(np.abs(forward @ backward).max()),
        float(np.abs(forward + backward - np.identity(6)).max()),
    )

    directions = rng.normal(size=(20, 3))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    velocity = max(
        abs(maxwell.velocity_commutator(n, helicity, pair) - 1j * int(helicity))
        for n in directions
        for helicity in Helicity
        for pair in maxwell.SAME_BRANCH_PAIRS
    )
    mixed = max(maxwell.mixed_commutator_identity(n) for n in directions)

    wavelength = 2.0 * math.pi
    ladder = max(
        abs(
            maxwell.quantized_radius(n + 1, wavelength) ** 2
            - maxwell.quantized_radius(n, wavelength) ** 2
            - 2.0
        )
        for n in range(11)
    )
    count = maxwell.slit_state_count(1.0, 1.0).count
    threshold = 1.0 / math.pi
    flips = (
        maxwell.slit_state_count(threshold, 1.0).ground_state_confined
        and not maxwell.slit_state_count(
            math.nextafter(threshold, math.inf), 1.0
        ).ground_state_confined
    )
    return [
        _within(suite, "spin-algebra", maxwell.spin_algebra_residual(), 0.0),
        _within(suite, "hamiltonian-hermitian", hermitian, 0.0),
        _within(suite, "hamiltonian-spectrum", spectrum, 1e-12),
        _within(suite, "branch-projectors", projectors, 0.0),
        _within(suite, "branch-conserved", commuting, 1e-15),
        _within(suite, "velocity-commutator", velocity, 1e-12),
        _within(suite, "mixed-commutator", mixed, 1e-14),
        _within(suite, "radius-ladder", ladder, 1e-12),
        _within(suite, "slit-state-count", abs(count - 0.5 * math.pi**2), 1e-14),
        _holds(suite, "confinement-threshold", flips),
    ]


## TWO SLIT
def _reference_geometry(screen_distance: float = 1.0) -> twoslit.SlitGeometry:
    return twoslit.SlitGeometry(
        slit_width=5e-6,
        half_separation=50e-6,
        screen_distance=screen_distance,
        wavelength=0.58e-6,
    )


def twoslit_suite() -> list[CheckResult]:
    suite = "twoslit"
    rng = np.random.default_rng(SEED)
    geom = _reference_geometry()
    spacing = geom.fringe_spacing

    screen = np.linspace(-2.5 * spacing, 2.5 * spacing, 200)
    oracle = twoslit.pattern(geom, PatternMode.QUADRATIC, screen)
    equivalence = twoslit.pattern_deviation(
        oracle.values, twoslit.intensity(screen, geom)
    )

    deviations = []
    # the x/D linearization leaves a D-independent floor; curvature grows below it
    for distance in (10.0, 1.0, 0.1):
        far = _reference_geometry(distance)
        central = np.linspace(-1.5, 1.5, 61) * far.fringe_spacing
        quadratic = [
            twoslit.brute_force_intensity(x, far, PhaseMode.QUADRATIC).value
            for x in central
        ]
        exact = [
            twoslit.brute_force_intensity(x, far, PhaseMode.EXACT).value
            for x in central
        ]
        deviations.append(twoslit.pattern_deviation(exact, quadratic))

    product = 0.0
    for _ in range(1000):
        beta = rng.uniform(0.05, 0.3)
        random_geom = twoslit.SlitGeometry(
            slit_width=beta * 50e-6,
            half_separation=50e-6,
            screen_distance=rng.uniform(0.5, 5.0),
            wavelength=rng.uniform(0.3e-6, 1.0e-6),
        )
        x = rng.uniform(0.01, 3.0) * random_geom.fringe_spacing * rng.choice([-1, 1])
        k = twoslit.wavenumber(random_geom)
        direct = (
            4.0
            / (math.pi * beta * k * x * x)
            * np.cos(k * x) ** 2
            * np.sin(beta * k * x) ** 2
        )
        closed = float(twoslit.intensity(x, random_geom))
        product = max(product, _relative(closed, direct))

    parity = float(
        np.abs(twoslit.intensity(-screen, geom) - twoslit.intensity(screen, geom)).max()
    )

    limit_errors = []
    for beta in (1e-2, 1e-3):
        narrow = twoslit.SlitGeometry(
            slit_width=beta * 50e-6,
            half_separation=50e-6,
            screen_distance=1.0,
            wavelength=0.58e-6,
        )
        k = twoslit.wavenumber(narrow)
        xs = twoslit.default_grid(narrow)
        reduced = np.asarray(twoslit.intensity(xs, narrow)) / (beta * k)
        limit_errors.append(
            float(np.abs(reduced - twoslit.interference_limit(xs, k)).max())
        )
    ratio = limit_errors[0] / limit_errors[1]

    mercury = twoslit.single_slit_minima(0.6, 5.79e-5, 1.0, 1)[0]
    rings = twoslit.dark_ring_radii(1.0, 2.0 * math.pi, 1.0, 2)
    ring_error = max(
        _relative(rings[0], 3.8317059702),
        _relative(rings[1], 7.0155866698),
    )
    return [
        _within(suite, "oracle-equivalence", equivalence, 1e-6),
        _within(suite, "fraunhofer-validity", deviations[0], 1e-3),
        _holds(
            suite,
            "fraunhofer-growth",
            deviations[2] > max(deviations[0], deviations[1]),
        ),
        _within(suite, "product-form", product, 1e-12),
        _within(suite, "parity", parity, 0.0),
        _within(suite, "interference-limit-order", abs(ratio - 100.0), 5.0),
        _within(
            suite, "mercury-first-minimum", _relative(mercury, 5.79e-5 / 1.2), 1e-9
        ),
        _within(suite, "dark-rings", ring_error, 1e-9),
        _within(
            suite,
            "screen-integral",
            abs(twoslit.screen_integral(geom).value - 2.0),
            1e-3,
        ),
    ]


SUITES: dict[str, Callable[[], list[CheckResult]]] = {
    "blackbody": blackbody_suite,
    "vacuum": vacuum_suite,
    "maxwell": maxwell_suite,
    "twoslit": twoslit_suite,
}


def run_suite(name: str) -> list[CheckResult]:
    """Run one suite, or every suite for 'all'"""
    if name == "all":
        return [check for suite in SUITES.values() for check in suite()]
    if name not in SUITES:
        raise KeyError(f"Unknown suite '{name}'")
    return SUITES[name]()
