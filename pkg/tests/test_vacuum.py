import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError
from scipy import constants

from physics import vacuum
from physics.errors import DomainError
from physics.specfun import integrability_probe
from physics.types import Branch, StatisticalIndex
from physics.vacuum import ChargedFieldSpec, FieldStrength, HyperbolicPath

QUARTIC = 7 / (5760 * math.pi**2)


def _boson_sum(eps: float, eta: int = -1) -> float:
    return math.fsum(
        eta ** (n + 1) * math.exp(-math.pi * n / eps) / (n * n) for n in range(1, 200)
    )


## FIELD SPEC
@pytest.mark.parametrize(
    "spin, eta",
    [
        (0.0, StatisticalIndex.BOSON),
        (0.5, StatisticalIndex.FERMION),
        (1.0, StatisticalIndex.BOSON),
        (1.5, StatisticalIndex.FERMION),
    ],
)
def test_statistical_index(spin, eta):
    assert ChargedFieldSpec(spin=spin).eta is eta
    assert ChargedFieldSpec(spin=spin).multiplicity == 2 * spin + 1


def test_spin_must_be_half_integer():
    with pytest.raises(ValidationError):
        ChargedFieldSpec(spin=0.3)
    with pytest.raises(DomainError):
        StatisticalIndex.for_spin(0.3)


def test_field_strength_from_si_at_critical_fields():
    m = constants.m_e
    kappa = m * constants.c / constants.hbar
    e_crit = m * m * constants.c**3 / (constants.e * constants.hbar)
    b_crit = m * m * constants.c**2 / (constants.e * constants.hbar)
    field = FieldStrength.from_si(b_crit, e_crit, kappa)
    assert field.eps == pytest.approx(1.0, rel=1e-12)
    assert field.b == pytest.approx(1.0, rel=1e-12)
    with pytest.raises(DomainError):
        FieldStrength.from_si(1.0, 1.0, 0.0)


## LANDAU SPECTRUM
def test_landau_frequency(scalar):
    assert vacuum.landau_frequency(0, 0.0, 0.0, scalar) == 1.0
    assert vacuum.landau_frequency(1, 0.0, 1.0, scalar) == 2.0
    assert vacuum.landau_frequency(0, 3.0, 0.0, ChargedFieldSpec(kappa=4.0)) == 1.25
    with pytest.raises(DomainError):
        vacuum.landau_frequency(-1, 0.0, 1.0, scalar)
    with pytest.raises(DomainError):
        vacuum.landau_frequency(0, 0.0, 1.0, ChargedFieldSpec(kappa=0.0))


@given(
    st.integers(min_value=0, max_value=20),
    st.floats(min_value=0.0, max_value=5.0),
    st.floats(min_value=0.01, max_value=5.0),
)
def test_landau_frequency_grows_with_level_and_field(n, k, b):
    scalar = ChargedFieldSpec()
    omega = vacuum.landau_frequency(n, k, b, scalar)
    assert vacuum.landau_frequency(n + 1, k, b, scalar) > omega
    assert vacuum.landau_frequency(n, k, 2.0 * b, scalar) > omega
    assert vacuum.landau_frequency(n, k + 0.5, b, scalar) > omega


def test_landau_levels_merge_without_field(scalar):
    ground = vacuum.landau_frequency(0, 1.0, 0.0, scalar)
    assert vacuum.landau_frequency(7, 1.0, 0.0, scalar) == ground


## VACUUM ENERGY
@given(st.floats(min_value=0.5, max_value=5.0))
def test_subtracted_bracket_direct_branch(x):
    expected = 1 - x / math.sinh(x) - x * x / 6
    assert vacuum.subtracted_bracket(x) == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("x", [1e-3, 1e-2, 0.1, 0.49])
def test_subtracted_bracket_series_branch(x):
    x2 = x * x
    expected = (
        -7 * x2 * x2 / 360
        + 31 * x2**3 / 15120
        - 127 * x2**4 / 604800
        + 73 * x2**5 / 3421440
    )
    assert vacuum.subtracted_bracket(x) == pytest.approx(expected, rel=1e-6)
    assert vacuum.subtracted_bracket(-x) == vacuum.subtracted_bracket(x)


def test_subtracted_bracket_branches_meet():
    below = vacuum.subtracted_bracket(np.nextafter(0.5, 0.0))
    above = vacuum.subtracted_bracket(0.5)
    assert below == pytest.approx(above, rel=1e-12)


def test_vacuum_energy_vanishes_without_field(scalar):
    assert vacuum.vacuum_energy_density(0.0, scalar) == 0.0


@pytest.mark.parametrize("b", [1e-3, 3e-3, 1e-2])
def test_vacuum_energy_small_field_law(scalar, b):
    assert vacuum.vacuum_energy_density(b, scalar) == pytest.approx(
        -QUARTIC * b**4, rel=1e-2
    )


def test_vacuum_energy_quartic_slope(scalar):
    fields = np.logspace(-3, -2, 6)
    energies = [abs(vacuum.vacuum_energy_density(b, scalar)) for b in fields]
    slope = np.polyfit(np.log(fields), np.log(energies), 1)[0]
    assert slope == pytest.approx(4.0, abs=0.05)


def test_vacuum_energy_preconditions(scalar):
    with pytest.raises(DomainError):
        vacuum.vacuum_energy_density(1.0, ChargedFieldSpec(spin=0.5))
    with pytest.raises(DomainError):
        vacuum.vacuum_energy_density(-1.0, scalar)
    with pytest.raises(DomainError):
        vacuum.vacuum_energy_density(1.0, ChargedFieldSpec(kappa=0.0))


def test_vacuum_energy_reports_work(scalar):
    result = vacuum.vacuum_energy_quadrature(1.0, scalar)
    assert result.evaluations > 1
    assert result.abs_error_estimate <= 1e-9 * abs(result.value)


def test_subtraction_makes_the_integrand_integrable():
    b = 1.0
    divergent = integrability_probe(vacuum.unsubtracted_integrand(b), 3.0)
    convergent = integrability_probe(vacuum.renormalized_integrand(b), 3.0)
    assert None in divergent
    assert None not in convergent
    assert convergent == sorted(convergent)


@pytest.mark.filterwarnings("error::RuntimeWarning")
def test_divergent_integrand_fails_without_numpy_warnings():
    counts = integrability_probe(vacuum.unsubtracted_integrand(1.0), 3.0)
    assert None in counts


def test_magnetization_is_minus_the_slope(scalar):
    b, h = 1.0, 1e-3
    slope = (
        vacuum.vacuum_energy_density(b + h, scalar, 1e-12)
        - vacuum.vacuum_energy_density(b - h, scalar, 1e-12)
    ) / (2 * h)
    assert vacuum.magnetization(b, scalar) == pytest.approx(-slope, rel=1e-5)


def test_magnetization_small_field(scalar):
    b = 0.05
    assert vacuum.magnetization(b, scalar) == pytest.approx(
        4 * QUARTIC * b**3, rel=1e-2
    )
    with pytest.raises(DomainError):
        vacuum.magnetization(0.0, scalar)


## PAIR PRODUCTION
@pytest.mark.parametrize("eps", [0.5, 1.0, 2.0])
def test_pair_rate_boson(scalar, eps):
    rate = vacuum.pair_rate_boson(eps, scalar)
    expected = eps * eps / (8 * math.pi**3) * _boson_sum(eps)
    assert rate.value == pytest.approx(expected, rel=1e-14)
    assert rate.terms_used >= 1


def test_pair_rate_spin_zero_reduces_to_boson(scalar):
    assert vacuum.pair_rate_spin(1.0, scalar) == vacuum.pair_rate_boson(1.0, scalar)


def test_pair_rate_fermion():
    electron = ChargedFieldSpec(spin=0.5)
    expected = 2 / (8 * math.pi**3) * _boson_sum(1.0, eta=1)
    assert vacuum.pair_rate_spin(1.0, electron).value == pytest.approx(
        expected, rel=1e-14
    )
    with pytest.raises(DomainError):
        vacuum.pair_rate_boson(1.0, electron)


@pytest.mark.parametrize("eps", [0.5, 1.0, 2.0])
def test_transverse_oracle_matches_series(scalar, eps):
    oracle = vacuum.pair_rate_transverse_oracle(eps, scalar, n_max=20)
    assert oracle == pytest.approx(
        vacuum.pair_rate_boson(eps, scalar).value, rel=1e-8
    )


def test_pair_rate_preconditions(scalar):
    with pytest.raises(DomainError):
        vacuum.pair_rate_spin(0.0, scalar)
    with pytest.raises(DomainError):
        vacuum.pair_rate_spin(1.0, ChargedFieldSpec(kappa=0.0))
    with pytest.raises(DomainError):
        vacuum.pair_rate_transverse_oracle(1.0, scalar, n_max=0)


@given(st.floats(min_value=0.05, max_value=50.0))
@settings(max_examples=50)
def test_pair_rate_1d_forms_agree(eps):
    scalar = ChargedFieldSpec()
    closed = vacuum.pair_rate_1d(eps, scalar)
    assert closed == pytest.approx(
        eps / (2 * math.pi) * math.log1p(math.exp(-math.pi / eps)), rel=1e-15
    )
    assert vacuum.pair_rate_1d_series(eps, scalar).value == pytest.approx(
        closed, rel=1e-12
    )


## PATHS, ACTION AND TEMPERATURE
def test_classical_path_turning_points():
    forward = HyperbolicPath(accel=2.0)
    backward = HyperbolicPath(accel=2.0, branch=Branch.BACKWARD)
    assert vacuum.classical_path(0.0, forward) == 0.5
    assert vacuum.classical_path(0.0, backward) == -0.5


@given(
    st.floats(min_value=-2.0, max_value=2.0),
    st.floats(min_value=0.5, max_value=5.0),
)
def test_classical_path_is_a_hyperbola(t, accel):
    path = HyperbolicPath(accel=accel)
    x = vacuum.classical_path(t, path)
    assert x * x - t * t == pytest.approx(path.turning_point**2, rel=1e-12)


def test_hyperbolic_path_validation():
    with pytest.raises(ValidationError):
        HyperbolicPath(accel=0.0)


def test_euclidean_action_and_partition():
    assert vacuum.euclidean_action(2.0) == math.pi / 2
    w = 1.0
    assert vacuum.pair_partition(w) == pytest.approx(1 / (1 + math.exp(-w)))
    assert vacuum.pair_partition_series(w).value == pytest.approx(
        vacuum.pair_partition(w), rel=1e-14
    )
    # below the cross-check threshold only the closed form is used
    assert vacuum.pair_partition(1e-3) == pytest.approx(1 / (1 + math.exp(-1e-3)))
    with pytest.raises(DomainError):
        vacuum.pair_partition(0.0)


def test_unruh_temperature_routes():
    assert vacuum.unruh_temperature(2 * math.pi) == 1.0
    assert vacuum.temperature_from_field(0.3) == pytest.approx(0.3 / (2 * math.pi))
    assert vacuum.temperature_from_entropy(0.3) == pytest.approx(
        vacuum.temperature_from_field(0.3), rel=1e-6
    )
    with pytest.raises(DomainError):
        vacuum.unruh_temperature(0.0)
