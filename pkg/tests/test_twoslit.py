import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from physics import twoslit
from physics.errors import DomainError
from physics.specfun import sinc
from physics.twoslit import SlitGeometry
from physics.types import PatternMode, PhaseMode, SlitConvention


def _geometry(beta: float = 0.1, screen_distance: float = 1.0) -> SlitGeometry:
    d = 50e-6
    return SlitGeometry(
        slit_width=beta * d,
        half_separation=d,
        screen_distance=screen_distance,
        wavelength=0.58e-6,
    )


## GEOMETRY
def test_geometry_ordering():
    with pytest.raises(ValidationError):
        SlitGeometry(
            slit_width=60e-6,
            half_separation=50e-6,
            screen_distance=1.0,
            wavelength=1e-6,
        )
    with pytest.raises(ValidationError):
        SlitGeometry(
            slit_width=5e-6, half_separation=2.0, screen_distance=1.0, wavelength=1e-6
        )


def test_geometry_properties(reference_geometry):
    geom = reference_geometry
    assert geom.aspect_ratio.beta == pytest.approx(0.1, rel=1e-15)
    assert geom.fringe_spacing == pytest.approx(0.58e-6 / 100e-6, rel=1e-15)
    assert not geom.subwavelength
    assert geom.aperture(SlitConvention.TOP_HAT) == geom.slit_width
    assert geom.aperture(SlitConvention.ENVELOPE) == 2 * geom.slit_width


def test_fraunhofer_warning_is_logged(caplog):
    with caplog.at_level("WARNING", logger="physics.twoslit"):
        geom = _geometry(screen_distance=1e-3)
    assert geom.fraunhofer_warning
    assert "Fraunhofer" in caplog.text


def test_subwavelength_slit():
    geom = SlitGeometry(
        slit_width=0.1e-6,
        half_separation=50e-6,
        screen_distance=1.0,
        wavelength=0.58e-6,
    )
    assert geom.subwavelength
    assert geom.transversal_states.ground_state_confined


## CLOSED FORMS
def test_intensity_centre_and_parity(reference_geometry):
    geom = reference_geometry
    k = twoslit.wavenumber(geom)
    assert twoslit.intensity(0.0, geom) == pytest.approx(4 * 0.1 * k / math.pi)
    x = np.linspace(0.0, 5 * geom.fringe_spacing, 101)
    assert np.array_equal(twoslit.intensity(x, geom), twoslit.intensity(-x, geom))


@given(st.floats(min_value=-1e-2, max_value=1e-2))
def test_intensity_is_a_product(x):
    geom = _geometry()
    k = twoslit.wavenumber(geom)
    expected = (
        4 * 0.1 * k / math.pi * np.cos(k * x) ** 2 * sinc(0.1 * k * x) ** 2
    )
    assert twoslit.intensity(x, geom) == pytest.approx(expected, rel=1e-12, abs=1e-300)


def test_fringe_positions(reference_geometry):
    maxima, minima = twoslit.fringe_positions(reference_geometry, 3)
    spacing = reference_geometry.fringe_spacing
    assert maxima == pytest.approx([0.0, spacing, 2 * spacing, 3 * spacing])
    assert minima[0] == pytest.approx(0.5 * spacing)
    assert twoslit.intensity(minima[0], reference_geometry) == pytest.approx(
        0.0, abs=1e-20
    )


def test_interference_limit_error_is_quadratic_in_beta():
    errors = []
    for beta in (1e-2, 1e-3):
        geom = _geometry(beta)
        k = twoslit.wavenumber(geom)
        x = np.linspace(0.1, 3.0, 30) / k
        ratio = twoslit.intensity(x, geom) / (beta * k)
        errors.append(np.abs(ratio - twoslit.interference_limit(x, k)).max())
    assert errors[0] / errors[1] == pytest.approx(100.0, abs=5.0)


def test_interference_limit_needs_wavenumber():
    with pytest.raises(DomainError):
        twoslit.interference_limit(0.0, 0.0)


def test_mercury_single_slit_minimum():
    wavelength, width = 5.79e-7, 0.6e-2
    first = twoslit.single_slit_minima(width, wavelength, 1.0, 1)[0]
    assert first == pytest.approx(wavelength / (2 * width), rel=1e-9)
    assert first == pytest.approx(4.825e-5, rel=1e-9)
    assert twoslit.single_slit(0.0, width, wavelength, 1.0) == 1.0


def test_circular_aperture():
    wavelength, width, distance = 0.58e-6, 5e-6, 1.0
    rings = twoslit.dark_ring_radii(width, wavelength, distance, 2)
    scale = wavelength * distance / (2 * math.pi * width)
    assert rings[0] / scale == pytest.approx(3.8317059702, rel=1e-9)
    assert rings[1] / scale == pytest.approx(7.0155866698, rel=1e-9)
    assert twoslit.circular_pattern(0.0, width, wavelength, distance) == 1.0
    values = twoslit.circular_pattern(np.array(rings), width, wavelength, distance)
    assert np.all(values < 1e-20)


def test_slit_function_conventions(reference_geometry):
    geom = reference_geometry
    top_hat = twoslit.slit_function(0.0, geom)
    envelope = twoslit.slit_function(0.0, geom, SlitConvention.ENVELOPE)
    assert top_hat == pytest.approx(1 / math.sqrt(geom.slit_width))
    assert envelope == pytest.approx(1 / math.sqrt(2 * geom.slit_width))
    assert twoslit.slit_function(geom.slit_width, geom) == 0.0


def test_density_matrix_is_symmetric(reference_geometry):
    d = reference_geometry.half_separation
    a = twoslit.density_matrix(d, -d, reference_geometry)
    b = twoslit.density_matrix(-d, d, reference_geometry)
    assert a == b == pytest.approx(0.5 / reference_geometry.slit_width)


## ORACLE
def test_brute_force_matches_closed_form(reference_geometry):
    geom = reference_geometry
    grid = np.linspace(-2.5, 2.5, 41) * geom.fringe_spacing
    closed = twoslit.intensity(grid, geom)
    brute = [twoslit.brute_force_intensity(x, geom).value for x in grid]
    assert twoslit.pattern_deviation(brute, closed) < 1e-6


def test_double_integral_matches_factorized(reference_geometry):
    x = 0.3 * reference_geometry.fringe_spacing
    factorized = twoslit.brute_force_intensity(x, reference_geometry)
    direct = twoslit.brute_force_intensity(x, reference_geometry, factorized=False)
    assert direct.value == pytest.approx(factorized.value, rel=1e-8)


def test_exact_phase_agrees_far_from_the_slits():
    geom = _geometry(screen_distance=10.0)
    grid = np.linspace(-1.5, 1.5, 21) * geom.fringe_spacing
    quadratic = [
        twoslit.brute_force_intensity(x, geom, PhaseMode.QUADRATIC).value for x in grid
    ]
    exact = [
        twoslit.brute_force_intensity(x, geom, PhaseMode.EXACT).value for x in grid
    ]
    assert twoslit.pattern_deviation(exact, quadratic) < 1e-3


## PATTERNS
@pytest.mark.parametrize("mode", [PatternMode.CLOSED, PatternMode.LIMIT])
def test_pattern_default_grid(reference_geometry, mode):
    pattern = twoslit.pattern(reference_geometry, mode)
    assert len(pattern.positions) == twoslit.DEFAULT_POINTS
    assert pattern.positions[0] == pytest.approx(
        -twoslit.DEFAULT_FRINGES * reference_geometry.fringe_spacing
    )
    assert min(pattern.values) >= 0.0


def test_pattern_limit_mode(reference_geometry):
    grid = [0.0, 0.25 * reference_geometry.fringe_spacing]
    pattern = twoslit.pattern(reference_geometry, PatternMode.LIMIT, grid)
    k = twoslit.wavenumber(reference_geometry)
    assert pattern.values[0] == pytest.approx(0.1 * k * 4 / math.pi)
    assert pattern.values[1] == pytest.approx(0.1 * k * 2 / math.pi)


def test_pattern_deviation():
    assert twoslit.pattern_deviation([1.0, 2.0], [1.0, 4.0]) == 0.5
    with pytest.raises(DomainError):
        twoslit.pattern_deviation([1.0], [0.0])


def test_screen_integral(reference_geometry):
    assert twoslit.screen_integral(reference_geometry).value == pytest.approx(
        2.0, abs=1e-3
    )
