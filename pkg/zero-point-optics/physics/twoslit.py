"""Two-slit photon diffraction in the Fraunhofer regime.

The closed-form pattern (4 beta K/pi) cos^2(Kx) sinc^2(beta K x) is checked
against a brute-force integral of exp(iS) over the forward/backward density
matrix of the slit state. Lengths share whatever unit the geometry is given in.
"""

import logging
import math
from typing import Callable, Sequence

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, model_validator

from physics.errors import ConsistencyError, DomainError
from physics.maxwell import SlitStateCount, slit_state_count
from physics.specfun import (
    QuadratureResult,
    Real,
    bessel_j1,
    bessel_j1_zeros,
    bracket_root,
    integrate,
    sinc,
)
from physics.types import PatternMode, PhaseMode, SlitConvention

logger = logging.getLogger(__name__)

Phase = Callable[[npt.ArrayLike], npt.ArrayLike]

FRAUNHOFER_DISTANCE_RATIO = 100.0
FRAUNHOFER_WIDTH_RATIO = 10.0
DEFAULT_FRINGES = 5.0
DEFAULT_POINTS = 1001
ORACLE_REL_TOL = 1e-10
# absolute floor per slit integral, relative to the aperture
ORACLE_ABS_SCALE = 1e-13
SCREEN_PERIODS = 400


## GEOMETRY
class AspectRatio(BaseModel):
    model_config = ConfigDict(frozen=True)

    beta: float = Field(gt=0, lt=1)


class SlitGeometry(BaseModel):
    """w: slit width, d: half the slit separation, D: screen distance"""

    model_config = ConfigDict(frozen=True)

    slit_width: float = Field(gt=0, allow_inf_nan=False)
    half_separation: float = Field(gt=0, allow_inf_nan=False)
    screen_distance: float = Field(gt=0, allow_inf_nan=False)
    wavelength: float = Field(gt=0, allow_inf_nan=False)

    @model_validator(mode="after")
    def _check_ordering(self) -> "SlitGeometry":
        if not self.slit_width < self.half_separation < self.screen_distance:
            raise DomainError(
                "Slit geometry needs w < d < D, got "
                f"w '{self.slit_width}', d '{self.half_separation}', "
                f"D '{self.screen_distance}'"
            )
        if self.fraunhofer_warning:
            logger.warning(
                "Geometry %s is outside the comfortable Fraunhofer regime", self
            )
        if self.subwavelength:
            logger.info(
                "Sub-wavelength slit: %s transversal states, ground state only: %s",
                self.transversal_states.count,
                self.transversal_states.ground_state_confined,
            )
        return self

    @property
    def aspect_ratio(self) -> AspectRatio:
        return AspectRatio(beta=self.slit_width / self.half_separation)

    @property
    def fraunhofer_warning(self) -> bool:
        return (
            self.screen_distance < FRAUNHOFER_DISTANCE_RATIO * self.half_separation
            or self.half_separation < FRAUNHOFER_WIDTH_RATIO * self.slit_width
        )

    @property
    def subwavelength(self) -> bool:
        return self.slit_width < self.wavelength

    @property
    def transversal_states(self) -> SlitStateCount:
        return slit_state_count(self.slit_width, self.wavelength)

    @property
    def fringe_spacing(self) -> float:
        """lambda D / 2d"""
        return self.wavelength * self.screen_distance / (2.0 * self.half_separation)

    def aperture(self, convention: SlitConvention) -> float:
        if convention is SlitConvention.TOP_HAT:
            return self.slit_width
        return 2.0 * self.slit_width


class Pattern(BaseModel):
    model_config = ConfigDict(frozen=True)

    positions: list[float]
    values: list[float]
    mode: PatternMode
    geometry: SlitGeometry

    @model_validator(mode="after")
    def _check_values(self) -> "Pattern":
        if len(self.positions) != len(self.values):
            raise DomainError(
                f"Pattern has '{len(self.positions)}' positions "
                f"but '{len(self.values)}' values"
            )
        if any(value < 0 for value in self.values):
            raise DomainError("Pattern intensities must be non-negative")
        return self


## CLOSED FORMS
def wavenumber(geom: SlitGeometry) -> float:
    """K = (2 pi/lambda)(d/D)"""
    return 2.0 * math.pi / geom.wavelength * geom.half_separation / geom.screen_distance


def intensity(x: npt.ArrayLike, geom: SlitGeometry) -> Real:
    """(4 beta K/pi) cos^2(Kx) sinc^2(beta K x), even in x"""
    k = wavenumber(geom)
    beta = geom.aspect_ratio.beta
    kx = k * np.asarray(x, dtype=float)
    return (4.0 * beta * k / math.pi) * np.cos(kx) ** 2 * sinc(beta * kx) ** 2


def interference_limit(x: npt.ArrayLike, k: float) -> Real:
    """lim beta->0 of intensity/(beta K) = (4/pi) cos^2(Kx)"""
    if not k > 0:
        raise DomainError(f"Wavenumber must be positive, got '{k}'")
    return 4.0 / math.pi * np.cos(k * np.asarray(x, dtype=float)) ** 2


def fringe_positions(geom: SlitGeometry, n_max: int) -> tuple[list[float], list[float]]:
    """Bright fringes at n lambda D/2d and dark fringes half a spacing further"""
    if n_max < 0:
        raise DomainError(f"Fringe order must be non-negative, got '{n_max}'")
    spacing = geom.fringe_spacing
    maxima = [n * spacing for n in range(n_max + 1)]
    minima = [(n + 0.5) * spacing for n in range(n_max + 1)]
    young = np.cos(wavenumber(geom) * np.array(maxima)) ** 2
    if np.any(young < 1.0 - 1e-9):
        raise ConsistencyError(
            f"Fringe maxima miss the Young factor peaks for '{geom}'"
        )
    return maxima, minima


def _check_positive(**params: float) -> None:
    for name, value in params.items():
        if not value > 0:
            raise DomainError(f"Parameter {name} must be positive, got '{value}'")


def single_slit(x: npt.ArrayLike, w: float, wavelength: float, D: float) -> Real:
    """sinc^2(eta) with eta = 2 pi x w/(lambda D)"""
    _check_positive(w=w, wavelength=wavelength, D=D)
    eta = 2.0 * math.pi * np.asarray(x, dtype=float) * w / (wavelength * D)
    return sinc(eta) ** 2


def single_slit_minima(
    w: float,
    wavelength: float,
    D: float,
    count: int,
) -> list[float]:
    """Dark fringes located as bracketed roots of sinc(eta)"""
    _check_positive(w=w, wavelength=wavelength, D=D)
    if count < 1:
        raise DomainError(f"Number of minima must be at least 1, got '{count}'")
    scale = wavelength * D / (2.0 * math.pi * w)
    roots = [
        bracket_root(
            lambda eta: float(sinc(eta)), (n - 0.5) * math.pi, (n + 0.5) * math.pi
        )
        for n in range(1, count + 1)
    ]
    return [root * scale for root in roots]


def circular_pattern(R: npt.ArrayLike, w: float, wavelength: float, D: float) -> Real:
    """[2 J1(eta)/eta]^2 with eta = (2 pi/lambda)(w/D) R"""
    _check_positive(w=w, wavelength=wavelength, D=D)
    eta = np.abs(2.0 * math.pi / wavelength * w / D * np.asarray(R, dtype=float))
    safe = np.where(eta == 0.0, 1.0, eta)
    airy = np.where(eta == 0.0, 1.0, 2.0 * np.asarray(bessel_j1(safe)) / safe)
    return (airy**2)[()]


def dark_ring_radii(w: float, wavelength: float, D: float, count: int) -> list[float]:
    """Radii where 2 J1(eta)/eta vanishes"""
    _check_positive(w=w, wavelength=wavelength, D=D)
    scale = wavelength * D / (2.0 * math.pi * w)
    return [zero * scale for zero in bessel_j1_zeros(count)]


## DENSITY MATRIX ORACLE
def slit_function(
    x: npt.ArrayLike,
    geom: SlitGeometry,
    convention: SlitConvention = SlitConvention.TOP_HAT,
) -> Real:
    """phi = 1/sqrt(a) on |x| < a/2 for the convention's aperture a"""
    aperture = geom.aperture(convention)
    inside = np.abs(np.asarray(x, dtype=float)) < 0.5 * aperture
    return np.where(inside, 1.0 / math.sqrt(aperture), 0.0)[()]


def density_matrix(
    x_plus: npt.ArrayLike,
    x_minus: npt.ArrayLike,
    geom: SlitGeometry,
    convention: SlitConvention = SlitConvention.TOP_HAT,
) -> Real:
    """psi(x+) psi(x-) for psi = [phi(x - d) + phi(x + d)]/sqrt(2)"""
    d = geom.half_separation
    plus = np.asarray(x_plus, dtype=float)
    minus = np.asarray(x_minus, dtype=float)
    forward = slit_function(plus - d, geom, convention) + slit_function(
        plus + d, geom, convention
    )
    backward = slit_function(minus - d, geom, convention) + slit_function(
        minus + d, geom, convention
    )
    return (0.5 * forward * backward)[()]


def _phase(x: float, geom: SlitGeometry, mode: PhaseMode) -> Phase:
    k = 2.0 * math.pi / geom.wavelength
    D = geom.screen_distance
    if mode is PhaseMode.QUADRATIC:
        q = k * x / D
        return lambda xs: -q * xs
    r0 = math.hypot(D, x)

    def exact(xs: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        # k [r(x') - r(0)] with the difference of roots taken without cancellation
        r = np.hypot(D, x - xs)
        return k * (xs * xs - 2.0 * x * xs) / (r + r0)

    return exact


def _normalization(geom: SlitGeometry, convention: SlitConvention) -> float:
    k = wavenumber(geom)
    beta = geom.aspect_ratio.beta
    return (4.0 * beta * k / math.pi) / (2.0 * geom.aperture(convention))


def _supports(
    geom: SlitGeometry, convention: SlitConvention
) -> list[tuple[float, float]]:
    half = 0.5 * geom.aperture(convention)
    d = geom.half_separation
    return [(-d - half, -d + half), (d - half, d + half)]


def brute_force_intensity(
    x: float,
    geom: SlitGeometry,
    phase_mode: PhaseMode = PhaseMode.QUADRATIC,
    convention: SlitConvention = SlitConvention.ENVELOPE,
    factorized: bool = True,
) -> QuadratureResult:
    """Screen intensity from the double integral of exp(iS) rho(x+, x-).

    rho is a product of slit states, so the integral is |sum_c A_c|^2 / 2 with one
    finite Fourier-type transform A_c per slit. factorized=False integrates
    cos(S) rho over the four support rectangles directly instead.
    """
    phase = _phase(x, geom, phase_mode)
    aperture = geom.aperture(convention)
    abs_tol = ORACLE_ABS_SCALE * aperture
    amplitude = 1.0 / math.sqrt(aperture)
    supports = _supports(geom, convention)
    if factorized:
        parts: list[QuadratureResult] = []
        real_total = imag_total = 0.0
        for lo, hi in supports:
            options = {"rel_tol": ORACLE_REL_TOL, "abs_tol": abs_tol}
            real = integrate(lambda xs: np.cos(phase(xs)), lo, hi, **options)
            imag = integrate(lambda xs: np.sin(phase(xs)), lo, hi, **options)
            parts.extend((real, imag))
            real_total += amplitude * real.value
            imag_total += amplitude * imag.value
        raw = 0.5 * (real_total * real_total + imag_total * imag_total)
        # |A|^2 error from the per-slit integral errors
        raw_error = math.fsum(
            amplitude * part.abs_error_estimate for part in parts
        ) * math.hypot(real_total, imag_total)
        evaluations = sum(part.evaluations for part in parts)
    else:
        raw, raw_error, evaluations = _double_integral(phase, geom, convention, abs_tol)
    scale = _normalization(geom, convention)
    logger.debug("brute force x=%g (%s): %d evaluations", x, phase_mode, evaluations)
    return QuadratureResult(
        value=scale * raw,
        abs_error_estimate=scale * raw_error,
        evaluations=evaluations,
    )


def _double_integral(
    phase: Phase, geom: SlitGeometry, convention: SlitConvention, abs_tol: float
) -> tuple[float, float, int]:
    evaluations = 0
    parts = []
    for lo_plus, hi_plus in _supports(geom, convention):
        for lo_minus, hi_minus in _supports(geom, convention):

            def inner(minus_nodes: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
                nonlocal evaluations
                values = []
                for x_minus in minus_nodes:
                    result = integrate(
                        lambda xs: np.cos(phase(xs) - phase(x_minus))
                        * density_matrix(xs, x_minus, geom, convention),
                        lo_plus,
                        hi_plus,
                        rel_tol=ORACLE_REL_TOL,
                        abs_tol=abs_tol,
                    )
                    evaluations += result.evaluations
                    values.append(result.value)
                return np.array(values)

            parts.append(
                integrate(
                    inner, lo_minus, hi_minus, rel_tol=ORACLE_REL_TOL, abs_tol=abs_tol
                )
            )
    total = QuadratureResult.total(parts)
    return total.value, total.abs_error_estimate, evaluations


## PATTERNS
def default_grid(geom: SlitGeometry) -> npt.NDArray[np.float64]:
    """1001 points over +/- 5 fringe spacings"""
    extent = DEFAULT_FRINGES * geom.fringe_spacing
    return np.linspace(-extent, extent, DEFAULT_POINTS)


def pattern(
    geom: SlitGeometry,
    mode: PatternMode,
    grid: Sequence[float] | npt.NDArray[np.float64] | None = None,
    convention: SlitConvention = SlitConvention.ENVELOPE,
) -> Pattern:
    positions = default_grid(geom) if grid is None else np.asarray(grid, dtype=float)
    match mode:
        case PatternMode.CLOSED:
            values = np.asarray(intensity(positions, geom))
        case PatternMode.LIMIT:
            k = wavenumber(geom)
            values = geom.aspect_ratio.beta * k * np.asarray(
                interference_limit(positions, k)
            )
        case PatternMode.QUADRATIC | PatternMode.EXACT:
            phase_mode = PhaseMode(mode.value)
            values = np.array(
                [
                    brute_force_intensity(x, geom, phase_mode, convention).value
                    for x in positions
                ]
            )
    return Pattern(
        positions=positions.tolist(),
        values=np.atleast_1d(values).tolist(),
        mode=mode,
        geometry=geom,
    )


def pattern_deviation(values: npt.ArrayLike, reference: npt.ArrayLike) -> float:
    """max |values - reference| / max |reference|"""
    a = np.asarray(values, dtype=float)
    b = np.asarray(reference, dtype=float)
    if a.shape != b.shape:
        raise DomainError(f"Pattern shapes differ: '{a.shape}' vs '{b.shape}'")
    peak = float(np.abs(b).max()) if b.size else 0.0
    if peak == 0.0:
        raise DomainError("Reference pattern is identically zero")
    return float(np.abs(a - b).max()) / peak


def screen_integral(geom: SlitGeometry) -> QuadratureResult:
    """Integral of the closed-form intensity over the whole screen.

    With u = beta K x the integrand is (4/pi) cos^2(u/beta) sinc^2(u); it is
    integrated over SCREEN_PERIODS zero-to-zero intervals of sinc and the tail is
    added from its mean value 1/(4u^2).
    """
    beta = geom.aspect_ratio.beta

    def reduced(u: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        return np.cos(u / beta) ** 2 * sinc(u) ** 2

    pieces = [
        integrate(reduced, j * math.pi, (j + 1) * math.pi)
        for j in range(SCREEN_PERIODS)
    ]
    body = QuadratureResult.total(pieces)
    tail = 0.25 / (SCREEN_PERIODS * math.pi)
    # even integrand: twice the half line
    scale = 2.0 * 4.0 / math.pi
    return QuadratureResult(
        value=scale * (body.value + tail),
        abs_error_estimate=scale * body.abs_error_estimate,
        evaluations=body.evaluations,
    )
