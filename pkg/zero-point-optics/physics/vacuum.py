"""Charged-field vacuum: Landau spectrum, regularized vacuum energy in a uniform
magnetic field, pair production in a uniform electric field, hyperbolic paths and
the Unruh temperature.

Critical units throughout: b = eB/(hbar c kappa^2), eps = hbar e E/(m^2 c^3),
U in hbar c kappa^4, Gamma in c kappa^4 (c kappa^2 for the 1D rate).
"""

import logging
import math
from fractions import Fraction
from typing import Callable

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import constants

from physics.errors import ConsistencyError, DomainError
from physics.specfun import (
    DEFAULT_REL_TOL,
    QuadratureResult,
    Real,
    SeriesResult,
    integrate_semiinfinite,
    one_minus_x_over_sinh,
    sum_alternating,
    sum_monotone,
)
from physics.types import Branch, StatisticalIndex

logger = logging.getLogger(__name__)

SERIES_REL_TOL = 1e-15
FERMION_REL_TOL = 1e-16
AGREEMENT_REL_TOL = 1e-12
PARTITION_REL_TOL = 1e-14
# below this the signed pair sum needs too many terms to be a useful check
PARTITION_CHECK_MIN = 0.1
MAGNETIZATION_REL_TOL = 1e-12
ORACLE_REL_TOL = 1e-12
ORACLE_ABS_TOL = 1e-18
BRACKET_SERIES_LIMIT = 0.5

# B_2 .. B_20
_BERNOULLI = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
)
# x/sinh(x) = sum_n (2 - 4^n) B_2n x^2n / (2n)!
_X_OVER_SINH = tuple(
    (2 - 4**n) * bernoulli / math.factorial(2 * n)
    for n, bernoulli in enumerate(_BERNOULLI, start=1)
)
# 1 - x/sinh(x) - x^2/6 = x^4 * poly(x^2), highest power first for np.polyval
_BRACKET_POLY = np.array([float(-c) for c in reversed(_X_OVER_SINH[1:])])


## DOMAIN TYPES
class ChargedFieldSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    kappa: float = Field(default=1.0, ge=0, allow_inf_nan=False)
    spin: float = Field(default=0.0, ge=0, allow_inf_nan=False)

    @model_validator(mode="after")
    def _check_spin(self) -> "ChargedFieldSpec":
        StatisticalIndex.for_spin(self.spin)
        return self

    @property
    def eta(self) -> StatisticalIndex:
        return StatisticalIndex.for_spin(self.spin)

    @property
    def multiplicity(self) -> float:
        return 2.0 * self.spin + 1.0

    def require_massive(self) -> None:
        if self.kappa <= 0:
            raise DomainError(
                f"Critical units need a massive field, got kappa '{self.kappa}'"
            )


SCALAR = ChargedFieldSpec()


class FieldStrength(BaseModel):
    model_config = ConfigDict(frozen=True)

    b: float = Field(default=0.0, ge=0, allow_inf_nan=False)
    eps: float = Field(default=1.0, gt=0, allow_inf_nan=False)

    @staticmethod
    def from_si(
        b_tesla: float, e_volt_per_m: float, kappa_per_m: float
    ) -> "FieldStrength":
        """b = eB/(hbar kappa^2), eps = eE/(hbar c kappa^2) with SI fields"""
        if kappa_per_m <= 0:
            raise DomainError(f"Critical units need kappa > 0, got '{kappa_per_m}'")
        scale = constants.e / (constants.hbar * kappa_per_m**2)
        return FieldStrength(
            b=scale * b_tesla,
            eps=scale * e_volt_per_m / constants.c,
        )


class HyperbolicPath(BaseModel):
    model_config = ConfigDict(frozen=True)

    accel: float = Field(gt=0, allow_inf_nan=False)
    branch: Branch = Branch.FORWARD
    c: float = Field(default=1.0, gt=0)

    @property
    def turning_point(self) -> float:
        return self.c * self.c / self.accel


def _require_field(eps: float) -> None:
    if not eps > 0 or not math.isfinite(eps):
        raise DomainError(f"Electric field must be positive and finite, got '{eps}'")


## LANDAU SPECTRUM
def landau_frequency(n: int, k: float, b: float, spec: ChargedFieldSpec) -> float:
    """omega(n, k, B) in units of c*kappa"""
    if n < 0 or int(n) != n:
        raise DomainError(f"Landau level must be a non-negative integer, got '{n}'")
    if b < 0:
        raise DomainError(f"Magnetic field must be non-negative, got '{b}'")
    spec.require_massive()
    ratio = k / spec.kappa
    return math.sqrt(1.0 + ratio * ratio + (2 * n + 1) * b)


## VACUUM ENERGY
def subtracted_bracket(x: npt.ArrayLike) -> Real:
    """1 - x/sinh(x) - x^2/6, even in x, leading term -7x^4/360"""
    ax = np.abs(np.asarray(x, dtype=float))
    x2 = ax * ax
    series = x2 * x2 * np.polyval(_BRACKET_POLY, x2)
    direct = one_minus_x_over_sinh(ax) - x2 / 6.0
    return np.where(ax < BRACKET_SERIES_LIMIT, series, direct)[()]


def renormalized_integrand(b: float) -> Callable[[npt.NDArray[np.float64]], Real]:
    """e^{-s}[1 - bs/sinh(bs) - (bs)^2/6], to be divided by s^3"""
    return lambda s: np.exp(-s) * subtracted_bracket(b * s)


def unsubtracted_integrand(b: float) -> Callable[[npt.NDArray[np.float64]], Real]:
    """e^{-s}[1 - bs/sinh(bs)] without the charge renormalization term"""
    return lambda s: np.exp(-s) * one_minus_x_over_sinh(b * s)


def vacuum_energy_quadrature(
    b: float,
    spec: ChargedFieldSpec,
    rel_tol: float = DEFAULT_REL_TOL,
) -> QuadratureResult:
    if spec.spin != 0:
        raise DomainError(
            f"Closed-form vacuum energy is for spin-0 fields, got spin '{spec.spin}'"
        )
    spec.require_massive()
    if b < 0 or not math.isfinite(b):
        raise DomainError(f"Magnetic field must be non-negative, got '{b}'")
    if b == 0:
        return QuadratureResult(value=0.0, abs_error_estimate=0.0, evaluations=1)
    raw = integrate_semiinfinite(
        renormalized_integrand(b), 3.0, rel_tol=rel_tol, abs_tol=0.0
    )
    scale = 1.0 / (16.0 * math.pi**2)
    return QuadratureResult(
        value=scale * raw.value,
        abs_error_estimate=scale * raw.abs_error_estimate,
        evaluations=raw.evaluations,
    )


def vacuum_energy_density(
    b: float,
    spec: ChargedFieldSpec,
    rel_tol: float = DEFAULT_REL_TOL,
) -> float:
    """Renormalized U(b) in units of hbar c kappa^4; U(0) = 0"""
    return vacuum_energy_quadrature(b, spec, rel_tol).value


def magnetization(
    b: float,
    spec: ChargedFieldSpec,
    step: float | None = None,
) -> float:
    """M = -dU/db by Richardson-extrapolated central differences"""
    if not b > 0:
        raise DomainError(f"Magnetization needs b > 0, got '{b}'")
    h = step if step is not None else max(1e-4, 1e-3 * b)

    def central(width: float) -> float:
        # U is even in b, so stepping below zero is harmless
        upper = vacuum_energy_density(b + width, spec, MAGNETIZATION_REL_TOL)
        lower = vacuum_energy_density(abs(b - width), spec, MAGNETIZATION_REL_TOL)
        return (upper - lower) / (2.0 * width)

    coarse = central(h)
    fine = central(0.5 * h)
    return -(4.0 * fine - coarse) / 3.0


## PAIR PRODUCTION
def _schwinger_sum(eps: float, eta: StatisticalIndex) -> SeriesResult:
    exponent = math.pi / eps

    def term(n: int) -> float:
        return eta ** (n + 1) * math.exp(-exponent * n) / (n * n)

    if eta is StatisticalIndex.BOSON:
        return sum_alternating(term, SERIES_REL_TOL)
    return sum_monotone(term, FERMION_REL_TOL)


def pair_rate_spin(eps: float, spec: ChargedFieldSpec) -> SeriesResult:
    """(2s+1) eps^2/(8 pi^3) sum_n eta^(n+1) e^{-pi n/eps}/n^2, units c kappa^4"""
    _require_field(eps)
    spec.require_massive()
    series = _schwinger_sum(eps, spec.eta)
    logger.debug(
        "pair rate eps=%g spin=%g: %d terms", eps, spec.spin, series.terms_used
    )
    return series.scaled(spec.multiplicity * eps * eps / (8.0 * math.pi**3))


def pair_rate_boson(eps: float, spec: ChargedFieldSpec) -> SeriesResult:
    """Spin-0 rate per unit time and volume, units c kappa^4"""
    if spec.spin != 0:
        raise DomainError(f"Boson rate is for spin-0 fields, got spin '{spec.spin}'")
    return pair_rate_spin(eps, spec)


def pair_rate_1d_series(eps: float, spec: ChargedFieldSpec) -> SeriesResult:
    _require_field(eps)
    spec.require_massive()
    exponent = math.pi / eps
    series = sum_alternating(
        lambda n: (-1) ** (n + 1) * math.exp(-exponent * n) / n, SERIES_REL_TOL
    )
    return series.scaled(eps / (2.0 * math.pi))


def pair_rate_1d(eps: float, spec: ChargedFieldSpec) -> float:
    """(eps/2pi) ln[1 + e^{-pi/eps}] per unit time and length, units c kappa^2"""
    _require_field(eps)
    spec.require_massive()
    closed = eps / (2.0 * math.pi) * math.log1p(math.exp(-math.pi / eps))
    series = pair_rate_1d_series(eps, spec).value
    if not math.isclose(closed, series, rel_tol=AGREEMENT_REL_TOL, abs_tol=1e-300):
        raise ConsistencyError(
            f"1D pair rate forms disagree at eps '{eps}': '{closed!r}' vs '{series!r}'"
        )
    return closed


def pair_rate_transverse_oracle(
    eps: float,
    spec: ChargedFieldSpec,
    n_max: int,
) -> float:
    """(3+1) boson rate from the 1D rate with the p_perp integral done numerically"""
    _require_field(eps)
    spec.require_massive()
    if n_max < 1:
        raise DomainError(f"At least one pair term is needed, got n_max '{n_max}'")
    exponent = math.pi / eps
    terms = []
    for n in range(1, n_max + 1):
        alpha = exponent * n
        gaussian = integrate_semiinfinite(
            lambda p, alpha=alpha: p * np.exp(-alpha * p * p),
            0.0,
            rel_tol=ORACLE_REL_TOL,
            abs_tol=ORACLE_ABS_TOL,
        )
        # d^2p/(2pi)^2 over the angle leaves p dp/(2pi)
        transverse = gaussian.value / (2.0 * math.pi)
        terms.append((-1) ** (n + 1) / n * math.exp(-alpha) * transverse)
    return eps / (2.0 * math.pi) * math.fsum(terms)


## PATHS AND ACTION
def classical_path(t: float, path: HyperbolicPath) -> float:
    """x_(+/-)(t) = +/- sqrt(c^2 t^2 + (c^2/a)^2)"""
    return path.branch.sign * math.hypot(path.c * t, path.turning_point)


def euclidean_action(eps: float, spec: ChargedFieldSpec = SCALAR) -> float:
    """W/hbar = pi/eps, the arc of the Euclidean semicircle"""
    _require_field(eps)
    spec.require_massive()
    return math.pi / eps


def pair_partition_series(w_over_hbar: float) -> SeriesResult:
    """sum_k (-1)^k e^{-k W/hbar} over the number k >= 0 of pairs"""
    if not w_over_hbar > 0:
        raise DomainError(f"Euclidean action must be positive, got '{w_over_hbar}'")
    return sum_alternating(
        lambda n: (-1) ** (n - 1) * math.exp(-(n - 1) * w_over_hbar),
        FERMION_REL_TOL,
    )


def pair_partition(w_over_hbar: float) -> float:
    """Z = 1/(1 + e^{-W/hbar})"""
    if not w_over_hbar > 0:
        raise DomainError(f"Euclidean action must be positive, got '{w_over_hbar}'")
    closed = 1.0 / (1.0 + math.exp(-w_over_hbar))
    if w_over_hbar >= PARTITION_CHECK_MIN:
        summed = pair_partition_series(w_over_hbar).value
        if not math.isclose(closed, summed, rel_tol=PARTITION_REL_TOL):
            raise ConsistencyError(
                f"Partition function forms disagree at W/hbar '{w_over_hbar}'"
            )
    return closed


## TEMPERATURE
def unruh_temperature(accel: float) -> float:
    """k_B T = hbar a / (2 pi c) with hbar = c = k_B = 1"""
    if not accel > 0:
        raise DomainError(f"Acceleration must be positive, got '{accel}'")
    return accel / (2.0 * math.pi)


def temperature_from_field(eps: float) -> float:
    """k_B T / (m c^2) = eps / 2pi"""
    _require_field(eps)
    return unruh_temperature(eps)


def temperature_from_entropy(eps: float, step: float = 1e-4) -> float:
    """1/T = dS/dm at fixed field, with S/k_B = W/hbar; units m c^2/k_B"""
    _require_field(eps)

    def entropy(mass: float) -> float:
        # eps scales as 1/m^2 at fixed E
        return euclidean_action(eps / (mass * mass))

    slope = (entropy(1.0 + step) - entropy(1.0 - step)) / (2.0 * step)
    return 1.0 / slope
