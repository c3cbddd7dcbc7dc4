"""Numeric kernels shared by every physics module.

Stable small-argument expansions, adaptive Gauss-Kronrod quadrature on finite and
semi-infinite ranges, alternating/monotone series summation and the Bessel
function J1 with its zeros. Functions accepting arrays evaluate elementwise and
return a numpy scalar for scalar input.
"""

import heapq
import logging
import math
from itertools import count
from typing import Callable, Iterable, Sequence

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import brentq

from physics.errors import DomainError, NonConvergence

logger = logging.getLogger(__name__)

Real = float | npt.NDArray[np.float64]
Integrand = Callable[[npt.NDArray[np.float64]], npt.ArrayLike]
Term = Callable[[int], float]

DEFAULT_REL_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-14
DEFAULT_BUDGET = 100_000
SPLIT_POINT = 1.0
SERIES_MAX_TERMS = 1_000_000
SERIES_FLOOR = 1e-300
SINH_SERIES_LIMIT = 1e-3
J1_SERIES_LIMIT = 12.0
J1_TERM_TOL = 1e-17
PROBE_TOLERANCES = (1e-3, 1e-5, 1e-7, 1e-9)

# Kronrod 15-point abscissae (descending, last is the centre) and weights,
# plus the embedded 7-point Gauss weights on every second abscissa.
_XGK = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ]
)
_WGK = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
_WG = np.array(
    [
        0.0,
        0.129484966168869693270611432679082,
        0.0,
        0.279705391489276667901467771423780,
        0.0,
        0.381830050505118944950369775488975,
        0.0,
        0.417959183673469387755102040816327,
    ]
)
_NODES = np.concatenate([-_XGK, _XGK[-2::-1]])
_KRONROD = np.concatenate([_WGK, _WGK[-2::-1]])
_GAUSS = np.concatenate([_WG, _WG[-2::-1]])
PANEL_EVALUATIONS = _NODES.size


## RESULT TYPES
class QuadratureResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float
    abs_error_estimate: float = Field(ge=0)
    evaluations: int = Field(ge=1)

    @staticmethod
    def total(parts: Sequence["QuadratureResult"]) -> "QuadratureResult":
        return QuadratureResult(
            value=math.fsum(part.value for part in parts),
            abs_error_estimate=math.fsum(part.abs_error_estimate for part in parts),
            evaluations=sum(part.evaluations for part in parts),
        )


class SeriesResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float
    last_term_magnitude: float = Field(ge=0)
    terms_used: int = Field(ge=1)

    def scaled(self, factor: float) -> "SeriesResult":
        return SeriesResult(
            value=factor * self.value,
            last_term_magnitude=abs(factor) * self.last_term_magnitude,
            terms_used=self.terms_used,
        )


## ELEMENTARY KERNELS
def _elementwise(func: Callable[[float], float], x: npt.ArrayLike) -> Real:
    if np.ndim(x) == 0:
        return func(float(x))  # type: ignore[arg-type]
    values = np.asarray(x, dtype=float)
    flat = np.fromiter((func(v) for v in values.ravel()), float, values.size)
    return flat.reshape(values.shape)


def sinc(x: npt.ArrayLike) -> Real:
    """sin(x)/x with the removable singularity at 0"""
    return np.sinc(np.divide(x, np.pi))


def one_minus_x_over_sinh(x: npt.ArrayLike) -> Real:
    """1 - x/sinh(x) for x >= 0 without cancellation near 0"""
    values = np.asarray(x, dtype=float)
    if np.any(values < 0):
        raise DomainError(f"1 - x/sinh(x) is evaluated for x >= 0, got '{x}'")
    small = values < SINH_SERIES_LIMIT
    safe = np.where(small, 1.0, values)
    # x/sinh(x) = 2x e^{-x} / (1 - e^{-2x}) stays finite for large x
    direct = 1.0 - 2.0 * safe * np.exp(-safe) / -np.expm1(-2.0 * safe)
    x2 = values * values
    series = x2 / 6.0 - 7.0 * x2 * x2 / 360.0 + 31.0 * x2 * x2 * x2 / 15120.0
    return np.where(small, series, direct)[()]


## BESSEL J1
def _j1_series(x: float) -> float:
    half = 0.5 * x
    term = half
    terms = [term]
    peak = abs(term)
    for k in count(1):
        term *= -half * half / (k * (k + 1))
        terms.append(term)
        peak = max(peak, abs(term))
        # terms grow up to k ~ x/2 and fall monotonically after the peak
        if abs(term) <= J1_TERM_TOL * peak:
            break
    return math.fsum(terms)


def _j1_hankel(x: float) -> float:
    mu = 4.0
    p_terms = [1.0]
    q_terms: list[float] = []
    term = 1.0
    for k in count(1):
        nxt = term * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        if abs(nxt) >= abs(term) or abs(nxt) < J1_TERM_TOL:
            break
        term = nxt
        if k % 2 == 0:
            p_terms.append(term if (k // 2) % 2 == 0 else -term)
        else:
            q_terms.append(term if ((k - 1) // 2) % 2 == 0 else -term)
    chi = x - 0.75 * math.pi
    p = math.fsum(p_terms)
    q = math.fsum(q_terms)
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(chi) - q * math.sin(chi))


def _j1_scalar(x: float) -> float:
    ax = abs(x)
    value = _j1_series(ax) if ax <= J1_SERIES_LIMIT else _j1_hankel(ax)
    return value if x >= 0 else -value


def bessel_j1(x: npt.ArrayLike) -> Real:
    """Bessel function of the first kind, order one.

    Power series for |x| <= 12, Hankel asymptotic expansion beyond. Odd in x.
    """
    return _elementwise(_j1_scalar, x)


def bracket_root(
    func: Callable[[float], float],
    lo: float,
    hi: float,
) -> float:
    """Root of func in [lo, hi]; func(lo) and func(hi) must differ in sign"""
    try:
        return float(
            brentq(func, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
        )
    except ValueError as exc:
        raise DomainError(f"No sign change of the function in '[{lo}, {hi}]'") from exc
    except RuntimeError as exc:
        raise NonConvergence(f"Root in '[{lo}, {hi}]' not located") from exc


def bessel_j1_zeros(k: int) -> list[float]:
    """First k positive zeros of J1 in increasing order"""
    if k < 1:
        raise DomainError(f"Number of zeros must be at least 1, got '{k}'")
    zeros = []
    for index in range(1, k + 1):
        # McMahon's leading terms land within 0.1 of the zero
        beta = (index + 0.25) * math.pi
        guess = beta - 3.0 / (8.0 * beta)
        zeros.append(bracket_root(_j1_scalar, guess - 0.5, guess + 0.5))
    return zeros


## QUADRATURE
def _kronrod_panel(f: Integrand, lo: float, hi: float) -> tuple[float, float]:
    centre = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    nodes = centre + half * _NODES
    values = np.broadcast_to(np.asarray(f(nodes), dtype=float), nodes.shape)
    if not np.all(np.isfinite(values)):
        raise NonConvergence(f"Integrand is not finite on panel '[{lo}, {hi}]'")
    kronrod = half * float(np.dot(_KRONROD, values))
    gauss = half * float(np.dot(_GAUSS, values))
    error = abs(kronrod - gauss)
    resasc = half * float(np.dot(_KRONROD, np.abs(values - kronrod / (2.0 * half))))
    if resasc != 0.0 and error != 0.0:
        error = resasc * min(1.0, (200.0 * error / resasc) ** 1.5)
    if not math.isfinite(kronrod) or not math.isfinite(error):
        raise NonConvergence(f"Integrand is not finite on panel '[{lo}, {hi}]'")
    return kronrod, error


def integrate(
    f: Integrand,
    lo: float,
    hi: float,
    *,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    budget: int = DEFAULT_BUDGET,
) -> QuadratureResult:
    """Adaptive bisection of the worst panel with the Gauss-Kronrod 7/15 pair"""
    if lo == hi:
        return QuadratureResult(value=0.0, abs_error_estimate=0.0, evaluations=1)
    if hi < lo:
        flipped = integrate(f, hi, lo, rel_tol=rel_tol, abs_tol=abs_tol, budget=budget)
        return QuadratureResult(
            value=-flipped.value,
            abs_error_estimate=flipped.abs_error_estimate,
            evaluations=flipped.evaluations,
        )
    order = count()
    value, error = _kronrod_panel(f, lo, hi)
    evaluations = PANEL_EVALUATIONS
    panels = [(-error, next(order), lo, hi, value, error)]
    total, total_error = value, error
    while total_error > max(abs_tol, rel_tol * abs(total)):
        if evaluations + 2 * PANEL_EVALUATIONS > budget:
            raise NonConvergence(
                f"Quadrature budget of '{budget}' evaluations exhausted with "
                f"error estimate '{total_error:.3e}' on '[{lo}, {hi}]'"
            )
        _, _, left, right, old_value, old_error = heapq.heappop(panels)
        mid = 0.5 * (left + right)
        if not left < mid < right:
            raise NonConvergence(f"Quadrature panel collapsed at '{left}'")
        left_value, left_error = _kronrod_panel(f, left, mid)
        right_value, right_error = _kronrod_panel(f, mid, right)
        evaluations += 2 * PANEL_EVALUATIONS
        heapq.heappush(
            panels, (-left_error, next(order), left, mid, left_value, left_error)
        )
        heapq.heappush(
            panels, (-right_error, next(order), mid, right, right_value, right_error)
        )
        total += left_value + right_value - old_value
        total_error += left_error + right_error - old_error
        if total_error <= max(abs_tol, rel_tol * abs(total)):
            # resum exactly before accepting
            total = math.fsum(panel[4] for panel in panels)
            total_error = math.fsum(panel[5] for panel in panels)
    logger.debug("quadrature on [%g, %g]: %d evaluations", lo, hi, evaluations)
    return QuadratureResult(
        value=math.fsum(panel[4] for panel in panels),
        abs_error_estimate=total_error,
        evaluations=evaluations,
    )


def integrate_semiinfinite(
    f: Integrand,
    singular_power: float,
    *,
    decay_rate: float = 1.0,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    budget: int = DEFAULT_BUDGET,
) -> QuadratureResult:
    """Integral of f(s)/s^p over (0, inf).

    Split at s = 1: the head is mapped by s = t^2, the tail by
    s = 1 - ln(u)/decay_rate with u in (0, 1].
    """
    if decay_rate <= 0:
        raise DomainError(f"Tail decay rate must be positive, got '{decay_rate}'")

    def head(t: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        # overflow near t = 0 surfaces as a non-finite panel, not a warning
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            return 2.0 * np.asarray(f(t * t)) * t ** (1.0 - 2.0 * singular_power)

    def tail(u: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        s = SPLIT_POINT - np.log(u) / decay_rate
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            return np.asarray(f(s)) / (s**singular_power * decay_rate * u)

    half_abs = 0.5 * abs_tol
    return QuadratureResult.total(
        [
            integrate(head, 0.0, 1.0, rel_tol=rel_tol, abs_tol=half_abs, budget=budget),
            integrate(tail, 0.0, 1.0, rel_tol=rel_tol, abs_tol=half_abs, budget=budget),
        ]
    )


def integrability_probe(
    f: Integrand,
    singular_power: float,
    tolerances: Iterable[float] = PROBE_TOLERANCES,
    *,
    budget: int = DEFAULT_BUDGET,
) -> list[int | None]:
    """Evaluation counts of integrate_semiinfinite per relative tolerance.

    None marks a tolerance the refinement could not reach within budget.
    """
    counts: list[int | None] = []
    for tolerance in tolerances:
        try:
            result = integrate_semiinfinite(
                f, singular_power, rel_tol=tolerance, abs_tol=0.0, budget=budget
            )
            counts.append(result.evaluations)
        except NonConvergence:
            counts.append(None)
    return counts


def gamma_identity(a: float, z: float) -> QuadratureResult:
    """a^{-z} from (1/Gamma(z)) * integral of s^{z-1} e^{-a s} over (0, inf)"""
    if a <= 0 or z <= 0:
        raise DomainError(
            f"Gamma representation needs a > 0 and z > 0, got '{a}', '{z}'"
        )
    raw = integrate_semiinfinite(lambda s: np.exp(-a * s), 1.0 - z, decay_rate=a)
    gamma = math.gamma(z)
    return QuadratureResult(
        value=raw.value / gamma,
        abs_error_estimate=raw.abs_error_estimate / gamma,
        evaluations=raw.evaluations,
    )


def subtracted_kernel(a: float, b: float) -> QuadratureResult:
    """Integral of [e^{-bs} - e^{-as}] s^{-3/2} over (0, inf).

    Equals 2 sqrt(pi)(sqrt(a) - sqrt(b)).
    """
    if a <= 0 or b <= 0:
        raise DomainError(f"Subtraction needs a > 0 and b > 0, got '{a}', '{b}'")
    # e^{-bs}(1 - e^{-(a-b)s}) keeps the small-s difference exact
    return integrate_semiinfinite(
        lambda s: -np.exp(-b * s) * np.expm1(-(a - b) * s),
        1.5,
        decay_rate=min(a, b),
        abs_tol=0.0,
    )


## SERIES
def _accumulate(term: Term, rel_tol: float, max_terms: int, kind: str) -> SeriesResult:
    terms: list[float] = []
    partial = 0.0
    for n in range(1, max_terms + 1):
        value = float(term(n))
        terms.append(value)
        partial += value
        magnitude = abs(value)
        if magnitude <= rel_tol * abs(partial) or magnitude < SERIES_FLOOR:
            logger.debug("%s series converged after %d terms", kind, n)
            return SeriesResult(
                value=math.fsum(terms), last_term_magnitude=magnitude, terms_used=n
            )
    raise NonConvergence(
        f"{kind.capitalize()} series did not reach relative tolerance "
        f"'{rel_tol}' within '{max_terms}' terms"
    )


def sum_alternating(
    term: Term,
    rel_tol: float = DEFAULT_REL_TOL,
    *,
    max_terms: int = SERIES_MAX_TERMS,
) -> SeriesResult:
    """Sum term(1) + term(2) + ... for signs alternating with decreasing size.

    The last included term bounds the truncation error.
    """
    return _accumulate(term, rel_tol, max_terms, "alternating")


def sum_monotone(
    term: Term,
    rel_tol: float = DEFAULT_REL_TOL,
    *,
    max_terms: int = SERIES_MAX_TERMS,
) -> SeriesResult:
    """Sum a same-sign series whose terms decay at least geometrically"""
    return _accumulate(term, rel_tol, max_terms, "monotone")
