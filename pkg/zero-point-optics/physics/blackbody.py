"""Single-mode Planck energetics with and without the zero-point term.

Everything is dimensionless: x = hbar*omega / k_B T carries the sign of omega,
energies are returned in the unit named by each function.
"""

import math

from pydantic import BaseModel, ConfigDict, Field
from scipy import constants

from physics.errors import ConsistencyError, DomainError


AGREEMENT_REL_TOL = 1e-13
# beyond this e^x overflows; 1/(e^x - 1) equals e^{-x} to double precision there
EXP_LIMIT = 700.0
EXCESS_SERIES_LIMIT = 0.1


class DimensionlessMode(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: float = Field(allow_inf_nan=False)
    omega_abs: float = Field(default=0.0, ge=0, allow_inf_nan=False)

    @staticmethod
    def from_si(omega: float, temperature: float) -> "DimensionlessMode":
        """omega in rad/s (signed), temperature in kelvin"""
        if temperature <= 0:
            raise DomainError(f"Temperature must be positive, got '{temperature}' K")
        return DimensionlessMode(
            x=constants.hbar * omega / (constants.k * temperature),
            omega_abs=abs(omega),
        )


def _require_nonzero(x: float) -> None:
    if x == 0:
        raise DomainError("Mode energetics have a simple pole at x '0'")
    if not math.isfinite(x):
        raise DomainError(f"Mode variable must be finite, got '{x}'")


def mean_occupation(x: float) -> float:
    """n = 1/(e^x - 1); negative on the backward-in-time branch x < 0"""
    _require_nonzero(x)
    if x > EXP_LIMIT:
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def mean_energy(x: float) -> float:
    """Mean thermal energy in units of hbar*omega"""
    return mean_occupation(x)


def energy_with_zpe(x: float) -> float:
    """E_T / (hbar*omega/2) = coth(x/2), checked against 2(n + 1/2)"""
    _require_nonzero(x)
    planck = 2.0 * (mean_occupation(x) + 0.5)
    coth = 1.0 / math.tanh(0.5 * x)
    if not math.isclose(planck, coth, rel_tol=AGREEMENT_REL_TOL):
        raise ConsistencyError(
            f"Zero-point energy forms disagree at x '{x}': '{planck!r}' vs '{coth!r}'"
        )
    return coth


def symmetrize(x: float) -> float:
    """(1/2)[E(omega) + E(-omega)] in units of hbar*|omega|"""
    _require_nonzero(x)
    sign = math.copysign(1.0, x)
    forward = sign * mean_energy(x)
    backward = -sign * mean_energy(-x)
    return 0.5 * (forward + backward)


def einstein_stern_excess(x: float) -> float:
    """(E + hbar*omega/2 - k_B T) / k_B T, which vanishes like x^2/12"""
    if not x > 0:
        raise DomainError(f"Einstein-Stern excess needs x > 0, got '{x}'")
    if x < EXCESS_SERIES_LIMIT:
        # y coth(y) - 1 with y = x/2
        y2 = 0.25 * x * x
        return y2 * (1 / 3 - y2 * (1 / 45 - y2 * (2 / 945 - y2 / 4725)))
    return x * (mean_occupation(x) + 0.5) - 1.0


def number_operator_energy(n: int, omega_abs: float) -> float:
    """hbar|omega|(n + 1/2) in units of hbar, from (a a^+ + a^+ a)/2"""
    if n < 0 or int(n) != n:
        raise DomainError(
            f"Occupation number must be a non-negative integer, got '{n}'"
        )
    if omega_abs < 0:
        raise DomainError(f"|omega| must be non-negative, got '{omega_abs}'")
    return omega_abs * (n + 0.5)


def zero_point_energy(omega_abs: float) -> float:
    """T -> 0 limit of E_T: hbar|omega|/2 in units of hbar"""
    return number_operator_energy(0, omega_abs)
