import math
from enum import IntEnum, StrEnum

from physics.errors import DomainError


## PATH TYPES
class Branch(StrEnum):
    FORWARD = "forward"
    BACKWARD = "backward"

    @property
    def sign(self) -> int:
        return 1 if self is Branch.FORWARD else -1


class BranchPair(StrEnum):
    FORWARD_FORWARD = "forward-forward"
    BACKWARD_BACKWARD = "backward-backward"
    MIXED = "mixed"


## PARTICLE TYPES
class Helicity(IntEnum):
    POSITIVE = 1
    NEGATIVE = -1


class StatisticalIndex(IntEnum):
    BOSON = -1
    FERMION = 1

    @staticmethod
    def for_spin(spin: float) -> "StatisticalIndex":
        """eta_s = exp[i pi (2s + 1)] restricted to half-integer spins"""
        twice = 2 * spin
        if spin < 0 or not math.isclose(twice, round(twice), abs_tol=1e-12):
            raise DomainError(f"Spin '{spin}' is not a non-negative half-integer")
        return (
            StatisticalIndex.BOSON
            if round(twice) % 2 == 0
            else StatisticalIndex.FERMION
        )


## DIFFRACTION TYPES
class PhaseMode(StrEnum):
    QUADRATIC = "quadratic"
    EXACT = "exact"


class SlitConvention(StrEnum):
    # phi = 1/sqrt(w) on |x| < w/2
    TOP_HAT = "top-hat"
    # full aperture 2w; its transform is the closed-form envelope sinc^2(beta K x)
    ENVELOPE = "envelope"


class PatternMode(StrEnum):
    CLOSED = "closed"
    LIMIT = "limit"
    QUADRATIC = "quadratic"
    EXACT = "exact"
