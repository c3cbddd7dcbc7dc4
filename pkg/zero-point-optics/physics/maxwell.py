"""Spin-1 operator formalism for the Maxwell field.

The Riemann-Silberstein vector F = E + iB evolves under H = c p.Gamma with
Gamma = beta (x) S on the six-component space (forward block first). Velocities
V = dH/dp = c beta (x) S do not commute in the plane transverse to p; the
commutator, taken between helicity eigenstates, is i c^2 Lambda.
"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, field_validator

from physics.errors import ConsistencyError, DomainError, NonConvergence
from physics.types import Branch, BranchPair, Helicity

ComplexMatrix = npt.NDArray[np.complex128]
Vector = Sequence[float] | npt.NDArray[np.float64]

UNIT_TOL = 1e-12
INVARIANT_TOL = 1e-13
HERMITIAN_TOL = 1e-13
JACOBI_TOL = 1e-15
JACOBI_MAX_SWEEPS = 50
SAME_BRANCH_PAIRS = (BranchPair.FORWARD_FORWARD, BranchPair.BACKWARD_BACKWARD)
GROUP_TOL = 1e-9
# residual norm below which a complexified real eigenvector is a repeat
REPEAT_TOL = 1e-6

_LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _LEVI_CIVITA[_i, _j, _k] = 1.0
    _LEVI_CIVITA[_i, _k, _j] = -1.0


## VALUE TYPES
class FieldPair(BaseModel):
    model_config = ConfigDict(frozen=True)

    e_field: tuple[float, float, float]
    b_field: tuple[float, float, float]

    @field_validator("e_field", "b_field")
    @classmethod
    def _check_finite(cls, value: tuple[float, float, float]):
        if not all(math.isfinite(component) for component in value):
            raise ValueError(f"Field components must be finite, got '{value}'")
        return value


class PhotonKinematics(BaseModel):
    model_config = ConfigDict(frozen=True)

    wavelength: float = Field(gt=0, allow_inf_nan=False)
    helicity: Helicity = Helicity.POSITIVE
    direction: tuple[float, float, float] = (0.0, 0.0, 1.0)

    @field_validator("direction")
    @classmethod
    def _check_unit(cls, value: tuple[float, float, float]):
        if abs(math.hypot(*value) - 1.0) > UNIT_TOL:
            raise ValueError(f"Direction must be a unit vector, got '{value}'")
        return value


class SlitStateCount(BaseModel):
    model_config = ConfigDict(frozen=True)

    count: float = Field(ge=0)
    ground_state_confined: bool


@dataclass(frozen=True)
class OperatorSet:
    """Spin matrices, the branch matrix beta and its projectors, for a given c"""

    spin: tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix]
    beta: ComplexMatrix
    forward: ComplexMatrix
    backward: ComplexMatrix
    c: float = 1.0

    @staticmethod
    def build(c: float = 1.0) -> "OperatorSet":
        beta = np.kron(np.diag([1.0, -1.0]), np.identity(3)).astype(complex)
        identity = np.identity(6, dtype=complex)
        return OperatorSet(
            spin=spin_matrices(),
            beta=beta,
            forward=0.5 * (identity + beta),
            backward=0.5 * (identity - beta),
            c=c,
        )

    def projector(self, branch: Branch) -> ComplexMatrix:
        return self.forward if branch is Branch.FORWARD else self.backward

    def along(self, vector: Vector) -> ComplexMatrix:
        """a.S for a real 3-vector a"""
        components = np.asarray(vector, dtype=float)
        return np.einsum("j,jkl->kl", components, np.stack(self.spin))

    def velocity(self, vector: Vector) -> ComplexMatrix:
        """a.V with V = c beta (x) S"""
        return self.c * np.kron(np.diag([1.0, -1.0]), self.along(vector))

    def unbranched_velocity(self, vector: Vector) -> ComplexMatrix:
        """a.(c 1 (x) S), the velocity without the branch sign"""
        return self.c * np.kron(np.identity(2), self.along(vector))


## LINEAR ALGEBRA
def _commutator(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    return a @ b - b @ a


def _jacobi_symmetric(
    a: npt.NDArray[np.float64],
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    a = np.array(a, dtype=float)
    n = len(a)
    vectors = np.identity(n)
    scale = max(float(np.linalg.norm(a)), np.finfo(float).tiny)
    # entries this small cannot keep the off-diagonal norm above tolerance
    negligible = JACOBI_TOL * scale / n
    for _ in range(JACOBI_MAX_SWEEPS):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= JACOBI_TOL * scale:
            return np.diag(a).copy(), vectors
        rotated = False
        for k in range(n - 1):
            for m in range(k + 1, n):
                if abs(a[k, m]) <= negligible:
                    continue
                rotated = True
                # rotate to make a[k, m] = 0
                phi = (a[m, m] - a[k, k]) / (2.0 * a[k, m])
                t = 1.0 / (abs(phi) + math.sqrt(phi * phi + 1.0))
                if phi < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rotation = np.identity(n)
                rotation[k, k] = rotation[m, m] = c
                rotation[k, m] = s
                rotation[m, k] = -s
                a = rotation.T @ a @ rotation
                a[k, m] = a[m, k] = 0.0
                vectors = vectors @ rotation
        if not rotated:
            return np.diag(a).copy(), vectors
    raise NonConvergence(
        f"Jacobi rotations did not converge within '{JACOBI_MAX_SWEEPS}' sweeps"
    )


def eigh_jacobi(h: ComplexMatrix) -> tuple[npt.NDArray[np.float64], ComplexMatrix]:
    """Eigenvalues (ascending) and eigenvector columns of a small Hermitian matrix.

    The n x n problem is embedded as the real symmetric [[A, -B], [B, A]] with
    h = A + iB; every eigenvalue appears twice there, once for z and once for iz.
    """
    h = np.asarray(h, dtype=complex)
    n = len(h)
    if h.shape != (n, n):
        raise DomainError(f"Expected a square matrix, got shape '{h.shape}'")
    tolerance = HERMITIAN_TOL * max(1.0, float(np.abs(h).max()))
    if not np.allclose(h, h.conj().T, rtol=0.0, atol=tolerance):
        raise DomainError("Matrix is not Hermitian")
    real, imag = h.real, h.imag
    embedded = np.block([[real, -imag], [imag, real]])
    values, vectors = _jacobi_symmetric(embedded)
    order = np.argsort(values, kind="stable")
    scale = max(1.0, float(np.abs(values).max()))
    # indices of the embedded spectrum grouped by (numerically) equal eigenvalue
    groups: list[list[int]] = [[int(order[0])]]
    for previous, index in zip(order, order[1:]):
        if values[index] - values[previous] > GROUP_TOL * scale:
            groups.append([])
        groups[-1].append(int(index))
    kept: list[ComplexMatrix] = []
    for group in groups:
        candidates = [vectors[:n, index] + 1j * vectors[n:, index] for index in group]
        for _ in range(len(group) // 2):
            residuals = [
                candidate
                - sum((np.vdot(chosen, candidate) * chosen for chosen in kept), 0)
                for candidate in candidates
            ]
            norms = [float(np.linalg.norm(residual)) for residual in residuals]
            best = int(np.argmax(norms))
            if norms[best] < REPEAT_TOL:
                break
            kept.append(residuals[best] / norms[best])
    if len(kept) != n:
        raise NonConvergence(
            f"Recovered '{len(kept)}' of '{n}' eigenvectors from the real embedding"
        )
    basis = np.column_stack(kept)
    rayleigh = np.real(np.einsum("ij,ik,kj->j", basis.conj(), h, basis))
    return rayleigh, basis


def _unit(direction: Vector) -> npt.NDArray[np.float64]:
    vector = np.asarray(direction, dtype=float)
    if vector.shape != (3,) or abs(float(np.linalg.norm(vector)) - 1.0) > UNIT_TOL:
        raise DomainError(f"Direction must be a unit 3-vector, got '{direction}'")
    return vector


def transverse_basis(
    direction: Vector,
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """Orthonormal e1, e2 transverse to n with e1 x e2 = n"""
    n = _unit(direction)
    helper = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = helper - np.dot(helper, n) * n
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(n, e1)


## OPERATORS
def field_invariants(fp: FieldPair) -> tuple[float, float]:
    """(|E|^2 - |B|^2, E.B) from F.F with F = E + iB"""
    e = np.asarray(fp.e_field, dtype=float)
    b = np.asarray(fp.b_field, dtype=float)
    f = e + 1j * b
    square = complex(np.sum(f * f))
    scalar, pseudo = square.real, 0.5 * square.imag
    direct = (float(np.dot(e, e) - np.dot(b, b)), float(np.dot(e, b)))
    scale = max(1.0, float(np.dot(e, e) + np.dot(b, b)))
    mismatch = max(abs(scalar - direct[0]), abs(pseudo - direct[1]))
    if mismatch > INVARIANT_TOL * scale:
        raise ConsistencyError(f"Field invariants disagree for '{fp}'")
    return scalar, pseudo


def spin_matrices() -> tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix]:
    """(S_j)_kl = -i eps_jkl"""
    s = -1j * _LEVI_CIVITA
    return s[0], s[1], s[2]


def spin_algebra_residual() -> float:
    """Largest entry of [S_i, S_j] - i eps_ijk S_k and sum S_j^2 - 2"""
    spin = spin_matrices()
    residual = float(np.abs(sum(m @ m for m in spin) - 2.0 * np.identity(3)).max())
    for i in range(3):
        for j in range(3):
            expected = 1j * sum(_LEVI_CIVITA[i, j, k] * spin[k] for k in range(3))
            residual = max(
                residual, float(np.abs(_commutator(spin[i], spin[j]) - expected).max())
            )
    return residual


def hamiltonian(p: Vector, c: float = 1.0) -> ComplexMatrix:
    """H = c beta (x) (p.S), Hermitian with spectrum {+c|p|, -c|p|, 0} each twice"""
    momentum = np.asarray(p, dtype=float)
    if momentum.shape != (3,) or not np.any(momentum):
        raise DomainError(f"Momentum must be a nonzero 3-vector, got '{p}'")
    return OperatorSet.build(c).velocity(momentum)


def helicity_eigenstate(direction: Vector, helicity: Helicity) -> ComplexMatrix:
    """Transverse eigenvector of n.S with eigenvalue Lambda.

    Phase fixed so the first nonzero component is real and positive.
    """
    n = _unit(direction)
    values, vectors = eigh_jacobi(OperatorSet.build().along(n))
    state = vectors[:, int(np.argmin(np.abs(values - int(helicity))))]
    lead = state[np.flatnonzero(np.abs(state) > UNIT_TOL)[0]]
    return state * (abs(lead) / lead)


def _branch_state(
    direction: Vector, helicity: Helicity, branch: Branch
) -> ComplexMatrix:
    transverse = helicity_eigenstate(direction, helicity)
    empty = np.zeros(3, dtype=complex)
    if branch is Branch.FORWARD:
        return np.concatenate([transverse, empty])
    return np.concatenate([empty, transverse])


def velocity_commutator(
    direction: Vector,
    helicity: Helicity,
    branch_pair: BranchPair,
    c: float = 1.0,
    state_branch: Branch = Branch.FORWARD,
) -> complex:
    """Expectation of [V_1, V_2] transverse to n on a helicity eigenstate.

    Same-branch pairs project the velocities onto one branch and evaluate on
    that branch (i c^2 Lambda). The mixed pair [c 1 (x) S_1, c beta (x) S_2]
    equals i c^2 beta (x) (n.S) and is evaluated on state_branch.
    """
    operators = OperatorSet.build(c)
    e1, e2 = transverse_basis(direction)
    match branch_pair:
        case BranchPair.FORWARD_FORWARD | BranchPair.BACKWARD_BACKWARD:
            branch = (
                Branch.FORWARD
                if branch_pair is BranchPair.FORWARD_FORWARD
                else Branch.BACKWARD
            )
            projector = operators.projector(branch)
            first = projector @ operators.velocity(e1) @ projector
            second = projector @ operators.velocity(e2) @ projector
        case BranchPair.MIXED:
            branch = state_branch
            first = operators.unbranched_velocity(e1)
            second = operators.velocity(e2)
    state = _branch_state(direction, helicity, branch)
    return complex(np.vdot(state, _commutator(first, second) @ state))


def mixed_commutator_identity(direction: Vector, c: float = 1.0) -> float:
    """Largest entry of [c 1 (x) S_1, c beta (x) S_2] - i c^2 beta (x) (n.S)"""
    operators = OperatorSet.build(c)
    n = _unit(direction)
    e1, e2 = transverse_basis(n)
    commutator = _commutator(operators.unbranched_velocity(e1), operators.velocity(e2))
    expected = 1j * c * operators.velocity(n)
    return float(np.abs(commutator - expected).max())


## TRANSVERSAL STATES
def quantized_radius(n: int, wavelength: float) -> float:
    """R_n = (lambda/2pi) sqrt(2n + 1)"""
    if n < 0 or int(n) != n:
        raise DomainError(f"Radius level must be a non-negative integer, got '{n}'")
    if not wavelength > 0:
        raise DomainError(f"Wavelength must be positive, got '{wavelength}'")
    return wavelength / (2.0 * math.pi) * math.sqrt(2 * n + 1)


def transversal_state_density(wavelength: float) -> float:
    if not wavelength > 0:
        raise DomainError(f"Wavelength must be positive, got '{wavelength}'")
    return 2.0 * math.pi / (wavelength * wavelength)


def slit_state_count(slit_width: float, wavelength: float) -> SlitStateCount:
    """N = (pi^2/2)(w/lambda)^2; only the ground state fits when w <= lambda/pi"""
    if not slit_width > 0 or not wavelength > 0:
        raise DomainError(
            "Slit width and wavelength must be positive, "
            f"got '{slit_width}', '{wavelength}'"
        )
    ratio = slit_width / wavelength
    return SlitStateCount(
        count=0.5 * math.pi**2 * ratio * ratio,
        ground_state_confined=slit_width <= wavelength / math.pi,
    )


def precession_frequency(wavelength: float, c: float = 1.0) -> float:
    """Omega = 2 pi c / lambda"""
    if not wavelength > 0:
        raise DomainError(f"Wavelength must be positive, got '{wavelength}'")
    return 2.0 * math.pi * c / wavelength
