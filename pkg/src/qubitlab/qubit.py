"""Qubit (Bloch ball) and classical-bit (1-simplex) state spaces.

Rotation convention, fixed here once and verified numerically in the test
suite: the Hilbert-space transformation U = exp(i*theta*sigma_j) moves the
Bloch vector by the real-space angle -2*theta about axis j under the
right-hand rule. Real-space angles are twice Hilbert-space angles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, InvalidStateError
from .hilbert import ATOL_EXACT, ID2, SIGMA_X, SIGMA_Y, SIGMA_Z, as_matrix, is_hermitian

# classification tolerance for pure/mixed, looser than exact algebra since
# states may come out of long rotation chains
PURITY_ATOL = 1e-9

_AXES = {
    "x": np.array([1.0, 0.0, 0.0]),
    "y": np.array([0.0, 1.0, 0.0]),
    "z": np.array([0.0, 0.0, 1.0]),
}


def axis_vector(axis) -> np.ndarray:
    """Resolve 'x'/'y'/'z' or a nonzero 3-vector to a unit axis."""
    if isinstance(axis, str):
        if axis not in _AXES:
            raise DomainError(f"unknown axis name {axis!r}")
        return _AXES[axis].copy()
    v = np.asarray(axis, dtype=float)
    if v.shape != (3,):
        raise DimensionError(f"axis must be a 3-vector, got shape {v.shape}")
    n = np.linalg.norm(v)
    if n == 0.0 or not math.isfinite(n):
        raise DomainError("axis vector must be nonzero and finite")
    return v / n


@dataclass(frozen=True)
class QubitState:
    """A qubit density matrix, validated on construction."""

    rho: np.ndarray

    def __post_init__(self):
        rho = as_matrix(self.rho, dims=(2,))
        tr = complex(np.trace(rho))
        if abs(tr - 1.0) > ATOL_EXACT:
            raise InvalidStateError(f"density matrix trace must be 1, got {tr}")
        if not is_hermitian(rho):
            raise InvalidStateError("density matrix must be Hermitian")
        lo = float(np.linalg.eigvalsh(rho).min())
        if lo < -ATOL_EXACT:
            raise InvalidStateError(f"density matrix has negative eigenvalue {lo:.3e}")
        object.__setattr__(self, "rho", rho)

    @classmethod
    def from_bloch(cls, bloch) -> QubitState:
        r = np.asarray(bloch, dtype=float)
        if r.shape != (3,):
            raise DimensionError(f"Bloch vector must be a 3-vector, got shape {r.shape}")
        if np.linalg.norm(r) > 1.0 + ATOL_EXACT:
            raise InvalidStateError("Bloch vector lies outside the unit ball")
        rho = (ID2 + r[0] * SIGMA_X + r[1] * SIGMA_Y + r[2] * SIGMA_Z) / 2.0
        return cls(rho)

    @classmethod
    def up(cls) -> QubitState:
        return cls.from_bloch([0.0, 0.0, 1.0])

    @classmethod
    def down(cls) -> QubitState:
        return cls.from_bloch([0.0, 0.0, -1.0])

    @classmethod
    def maximally_mixed(cls) -> QubitState:
        return cls.from_bloch([0.0, 0.0, 0.0])

    @property
    def bloch(self) -> np.ndarray:
        """Expansion coefficients of rho over the Pauli basis (times 2)."""
        return np.array(
            [float(np.trace(self.rho @ s).real) for s in (SIGMA_X, SIGMA_Y, SIGMA_Z)]
        )

    @property
    def purity(self) -> float:
        return float(np.trace(self.rho @ self.rho).real)

    @property
    def is_pure(self) -> bool:
        # purity 1 <=> |bloch| = 1 <=> rank-1 projector
        return abs(self.purity - 1.0) <= PURITY_ATOL


def bloch_roundtrip(state: QubitState) -> QubitState:
    """Rebuild the state from its Bloch vector (density -> Bloch -> density)."""
    return QubitState.from_bloch(state.bloch)


def su2_rotation(axis, theta: float) -> np.ndarray:
    """U = exp(i*theta * n.sigma) for a named axis or arbitrary axis vector."""
    if not math.isfinite(theta):
        raise DomainError("rotation angle must be finite")
    n = axis_vector(axis)
    ns = n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z
    return math.cos(theta) * ID2 + 1j * math.sin(theta) * ns


def su2_rotate(state: QubitState, axis, theta: float) -> QubitState:
    """Conjugate the state: U rho U^dagger with U = exp(i*theta * n.sigma)."""
    u = su2_rotation(axis, theta)
    return QubitState(u @ state.rho @ u.conj().T)


def so3_rotation(axis, angle: float) -> np.ndarray:
    """Right-handed real-space rotation matrix about `axis` by `angle` (Rodrigues)."""
    n = axis_vector(axis)
    k = np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])
    return np.eye(3) + math.sin(angle) * k + (1.0 - math.cos(angle)) * (k @ k)


def bloch_rotation_for(axis, theta: float) -> np.ndarray:
    """The SO(3) rotation that su2_rotate(., axis, theta) induces on Bloch vectors."""
    return so3_rotation(axis, -2.0 * theta)


def gbit_dimension(s: int) -> int:
    """Probability-space dimension 2**s - 1 of the generalized bit."""
    if isinstance(s, bool) or not isinstance(s, (int, np.integer)) or s < 1:
        raise DomainError(f"s must be an integer >= 1, got {s!r}")
    return 2**int(s) - 1


@dataclass(frozen=True)
class ClassicalBitState:
    """One ball over two boxes: the whole state is the probability of box 1."""

    p1: float

    def __post_init__(self):
        if not (0.0 <= self.p1 <= 1.0):
            raise InvalidStateError(f"p1 must lie in [0, 1], got {self.p1}")

    @property
    def p2(self) -> float:
        return 1.0 - self.p1

    @property
    def is_pure(self) -> bool:
        return self.p1 in (0.0, 1.0)


def classical_pure_path(
    a: ClassicalBitState, b: ClassicalBitState, steps: int
) -> list[ClassicalBitState]:
    """The unique continuous path between distinct pure bit states.

    `steps` counts interior points; the path is linear in p1 and every
    interior point is mixed, which is the whole point of exposing it.
    """
    if not (a.is_pure and b.is_pure):
        raise DomainError("path endpoints must be pure classical bit states")
    if a.p1 == b.p1:
        raise DomainError("path endpoints must differ")
    if steps < 1:
        raise DomainError("need at least one interior step")
    ps = np.linspace(a.p1, b.p1, steps + 2)
    return [ClassicalBitState(float(p)) for p in ps]
