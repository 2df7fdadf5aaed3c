"""Shared numeric types and small vector/matrix primitives."""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

# unit roundoff of binary64
EPS = sys.float_info.epsilon


class Arrow3Error(Exception):
    """Base class for errors raised by this package."""


class SolverFault(Arrow3Error):
    """An intermediate quantity became non-finite where that should be impossible."""


class IterationLimitExceeded(SolverFault):
    def __init__(self, method: str, max_iter: int, last: float):
        super().__init__(f"{method} zero finder did not terminate in {max_iter} steps (last iterate {last!r})")
        self.method = method
        self.max_iter = max_iter
        self.last = last


class SweepLimitExceeded(SolverFault):
    pass


@dataclass(frozen=True, slots=True)
class SymMat3:
    """Real symmetric 3x3 matrix stored by its upper triangle."""

    a11: float
    a12: float
    a13: float
    a22: float
    a23: float
    a33: float

    def __post_init__(self):
        if not math.isfinite(self.a11 + self.a12 + self.a13 + self.a22 + self.a23 + self.a33):
            # a sum of finite values can still overflow; look entry by entry before rejecting
            for name in ("a11", "a12", "a13", "a22", "a23", "a33"):
                v = getattr(self, name)
                if not math.isfinite(v):
                    raise ValueError(f"SymMat3 entry {name} is not finite: {v!r}")

    @classmethod
    def from_array(cls, M) -> "SymMat3":
        """Build from a full 3x3 array (upper triangle is used) or from six entries."""
        a = np.asarray(M, dtype=float)
        if a.shape == (6,):
            return cls(*(float(x) for x in a))
        if a.shape != (3, 3):
            raise ValueError(f"expected shape (3, 3) or (6,), got {a.shape}")
        return cls(float(a[0, 0]), float(a[0, 1]), float(a[0, 2]),
                   float(a[1, 1]), float(a[1, 2]), float(a[2, 2]))

    @classmethod
    def diag(cls, d1: float, d2: float, d3: float) -> "SymMat3":
        return cls(d1, 0.0, 0.0, d2, 0.0, d3)

    def entries(self) -> tuple[float, float, float, float, float, float]:
        return (self.a11, self.a12, self.a13, self.a22, self.a23, self.a33)

    def rows(self) -> tuple[tuple[float, float, float], ...]:
        return ((self.a11, self.a12, self.a13),
                (self.a12, self.a22, self.a23),
                (self.a13, self.a23, self.a33))

    def to_array(self) -> np.ndarray:
        return np.array(self.rows())

    def trace(self) -> float:
        return self.a11 + self.a22 + self.a33

    def max_abs(self) -> float:
        return max(abs(x) for x in self.entries())

    def frob(self) -> float:
        return frob_norm(self.rows())

    def scaled(self, factor: float) -> "SymMat3":
        return SymMat3(*(factor * x for x in self.entries()))


class Vec3(NamedTuple):
    x: float
    y: float
    z: float

    def dot(self, other: Sequence[float]) -> float:
        return self.x * other[0] + self.y * other[1] + self.z * other[2]

    def norm(self) -> float:
        return math.hypot(self.x, self.y, self.z)

    def scale(self, k: float) -> "Vec3":
        return Vec3(k * self.x, k * self.y, k * self.z)

    def normalized(self) -> "Vec3":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize a zero vector")
        # divide rather than multiply by 1/n: one rounding per component
        return Vec3(self.x / n, self.y / n, self.z / n)


@dataclass(frozen=True, slots=True)
class EigenDecomp3:
    """Eigenvalues in descending order and a 3x3 matrix whose columns are eigenvectors.

    ``path`` records which branch of the solver produced the result
    (``"diagonal"``, ``"deflated"``, ``"arrow"`` or ``"oracle"``).
    """

    lam: tuple[float, float, float]
    V: np.ndarray
    path: str = "arrow"

    def Lambda(self) -> np.ndarray:
        return np.diag(self.lam)


def frob_norm(M) -> float:
    """Frobenius norm of a 3x3 (or any small) matrix, scaled to avoid overflow."""
    flat = [float(x) for row in M for x in row]
    m = max((abs(x) for x in flat), default=0.0)
    if m == 0.0 or not math.isfinite(m):
        return m
    return m * math.sqrt(sum((x / m) ** 2 for x in flat))


def hypot2(a: float, b: float) -> float:
    return math.hypot(a, b)


def cross(u: Sequence[float], v: Sequence[float]) -> Vec3:
    return Vec3(u[1] * v[2] - u[2] * v[1],
                u[2] * v[0] - u[0] * v[2],
                u[0] * v[1] - u[1] * v[0])


def orthogonality_error(V) -> float:
    """||I - V^T V||_F."""
    V = np.asarray(V, dtype=float)
    return frob_norm(np.eye(V.shape[1]) - V.T @ V)


def fix_signs(V: np.ndarray) -> np.ndarray:
    """Flip columns so the largest-magnitude entry of each is positive."""
    idx = np.argmax(np.abs(V), axis=0)
    signs = np.where(V[idx, np.arange(V.shape[1])] < 0, -1.0, 1.0)
    return V * signs
