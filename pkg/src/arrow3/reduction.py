"""Reduction of a symmetric 3x3 matrix to an ordered arrow matrix.

A single rotation in the (1,2)-plane diagonalizes the leading 2x2 block of
``S``. Writing ``R = [[c, s], [-s, c]]`` and ``Q = diag(R, 1)``::

    Q S Q^T = [[alpha1, 0,      beta1],
               [0,      alpha2, beta2],
               [beta1,  beta2,  gamma]]

with ``alpha1 >= alpha2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import SymMat3


@dataclass(frozen=True, slots=True)
class ArrowMat3:
    alpha1: float
    alpha2: float
    beta1: float
    beta2: float
    gamma: float

    def __post_init__(self):
        isf = math.isfinite
        if not (isf(self.alpha1) and isf(self.alpha2) and isf(self.beta1)
                and isf(self.beta2) and isf(self.gamma)):
            raise ValueError(f"non-finite arrow entries: {self}")
        if self.alpha1 < self.alpha2:
            raise ValueError(f"arrow shaft is not ordered: alpha1={self.alpha1!r} < alpha2={self.alpha2!r}")

    @property
    def abar(self) -> float:
        return self.alpha1 - self.alpha2

    def is_reduced(self) -> bool:
        return self.alpha1 > self.alpha2 and self.beta1 != 0.0 and self.beta2 != 0.0

    def to_array(self) -> np.ndarray:
        return np.array([[self.alpha1, 0.0, self.beta1],
                         [0.0, self.alpha2, self.beta2],
                         [self.beta1, self.beta2, self.gamma]])

    def to_symmat(self) -> SymMat3:
        return SymMat3(self.alpha1, 0.0, self.beta1, self.alpha2, self.beta2, self.gamma)


@dataclass(frozen=True, slots=True)
class JacobiRot:
    """Plane rotation ``[[c, s], [-s, c]]``."""

    c: float
    s: float

    def matrix(self) -> np.ndarray:
        return np.array([[self.c, self.s], [-self.s, self.c]])

    def embed(self) -> np.ndarray:
        """The rotation acting on the (1,2)-plane of R^3."""
        return np.array([[self.c, self.s, 0.0],
                         [-self.s, self.c, 0.0],
                         [0.0, 0.0, 1.0]])


IDENTITY_ROT = JacobiRot(1.0, 0.0)


def jacobi_rotation(a11: float, a12: float, a22: float) -> tuple[JacobiRot, float, float]:
    """Rotation diagonalizing ``[[a11, a12], [a12, a22]]`` with ordered diagonal.

    Returns ``(rot, d1, d2)`` where ``rot.matrix() @ M @ rot.matrix().T`` is
    ``diag(d1, d2)`` and ``d1 >= d2``.
    """
    if a12 == 0.0:
        c, s, d1, d2 = 1.0, 0.0, a11, a22
    else:
        tau = (a11 - a22) / (2.0 * a12)
        if abs(tau) > 1e150:
            # sqrt(1 + tau^2) would overflow; t ~ 1/(2 tau)
            t = 0.5 / tau
        else:
            t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
        c = 1.0 / math.sqrt(1.0 + t * t)
        s = t * c
        d1 = a11 + t * a12
        d2 = a22 - t * a12
    if d1 < d2:
        # compose with the quarter turn (c, s) -> (-s, c), which swaps the rows
        c, s, d1, d2 = -s, c, d2, d1
    return JacobiRot(c, s), d1, d2


def reduce_to_arrow(S: SymMat3) -> tuple[ArrowMat3, JacobiRot]:
    """Ordered arrow form of ``S`` and the (1,2)-plane rotation ``Q`` producing it.

    ``Q.embed() @ S.to_array() @ Q.embed().T`` reproduces the arrow.
    """
    rot, d1, d2 = jacobi_rotation(S.a11, S.a12, S.a22)
    c, s = rot.c, rot.s
    beta1 = c * S.a13 + s * S.a23
    beta2 = -s * S.a13 + c * S.a23
    return ArrowMat3(d1, d2, beta1, beta2, S.a33), rot
