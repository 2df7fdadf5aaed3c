"""Exact and numerical deflation of an ordered arrow matrix.

A Givens rotation ``G`` in the (1,2)-plane with ``gc = beta2/h`` and
``gs = beta1/h`` (``h = hypot(beta1, beta2)``) turns the arrow into a
tridiagonal matrix::

    G A G^T = [[d,   off, 0],
               [off, e,   h],
               [0,   h,   gamma]]

    d   = (alpha1 beta2^2 + alpha2 beta1^2) / h^2
    e   = (alpha1 beta1^2 + alpha2 beta2^2) / h^2
    off = (alpha1 - alpha2) beta1 beta2 / h^2

When ``off`` is negligible, ``d`` is accepted as an eigenvalue and the rest
of the spectrum comes from the trailing 2x2 block.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import EPS, EigenDecomp3, hypot2
from .reduction import ArrowMat3, jacobi_rotation

DEFAULT_C_DEFLATE = 8.0


@dataclass(frozen=True, slots=True)
class Diagonal:
    """The couplings vanish; the arrow is already diagonal."""

    arrow: ArrowMat3


@dataclass(frozen=True, slots=True)
class Deflated:
    eigenvalue: float
    d: float
    h: float
    g: float
    gc: float
    gs: float

    @property
    def rotation(self) -> np.ndarray:
        return np.array([[self.gc, -self.gs, 0.0],
                         [self.gs, self.gc, 0.0],
                         [0.0, 0.0, 1.0]])


@dataclass(frozen=True, slots=True)
class NoDeflation:
    arrow: ArrowMat3


DeflationOutcome = Diagonal | Deflated | NoDeflation


@dataclass(frozen=True, slots=True)
class Eig2:
    lam_hi: float
    lam_lo: float
    c: float
    s: float


def deflate(A: ArrowMat3) -> Deflated:
    """Apply the (1,2)-plane Givens rotation and drop the coupling it leaves behind."""
    h = hypot2(A.beta1, A.beta2)
    if h == 0.0:
        raise ValueError("arrow is diagonal; nothing to deflate")
    gc = A.beta2 / h
    gs = A.beta1 / h
    lam = A.alpha1 * gc * gc + A.alpha2 * gs * gs
    d = A.alpha1 * gs * gs + A.alpha2 * gc * gc
    return Deflated(lam, d, h, A.gamma, gc, gs)


def numerical_deflation(A: ArrowMat3, C: float = DEFAULT_C_DEFLATE) -> DeflationOutcome:
    """Classify ``A`` as diagonal, deflatable, or ordered and reduced.

    Deflates when ``|alpha beta1 beta2| <= C eps |alpha1 + alpha2| h^2`` with
    ``alpha = alpha1 - alpha2``. The test is evaluated after dividing through
    by ``h^2`` so tiny couplings cannot underflow it. Exact beta- and
    combo-deflations make the left side zero and are caught here too.
    """
    h = hypot2(A.beta1, A.beta2)
    if h == 0.0:
        return Diagonal(A)
    lhs = abs((A.alpha1 - A.alpha2) * (A.beta1 / h) * (A.beta2 / h))
    if lhs <= C * EPS * abs(A.alpha1 + A.alpha2):
        return deflate(A)
    return NoDeflation(A)


def eig2_sym(d1: float, off: float, d2: float) -> Eig2:
    """Eigen-decomposition of ``[[d1, off], [off, d2]]``.

    The larger-magnitude eigenvalue comes from the cancellation-free branch of
    the quadratic formula, the other from ``det / lam``. The eigenvectors are
    the rows of ``[[c, s], [-s, c]]``, the first belonging to ``lam_hi``.
    """
    half_tr = 0.5 * (d1 + d2)
    r = hypot2(0.5 * (d1 - d2), off)
    big = half_tr + math.copysign(r, half_tr)
    if big == 0.0:
        lam_a = lam_b = 0.0
    else:
        lam_a = big
        lam_b = (d1 * d2 - off * off) / big
    lam_hi, lam_lo = (lam_a, lam_b) if lam_a >= lam_b else (lam_b, lam_a)
    rot, _, _ = jacobi_rotation(d1, off, d2)
    return Eig2(lam_hi, lam_lo, rot.c, rot.s)


def _decomp(pairs: list[tuple[float, tuple[float, float, float]]], path: str) -> EigenDecomp3:
    pairs.sort(key=lambda p: p[0], reverse=True)
    lam = (pairs[0][0], pairs[1][0], pairs[2][0])
    V = np.array([p[1] for p in pairs]).T
    return EigenDecomp3(lam, V, path)


def resolve_deflated(outcome: DeflationOutcome) -> EigenDecomp3:
    """Full eigen-decomposition (in arrow coordinates) for a deflated outcome."""
    if isinstance(outcome, Diagonal):
        A = outcome.arrow
        return _decomp([(A.alpha1, (1.0, 0.0, 0.0)),
                        (A.alpha2, (0.0, 1.0, 0.0)),
                        (A.gamma, (0.0, 0.0, 1.0))], "diagonal")
    if isinstance(outcome, Deflated):
        gc, gs = outcome.gc, outcome.gs
        e2 = eig2_sym(outcome.d, outcome.h, outcome.g)
        c, s = e2.c, e2.s
        return _decomp([(outcome.eigenvalue, (gc, -gs, 0.0)),
                        (e2.lam_hi, (c * gs, c * gc, s)),
                        (e2.lam_lo, (-s * gs, -s * gc, c))], "deflated")
    raise TypeError(f"cannot resolve {type(outcome).__name__}; the arrow did not deflate")
