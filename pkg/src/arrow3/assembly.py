"""Eigen-decomposition of an ordered, reduced arrow and the full 3x3 pipeline.

For an arrow with ``alpha1 > alpha2`` and nonzero couplings, the largest
eigenvalue is ``alpha1 + mu`` where ``mu`` is the positive root of the
right-shifted fully reduced arrow, and the smallest is ``alpha2 - nu`` where
``nu`` is the positive root of the left-shifted (negated and permuted) one.
The middle eigenvalue follows from the trace. Eigenvectors are closed-form
in ``mu``, ``nu`` and the arrow entries.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import EPS, Arrow3Error, EigenDecomp3, SymMat3, Vec3
from .deflation import (DEFAULT_C_DEFLATE, DeflationOutcome, NoDeflation, deflate,
                        numerical_deflation, resolve_deflated)
from .reduction import ArrowMat3, JacobiRot, reduce_to_arrow
from .secular import DEFAULT_C_TERM, Method, ReducedArrow, ZeroFinderResult, rightmost


@dataclass(frozen=True, slots=True)
class SolverConfig:
    method: Method = Method.BG
    c_deflate: float = DEFAULT_C_DEFLATE
    c_term: float = DEFAULT_C_TERM
    max_iter: int | None = None  # None selects the per-method default

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        if not (self.c_deflate > 0 and self.c_term > 0):
            raise ValueError("deflation and termination constants must be positive")


DEFAULT_CONFIG = SolverConfig()


class RootUnderflow(Arrow3Error):
    """A shifted root came back as zero, which a reduced arrow cannot have in exact arithmetic."""


@dataclass(frozen=True, slots=True)
class ArrowEigenSolution:
    mu: float
    nu: float
    lam: tuple[float, float, float]
    U: tuple[Vec3, Vec3, Vec3]
    method: Method
    right: ZeroFinderResult | None = None
    left: ZeroFinderResult | None = None

    @property
    def V(self) -> np.ndarray:
        return np.array(self.U).T


def _require_reduced(A: ArrowMat3) -> None:
    if not A.is_reduced():
        raise ValueError(f"arrow is not ordered and reduced: {A}")


def shift_right(A: ArrowMat3) -> ReducedArrow:
    """``A - alpha1 I``, whose only positive eigenvalue is ``lambda1 - alpha1``."""
    _require_reduced(A)
    return ReducedArrow(A.alpha1 - A.alpha2, A.beta1, A.beta2, A.gamma - A.alpha1)


def shift_left(A: ArrowMat3) -> ReducedArrow:
    """``P (alpha2 I - A) P`` with P swapping the first two coordinates.

    Its only positive eigenvalue is ``alpha2 - lambda3``. The coupling signs
    are dropped since the spectral function depends only on their squares.
    """
    _require_reduced(A)
    return ReducedArrow(A.alpha1 - A.alpha2, A.beta2, A.beta1, A.alpha2 - A.gamma)


def eigenvectors_from_roots(A: ArrowMat3, mu: float, nu: float) -> tuple[Vec3, Vec3, Vec3]:
    """Unnormalized eigenvectors for ``lambda1``, ``lambda2``, ``lambda3``."""
    abar = A.alpha1 - A.alpha2
    b1, b2 = A.beta1, A.beta2
    mpa = mu + abar
    npa = nu + abar
    u1 = Vec3(b1 * mpa, b2 * mu, mu * mpa)
    u2 = Vec3(-b2 * mu * npa, b1 * nu * mpa, b1 * b2 * abar)
    u3 = Vec3(b1 * nu, b2 * npa, -nu * npa)
    return u1, u2, u3


def solve_arrow(A: ArrowMat3, method: Method | str = Method.BG, C: float = DEFAULT_C_TERM,
                max_iter: int | None = None) -> ArrowEigenSolution:
    """Eigenpairs of an ordered, reduced arrow, in descending eigenvalue order."""
    method = Method(method)
    right = rightmost(shift_right(A), method, C, max_iter)
    left = rightmost(shift_left(A), method, C, max_iter)
    mu, nu = right.root, left.root
    if mu <= 0.0 or nu <= 0.0:
        raise RootUnderflow(f"zero finder returned a non-positive root (mu={mu!r}, nu={nu!r})")
    lam1 = A.alpha1 + mu
    lam3 = A.alpha2 - nu
    lam2 = nu - mu + A.gamma
    u1, u2, u3 = (u.normalized() for u in eigenvectors_from_roots(A, mu, nu))
    pairs = [(lam1, u1), (lam2, u2), (lam3, u3)]
    if not lam1 >= lam2 >= lam3:
        # rounding in the trace identity can nudge lambda2 past a neighbour
        pairs.sort(key=lambda p: p[0], reverse=True)
    lam = (pairs[0][0], pairs[1][0], pairs[2][0])
    U = (pairs[0][1], pairs[1][1], pairs[2][1])
    return ArrowEigenSolution(mu, nu, lam, U, method, right, left)


@dataclass(frozen=True, slots=True)
class SolveTrace:
    """Intermediate products of :func:`solve`, kept for inspection and testing."""

    scale: float
    arrow: ArrowMat3
    rotation: JacobiRot
    outcome: DeflationOutcome
    arrow_solution: ArrowEigenSolution | None
    result: EigenDecomp3


def _scale_exponent(S: SymMat3) -> int:
    m = S.max_abs()
    if m == 0.0:
        return 0
    return math.frexp(m)[1]


def _underflow_fallback(A: ArrowMat3, C: float) -> DeflationOutcome:
    """Deflation for an arrow whose shifted root underflowed.

    After scaling that only happens when a coupling is far below eps times the
    matrix, so dropping such couplings is a perturbation within rounding.
    """
    tol = EPS * max(abs(A.alpha1), abs(A.alpha2), abs(A.beta1), abs(A.beta2), abs(A.gamma))
    b1 = 0.0 if abs(A.beta1) <= tol else A.beta1
    b2 = 0.0 if abs(A.beta2) <= tol else A.beta2
    outcome = numerical_deflation(ArrowMat3(A.alpha1, A.alpha2, b1, b2, A.gamma), C)
    if isinstance(outcome, NoDeflation):
        outcome = deflate(A)
    return outcome


def solve_trace(S: SymMat3, config: SolverConfig = DEFAULT_CONFIG) -> SolveTrace:
    if not isinstance(S, SymMat3):
        S = SymMat3.from_array(S)
    # power-of-two scaling is exact and leaves max |entry| in [0.5, 1)
    e = _scale_exponent(S)
    Ss = SymMat3(*(math.ldexp(x, -e) for x in S.entries())) if e else S

    A, rot = reduce_to_arrow(Ss)
    outcome = numerical_deflation(A, config.c_deflate)
    sol = None
    if isinstance(outcome, NoDeflation):
        try:
            sol = solve_arrow(A, config.method, config.c_term, config.max_iter)
        except RootUnderflow:
            outcome = _underflow_fallback(A, config.c_deflate)
    if sol is None:
        arrow_dec = resolve_deflated(outcome)
        lam, cols, path = arrow_dec.lam, arrow_dec.V.T.tolist(), arrow_dec.path
    else:
        lam, cols, path = sol.lam, sol.U, "arrow"

    # V = Q^T V_arrow with Q = [[c, s, 0], [-s, c, 0], [0, 0, 1]], then fix column signs
    c, s = rot.c, rot.s
    out = []
    for x, y, z in cols:
        col = (c * x - s * y, s * x + c * y, z)
        if max(col, key=abs) < 0.0:
            col = (-col[0], -col[1], -col[2])
        # adding 0.0 turns -0.0 into 0.0
        col = (col[0] + 0.0, col[1] + 0.0, col[2] + 0.0)
        out.append(col)
    V = np.array(out).T
    if e:
        lam = tuple(math.ldexp(x, e) for x in lam)
    return SolveTrace(math.ldexp(1.0, e), A, rot, outcome, sol, EigenDecomp3(lam, V, path))


def solve(S: SymMat3, config: SolverConfig = DEFAULT_CONFIG) -> EigenDecomp3:
    """Eigenvalues (descending) and orthonormal eigenvectors of a symmetric 3x3 matrix."""
    return solve_trace(S, config).result


def solve_batch(mats: Iterable[SymMat3] | np.ndarray,
                config: SolverConfig = DEFAULT_CONFIG) -> tuple[np.ndarray, np.ndarray]:
    """Solve many matrices independently.

    Accepts an iterable of :class:`SymMat3` or an array of shape ``(n, 3, 3)``
    or ``(n, 6)``. Returns eigenvalues ``(n, 3)`` and eigenvectors ``(n, 3, 3)``.
    Each solve touches no shared state, so callers may split the batch across
    workers freely.
    """
    if isinstance(mats, np.ndarray):
        mats = [SymMat3.from_array(m) for m in mats]
    lams, Vs = [], []
    for S in mats:
        r = solve(S, config)
        lams.append(r.lam)
        Vs.append(r.V)
    if not lams:
        return np.empty((0, 3)), np.empty((0, 3, 3))
    return np.array(lams), np.stack(Vs)
