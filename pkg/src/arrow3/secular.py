"""Rightmost eigenvalue of a fully reduced arrow.

A fully reduced arrow is::

    [[0,     0,     beta1],
     [0,     -abar, beta2],
     [beta1, beta2, gbar ]]

with ``abar > 0`` and both couplings nonzero. Its eigenvalues are the zeros of

    f(x) = x - gbar - beta1^2/x - beta2^2/(x + abar)

and exactly one of them is positive. Two monotone zero finders are provided:
the cubically convergent rational (Borges-Gragg) iteration started from the
right, and Newton's method started from the left.
"""
from __future__ import annotations

import enum
import math
from dataclasses import InitVar, dataclass, field

import numpy as np

from ._dd import dd_add, dd_div, two_prod, two_sum
from .core import EPS, IterationLimitExceeded, SolverFault

DEFAULT_C_TERM = 4.0
BG_MAX_ITER = 20
NEWTON_MAX_ITER = 100
# relative size of |f| below which f is re-evaluated in double-double
ACCURATE_F_BELOW = 1e-3


class Method(str, enum.Enum):
    BG = "bg"
    NEWTON = "newton"


@dataclass(frozen=True, slots=True)
class ReducedArrow:
    abar: float
    beta1: float
    beta2: float
    gbar: float
    check: InitVar[bool] = True

    def __post_init__(self, check):
        isf = math.isfinite
        if not (isf(self.abar) and isf(self.beta1) and isf(self.beta2) and isf(self.gbar)):
            raise ValueError(f"non-finite reduced arrow: {(self.abar, self.beta1, self.beta2, self.gbar)}")
        if check and not (self.abar > 0.0 and self.beta1 != 0.0 and self.beta2 != 0.0):
            raise ValueError(f"not a fully reduced arrow: abar={self.abar!r}, "
                             f"beta1={self.beta1!r}, beta2={self.beta2!r}")

    def matrix(self) -> np.ndarray:
        return np.array([[0.0, 0.0, self.beta1],
                         [0.0, -self.abar, self.beta2],
                         [self.beta1, self.beta2, self.gbar]])


@dataclass(slots=True)
class ZeroFinderResult:
    root: float
    iterations: int
    history: list[float] = field(default_factory=list)


def _check_pole(x: float, A: ReducedArrow) -> None:
    if x == 0.0 or x + A.abar == 0.0:
        raise ValueError(f"x={x!r} is a pole of the spectral function")


def spectral_f(x: float, A: ReducedArrow) -> float:
    _check_pole(x, A)
    return x - A.gbar - A.beta1 ** 2 / x - A.beta2 ** 2 / (x + A.abar)


def spectral_fp(x: float, A: ReducedArrow) -> float:
    _check_pole(x, A)
    return 1.0 + (A.beta1 / x) ** 2 + (A.beta2 / (x + A.abar)) ** 2


def spectral_fpp(x: float, A: ReducedArrow) -> float:
    _check_pole(x, A)
    return -2.0 * (A.beta1 ** 2 / x ** 3 + A.beta2 ** 2 / (x + A.abar) ** 3)


def spectral_f_accurate(x: float, A: ReducedArrow) -> float:
    """``f(x)`` in double-double arithmetic, rounded once at the end.

    Near a root the plain evaluation loses everything to cancellation among
    terms of size ``|gbar|`` or ``beta^2/x``; this keeps ``f`` accurate
    relative to its own (tiny) value.
    """
    _check_pole(x, A)
    t3 = dd_div(two_prod(A.beta1, A.beta1), (x, 0.0))
    t4 = dd_div(two_prod(A.beta2, A.beta2), two_sum(x, A.abar))
    acc = two_sum(x, -A.gbar)
    acc = dd_add(acc, (-t3[0], -t3[1]))
    acc = dd_add(acc, (-t4[0], -t4[1]))
    return acc[0] + acc[1]


def _f_fp(x: float, A: ReducedArrow) -> tuple[float, float]:
    # x > 0 inside the iterations, so neither pole can be hit
    q1 = A.beta1 / x
    q2 = A.beta2 / (x + A.abar)
    t3 = A.beta1 * q1
    t4 = A.beta2 * q2
    f = x - A.gbar - t3 - t4
    if abs(f) <= ACCURATE_F_BELOW * (x + abs(A.gbar) + t3 + t4):
        # near the root the plain value's absolute error (eps times the terms)
        # would decide where the final step lands
        f = spectral_f_accurate(x, A)
    return f, 1.0 + q1 * q1 + q2 * q2


def _positive_root(half: float, q: float) -> float:
    """Positive root of ``x^2 - 2 half x - q = 0`` for ``q > 0``, without cancellation."""
    r = math.hypot(half, math.sqrt(q))
    if half >= 0.0:
        return half + r
    return q / (r - half)


def bg_start(A: ReducedArrow) -> float:
    """Zero in (0, inf) of the limit ``x - gbar - (beta1^2 + beta2^2)/x``; lies right of the root."""
    return _positive_root(0.5 * A.gbar, A.beta1 ** 2 + A.beta2 ** 2)


def newton_start(A: ReducedArrow) -> float:
    """Where ``f`` meets ``-beta2^2/(x + abar)``; lies left of the root."""
    return _positive_root(0.5 * A.gbar, A.beta1 ** 2)


@dataclass(frozen=True, slots=True)
class BGCoefficients:
    """Interpolant ``phi(x) = omega0 x - sigma - omega1/x`` matching f, f', f'' at ``x``."""

    omega0: float
    omega1: float
    sigma: float

    def phi(self, x: float) -> float:
        return self.omega0 * x - self.sigma - self.omega1 / x

    def dphi(self, x: float) -> float:
        return self.omega0 + self.omega1 / x ** 2

    def d2phi(self, x: float) -> float:
        return -2.0 * self.omega1 / x ** 3


def bg_coefficients(x: float, A: ReducedArrow) -> BGCoefficients:
    r = x / (x + A.abar)
    omega1 = A.beta1 ** 2 + A.beta2 ** 2 * r ** 3
    omega0 = 1.0 + A.beta2 ** 2 * A.abar / (x + A.abar) ** 3
    sigma = omega0 * x - omega1 / x - spectral_f(x, A)
    return BGCoefficients(omega0, omega1, sigma)


def _bg_next(x: float, f: float, fp: float, A: ReducedArrow) -> float:
    """Zero of the rational interpolant at ``x``.

    Normally computed as ``x - delta`` from the increment quadratic. When the
    increment exceeds ``x/2`` the new iterate is much smaller than ``x`` and
    that subtraction would wipe out its relative accuracy, so the zero of
    ``omega0 y^2 - sigma y - omega1`` is taken directly instead, with
    ``sigma = gbar + beta2^2 abar (abar + 3x) / (x + abar)^3`` (the printed
    definition of sigma, simplified so it carries no cancellation).
    """
    xa = x + A.abar
    omega0 = 1.0 + A.beta2 ** 2 * A.abar / xa ** 3
    a = -omega0 / x
    b = fp + f / x
    two_f_b = 2.0 * f / b
    delta = two_f_b / (1.0 + math.sqrt(1.0 + (2.0 * a / b) * two_f_b))
    if not math.isfinite(delta):
        raise SolverFault(f"non-finite rational increment at x={x!r} (f={f!r}, f'={fp!r})")
    if delta <= 0.5 * x:
        return x - delta
    r = x / xa
    omega1 = A.beta1 ** 2 + A.beta2 ** 2 * r * r * r
    sigma = A.gbar + A.beta2 ** 2 * A.abar * (A.abar + 3.0 * x) / xa ** 3
    return _positive_root(0.5 * sigma / omega0, omega1 / omega0)


def bg_step(xj: float, A: ReducedArrow) -> float:
    """One step of the rational iteration from ``xj`` (which must lie right of the root)."""
    f = spectral_f(xj, A)
    fp = spectral_fp(xj, A)
    return _bg_next(xj, f, fp, A)


def rightmost_bg(A: ReducedArrow, C: float = DEFAULT_C_TERM,
                 max_iter: int = BG_MAX_ITER, polish: bool = True) -> ZeroFinderResult:
    """Positive zero of ``f`` by the rational iteration started from the right.

    Stops once ``f(x)/f'(x) < C eps x``, which bounds the relative error of
    ``x``. A step that fails to move strictly left (or leaves (0, inf)) can
    only come from rounding next to the root and also stops the iteration.
    With ``polish`` one more step is taken after the stopping test; at that
    distance from the root it lands within an ulp or two, so roots from either
    finder agree far more tightly than the stopping tolerance.
    """
    x = bg_start(A)
    history = [x]
    if x == 0.0:
        # couplings underflowed; the caller decides how to recover
        return ZeroFinderResult(x, 0, history)
    for it in range(max_iter + 1):
        f, fp = _f_fp(x, A)
        if f / fp < C * EPS * x:
            if polish and f > 0.0:
                x_new = _bg_next(x, f, fp, A)
                if 0.0 < x_new < x:
                    history.append(x_new)
                    return ZeroFinderResult(x_new, it + 1, history)
            return ZeroFinderResult(x, it, history)
        if it == max_iter:
            break
        x_new = _bg_next(x, f, fp, A)
        if not (0.0 < x_new < x):
            return ZeroFinderResult(x, it, history)
        x = x_new
        history.append(x)
    raise IterationLimitExceeded("Borges-Gragg", max_iter, x)


def rightmost_newton(A: ReducedArrow, C: float = DEFAULT_C_TERM,
                     max_iter: int = NEWTON_MAX_ITER, polish: bool = True) -> ZeroFinderResult:
    """Positive zero of ``f`` by Newton's method started from the left.

    Stops once ``|f(x)| < C eps x``. Iterates increase monotonically in exact
    arithmetic; a step that fails to move right ends the iteration. ``polish``
    works as in :func:`rightmost_bg`.
    """
    x = newton_start(A)
    history = [x]
    if x == 0.0:
        return ZeroFinderResult(x, 0, history)
    for it in range(max_iter + 1):
        f, fp = _f_fp(x, A)
        if abs(f) < C * EPS * x:
            if polish and f < 0.0:
                x_new = x - f / fp
                if x_new > x:
                    history.append(x_new)
                    return ZeroFinderResult(x_new, it + 1, history)
            return ZeroFinderResult(x, it, history)
        if it == max_iter:
            break
        x_new = x - f / fp
        if not math.isfinite(x_new):
            raise SolverFault(f"non-finite Newton step at x={x!r}")
        if x_new <= x:
            return ZeroFinderResult(x, it, history)
        x = x_new
        history.append(x)
    raise IterationLimitExceeded("Newton", max_iter, x)


def rightmost(A: ReducedArrow, method: Method | str = Method.BG, C: float = DEFAULT_C_TERM,
              max_iter: int | None = None, polish: bool = True) -> ZeroFinderResult:
    method = Method(method)
    if method is Method.BG:
        return rightmost_bg(A, C, BG_MAX_ITER if max_iter is None else max_iter, polish)
    return rightmost_newton(A, C, NEWTON_MAX_ITER if max_iter is None else max_iter, polish)
