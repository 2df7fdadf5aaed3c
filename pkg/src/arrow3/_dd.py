"""Error-free transformations and a few double-double operations.

Pairs ``(hi, lo)`` represent ``hi + lo`` with ``|lo| <= ulp(hi)/2``. Splitting
uses Veltkamp's constant, so inputs must stay well below ~1e300.
"""
from __future__ import annotations

_SPLIT = 134217729.0  # 2**27 + 1


def two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a: float) -> tuple[float, float]:
    c = _SPLIT * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def dd_add(x: tuple[float, float], y: tuple[float, float]) -> tuple[float, float]:
    s, e = two_sum(x[0], y[0])
    e += x[1] + y[1]
    return two_sum(s, e)


def dd_div(x: tuple[float, float], y: tuple[float, float]) -> tuple[float, float]:
    q1 = x[0] / y[0]
    p, pe = two_prod(q1, y[0])
    # remainder x - q1*y, accurate to double-double
    r = (x[0] - p) - pe + x[1] - q1 * y[1]
    q2 = r / y[0]
    return two_sum(q1, q2)
