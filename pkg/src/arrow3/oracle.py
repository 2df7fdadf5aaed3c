"""Slow, independent reference solvers.

``oracle_eig3`` is a plain cyclic Jacobi method on the full 3x3 matrix, with
eigenvalues taken as Rayleigh quotients of the accumulated eigenvectors. It
shares no code with the arrow-based solver so it can serve as ground truth.
``baseline_eig3`` runs the same sweeps with a looser stopping threshold and
stands in for a general-purpose library solver in the comparison harness.
``bisect_root`` is a bracketing root finder for checking the zero finders.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import EPS, Arrow3Error, EigenDecomp3, SweepLimitExceeded, SymMat3

MAX_SWEEPS = 30


class InvalidBracket(Arrow3Error):
    pass


@dataclass(frozen=True, slots=True)
class OracleResult:
    lam: tuple[float, float, float]
    V: np.ndarray
    sweeps: int
    rotations: int

    def as_decomp(self) -> EigenDecomp3:
        return EigenDecomp3(self.lam, self.V, "oracle")


def _rotate(a, v, p, q):
    """One Jacobi rotation zeroing a[p][q] in place (a is a full symmetric list of lists)."""
    apq = a[p][q]
    theta = (a[q][q] - a[p][p]) / (2.0 * apq)
    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c
    r = 3 - p - q
    arp, arq = a[r][p], a[r][q]
    a[r][p] = a[p][r] = c * arp - s * arq
    a[r][q] = a[q][r] = s * arp + c * arq
    a[p][p] -= t * apq
    a[q][q] += t * apq
    a[p][q] = a[q][p] = 0.0
    for row in v:
        vp, vq = row[p], row[q]
        row[p] = c * vp - s * vq
        row[q] = s * vp + c * vq


def _jacobi(S: SymMat3, tol: float, finishing_sweeps: int = 0) -> OracleResult:
    a = [list(r) for r in S.rows()]
    v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    sweeps = rotations = 0
    extra = finishing_sweeps
    while True:
        if max(abs(a[0][1]), abs(a[0][2]), abs(a[1][2])) <= tol:
            if extra == 0:
                break
            extra -= 1
            zero_cut = True
        else:
            zero_cut = False
        if sweeps == MAX_SWEEPS:
            raise SweepLimitExceeded(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
        sweeps += 1
        for p, q in ((0, 1), (0, 2), (1, 2)):
            # finishing sweeps rotate every nonzero entry; others skip below-threshold ones
            if a[p][q] != 0.0 and (zero_cut or abs(a[p][q]) > tol):
                _rotate(a, v, p, q)
                rotations += 1

    M = S.rows()
    cols = [(v[0][j], v[1][j], v[2][j]) for j in range(3)]
    pairs = []
    for x in cols:
        # Rayleigh quotient: eigenvalue error is quadratic in the vector error
        Mx = [r[0] * x[0] + r[1] * x[1] + r[2] * x[2] for r in M]
        rq = (x[0] * Mx[0] + x[1] * Mx[1] + x[2] * Mx[2]) / (x[0] * x[0] + x[1] * x[1] + x[2] * x[2])
        if max(x, key=abs) < 0.0:
            x = (-x[0], -x[1], -x[2])
        pairs.append((rq, x))
    pairs.sort(key=lambda p: p[0], reverse=True)
    V = np.array([p[1] for p in pairs]).T
    return OracleResult((pairs[0][0], pairs[1][0], pairs[2][0]), V, sweeps, rotations)


def oracle_eig3(S: SymMat3) -> OracleResult:
    """Ground-truth eigen-decomposition: sweep until every off-diagonal is at most eps ||S||_F."""
    if not isinstance(S, SymMat3):
        S = SymMat3.from_array(S)
    return _jacobi(S, EPS * S.frob())


def baseline_eig3(S: SymMat3) -> EigenDecomp3:
    """Comparison solver: stop at sqrt(eps) ||S||_F, then one finishing sweep."""
    if not isinstance(S, SymMat3):
        S = SymMat3.from_array(S)
    r = _jacobi(S, math.sqrt(EPS) * S.frob(), finishing_sweeps=1)
    return EigenDecomp3(r.lam, r.V, "baseline")


def bisect_root(f: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    """Root of ``f`` in ``[lo, hi]`` by pure bisection to bracket width ``tol``."""
    if not lo < hi:
        raise InvalidBracket(f"need lo < hi, got [{lo!r}, {hi!r}]")
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise InvalidBracket(f"f does not change sign on [{lo!r}, {hi!r}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # bracket is as tight as floating point allows
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)
