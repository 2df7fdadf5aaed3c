"""Eigen-decomposition of real symmetric 3x3 matrices through an ordered arrow form."""
from .assembly import (ArrowEigenSolution, SolverConfig, SolveTrace, eigenvectors_from_roots, shift_left,
                       shift_right, solve, solve_arrow, solve_batch, solve_trace)
from .core import (EPS, Arrow3Error, EigenDecomp3, IterationLimitExceeded, SolverFault, SweepLimitExceeded,
                   SymMat3, Vec3, cross, frob_norm, hypot2)
from .deflation import Deflated, Diagonal, Eig2, NoDeflation, eig2_sym, numerical_deflation, resolve_deflated
from .oracle import baseline_eig3, bisect_root, oracle_eig3
from .reduction import ArrowMat3, JacobiRot, jacobi_rotation, reduce_to_arrow
from .secular import (Method, ReducedArrow, ZeroFinderResult, bg_start, bg_step, newton_start, rightmost_bg,
                      rightmost_newton, spectral_f, spectral_fp)

__all__ = [
    "EPS", "Arrow3Error", "ArrowEigenSolution", "ArrowMat3", "Deflated", "Diagonal", "Eig2", "EigenDecomp3",
    "IterationLimitExceeded", "JacobiRot", "Method", "NoDeflation", "ReducedArrow", "SolveTrace",
    "SolverConfig", "SolverFault", "SweepLimitExceeded", "SymMat3", "Vec3", "ZeroFinderResult",
    "baseline_eig3", "bg_start", "bg_step", "bisect_root", "cross", "eig2_sym", "eigenvectors_from_roots",
    "frob_norm", "hypot2", "jacobi_rotation", "newton_start", "numerical_deflation", "oracle_eig3",
    "reduce_to_arrow", "resolve_deflated", "rightmost_bg", "rightmost_newton", "shift_left", "shift_right",
    "solve", "solve_arrow", "solve_batch", "solve_trace", "spectral_f", "spectral_fp",
]
