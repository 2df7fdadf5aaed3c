"""Accuracy comparison between the arrow solver and a Jacobi baseline.

Protocol: draw random symmetric matrices with i.i.d. entries from a fixed
distribution, solve each with both solvers, record the orthogonality error
``||I - V^T V||_F`` and the residual ``||T V - V Lambda||_F``, then sort the
per-matrix differences ``baseline_err - main_err`` (negative wherever the
main solver is worse).

Each trial draws its six entries from a Philox counter-based generator whose
key is the run seed and whose counter starts at ``index << 192``, so trial
``i`` is reproducible on its own and trials can run in any order.
"""
from __future__ import annotations

import csv
import enum
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .assembly import SolverConfig, solve
from .core import EigenDecomp3, SymMat3
from .deflation import DEFAULT_C_DEFLATE
from .oracle import baseline_eig3
from .secular import DEFAULT_C_TERM, Method

log = logging.getLogger(__name__)

CSV_HEADER = ("index", "dist", "orth_main", "resid_main", "orth_base", "resid_base")


class Dist(str, enum.Enum):
    UNIFORM = "uniform"  # U(0, 1)
    NORMAL = "normal"    # N(0, 1)
    CHISQ = "chisq"      # chi-square, one degree of freedom


def trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, 0, index]))


def gen_sym3(dist: Dist | str, rng: np.random.Generator) -> SymMat3:
    dist = Dist(dist)
    if dist is Dist.UNIFORM:
        x = rng.random(6)
    elif dist is Dist.NORMAL:
        x = rng.standard_normal(6)
    else:
        x = rng.standard_normal(6) ** 2
    return SymMat3(*x.tolist())


def gen_trial(dist: Dist | str, seed: int, index: int) -> SymMat3:
    return gen_sym3(dist, trial_rng(seed, index))


def _frob_batch(R: np.ndarray) -> np.ndarray:
    m = np.abs(R).max(axis=(-2, -1))
    safe = np.where(m > 0, m, 1.0)
    return m * np.sqrt(((R / safe[..., None, None]) ** 2).sum(axis=(-2, -1)))


def batch_metrics(T: np.ndarray, lam: np.ndarray, V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthogonality and residual errors for stacks ``T (n,3,3)``, ``lam (n,3)``, ``V (n,3,3)``."""
    VtV = np.einsum("nki,nkj->nij", V, V)
    orth = _frob_batch(np.eye(3) - VtV)
    resid = _frob_batch(T @ V - V * lam[:, None, :])
    return orth, resid


def metrics(T: SymMat3, E: EigenDecomp3) -> tuple[float, float]:
    orth, resid = batch_metrics(T.to_array()[None], np.asarray(E.lam, dtype=float)[None],
                                np.asarray(E.V, dtype=float)[None])
    return float(orth[0]), float(resid[0])


@dataclass(frozen=True, slots=True)
class TrialRecord:
    index: int
    dist: Dist
    orth_err_main: float
    resid_err_main: float
    orth_err_base: float
    resid_err_base: float


@dataclass(frozen=True)
class RunConfig:
    n_matrices: int = 100_000
    dist: Dist = Dist.NORMAL
    seed: int = 0
    method: Method = Method.BG
    c_deflate: float = DEFAULT_C_DEFLATE
    c_term: float = DEFAULT_C_TERM
    output_path: str | None = None
    jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "dist", Dist(self.dist))
        object.__setattr__(self, "method", Method(self.method))
        if self.n_matrices < 1:
            raise ValueError("n_matrices must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")

    def solver_config(self) -> SolverConfig:
        return SolverConfig(self.method, self.c_deflate, self.c_term)


@dataclass
class RunResult:
    records: list[TrialRecord]
    summary: dict[str, dict[str, float]]
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)


def _run_chunk(cfg: RunConfig, start: int, stop: int):
    scfg = cfg.solver_config()
    n = stop - start
    T = np.empty((n, 3, 3))
    lam_m, V_m = np.empty((n, 3)), np.empty((n, 3, 3))
    lam_b, V_b = np.empty((n, 3)), np.empty((n, 3, 3))
    for k, i in enumerate(range(start, stop)):
        S = gen_trial(cfg.dist, cfg.seed, i)
        T[k] = S.rows()
        main = solve(S, scfg)
        base = baseline_eig3(S)
        lam_m[k], V_m[k] = main.lam, main.V
        lam_b[k], V_b[k] = base.lam, base.V
    om, rm = batch_metrics(T, lam_m, V_m)
    ob, rb = batch_metrics(T, lam_b, V_b)
    return start, om, rm, ob, rb


def _summary(values: dict[str, np.ndarray]) -> dict[str, dict[str, float]]:
    return {name: {"max": float(np.max(v)), "median": float(np.median(v))}
            for name, v in values.items()}


def run_comparison(cfg: RunConfig) -> RunResult:
    """Run both solvers on ``cfg.n_matrices`` generated matrices."""
    t0 = time.perf_counter()
    n = cfg.n_matrices
    if cfg.jobs > 1:
        step = -(-n // (4 * cfg.jobs))
        bounds = [(s, min(s + step, n)) for s in range(0, n, step)]
        with ProcessPoolExecutor(cfg.jobs) as pool:
            parts = list(pool.map(_run_chunk, [cfg] * len(bounds), *zip(*bounds)))
    else:
        parts = [_run_chunk(cfg, 0, n)]
    parts.sort(key=lambda p: p[0])
    om, rm, ob, rb = (np.concatenate([p[j] for p in parts]) for j in range(1, 5))
    records = [TrialRecord(i, cfg.dist, *vals)
               for i, vals in enumerate(zip(om.tolist(), rm.tolist(), ob.tolist(), rb.tolist()))]
    summary = _summary({"orth_main": om, "resid_main": rm, "orth_base": ob, "resid_base": rb})
    result = RunResult(records, summary, time.perf_counter() - t0)
    log.info("ran %d %s trials in %.2fs", n, cfg.dist.value, result.seconds)
    if cfg.output_path is not None:
        write_records(records, cfg.output_path)
    return result


def write_records(records: Sequence[TrialRecord], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow((r.index, r.dist.value, repr(r.orth_err_main), repr(r.resid_err_main),
                        repr(r.orth_err_base), repr(r.resid_err_base)))


def read_records(path: str | Path) -> list[TrialRecord]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != CSV_HEADER:
            raise ValueError(f"{path}: expected header {','.join(CSV_HEADER)}")
        return [TrialRecord(int(row[0]), Dist(row[1]), *(float(x) for x in row[2:6]))
                for row in reader]


def sorted_differences(records: Sequence[TrialRecord]) -> tuple[np.ndarray, np.ndarray]:
    """Ascending ``base - main`` for the orthogonality and residual errors."""
    if not records:
        raise ValueError("no records")
    orth = np.sort([r.orth_err_base - r.orth_err_main for r in records])
    resid = np.sort([r.resid_err_base - r.resid_err_main for r in records])
    return orth, resid


def difference_paths(out: str | Path) -> tuple[Path, Path]:
    """``OUT`` (any ``.csv`` suffix dropped) becomes ``OUT_orth.csv`` and ``OUT_resid.csv``."""
    out = Path(out)
    stem = out.with_suffix("") if out.suffix == ".csv" else out
    return stem.with_name(stem.name + "_orth.csv"), stem.with_name(stem.name + "_resid.csv")


def write_differences(deltas: np.ndarray, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("rank", "delta"))
        for k, d in enumerate(deltas.tolist()):
            w.writerow((k, repr(d)))
