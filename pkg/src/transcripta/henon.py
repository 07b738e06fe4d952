"""Unidirectionally coupled, non-identical Hénon maps and the experiment sweeps.

Driver::

    x1' = 1.4 - x1**2 + 0.1 x2,    x2' = x1

Responder, coupled to the driver with strength ``C``::

    y1' = 1.4 - (C x1 + (1 - C) y1) y1 + 0.3 y2,    y2' = y1

Each coupling value is an independent job; a sweep evaluates all of them
(optionally in a process pool) and returns a pandas table ordered by ``C``.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np
import pandas as pd

from .coupling import symbolic_transfer_entropy, transcript_mutual_information
from .entropy import estimate_dist, js_distance, normalized_entropy, shannon_entropy, \
    statistical_complexity
from .groups import order_classes
from .metrics import lump_by_order_class, similarity_distance
from .symbolization import RealSeries, symbolize, transcribe

DIVERGENCE_BOUND = 1e6
THREADS_ENV = "TRANSCRIPTA_THREADS"


class TrajectoryDiverged(RuntimeError):
    def __init__(self, step: int, coupling: float):
        super().__init__(f"trajectory diverged at step {step} (C={coupling})")
        self.step = step
        self.coupling = coupling


@dataclass(frozen=True)
class HenonConfig:
    coupling_C: float = 0.0
    n_samples: int = 10_000
    transient: int = 1_000
    driver_seed: tuple[float, float] = (0.0, 0.9)
    responder_seed: tuple[float, float] = (0.75, 0.0)

    def __post_init__(self):
        if self.coupling_C < 0:
            raise ValueError("coupling strength must be >= 0")
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if self.transient < 0:
            raise ValueError("transient must be >= 0")


@dataclass(frozen=True)
class SweepConfig:
    c_min: float = 0.0
    c_max: float = 1.2
    c_step: float = 0.05
    L: int = 3
    delay_T: int = 1
    lam: int = 1
    n_samples: int = 10_000
    transient: int = 1_000
    driver_seed: tuple[float, float] = (0.0, 0.9)
    responder_seed: tuple[float, float] = (0.75, 0.0)

    def __post_init__(self):
        if not self.c_step > 0:
            raise ValueError("c_step must be > 0")
        if self.c_max < self.c_min:
            raise ValueError("c_max must be >= c_min")
        if self.L < 2 or self.delay_T < 1 or self.lam < 1:
            raise ValueError("need L >= 2, delay_T >= 1 and lambda >= 1")

    def grid(self) -> np.ndarray:
        """Coupling values ``c_min, c_min + step, ...`` up to ``c_max`` (within half a step)."""
        k = int(math.floor((self.c_max - self.c_min) / self.c_step + 0.5))
        # rounding keeps labels such as 0.6 exact instead of 0.6000000000000001
        return np.round(self.c_min + self.c_step * np.arange(k + 1), 10)

    def henon(self, c: float) -> HenonConfig:
        return HenonConfig(float(c), self.n_samples, self.transient,
                           tuple(self.driver_seed), tuple(self.responder_seed))

    def metadata(self) -> dict:
        meta = asdict(self)
        meta["grid"] = [float(c) for c in self.grid()]
        return meta


def simulate(cfg: HenonConfig) -> tuple[RealSeries, RealSeries]:
    """First components ``(x1_t, y1_t)`` after ``cfg.transient`` discarded iterations."""
    C = float(cfg.coupling_C)
    x1, x2 = map(float, cfg.driver_seed)
    y1, y2 = map(float, cfg.responder_seed)
    xs = np.empty(cfg.n_samples)
    ys = np.empty(cfg.n_samples)
    for t in range(cfg.transient + cfg.n_samples):
        if t >= cfg.transient:
            xs[t - cfg.transient] = x1
            ys[t - cfg.transient] = y1
        # all four next values come from the time-t state
        x1, x2, y1, y2 = (1.4 - x1 * x1 + 0.1 * x2, x1,
                          1.4 - (C * x1 + (1 - C) * y1) * y1 + 0.3 * y2, y1)
        if not (abs(x1) <= DIVERGENCE_BOUND and abs(y1) <= DIVERGENCE_BOUND):
            raise TrajectoryDiverged(t + 1, C)
    return RealSeries(xs, "x"), RealSeries(ys, "y")


# ---------------------------------------------------------------------------
# Per-coupling jobs
# ---------------------------------------------------------------------------


def _symbols(sweep: SweepConfig, c: float, T: int):
    x, y = simulate(sweep.henon(c))
    return symbolize(x, sweep.L, T), symbolize(y, sweep.L, T)


def _transcript_dist(a, b):
    return estimate_dist(transcribe(a, b, 0))


def _row_entropy_complexity(sweep: SweepConfig, c: float) -> dict:
    p = _transcript_dist(*_symbols(sweep, c, sweep.delay_T))
    return {"C": c, "h": normalized_entropy(p), "SC": statistical_complexity(p)}


def _row_te_tmi(sweep: SweepConfig, c: float) -> dict:
    a, b = _symbols(sweep, c, sweep.delay_T)
    return {"C": c,
            "TE": symbolic_transfer_entropy(a, b, sweep.lam, base=2),
            "TMI": transcript_mutual_information(a, b, sweep.lam, base=2)}


def _row_order_classes(sweep: SweepConfig, c: float) -> dict:
    a, b = _symbols(sweep, c, sweep.delay_T)
    p = _transcript_dist(a, b)
    lumped = lump_by_order_class(p, order_classes(a.group))
    row = {"C": c}
    row.update({f"p_C{m}": v for m, v in lumped.as_dict().items()})
    row["H"] = shannon_entropy(lumped.probs, base=2)
    row["p_identity"] = float(p.probs[a.group.identity])
    return row


def _row_similarity(sweep: SweepConfig, c: float) -> dict:
    a, b = _symbols(sweep, c, sweep.delay_T)
    p = _transcript_dist(a, b)
    uniform = np.full(len(p), 1.0 / len(p))
    return {"C": c, "delta_K": similarity_distance(a, b, "kendall"),
            "js_distance": js_distance(p, uniform, base=2)}


_ROWS = {
    "entropy_complexity": _row_entropy_complexity,
    "te_tmi": _row_te_tmi,
    "order_classes": _row_order_classes,
    "similarity": _row_similarity,
}


class SweepDiverged(RuntimeError):
    """One or more coupling values produced an unbounded trajectory."""

    def __init__(self, failures: list[tuple[float, int]]):
        listed = ", ".join(f"C={c:g} (step {s})" for c, s in failures)
        super().__init__(f"trajectory diverged for {listed}")
        self.failures = failures


def _job(args):
    name, sweep, c = args
    try:
        return _ROWS[name](sweep, c)
    except TrajectoryDiverged as err:
        return {"C": c, "_diverged": err.step}


def default_workers() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        n = int(env)
        if n < 1:
            raise ValueError(f"{THREADS_ENV} must be >= 1")
        return n
    return os.cpu_count() or 1


def run_sweep(name: str, sweep: SweepConfig, workers: int | None = None) -> pd.DataFrame:
    """Evaluate one experiment over the coupling grid; rows are keyed and sorted by ``C``."""
    if name not in _ROWS:
        raise ValueError(f"unknown experiment {name!r}")
    jobs = [(name, sweep, float(c)) for c in sweep.grid()]
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(jobs) == 1:
        rows = [_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            rows = list(pool.map(_job, jobs))
    failures = [(r["C"], r["_diverged"]) for r in rows if "_diverged" in r]
    if failures:
        raise SweepDiverged(failures)
    return pd.DataFrame(rows).sort_values("C", ignore_index=True)


def experiment_entropy_complexity(sweep: SweepConfig, workers: int | None = None) -> pd.DataFrame:
    """Columns ``C, h, SC`` of the transcript distribution (base-2 logs)."""
    return run_sweep("entropy_complexity", sweep, workers)


def experiment_te_tmi(sweep: SweepConfig, delay_T: int | None = None,
                      workers: int | None = None) -> pd.DataFrame:
    """Columns ``C, TE, TMI`` in bits, driver to responder, at delay ``delay_T``."""
    if delay_T is not None:
        sweep = replace(sweep, delay_T=delay_T)
    return run_sweep("te_tmi", sweep, workers)


def experiment_order_classes(sweep: SweepConfig, workers: int | None = None) -> pd.DataFrame:
    """Columns ``C, p_C1, p_C2, p_C3, H`` (plus ``p_identity``, the identity transcript)."""
    return run_sweep("order_classes", sweep, workers)


def experiment_similarity(sweep: SweepConfig, workers: int | None = None) -> pd.DataFrame:
    """Columns ``C, delta_K, js_distance`` (JS distance of the transcript law from uniform)."""
    return run_sweep("similarity", sweep, workers)


EXPERIMENTS = {
    2: ("entropy_complexity", experiment_entropy_complexity),
    3: ("order_classes", experiment_order_classes),
    4: ("te_tmi", experiment_te_tmi),
    5: ("similarity", experiment_similarity),
}


@dataclass
class ExperimentOutput:
    name: str
    table: pd.DataFrame
    metadata: dict = field(default_factory=dict)

    def write(self, directory: Path, stem: str | None = None) -> tuple[Path, Path]:
        """Write ``<stem>.csv`` (12 significant digits) and ``<stem>.meta.json``."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        stem = stem or self.name
        csv_path = directory / f"{stem}.csv"
        meta_path = directory / f"{stem}.meta.json"
        self.table.to_csv(csv_path, index=False, float_format="%.12g", lineterminator="\n")
        meta_path.write_text(json.dumps(self.metadata, indent=2, sort_keys=True) + "\n")
        return csv_path, meta_path
