"""Distance-based analysis of pairs of symbol series.

Pointwise distances are norms of transcripts, ``d(a_t, b_t) = ||T(a_t, b_t)||``,
native on Sym(L) and transported through the Cayley embedding on any other
group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .entropy import ProbDist, shannon_entropy
from .groups import _check_metric, group_max_distance, group_norms
from .symbolization import SymbolSeries


@dataclass(frozen=True, eq=False)
class DistanceSeries:
    metric: str
    values: np.ndarray
    max_possible: int
    transported: bool = False

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.int64)
        if values.size and (values.min() < 0 or values.max() > self.max_possible):
            raise ValueError(f"distances outside 0..{self.max_possible}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True, eq=False)
class OrderClassDist:
    """Transcript probabilities lumped by element order."""

    class_labels: tuple[int, ...]
    probs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        if abs(probs.sum() - 1.0) > 1e-12:
            raise ValueError("class probabilities must sum to 1")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "class_labels", tuple(int(m) for m in self.class_labels))

    def as_dict(self) -> dict[int, float]:
        return {m: float(p) for m, p in zip(self.class_labels, self.probs)}

    def entropy(self, base: float = 2) -> float:
        return shannon_entropy(self.probs, base)


def _pair(a: SymbolSeries, b: SymbolSeries) -> None:
    if a.group is not b.group and a.group != b.group:
        raise ValueError(f"series live in different groups ({a.group.name}, {b.group.name})")
    if len(a) != len(b):
        raise ValueError(f"series must be aligned, got lengths {len(a)} and {len(b)}")


def distance_series(a: SymbolSeries, b: SymbolSeries, metric: str = "kendall") -> DistanceSeries:
    """``d(a_t, b_t)`` for every ``t``."""
    _pair(a, b)
    metric = _check_metric(metric)
    g = a.group
    norms = group_norms(g, metric)
    return DistanceSeries(metric, norms[g.transcript(a.symbols, b.symbols)],
                          group_max_distance(g, metric), transported=not g.is_symmetric)


def lp_norm(values, p: float = 1) -> float:
    values = np.asarray(values, dtype=float)
    if not p >= 1:
        raise ValueError(f"p must be >= 1 (or inf), got {p}")
    if math.isinf(p):
        return float(values.max()) if values.size else 0.0
    return float(np.sum(values ** p) ** (1.0 / p))


def window_lp_distance(a_window: SymbolSeries, b_window: SymbolSeries, p: float = 1,
                       metric: str = "kendall") -> float:
    """``l_p`` distance between two windows of equal size ``W``."""
    if not p >= 1:
        raise ValueError(f"p must be >= 1 (or inf), got {p}")
    if len(a_window) == 0:
        raise ValueError("window size must be >= 1")
    return lp_norm(distance_series(a_window, b_window, metric).values, p)


def sliding_lp_series(a: SymbolSeries, b: SymbolSeries, W: int, p: float = 1,
                      metric: str = "kendall") -> np.ndarray:
    """``l_p`` distances between all aligned windows of size ``W`` (length ``N - W + 1``)."""
    if W < 1:
        raise ValueError("window size must be >= 1")
    if not p >= 1:
        raise ValueError(f"p must be >= 1 (or inf), got {p}")
    d = distance_series(a, b, metric).values.astype(float)
    if len(d) < W:
        raise ValueError(f"series of length {len(d)} is shorter than the window W={W}")
    windows = sliding_window_view(d, W)
    if math.isinf(p):
        return windows.max(axis=1)
    if p == 1:
        return windows.sum(axis=1)
    return np.sum(windows ** p, axis=1) ** (1.0 / p)


def distance_distribution(d: DistanceSeries) -> ProbDist:
    """Histogram over the full range ``0..max_possible``; unseen values get probability 0."""
    if len(d) == 0:
        raise ValueError("empty distance series")
    counts = np.bincount(d.values, minlength=d.max_possible + 1)
    return ProbDist.from_counts(counts, labels=[str(v) for v in range(d.max_possible + 1)])


def similarity_distance(a: SymbolSeries, b: SymbolSeries, metric: str = "kendall",
                        normalize: str = "admissible") -> float:
    """Time-averaged normalised distance between aligned series, in ``[0, 1]``.

    With the Kendall metric on Sym(3) this is ``sum_t ||T(r_t, s_t)||_K / (3 N)``.
    ``normalize`` chooses the divisor for transported metrics: the largest
    admissible distance (default) or the theoretical ``|G|(|G|-1)/2``; on
    Sym(L) both equal ``L(L-1)/2`` (Kendall) or ``L - 1`` (Cayley).
    """
    d = distance_series(a, b, metric)
    if len(d) == 0:
        raise ValueError("empty series")
    if normalize == "admissible":
        dmax = int(group_norms(a.group, d.metric).max())
    elif normalize == "theoretical":
        dmax = d.max_possible
    else:
        raise ValueError(f"unknown normalisation {normalize!r}")
    if dmax == 0:
        return 0.0
    return float(d.values.sum()) / (dmax * len(d))


def lump_by_order_class(p, classes: Mapping[int, Sequence[int]]) -> OrderClassDist:
    """``p_{C_m} = sum of p(tau) over the elements of order m``."""
    probs = p.probs if isinstance(p, ProbDist) else np.asarray(p, dtype=float)
    members = sorted(i for idx in classes.values() for i in idx)
    if members != list(range(len(probs))):
        raise ValueError("order classes do not partition the group")
    keys = sorted(classes)
    lumped = np.array([probs[list(classes[m])].sum() for m in keys])
    return OrderClassDist(tuple(keys), lumped)
