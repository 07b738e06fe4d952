"""Ordinal patterns, symbol series and transcript series."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .groups import FiniteGroup, Permutation, symmetric_group

TIE_RULES = ("index", "jitter")


@dataclass(frozen=True, eq=False)
class RealSeries:
    """A finite real-valued time series."""

    values: np.ndarray
    label: str = "x"

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1:
            raise ValueError("a real series must be one-dimensional")
        bad = np.flatnonzero(~np.isfinite(values))
        if bad.size:
            raise ValueError(f"{self.label}: non-finite value {values[bad[0]]} at t={bad[0]}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True, eq=False)
class SymbolSeries:
    """A time series of group-element indices.

    ``origin`` records how the series was produced (``L``, ``T``, source
    label, ...); it is informational only.
    """

    group: FiniteGroup
    symbols: np.ndarray
    origin: dict = field(default_factory=dict)

    def __post_init__(self):
        symbols = np.array(self.symbols, dtype=np.int64).reshape(-1)
        if symbols.size and (symbols.min() < 0 or symbols.max() >= len(self.group)):
            t = int(np.flatnonzero((symbols < 0) | (symbols >= len(self.group)))[0])
            raise ValueError(f"symbol {symbols[t]} at t={t} is not an element index "
                             f"of {self.group.name}")
        symbols.setflags(write=False)
        object.__setattr__(self, "symbols", symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def label(self) -> str:
        return str(self.origin.get("label", ""))

    def labels(self) -> list[str]:
        """Symbols as element labels (one-line forms for Sym(L))."""
        names = self.group.labels
        return [names[i] for i in self.symbols]


@dataclass(frozen=True, eq=False)
class TranscriptSeries(SymbolSeries):
    """Transcripts ``T(alpha_t, beta_{t+lam})`` for ``t`` from ``start`` on."""

    lam: int = 0
    source_label: str = ""
    target_label: str = ""
    start: int = 0


# ---------------------------------------------------------------------------
# Permutation <-> lexicographic index
# ---------------------------------------------------------------------------


def permutation_index(r: Sequence[int]) -> int:
    """Lexicographic rank of ``r`` in Sym(L) (Lehmer code); ``12..L`` is 0."""
    r = Permutation(r)
    n = len(r)
    index = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if r[j] < r[i])
        index += smaller * math.factorial(n - 1 - i)
    return index


def index_to_permutation(i: int, L: int) -> Permutation:
    if L < 1:
        raise ValueError("L must be >= 1")
    if not 0 <= i < math.factorial(L):
        raise ValueError(f"index {i} out of range 0..{math.factorial(L) - 1}")
    pool = list(range(1, L + 1))
    out = []
    for k in range(L - 1, -1, -1):
        q, i = divmod(i, math.factorial(k))
        out.append(pool.pop(q))
    return Permutation(out)


def _lehmer_rows(ranks: np.ndarray) -> np.ndarray:
    # vectorised permutation_index over the rows of an (n, L) array
    n, L = ranks.shape
    index = np.zeros(n, dtype=np.int64)
    for i in range(L - 1):
        smaller = (ranks[:, i + 1:] < ranks[:, i:i + 1]).sum(axis=1)
        index += smaller * math.factorial(L - 1 - i)
    return index


# ---------------------------------------------------------------------------
# Ordinal symbolisation
# ---------------------------------------------------------------------------


def _jitter(values: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    # noise below half the smallest gap only reorders tied values
    distinct = np.unique(values)
    gap = np.diff(distinct).min() if distinct.size > 1 else 1.0
    return values + rng.uniform(0.0, gap / 2, size=values.shape)


def ordinal_pattern(window: Sequence[float], tie_rule: str = "index",
                    seed=None) -> Permutation:
    """Rank vector of a window: ``r`` with ``w[r_1-1] < w[r_2-1] < ...``.

    Ties are resolved by position (earlier sample counts as smaller) with
    ``tie_rule="index"``, or randomly with ``tie_rule="jitter"``.

    >>> ordinal_pattern([1.7, 0.5, 1.2])
    Permutation('231')
    """
    w = np.asarray(window, dtype=float)
    if w.ndim != 1 or len(w) < 2:
        raise ValueError("an ordinal pattern needs a window of length L >= 2")
    if not np.all(np.isfinite(w)):
        raise ValueError("window contains non-finite values")
    if tie_rule not in TIE_RULES:
        raise ValueError(f"unknown tie rule {tie_rule!r}")
    if tie_rule == "jitter":
        w = _jitter(w, np.random.default_rng(seed))
    return Permutation(np.argsort(w, kind="stable") + 1)


def symbolize(x, L: int = 3, T: int = 1, tie_rule: str = "index",
              seed=None, label: str | None = None) -> SymbolSeries:
    """Ordinal representation of ``x`` with pattern length ``L`` and delay ``T``.

    The symbol at ``t`` is the ordinal pattern of
    ``(x_t, x_{t+T}, ..., x_{t+(L-1)T})``, stored as its lexicographic
    index in Sym(L).  The result has ``len(x) - (L-1)T`` symbols.
    """
    if isinstance(x, RealSeries):
        label = label if label is not None else x.label
        values = x.values
    else:
        values = RealSeries(x, label or "x").values
    if L < 2:
        raise ValueError("pattern length L must be >= 2")
    if T < 1:
        raise ValueError("delay T must be >= 1")
    span = (L - 1) * T + 1
    if len(values) < span:
        raise ValueError(f"series of length {len(values)} is too short for L={L}, T={T} "
                         f"(needs {span})")
    if tie_rule not in TIE_RULES:
        raise ValueError(f"unknown tie rule {tie_rule!r}")
    if tie_rule == "jitter":
        values = _jitter(values, np.random.default_rng(seed))
    windows = sliding_window_view(values, span)[:, ::T]
    ranks = np.argsort(windows, axis=1, kind="stable") + 1
    origin = {"L": L, "T": T, "label": label or "x", "tie_rule": tie_rule}
    return SymbolSeries(symmetric_group(L), _lehmer_rows(ranks), origin)


def from_permutations(perms: Sequence, label: str = "") -> SymbolSeries:
    """Build a Sym(L) series from one-line forms such as ``["123", "231"]``."""
    perms = [Permutation(p) for p in perms]
    if not perms:
        raise ValueError("empty permutation list")
    g = symmetric_group(len(perms[0]))
    return SymbolSeries(g, [g.index(str(p)) for p in perms],
                        {"L": len(perms[0]), "label": label})


# ---------------------------------------------------------------------------
# Transcription
# ---------------------------------------------------------------------------


def aligned_range(n_source: int, n_target: int, lam: int) -> tuple[int, int]:
    """Times ``t`` in ``[t0, t1)`` where both ``alpha_t`` and ``beta_{t+lam}`` exist."""
    t0 = max(0, -lam)
    t1 = min(n_source, n_target - lam)
    return t0, t1


def _check_same_group(a: SymbolSeries, b: SymbolSeries) -> None:
    if a.group is not b.group and a.group != b.group:
        raise ValueError(f"series live in different groups ({a.group.name}, {b.group.name})")


def transcribe(source: SymbolSeries, target: SymbolSeries, lam: int = 0,
               pad: bool = False) -> TranscriptSeries:
    """Transcript series ``tau_t = beta_{t+lam} . alpha_t^-1``.

    For negative ``lam`` the series starts at ``t0 = -lam``.  With
    ``pad=True`` it starts at ``t = 0`` instead, treating the missing
    ``beta_{t+lam}`` (``t + lam < 0``) as the identity.
    """
    _check_same_group(source, target)
    g = source.group
    lam = int(lam)
    t0, t1 = aligned_range(len(source), len(target), lam)
    if t1 <= t0:
        raise ValueError(f"no overlap between source and target for lambda={lam}")
    alpha = source.symbols[t0:t1]
    beta = target.symbols[t0 + lam:t1 + lam]
    taus = g.transcript(alpha, beta)
    if pad and t0 > 0:
        head = g.transcript(source.symbols[:t0], np.full(t0, g.identity))
        taus = np.concatenate([head, taus])
        t0 = 0
    return TranscriptSeries(g, taus, {"lambda": lam}, lam=lam,
                            source_label=source.label, target_label=target.label,
                            start=t0)


def pairwise_transcriptions(series: Sequence[SymbolSeries], delays=None,
                            pad: bool = False) -> dict[tuple[int, int], TranscriptSeries]:
    """All ``M^2`` transcriptions, ``(j, k) -> transcribe(series[j], series[k], delays[j][k])``."""
    M = len(series)
    for s in series[1:]:
        _check_same_group(series[0], s)
    delays = np.zeros((M, M), dtype=int) if delays is None else np.asarray(delays, dtype=int)
    if delays.shape != (M, M):
        raise ValueError(f"delays must be {M}x{M}")
    return {(j, k): transcribe(series[j], series[k], int(delays[j, k]), pad=pad)
            for j in range(M) for k in range(M)}
