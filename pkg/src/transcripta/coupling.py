"""Mutual-information based coupling measures on symbol series.

Everything is a plug-in estimate from exact integer count tables; logs are
taken only at the final entropy step.  Entropies that must cancel are
grouped so that identical inputs give exact zeros.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .entropy import entropy_from_counts
from .symbolization import SymbolSeries, aligned_range

DENSE_LIMIT = 1_000_000


def _joint_counts(arrays: Sequence[np.ndarray], n: int) -> np.ndarray:
    # dense histogram over n**k cells when it fits, sparse counts otherwise
    if n ** len(arrays) <= DENSE_LIMIT:
        codes = np.zeros(len(arrays[0]), dtype=np.int64)
        for arr in arrays:
            codes = codes * n + arr
        return np.bincount(codes, minlength=n ** len(arrays))
    _, counts = np.unique(np.stack(arrays, axis=1), axis=0, return_counts=True)
    return counts


def _H(arrays: Sequence[np.ndarray], n: int, base: float) -> float:
    return entropy_from_counts(_joint_counts(list(arrays), n), base)


def _check(a: SymbolSeries, b: SymbolSeries) -> None:
    if a.group is not b.group and a.group != b.group:
        raise ValueError(f"series live in different groups ({a.group.name}, {b.group.name})")


def _check_lag(lam: int) -> int:
    lam = int(lam)
    if lam < 1:
        raise ValueError(f"coupling delay must be >= 1, got {lam}")
    return lam


def mutual_information(a: SymbolSeries, b: SymbolSeries, lam: int = 0,
                       base: float = math.e) -> float:
    """``I(a_t; b_{t+lam}) = H(a) + H(b) - H(a, b)`` over the aligned support."""
    _check(a, b)
    t0, t1 = aligned_range(len(a), len(b), lam)
    if t1 <= t0:
        raise ValueError(f"no overlap for lambda={lam}")
    x, y = a.symbols[t0:t1], b.symbols[t0 + lam:t1 + lam]
    n = len(a.group)
    return (_H([x], n, base) + _H([y], n, base)) - _H([x, y], n, base)


def _ccc_arrays(arrays: Sequence[np.ndarray], g, base: float) -> float:
    n = len(g)
    taus = [g.transcript(arrays[m], arrays[m + 1]) for m in range(len(arrays) - 1)]
    h_taus = _H(taus, n, base)
    values = []
    for alpha in arrays:
        values.append((_H([alpha], n, base) + h_taus) - _H([alpha, *taus], n, base))
    return min(values)


def ccc(series: Sequence[SymbolSeries], base: float = math.e) -> float:
    """Coupling complexity coefficient of ``M >= 2`` aligned series.

    ``min_m I(alpha^m; (T(alpha^1, alpha^2), ..., T(alpha^{M-1}, alpha^M)))``.
    """
    if len(series) < 2:
        raise ValueError("the coupling complexity coefficient needs M >= 2 series")
    for s in series[1:]:
        _check(series[0], s)
    lengths = {len(s) for s in series}
    if len(lengths) != 1:
        raise ValueError(f"series must be aligned (equal lengths), got {sorted(lengths)}")
    return _ccc_arrays([s.symbols for s in series], series[0].group, base)


def _te_arrays(x: np.ndarray, y: np.ndarray, lam: int, n: int, base: float) -> float:
    m = min(len(x), len(y)) - lam
    if m <= 0:
        raise ValueError(f"series too short for lambda={lam}")
    y_next, x_now, y_now = y[lam:lam + m], x[:m], y[:m]
    return ((_H([y_next, y_now], n, base) - _H([y_next, x_now, y_now], n, base))
            + (_H([x_now, y_now], n, base) - _H([y_now], n, base)))


def symbolic_transfer_entropy(a: SymbolSeries, b: SymbolSeries, lam: int = 1,
                              base: float = math.e) -> float:
    """Transfer entropy ``I(b_{t+lam}; a_t | b_t)`` from ``a`` to ``b``."""
    _check(a, b)
    lam = _check_lag(lam)
    return _te_arrays(a.symbols, b.symbols, lam, len(a.group), base)


def _tmi_arrays(x: np.ndarray, y: np.ndarray, lam: int, g, base: float) -> float:
    m = min(len(x), len(y)) - lam
    if m <= 0:
        raise ValueError(f"series too short for lambda={lam}")
    n = len(g)
    self_t = g.transcript(y[lam:lam + m], y[:m])    # T(b_{t+lam}, b_t)
    cross_t = g.transcript(x[:m], y[:m])            # T(a_t, b_t)
    return (_H([self_t], n, base) + _H([cross_t], n, base)) - _H([self_t, cross_t], n, base)


def transcript_mutual_information(a: SymbolSeries, b: SymbolSeries, lam: int = 1,
                                  base: float = math.e) -> float:
    """``I(T(b_{t+lam}, b_t); T(a_t, b_t))``, the transcript surrogate of transfer entropy."""
    _check(a, b)
    lam = _check_lag(lam)
    return _tmi_arrays(a.symbols, b.symbols, lam, a.group, base)


def directionality_indicator(a: SymbolSeries, b: SymbolSeries, lam: int = 1,
                             base: float = math.e) -> float:
    """``TMI(a -> b) - TMI(b -> a)``; positive when ``a`` drives ``b``."""
    return (transcript_mutual_information(a, b, lam, base)
            - transcript_mutual_information(b, a, lam, base))


@dataclass(frozen=True)
class CouplingReport:
    """TE/TMI comparison for one pair of series at one coupling delay.

    ``ccc`` is ``C(b_{t+lam}, b_t, a_t)``; together with ``entropy_premise``
    (``H(b) <= H(a)``) it tells whether TMI may stand in for TE.
    """

    lam: int
    te: float
    tmi: float
    delta_ti: float
    ccc: float
    epsilon: float
    log_base: float
    entropy_premise: bool

    def to_dict(self) -> dict:
        return asdict(self)


def coupling_report(a: SymbolSeries, b: SymbolSeries, lam: int = 1,
                    base: float = 2) -> CouplingReport:
    _check(a, b)
    lam = _check_lag(lam)
    g = a.group
    n = len(g)
    te = _te_arrays(a.symbols, b.symbols, lam, n, base)
    tmi = _tmi_arrays(a.symbols, b.symbols, lam, g, base)
    tmi_back = _tmi_arrays(b.symbols, a.symbols, lam, g, base)
    m = min(len(a), len(b)) - lam
    x, y = a.symbols[:m], b.symbols
    c = _ccc_arrays([y[lam:lam + m], y[:m], x], g, base)
    premise = _H([y[:m]], n, base) <= _H([x], n, base)
    return CouplingReport(lam=lam, te=te, tmi=tmi, delta_ti=tmi - tmi_back, ccc=c,
                          epsilon=abs(te - tmi), log_base=base, entropy_premise=premise)
