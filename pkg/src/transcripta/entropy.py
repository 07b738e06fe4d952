"""Probability estimates over group alphabets and the entropic measures.

Raw entropies and divergences default to natural logarithms; pass
``base=2`` for bits.  Normalised quantities (``normalized_entropy``,
``statistical_complexity``) are base-independent or fixed to base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup
from .symbolization import SymbolSeries, aligned_range

RARE_THRESHOLD = 1e-3


@dataclass(frozen=True, eq=False)
class ProbDist:
    """A probability vector, optionally with the integer counts it came from."""

    probs: np.ndarray
    counts: np.ndarray | None = None
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float).reshape(-1)
        if probs.size == 0:
            raise ValueError("empty distribution")
        if np.any(probs < 0) or not np.all(np.isfinite(probs)):
            raise ValueError("probabilities must be finite and non-negative")
        if abs(probs.sum() - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {probs.sum()!r}, not 1")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        if self.counts is not None:
            counts = np.asarray(self.counts).reshape(-1)
            counts.setflags(write=False)
            object.__setattr__(self, "counts", counts)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_counts(cls, counts, labels=None, laplace: float = 0.0) -> ProbDist:
        counts = np.asarray(counts)
        total = counts.sum()
        if total <= 0:
            raise ValueError("no observations")
        if laplace:
            probs = (counts + laplace) / (total + laplace * counts.size)
        else:
            probs = counts / total
        return cls(probs, counts=counts, labels=labels)

    @classmethod
    def uniform(cls, n: int, labels=None) -> ProbDist:
        return cls(np.full(n, 1.0 / n), labels=labels)

    @property
    def support_size(self) -> int:
        return len(self.probs)

    def __len__(self) -> int:
        return len(self.probs)

    def forbidden(self) -> list[int]:
        """Bins with empirical probability exactly 0."""
        return [int(i) for i in np.flatnonzero(self.probs == 0)]

    def rare(self, threshold: float = RARE_THRESHOLD) -> list[int]:
        """Bins with probability in ``(0, threshold]``."""
        return [int(i) for i in np.flatnonzero((self.probs > 0) & (self.probs <= threshold))]


@dataclass(frozen=True, eq=False)
class JointDist:
    """Joint distribution of ``(alpha_t, beta_{t+lam})`` on ``G x G``."""

    probs: np.ndarray
    counts: np.ndarray | None = None

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        if probs.ndim != 2 or probs.shape[0] != probs.shape[1]:
            raise ValueError("joint distribution must be a square matrix")
        if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-12:
            raise ValueError("joint probabilities must be non-negative and sum to 1")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    def marginals(self) -> tuple[ProbDist, ProbDist]:
        if self.counts is not None:
            return (ProbDist.from_counts(self.counts.sum(axis=1)),
                    ProbDist.from_counts(self.counts.sum(axis=0)))
        return ProbDist(self.probs.sum(axis=1)), ProbDist(self.probs.sum(axis=0))


def _probs(p) -> np.ndarray:
    return p.probs if isinstance(p, ProbDist) else np.asarray(p, dtype=float)


# ---------------------------------------------------------------------------
# Estimation
# ---------------------------------------------------------------------------


def estimate_dist(s: SymbolSeries, laplace: float = 0.0) -> ProbDist:
    """Relative frequencies of the symbols (plug-in estimate)."""
    if len(s) == 0:
        raise ValueError("cannot estimate a distribution from an empty series")
    counts = np.bincount(s.symbols, minlength=len(s.group))
    return ProbDist.from_counts(counts, labels=s.group.labels, laplace=laplace)


def estimate_joint(a: SymbolSeries, b: SymbolSeries, lam: int = 0) -> JointDist:
    """Empirical joint distribution of ``(a_t, b_{t+lam})`` over the common support."""
    if a.group is not b.group and a.group != b.group:
        raise ValueError("series live in different groups")
    t0, t1 = aligned_range(len(a), len(b), lam)
    if t1 <= t0:
        raise ValueError(f"no overlap for lambda={lam}")
    n = len(a.group)
    codes = a.symbols[t0:t1] * n + b.symbols[t0 + lam:t1 + lam]
    counts = np.bincount(codes, minlength=n * n).reshape(n, n)
    return JointDist(counts / counts.sum(), counts=counts)


def _fiber_sum(weights: np.ndarray, g: FiniteGroup) -> np.ndarray:
    return np.bincount(g.transcript_table.ravel(), weights=weights.ravel(), minlength=len(g))


def transcript_dist_from_joint(j: JointDist, g: FiniteGroup) -> ProbDist:
    """``p(tau) = sum_alpha p(alpha, tau . alpha)``."""
    if j.probs.shape != (len(g), len(g)):
        raise ValueError("joint distribution does not match the group order")
    if j.counts is not None:
        counts = np.bincount(g.transcript_table.ravel(), weights=j.counts.ravel(),
                             minlength=len(g)).astype(np.int64)
        return ProbDist.from_counts(counts, labels=g.labels)
    probs = _fiber_sum(j.probs, g)
    return ProbDist(probs / probs.sum(), labels=g.labels)


def independent_product_dist(pa, pb, g: FiniteGroup) -> ProbDist:
    """Transcript distribution of independent sources: fibre sums of ``P_a x P_b``."""
    a, b = _probs(pa), _probs(pb)
    if len(a) != len(g) or len(b) != len(g):
        raise ValueError("distributions must live on the group")
    probs = _fiber_sum(np.outer(a, b), g)
    return ProbDist(probs / probs.sum(), labels=g.labels)


# ---------------------------------------------------------------------------
# Entropies and divergences
# ---------------------------------------------------------------------------


def entropy_from_counts(counts, base: float = math.e) -> float:
    """Plug-in Shannon entropy of a histogram.

    Counts are sorted before summation so that histograms with the same
    multiset of counts give bit-identical entropies.
    """
    c = np.sort(np.asarray(counts, dtype=float).ravel())
    c = c[c > 0]
    total = c.sum()
    if total == 0:
        raise ValueError("empty histogram")
    probs = c / total
    return -float(np.dot(probs, np.log(probs))) / math.log(base) + 0.0


def shannon_entropy(p, base: float = math.e) -> float:
    """``-sum p log p`` with ``0 log 0 = 0``."""
    probs = np.sort(_probs(p))
    probs = probs[probs > 0]
    return -float(np.dot(probs, np.log(probs))) / math.log(base) + 0.0


def normalized_entropy(p) -> float:
    """``H(p) / log n``, in ``[0, 1]``."""
    n = len(_probs(p))
    if n < 2:
        raise ValueError("normalised entropy needs at least two bins")
    return shannon_entropy(p) / math.log(n)


def kl_divergence(p, q, base: float = math.e) -> float:
    """``D_KL(p || q)``; ``inf`` when ``p`` is not absolutely continuous w.r.t. ``q``."""
    a, b = _probs(p), _probs(q)
    if a.shape != b.shape:
        raise ValueError("distributions have different support sizes")
    mask = a > 0
    if np.any(b[mask] == 0):
        return math.inf
    return float(np.dot(a[mask], np.log(a[mask] / b[mask]))) / math.log(base)


def symmetrized_kl(p, q, base: float = math.e, kind: str = "harmonic") -> float:
    """Symmetric combination of ``D_KL(p||q)`` and ``D_KL(q||p)``.

    ``kind`` is ``"harmonic"`` (``2ab/(a+b)``), ``"resistor"`` (``ab/(a+b)``)
    or ``"arithmetic"``.  Returns ``inf`` if either direction is infinite.
    """
    d1, d2 = kl_divergence(p, q, base), kl_divergence(q, p, base)
    if math.isinf(d1) or math.isinf(d2):
        return math.inf
    if kind == "arithmetic":
        return (d1 + d2) / 2
    if kind not in ("harmonic", "resistor"):
        raise ValueError(f"unknown kind {kind!r}")
    if d1 + d2 == 0:
        return 0.0
    scale = 2.0 if kind == "harmonic" else 1.0
    return scale * d1 * d2 / (d1 + d2)


def js_divergence(p, q, base: float = math.e) -> float:
    """Jensen-Shannon divergence ``H((p+q)/2) - (H(p) + H(q))/2``."""
    a, b = _probs(p), _probs(q)
    if a.shape != b.shape:
        raise ValueError("distributions have different support sizes")
    m = (a + b) / 2
    # written as the mean of two KL terms: exactly 0 when p == q
    total = 0.0
    for x in (a, b):
        mask = x > 0
        total += float(np.dot(x[mask], np.log(x[mask] / m[mask])))
    return max(0.0, total / 2) / math.log(base)


def js_distance(p, q, base: float = math.e) -> float:
    return math.sqrt(js_divergence(p, q, base))


def statistical_complexity(p, qref=None, divergence: str = "js") -> float:
    """Statistical complexity of ``p`` with respect to ``qref`` (uniform by default).

    ``divergence="js"``: base-2 JS divergence times the normalised entropy,
    a value in ``[0, 1]``.  ``divergence="kl_sym"``: harmonic-mean
    symmetrised KL times the base-2 Shannon entropy, unnormalised.
    """
    probs = _probs(p)
    q = ProbDist.uniform(len(probs)).probs if qref is None else _probs(qref)
    if divergence == "js":
        return js_divergence(probs, q, base=2) * normalized_entropy(probs)
    if divergence == "kl_sym":
        d = symmetrized_kl(probs, q, base=2)
        return d if math.isinf(d) else d * shannon_entropy(probs, base=2)
    raise ValueError(f"unknown divergence {divergence!r}")
