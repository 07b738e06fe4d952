"""Finite groups, permutations and the transcript algebra.

Permutations are kept 1-based in one-line form, so ``Permutation("231")``
is the map 1->2, 2->3, 3->1.  Products follow the right-action convention
``(r * s)_k = s[r_k]``: ``r`` acts first, then ``s``.

General groups are given by a multiplication table over element indices
(0-based).  Symmetric groups built with :func:`symmetric_group` use the
lexicographic order of their elements, so index 0 is always the identity.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

import numpy as np

METRICS = ("cayley", "kendall")


class GroupAxiomError(ValueError):
    """A multiplication table that fails closure, associativity, identity or inverses."""

    def __init__(self, message: str, triple: tuple[int, int, int] | None = None):
        super().__init__(message)
        self.triple = triple


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------


class Permutation(tuple):
    """A permutation of ``{1, ..., L}`` in one-line form.

    Accepts any iterable of integers, or a string such as ``"231"`` (single
    digits) or ``"2,3,1"``.

    >>> Permutation("213") * Permutation("231")
    Permutation('321')
    """

    def __new__(cls, entries: Iterable[int] | str):
        if isinstance(entries, str):
            text = entries.strip()
            if "," in text or " " in text:
                entries = [int(v) for v in text.replace(",", " ").split()]
            else:
                entries = [int(ch) for ch in text]
        values = tuple(int(v) for v in entries)
        if not values:
            raise ValueError("a permutation needs at least one entry")
        if sorted(values) != list(range(1, len(values) + 1)):
            raise ValueError(f"{values} is not a bijection of 1..{len(values)}")
        return super().__new__(cls, values)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(1, degree + 1))

    @property
    def degree(self) -> int:
        return len(self)

    def inverse(self) -> Permutation:
        return invert(self)

    def __mul__(self, other):
        if isinstance(other, Permutation):
            return compose_right(self, other)
        return NotImplemented

    def __str__(self) -> str:
        if len(self) < 10:
            return "".join(str(v) for v in self)
        return ",".join(str(v) for v in self)

    def __repr__(self) -> str:
        return f"Permutation('{self}')"


def _raw(values) -> Permutation:
    # internal constructor for results that are bijections by construction
    return tuple.__new__(Permutation, values)


def _perm(values) -> Permutation:
    return values if isinstance(values, Permutation) else Permutation(values)


def compose_right(r: Sequence[int], s: Sequence[int]) -> Permutation:
    """Right-action product ``r * s = (s[r_1], ..., s[r_L])``."""
    r, s = _perm(r), _perm(s)
    if len(r) != len(s):
        raise ValueError(f"length mismatch: {len(r)} vs {len(s)}")
    return _raw(s[k - 1] for k in r)


def invert(r: Sequence[int]) -> Permutation:
    r = _perm(r)
    out = [0] * len(r)
    for pos, value in enumerate(r, start=1):
        out[value - 1] = pos
    return _raw(out)


def cycle_count(u: Sequence[int]) -> int:
    """Number of cycles of ``u``, fixed points included."""
    u = _perm(u)
    seen = [False] * len(u)
    cycles = 0
    for start in range(len(u)):
        if seen[start]:
            continue
        cycles += 1
        k = start
        while not seen[k]:
            seen[k] = True
            k = u[k] - 1
    return cycles


def inversion_count(u: Sequence[int]) -> int:
    """Number of pairs ``i < j`` with ``u_i > u_j``, by merge sort in O(L log L)."""

    def sort_count(seq: list[int]) -> tuple[list[int], int]:
        if len(seq) <= 1:
            return seq, 0
        mid = len(seq) // 2
        left, n_left = sort_count(seq[:mid])
        right, n_right = sort_count(seq[mid:])
        merged = []
        count = n_left + n_right
        i = j = 0
        while i < len(left) and j < len(right):
            if left[i] <= right[j]:
                merged.append(left[i])
                i += 1
            else:
                merged.append(right[j])
                count += len(left) - i
                j += 1
        merged.extend(left[i:])
        merged.extend(right[j:])
        return merged, count

    return sort_count(list(_perm(u)))[1]


def permutation_transcript(r: Sequence[int], s: Sequence[int]) -> Permutation:
    """The permutation ``s * r^-1`` that carries ``r`` to ``s``."""
    return compose_right(s, invert(r))


def cayley_distance(r: Sequence[int], s: Sequence[int]) -> int:
    """Minimum number of transpositions turning ``r`` into ``s``."""
    r, s = _perm(r), _perm(s)
    if len(r) != len(s):
        raise ValueError(f"length mismatch: {len(r)} vs {len(s)}")
    return len(r) - cycle_count(permutation_transcript(r, s))


def kendall_distance(r: Sequence[int], s: Sequence[int]) -> int:
    """Minimum number of adjacent transpositions turning ``r`` into ``s``."""
    r, s = _perm(r), _perm(s)
    if len(r) != len(s):
        raise ValueError(f"length mismatch: {len(r)} vs {len(s)}")
    return inversion_count(permutation_transcript(r, s))


def permutation_norm(u: Sequence[int], metric: str) -> int:
    """Distance from the identity, ``||u||`` for the chosen metric."""
    metric = _check_metric(metric)
    u = _perm(u)
    if metric == "cayley":
        return len(u) - cycle_count(u)
    return inversion_count(u)


def max_distance(degree: int, metric: str) -> int:
    """Largest Cayley (``L - 1``) or Kendall (``L(L-1)/2``) distance in Sym(L)."""
    metric = _check_metric(metric)
    return degree - 1 if metric == "cayley" else degree * (degree - 1) // 2


def _check_metric(metric: str) -> str:
    m = str(metric).lower()
    if m not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")
    return m


# ---------------------------------------------------------------------------
# Finite groups
# ---------------------------------------------------------------------------


class FiniteGroup:
    """A finite group given by element labels and a multiplication table.

    ``table[i, j]`` is the index of ``a_i . a_j``.  All group axioms are
    verified on construction; the object is read-only afterwards.

    Parameters
    ----------
    labels : sequence of str
        Distinct element names, in the order used by ``table``.
    table : array_like of int, shape (n, n)
    name : str, optional
    permutations : sequence of Permutation, optional
        Set only for symmetric groups; makes the distances native instead
        of transported through the Cayley embedding.
    """

    def __init__(self, labels, table, *, name: str | None = None,
                 permutations: Sequence[Permutation] | None = None):
        labels = tuple(str(v) for v in labels)
        n = len(labels)
        if n == 0:
            raise GroupAxiomError("a group needs at least one element")
        if len(set(labels)) != n:
            raise GroupAxiomError("element labels must be distinct")
        raw = np.asarray(table)
        if raw.shape != (n, n):
            raise GroupAxiomError(f"table must be {n}x{n}, got shape {raw.shape}")
        if raw.size and not np.issubdtype(raw.dtype, np.integer):
            if not np.all(np.equal(np.mod(raw, 1), 0)):
                raise GroupAxiomError("table entries must be integers")
        tab = raw.astype(np.int64)
        if tab.min() < 0 or tab.max() >= n:
            bad = tuple(int(v) for v in np.argwhere((tab < 0) | (tab >= n))[0])
            raise GroupAxiomError(
                f"table is not closed: entry {bad} = {tab[bad]} outside 0..{n - 1}")
        tab.setflags(write=False)

        self.labels = labels
        self.table = tab
        self.name = name or f"G{n}"
        self._check_associative()
        self.identity = self._find_identity()
        self.inverse = self._find_inverses()
        if permutations is not None:
            permutations = tuple(Permutation(p) for p in permutations)
            if len(permutations) != n:
                raise ValueError("one permutation per element is required")
        self.permutations = permutations
        self._hash = hash((labels, tab.tobytes(), permutations))

    # construction checks -------------------------------------------------

    def _check_associative(self) -> None:
        tab = self.table
        for a in range(len(tab)):
            lhs = tab[tab[a]]          # (a.b).c indexed by [b, c]
            rhs = tab[a][tab]          # a.(b.c)
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                b, c = (int(v) for v in bad[0])
                lab = self.labels
                raise GroupAxiomError(
                    f"associativity fails for ({lab[a]}, {lab[b]}, {lab[c]}): "
                    f"({lab[a]}.{lab[b]}).{lab[c]} = {lab[lhs[b, c]]} but "
                    f"{lab[a]}.({lab[b]}.{lab[c]}) = {lab[rhs[b, c]]}",
                    triple=(a, b, c))

    def _find_identity(self) -> int:
        ar = np.arange(len(self.labels))
        for e in range(len(ar)):
            if np.array_equal(self.table[e], ar) and np.array_equal(self.table[:, e], ar):
                return e
        raise GroupAxiomError("no identity element")

    def _find_inverses(self) -> np.ndarray:
        hits = (self.table == self.identity) & (self.table.T == self.identity)
        if not np.all(hits.sum(axis=1) == 1):
            a = int(np.argmin(hits.sum(axis=1) == 1))
            raise GroupAxiomError(f"element {self.labels[a]} has no two-sided inverse")
        inv = hits.argmax(axis=1).astype(np.int64)
        inv.setflags(write=False)
        return inv

    # JSON group-spec files -----------------------------------------------

    @classmethod
    def from_dict(cls, spec: dict, name: str | None = None) -> FiniteGroup:
        try:
            return cls(spec["elements"], spec["table"], name=name or spec.get("name"))
        except KeyError as exc:
            raise ValueError(f"group spec is missing key {exc}") from None

    @classmethod
    def from_json(cls, path) -> FiniteGroup:
        path = Path(path)
        with path.open() as fh:
            return cls.from_dict(json.load(fh), name=path.stem)

    def to_dict(self) -> dict:
        return {"elements": list(self.labels), "table": self.table.tolist()}

    # basic access ----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def is_symmetric(self) -> bool:
        return self.permutations is not None

    @property
    def degree(self) -> int | None:
        """``L`` for Sym(L), ``None`` for other groups."""
        return len(self.permutations[0]) if self.permutations else None

    def index(self, label) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise KeyError(f"{label!r} is not an element of {self.name}") from None

    def element(self, key) -> GroupElement:
        """Element by label (str/Permutation) or by integer index."""
        if isinstance(key, (int, np.integer)) and not isinstance(key, bool):
            if not 0 <= key < len(self):
                raise IndexError(f"index {key} out of range for |G|={len(self)}")
            return GroupElement(self, int(key))
        return GroupElement(self, self.index(key))

    @property
    def e(self) -> GroupElement:
        return GroupElement(self, self.identity)

    # vectorised index arithmetic (accepts ints or integer arrays) ---------

    def mul(self, a, b):
        return self.table[a, b]

    def inv(self, a):
        return self.inverse[a]

    def transcript(self, a, b):
        """``T(a, b) = b . a^-1`` on indices."""
        return self.table[b, self.inverse[a]]

    def conjugate_transcript(self, a, b):
        """``a^-1 . b`` on indices."""
        return self.table[self.inverse[a], b]

    @cached_property
    def transcript_table(self) -> np.ndarray:
        """``[a, b] -> T(a, b)`` for all index pairs."""
        ar = np.arange(len(self))
        out = self.table[ar[None, :], self.inverse[ar][:, None]]
        out.setflags(write=False)
        return out

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        # the permutation images decide native vs transported distances
        return (self.labels == other.labels and self.permutations == other.permutations
                and np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={len(self)})"


@dataclass(frozen=True)
class GroupElement:
    group: FiniteGroup
    index: int

    def __post_init__(self):
        if not 0 <= self.index < len(self.group):
            raise IndexError(f"index {self.index} out of range for |G|={len(self.group)}")

    @property
    def label(self) -> str:
        return self.group.labels[self.index]

    def __mul__(self, other: GroupElement) -> GroupElement:
        _same_group(self, other)
        return GroupElement(self.group, int(self.group.mul(self.index, other.index)))

    def inverse(self) -> GroupElement:
        return GroupElement(self.group, int(self.group.inverse[self.index]))

    def __str__(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return f"GroupElement({self.label!r} in {self.group.name})"


def _same_group(a: GroupElement, b: GroupElement) -> None:
    if a.group is not b.group and a.group != b.group:
        raise ValueError(f"elements belong to different groups ({a.group.name}, {b.group.name})")


def transcript(a: GroupElement, b: GroupElement) -> GroupElement:
    """Transcript from source ``a`` to target ``b``: ``T(a, b) = b . a^-1``."""
    _same_group(a, b)
    return GroupElement(a.group, int(a.group.transcript(a.index, b.index)))


def conjugate_transcript(a: GroupElement, b: GroupElement) -> GroupElement:
    """Left translation of ``b`` by ``a``: ``a^-1 . b``."""
    _same_group(a, b)
    return GroupElement(a.group, int(a.group.conjugate_transcript(a.index, b.index)))


def element_order(a: GroupElement) -> int:
    """Smallest ``m >= 1`` with ``a^m = e``."""
    g = a.group
    m, power = 1, a.index
    while power != g.identity:
        power = int(g.table[power, a.index])
        m += 1
    return m


def order_classes(g: FiniteGroup) -> dict[int, tuple[int, ...]]:
    """Map each occurring element order ``m`` to the indices of order ``m``."""
    classes: dict[int, list[int]] = {}
    for i in range(len(g)):
        classes.setdefault(element_order(GroupElement(g, i)), []).append(i)
    return {m: tuple(classes[m]) for m in sorted(classes)}


# ---------------------------------------------------------------------------
# Standard groups
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def symmetric_group(degree: int) -> FiniteGroup:
    """Sym(L) with elements in lexicographic one-line order under ``*``."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if degree > 7:
        raise ValueError("Sym(L) tables are only built for L <= 7")
    perms = [_raw(p) for p in itertools.permutations(range(1, degree + 1))]
    lookup = {p: i for i, p in enumerate(perms)}
    table = [[lookup[compose_right(r, s)] for s in perms] for r in perms]
    return FiniteGroup([str(p) for p in perms], table, name=f"Sym({degree})",
                       permutations=perms)


@lru_cache(maxsize=None)
def cyclic_group(n: int) -> FiniteGroup:
    """Integers modulo ``n`` under addition, labelled ``"0".."n-1"``."""
    ar = np.arange(n)
    return FiniteGroup([str(k) for k in range(n)], (ar[:, None] + ar[None, :]) % n,
                       name=f"Z{n}")


@lru_cache(maxsize=None)
def klein_group() -> FiniteGroup:
    table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    return FiniteGroup(["e", "a", "b", "c"], table, name="Klein")


def load_group(path) -> FiniteGroup:
    """Read a group-spec JSON file ``{"elements": [...], "table": [[...]]}``."""
    return FiniteGroup.from_json(path)


# ---------------------------------------------------------------------------
# Cayley embedding and distances
# ---------------------------------------------------------------------------


def cayley_embed(g: FiniteGroup) -> list[Permutation]:
    """Images of the Cayley isomorphism ``a_i -> (a_i^-1 . a_j)_j``.

    Row ``i`` of the conjugate-transcript matrix, read as a permutation of
    ``{1..|G|}`` in the element order of ``g.labels``.
    """
    rows = _embedding_array(g)
    return [_raw(int(v) + 1 for v in row) for row in rows]


@lru_cache(maxsize=64)
def _embedding_array(g: FiniteGroup) -> np.ndarray:
    ar = np.arange(len(g))
    return g.table[g.inverse[ar][:, None], ar[None, :]]


@lru_cache(maxsize=64)
def group_norms(g: FiniteGroup, metric: str) -> np.ndarray:
    """``||a|| = d(e, a)`` for every element, native for Sym(L), transported otherwise."""
    metric = _check_metric(metric)
    if g.is_symmetric:
        images = g.permutations
    else:
        images = cayley_embed(g)
    out = np.array([permutation_norm(p, metric) for p in images], dtype=np.int64)
    out.setflags(write=False)
    return out


def group_max_distance(g: FiniteGroup, metric: str) -> int:
    """Theoretical maximum distance: that of Sym(L), or of Sym(|G|) when transported."""
    degree = g.degree if g.is_symmetric else len(g)
    return max_distance(degree, metric)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    metric: str
    values: np.ndarray
    max_possible: int
    labels: tuple[str, ...]
    transported: bool = False

    def __post_init__(self):
        self.values.setflags(write=False)

    def to_csv(self) -> str:
        lines = ["," + ",".join(self.labels)]
        for label, row in zip(self.labels, self.values):
            lines.append(label + "," + ",".join(str(int(v)) for v in row))
        return "\n".join(lines) + "\n"


def distance_matrix(g: FiniteGroup, metric: str = "kendall") -> DistanceMatrix:
    """Pairwise Cayley or Kendall distances between the elements of ``g``.

    Sym(L) is measured natively; any other group through its Cayley
    embedding into Sym(|G|).  Filled through right-invariance,
    ``D(a, b) = ||T(a, b)||``.
    """
    metric = _check_metric(metric)
    norms = group_norms(g, metric)
    return DistanceMatrix(metric=metric, values=norms[g.transcript_table],
                          max_possible=group_max_distance(g, metric),
                          labels=g.labels, transported=not g.is_symmetric)


class Admissible(NamedTuple):
    values: list[int]
    gaps: list[int]


def admissible_distances(m: DistanceMatrix, identity_index: int = 0) -> Admissible:
    """Distances realised in the identity row, and the gaps up to ``max_possible``."""
    values = sorted({int(v) for v in m.values[identity_index]})
    gaps = sorted(set(range(m.max_possible + 1)) - set(values))
    return Admissible(values, gaps)
