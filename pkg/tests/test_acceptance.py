"""Acceptance criteria, one marked group of tests per criterion.

The terminal summary (see ``conftest.py``) prints one PASS/FAIL line per
criterion together with the measured values recorded by each part.
"""

import itertools
import math
from collections import Counter

import numpy as np
import pytest

from transcripta import (
    Permutation,
    SymbolSeries,
    admissible_distances,
    cayley_distance,
    cayley_embed,
    ccc,
    compose_right,
    cyclic_group,
    distance_matrix,
    element_order,
    invert,
    js_distance,
    js_divergence,
    kendall_distance,
    klein_group,
    normalized_entropy,
    order_classes,
    shannon_entropy,
    statistical_complexity,
    symmetric_group,
    transcript,
)
from transcripta.henon import (
    SweepConfig,
    default_workers,
    experiment_entropy_complexity,
    experiment_order_classes,
    experiment_similarity,
    experiment_te_tmi,
)

import golden
import oracles

criterion = pytest.mark.criterion
GROUPS = [symmetric_group(L) for L in (1, 2, 3, 4)] + [klein_group()] + [
    cyclic_group(n) for n in (5, 6, 8, 12, 24)]


def labels_of(g, table):
    return [[g.labels[v] for v in row] for row in table]


# ---------------------------------------------------------------------------
# property and oracle suite
# ---------------------------------------------------------------------------


@criterion(1)
class TestGoldenTables:
    g = symmetric_group(3)

    def test_order(self):
        assert list(self.g.labels) == golden.SYM3

    def test_multiplication_table(self):
        assert labels_of(self.g, self.g.table) == golden.rows(golden.SYM3_PRODUCT)

    def test_transcript_table(self):
        assert labels_of(self.g, self.g.transcript_table) == golden.rows(golden.SYM3_TRANSCRIPT)

    def test_cayley_matrix(self):
        assert distance_matrix(self.g, "cayley").values.tolist() == golden.SYM3_CAYLEY

    def test_kendall_matrix(self):
        assert distance_matrix(self.g, "kendall").values.tolist() == golden.SYM3_KENDALL


@criterion(2)
class TestBFS:
    @pytest.mark.parametrize("L", [3, 4])
    def test_kendall_and_cayley(self, L):
        for r in oracles.perms(L):
            adj, anyswap = oracles.bfs_distances(r, "adjacent"), oracles.bfs_distances(r, "all")
            for s in oracles.perms(L):
                assert kendall_distance(r, s) == adj[s]
                assert cayley_distance(r, s) == anyswap[s]

    @pytest.mark.slow
    def test_kendall_sym5(self):
        for r in oracles.perms(5):
            adj = oracles.bfs_distances(r, "adjacent")
            for s in oracles.perms(5):
                assert kendall_distance(r, s) == adj[s]

    def test_worked_pair(self):
        assert kendall_distance("1423", "2341") == 5
        assert oracles.bfs_distances((1, 4, 2, 3))[(2, 3, 4, 1)] == 5


@criterion(3)
class TestKlein:
    g = klein_group()

    def test_embedding(self):
        assert [str(p) for p in cayley_embed(self.g)] == golden.KLEIN_EMBEDDING

    def test_transported_kendall(self):
        m = distance_matrix(self.g, "kendall")
        assert m.transported and m.values.tolist() == golden.KLEIN_KENDALL

    def test_admissible_and_gaps(self):
        adm = admissible_distances(distance_matrix(self.g, "kendall"))
        assert adm.values == [0, 2, 4, 6] and adm.gaps == [1, 3, 5]


@criterion(4)
class TestIdentities:
    @pytest.mark.parametrize("g", GROUPS, ids=lambda g: g.name)
    def test_pair_identities(self, g):
        els = [g.element(i) for i in range(len(g))]
        fibres = Counter()
        for a, b in itertools.product(els, repeat=2):
            t = transcript(a, b)
            assert transcript(b, a) == t.inverse()          # reversal inverts
            assert t * a == b                               # reconstruction
            fibres[t.index] += 1
        assert fibres == Counter({i: len(g) for i in range(len(g))})   # |G|-to-one

    @pytest.mark.parametrize("g", [symmetric_group(3), klein_group()], ids=lambda g: g.name)
    def test_chain_rule_triples(self, g):
        els = [g.element(i) for i in range(len(g))]
        for a, b, c in itertools.product(els, repeat=3):
            assert transcript(b, c) * transcript(a, b) == transcript(a, c)

    @pytest.mark.parametrize("g", GROUPS, ids=lambda g: g.name)
    def test_cayley_homomorphism(self, g):
        phi = cayley_embed(g)
        assert phi[g.identity] == Permutation.identity(len(g))     # identity to identity
        assert len(set(phi)) == len(g)
        for a, b in itertools.product(range(len(g)), repeat=2):
            assert phi[g.mul(a, b)] == compose_right(phi[a], phi[b])   # homomorphism

    @pytest.mark.parametrize("g", GROUPS, ids=lambda g: g.name)
    def test_order_class_partition(self, g):
        classes = order_classes(g)
        members = sorted(i for c in classes.values() for i in c)
        assert members == list(range(len(g)))
        table = [list(map(int, row)) for row in g.table]
        for m, idx in classes.items():
            for i in idx:
                assert oracles.order_of(i, lambda x, y: table[x][y], g.identity) == m

    def test_sym3_order_is_cayley_distance_plus_one(self):
        g = symmetric_group(3)
        for r, s in itertools.product(oracles.perms(3), repeat=2):
            t = transcript(g.element("".join(map(str, r))), g.element("".join(map(str, s))))
            assert element_order(t) - 1 == cayley_distance(r, s)
            assert str(t) == str(compose_right(s, invert(r)))


@criterion(5)
class TestEntropicBounds:
    @staticmethod
    def draws(rng, count):
        for k in range(count):
            n = int(rng.integers(2, 25))
            w = rng.dirichlet(np.full(n, rng.choice([0.05, 1.0, 20.0])))
            if k % 4 == 0:
                w[rng.random(n) < 0.5] = 0.0
                if w.sum() == 0:
                    w[0] = 1.0
                w /= w.sum()
            yield w

    def test_entropy_and_js_ranges(self, record_property):
        rng = np.random.default_rng(20240501)
        worst_h, worst_js = 0.0, 0.0
        for p in self.draws(rng, 10_000):
            n = len(p)
            h = shannon_entropy(p)
            assert 0.0 <= h <= math.log(n) + 1e-12
            q = rng.dirichlet(np.ones(n))
            d = js_divergence(p, q)
            assert 0.0 <= d <= math.log(2) + 1e-12
            worst_h = max(worst_h, h - math.log(n))
            worst_js = max(worst_js, d - math.log(2))
        record_property("measured", f"max H-log n={worst_h:.3g}, max JS-log 2={worst_js:.3g}")

    @pytest.mark.parametrize("n", [2, 3, 6, 24])
    def test_complexity_zero_at_extremes(self, n):
        assert abs(statistical_complexity(np.full(n, 1.0 / n))) <= 1e-12
        for k in range(n):
            assert abs(statistical_complexity(np.eye(n)[k])) <= 1e-12

    def test_js_distance_triangle(self, record_property):
        rng = np.random.default_rng(7)
        slack = math.inf
        for p in self.draws(rng, 1000):
            q, r = (rng.dirichlet(np.full(len(p), 0.5)) for _ in range(2))
            gap = js_distance(p, q) + js_distance(q, r) - js_distance(p, r)
            assert gap >= -1e-12
            slack = min(slack, gap)
        record_property("measured", f"min triangle slack={slack:.3g}")


@criterion(6)
class TestCCC:
    g = symmetric_group(3)

    def test_identical_series(self):
        rng = np.random.default_rng(1)
        a = SymbolSeries(self.g, rng.integers(0, 6, 5000))
        assert ccc([a, a]) == 0.0
        assert ccc([a, a, a]) == 0.0

    def test_list_permutation_invariance(self):
        rng = np.random.default_rng(2)
        x = rng.integers(0, 6, 20_000)
        y = np.where(rng.random(x.size) < 0.6, x, rng.integers(0, 6, x.size))
        z = self.g.table[x, rng.integers(0, 2, x.size)]
        series = [SymbolSeries(self.g, s) for s in (x, y, z)]
        values = {ccc([series[i] for i in order]) for order in itertools.permutations(range(3))}
        assert len(values) == 1

    @pytest.mark.parametrize("M", [2, 3])
    def test_independent_uniform(self, M, record_property):
        rng = np.random.default_rng(100 + M)
        series = [SymbolSeries(self.g, rng.integers(0, 6, 100_000)) for _ in range(M)]
        value = ccc(series, base=2)
        record_property("measured", f"CCC={value:.3g} bits")
        assert abs(value) < 0.01


# ---------------------------------------------------------------------------
# Hénon reproduction suite (default sweep)
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def sweep():
    return SweepConfig()


@pytest.fixture(scope="module")
def tables(sweep):
    workers = default_workers()
    out = {
        "ec": experiment_entropy_complexity(sweep, workers),
        "oc": experiment_order_classes(sweep, workers),
        "te1": experiment_te_tmi(sweep, 1, workers),
        "te5": experiment_te_tmi(sweep, 5, workers),
        "sim": experiment_similarity(sweep, workers),
    }
    for t in out.values():
        t.index = t.C.round(2)
    return out


def span(lo, hi):
    return [round(c, 2) for c in np.arange(lo, hi + 1e-9, 0.05)]


def show(series):
    return ", ".join(f"{c:.2f}:{v:.4g}" for c, v in series.items())


@pytest.mark.henon
@criterion(7)
class TestForbiddenTranscript:
    def test_extinct(self, tables, record_property):
        p = tables["oc"].p_identity.loc[[0.40, 0.45, 0.55]]
        record_property("measured", "p(123) " + show(p))
        assert (p == 0).all()

    def test_nearly_extinct(self, tables, record_property):
        p = tables["oc"].p_identity.loc[[0.50, 0.60]]
        record_property("measured", "p(123) " + show(p))
        assert (p <= 1e-3).all()


@pytest.mark.henon
@criterion(8)
class TestStrongSync:
    def test_identity_dominates(self, tables, record_property):
        p = tables["oc"].p_identity.loc[span(0.90, 1.20)]
        record_property("measured", f"min p(123)={p.min():.4f} at C={p.idxmin():.2f}")
        assert (p >= 0.9).all()

    def test_order_three_extinct(self, tables, record_property):
        p = tables["oc"].p_C3.loc[span(0.95, 1.20)]
        record_property("measured", f"max p_C3={p.max():.3g}")
        assert (p == 0).all()


@pytest.mark.henon
@criterion(9)
class TestEntropyComplexity:
    def test_complexity(self, tables, record_property):
        sc = tables["ec"].SC
        strong, weak = sc.loc[span(0.90, 1.20)].max(), sc.loc[span(0.50, 0.60)].min()
        record_property("measured", f"max SC strong={strong:.4f} < min SC weak={weak:.4f}")
        assert strong < weak

    def test_entropy(self, tables, record_property):
        h = tables["ec"].h
        weak, strong = h.loc[span(0.50, 0.60)].min(), h.loc[span(0.90, 1.20)].max()
        record_property("measured", f"min h weak={weak:.4f} > max h strong={strong:.4f}")
        assert weak > strong


@pytest.mark.henon
@criterion(10)
class TestDirectionality:
    def test_positive(self, tables, record_property):
        t = tables["te1"].loc[tables["te1"].index > 0]
        record_property("measured", f"min TE={t.TE.min():.3g}, min TMI={t.TMI.min():.3g}")
        assert (t.TE > 0).all() and (t.TMI > 0).all()

    @pytest.mark.parametrize("delay", [1, 5])
    def test_tmi_argmax(self, tables, delay, record_property):
        tmi = tables[f"te{delay}"].TMI
        record_property("measured", f"argmax TMI={tmi.idxmax():.2f} ({tmi.max():.4f} bits)")
        assert tmi.idxmax() in (0.55, 0.60)

    def test_delay_shrinks_indicator(self, tables, record_property):
        def eps(t):
            t = t.loc[t.index <= 0.60]
            return float((t.TE - t.TMI).abs().mean())
        e1, e5 = eps(tables["te1"]), eps(tables["te5"])
        record_property("measured", f"mean eps T=5 {e5:.4f} < T=1 {e1:.4f}")
        assert e5 < e1

    def test_tmi_vanishes_uncoupled(self, tables, record_property):
        value = tables["te5"].TMI.loc[0.0]
        record_property("measured", f"TMI(C=0, T=5)={value:.4g} bits")
        assert value <= 1e-3


@pytest.mark.henon
@criterion(11)
class TestSimilarity:
    def test_argmax(self, tables, record_property):
        d = tables["sim"].delta_K
        record_property("measured", f"argmax delta_K={d.idxmax():.2f} ({d.max():.4f})")
        assert d.idxmax() == 0.55

    def test_strong_below_weak(self, tables, record_property):
        d = tables["sim"].delta_K
        strong, weak = d.loc[span(1.00, 1.20)].max(), d.loc[span(0.00, 0.65)].min()
        record_property("measured", f"max strong={strong:.4f} < min weak={weak:.4f}")
        assert strong < weak

    def test_js_local_maximum(self, tables, record_property):
        js = tables["sim"].js_distance
        record_property("measured", "JS " + show(js.loc[[0.45, 0.50, 0.55, 0.60, 0.70]]))
        assert js.loc[0.55] > js.loc[0.50] and js.loc[0.55] > js.loc[0.60]
        assert js.loc[0.55] > js.loc[0.45] and js.loc[0.55] > js.loc[0.70]
