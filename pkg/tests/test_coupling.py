import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from transcripta import (
    SymbolSeries,
    ccc,
    coupling_report,
    directionality_indicator,
    estimate_dist,
    klein_group,
    mutual_information,
    shannon_entropy,
    symbolic_transfer_entropy,
    symmetric_group,
    transcribe,
    transcript_mutual_information,
)

import oracles

G = symmetric_group(3)
symbols = st.lists(st.integers(0, 5), min_size=4, max_size=80)


def series(xs, g=G):
    return SymbolSeries(g, xs)


def pair_strategy():
    return st.integers(4, 80).flatmap(lambda n: st.tuples(
        st.lists(st.integers(0, 5), min_size=n, max_size=n),
        st.lists(st.integers(0, 5), min_size=n, max_size=n)))


class TestMutualInformation:
    def test_hand_pair(self):
        xs = [0, 1, 1, 2, 0, 3, 3, 1]
        ys = [0, 1, 2, 2, 0, 3, 1, 1]
        # tallies: x (2,3,1,2)/8, y (2,3,2,1)/8, joint (0,0)x2 (1,1)x2 and four singletons
        hx = -sum(c / 8 * math.log(c / 8) for c in (2, 3, 1, 2))
        hy = -sum(c / 8 * math.log(c / 8) for c in (2, 3, 2, 1))
        hxy = -sum(c / 8 * math.log(c / 8) for c in (2, 2, 1, 1, 1, 1))
        value = mutual_information(series(xs), series(ys))
        assert value == pytest.approx(hx + hy - hxy, abs=1e-14)
        assert value == pytest.approx(oracles.mutual_info(xs, ys), abs=1e-14)

    def test_trivial_cases(self):
        a = series([2] * 10)
        b = series([4] * 10)
        assert mutual_information(a, b) == 0.0
        x = series([0, 1, 2, 3, 4, 5, 0, 1])
        assert mutual_information(x, x) == pytest.approx(shannon_entropy(estimate_dist(x).probs),
                                                         abs=1e-15)

    @given(pair_strategy(), st.integers(-3, 3))
    def test_identity_symmetry_and_lag(self, pair, lam):
        a, b = series(pair[0]), series(pair[1])
        mi = mutual_information(a, b)
        assert mi >= -1e-12
        assert mi == mutual_information(b, a)
        assert mi == pytest.approx(oracles.mutual_info(pair[0], pair[1]), abs=1e-12)
        n = len(pair[0])
        if abs(lam) < n:
            xs = pair[0][max(0, -lam):n - max(0, lam)]
            ys = pair[1][max(0, lam):n - max(0, -lam)]
            assert mutual_information(a, b, lam) == pytest.approx(
                oracles.mutual_info(xs, ys), abs=1e-12)

    def test_empty_overlap(self):
        with pytest.raises(ValueError):
            mutual_information(series([0, 1]), series([0, 1]), 2)


def ccc_forms(xs, ys):
    """The three two-series expressions, straight from entropies of tallies."""
    tau = [int(G.transcript(x, y)) for x, y in zip(xs, ys)]
    h = oracles.entropy
    pair = list(zip(xs, ys))
    min_mi = min(oracles.mutual_info(xs, tau), oracles.mutual_info(ys, tau))
    ent = min(h(xs), h(ys)) - h(pair) + h(tau)
    cond = h(tau) - max(h(pair) - h(ys), h(pair) - h(xs))
    return min_mi, ent, cond


class TestCCC:
    def test_identical_series(self):
        a = series([0, 3, 2, 5, 1, 1, 4, 0, 2])
        assert ccc([a, a]) == 0.0
        assert ccc([a, a, a]) == 0.0

    @given(pair_strategy())
    def test_two_series_forms_agree(self, pair):
        value = ccc([series(pair[0]), series(pair[1])])
        for form in ccc_forms(*pair):
            assert value == pytest.approx(form, abs=1e-10)
        assert value >= -1e-12

    @given(st.integers(3, 60).flatmap(
        lambda n: st.lists(st.lists(st.integers(0, 5), min_size=n, max_size=n),
                           min_size=3, max_size=3)))
    def test_permutation_invariance_exact(self, lists):
        ss = [series(x) for x in lists]
        values = {ccc(list(p)) for p in itertools.permutations(ss)}
        assert len(values) == 1

    def test_independent_uniform(self):
        rng = np.random.default_rng(2024)
        a = series(rng.integers(0, 6, 100_000))
        b = series(rng.integers(0, 6, 100_000))
        assert abs(ccc([a, b], base=2)) < 0.01

    def test_errors(self):
        a = series([0, 1, 2])
        with pytest.raises(ValueError):
            ccc([a])
        with pytest.raises(ValueError):
            ccc([a, series([0, 1])])
        with pytest.raises(ValueError):
            ccc([a, SymbolSeries(klein_group(), [0, 1, 2])])


class TestTransferEntropy:
    @given(pair_strategy(), st.integers(1, 3))
    def test_matches_conditional_mi_oracle(self, pair, lam):
        xs, ys = pair
        if len(xs) <= lam:
            return
        te = symbolic_transfer_entropy(series(xs), series(ys), lam)
        m = len(xs) - lam
        ref = oracles.conditional_mi(ys[lam:], xs[:m], ys[:m])
        assert te == pytest.approx(ref, abs=1e-12)
        assert te >= -1e-12

    def test_markov_pair(self):
        # 3-symbol driver; the target copies the driver with lag 1 except every 4th step
        xs = [0, 1, 2, 2, 1, 0, 0, 2, 1, 1, 2, 0, 1, 0, 2, 2]
        ys = [0] + [x if t % 4 else 2 for t, x in enumerate(xs[:-1])]
        te = symbolic_transfer_entropy(series(xs), series(ys), 1)
        assert te == pytest.approx(oracles.conditional_mi(ys[1:], xs[:-1], ys[:-1]), abs=1e-14)
        assert te > 0

    @given(symbols)
    def test_identical_inputs_give_exact_zero(self, xs):
        a = series(xs)
        assert symbolic_transfer_entropy(a, a, 1) == 0.0
        assert transcript_mutual_information(a, a, 1) == 0.0
        assert directionality_indicator(a, a, 1) == 0.0

    def test_independent_target(self):
        rng = np.random.default_rng(5)
        a = series(rng.integers(0, 6, 50_000))
        b = series(rng.integers(0, 6, 50_000))
        # plug-in bias is about (|G|-1)^2 |G| / (2 N ln 2) bits
        assert symbolic_transfer_entropy(a, b, 1, base=2) < 0.01

    @pytest.mark.parametrize("fn", [symbolic_transfer_entropy, transcript_mutual_information,
                                    directionality_indicator])
    def test_lambda_must_be_positive(self, fn):
        a = series([0, 1, 2, 3])
        with pytest.raises(ValueError):
            fn(a, a, 0)


class TestTMI:
    @given(pair_strategy(), st.integers(1, 3))
    def test_is_mi_of_transcript_series(self, pair, lam):
        xs, ys = pair
        if len(xs) <= lam:
            return
        a, b = series(xs), series(ys)
        m = len(xs) - lam
        self_t = transcribe(series(ys[:m]), series(ys[lam:]), 0)
        cross = transcribe(series(xs[:m]), series(ys[:m]), 0)
        ref = oracles.mutual_info(list(self_t.symbols), list(cross.symbols))
        assert transcript_mutual_information(a, b, lam) == pytest.approx(ref, abs=1e-12)

    @given(pair_strategy())
    def test_antisymmetry(self, pair):
        a, b = series(pair[0]), series(pair[1])
        assert directionality_indicator(a, b) == -directionality_indicator(b, a)

    def test_dimensional_reduction_when_premises_hold(self):
        # b_{t+1} = a_t, and consecutive b pairs run through all 36 words exactly once
        b = oracles.de_bruijn(6, 2)
        b = b + b[:1]
        a = b[1:] + [0]
        rep = coupling_report(series(a), series(b), 1, base=2)
        assert rep.entropy_premise
        assert rep.ccc == pytest.approx(0.0, abs=1e-12)
        assert rep.te == pytest.approx(rep.tmi, abs=1e-10)
        assert rep.te == pytest.approx(math.log2(6), abs=1e-12)
        assert rep.epsilon == pytest.approx(0.0, abs=1e-10)

    def test_report_fields(self):
        rng = np.random.default_rng(9)
        a = series(rng.integers(0, 6, 500))
        b = series(rng.integers(0, 6, 500))
        rep = coupling_report(a, b, 2)
        assert rep.lam == 2 and rep.log_base == 2
        assert rep.te == pytest.approx(symbolic_transfer_entropy(a, b, 2, base=2), abs=1e-15)
        assert rep.tmi == pytest.approx(transcript_mutual_information(a, b, 2, base=2), abs=1e-15)
        assert rep.delta_ti == pytest.approx(directionality_indicator(a, b, 2, base=2), abs=1e-15)
        assert rep.epsilon == abs(rep.te - rep.tmi)
        assert set(rep.to_dict()) >= {"te", "tmi", "delta_ti", "ccc", "epsilon", "lam"}

    @settings(max_examples=25)
    @given(st.integers(4, 40).flatmap(lambda n: st.tuples(
        st.lists(st.integers(0, 3), min_size=n, max_size=n),
        st.lists(st.integers(0, 3), min_size=n, max_size=n))))
    def test_klein_alphabet(self, pair):
        k = klein_group()
        a, b = SymbolSeries(k, pair[0]), SymbolSeries(k, pair[1])
        assert transcript_mutual_information(a, b) >= -1e-12
        assert symbolic_transfer_entropy(a, b) >= -1e-12


def test_sparse_histograms_match_dense():
    from transcripta.coupling import _joint_counts
    rng = np.random.default_rng(0)
    arrays = [rng.integers(0, 6, 300) for _ in range(3)]
    dense = _joint_counts(arrays, 6)
    sparse = _joint_counts(arrays * 3, 6)  # 6**9 cells forces the sparse path
    assert sorted(dense[dense > 0].tolist()) == sorted(sparse.tolist())
