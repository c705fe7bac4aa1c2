import numpy as np
import pytest

from ginsum import verifier
from ginsum.model import MessageId, validate_params, validate_split
from ginsum.rates import THEOREM_PAIRINGS, cap, region_constraints, sum_rate_bounds
from ginsum.region_lp import (
    build_lp,
    covering_pairs,
    max_sum_rate_lp,
    pairing_oracle,
)

ALL_PRIVATE = validate_split(1, 0, 0, 1, 0, 0)


class TestLp:
    def test_decoupled(self):
        params = validate_params(0, 0, 1, 1)
        value, argmax = max_sum_rate_lp(region_constraints(params, ALL_PRIVATE))
        assert value == pytest.approx(1.0, abs=1e-12)
        assert argmax.ru1 == pytest.approx(cap(1), abs=1e-12)
        assert argmax.ru2 == pytest.approx(cap(1), abs=1e-12)
        for r in (argmax.rv1, argmax.rw1, argmax.rv2, argmax.rw2):
            assert r == pytest.approx(0.0, abs=1e-12)

    def test_singleton_constraints_bind(self):
        # All-private split with no cross gain into Rx2: the two direct
        # singleton constraints are the binding ones.
        params = validate_params(0, 0.5, 2, 1)
        cons = region_constraints(params, ALL_PRIVATE)
        value, _ = max_sum_rate_lp(cons)
        i1 = 1.0 + 0.25 * 1.0  # h2^2 * a2 * p2
        assert value == pytest.approx(cap(2 / i1) + cap(1), abs=1e-9)

    def test_argmax_feasible(self, rng):
        for _ in range(100):
            params = verifier.sample_params(rng)
            split = verifier.sample_split(rng)
            cons = region_constraints(params, split)
            value, x = max_sum_rate_lp(cons)
            rates_by_id = dict(zip(
                (MessageId.U1, MessageId.V1, MessageId.W1,
                 MessageId.U2, MessageId.V2, MessageId.W2),
                x.as_tuple(),
            ))
            for c in cons:
                assert sum(rates_by_id[m] for m in c.subset) <= c.rhs + 1e-9
            assert value == pytest.approx(x.total, abs=1e-9)

    def test_value_invariant_under_permutation(self, rng):
        params = verifier.sample_params(rng)
        split = verifier.sample_split(rng)
        cons = region_constraints(params, split)
        base, _ = max_sum_rate_lp(cons)
        for seed in range(5):
            perm = list(cons)
            np.random.default_rng(seed).shuffle(perm)
            value, _ = max_sum_rate_lp(perm)
            assert value == pytest.approx(base, abs=1e-9)

    def test_lp_never_exceeds_pairing(self, rng):
        for _ in range(200):
            params = verifier.sample_params(rng)
            split = verifier.sample_split(rng)
            cons = region_constraints(params, split)
            lp_value, _ = max_sum_rate_lp(cons)
            pair_value, _ = pairing_oracle(cons)
            assert lp_value <= pair_value + 1e-9

    def test_build_lp_shape(self):
        params = validate_params(1, 1, 1, 1)
        lp = build_lp(region_constraints(params, ALL_PRIVATE))
        assert lp.a.shape == (30, 6)
        assert np.all((lp.a == 0) | (lp.a == 1))
        assert np.all(lp.b >= 0)


class TestPairingOracle:
    def test_canonical_pairings_enumerated(self):
        params = validate_params(0.7, 1.3, 2, 5)
        split = validate_split(0.2, 0.5, 0.3, 0.1, 0.6, 0.3)
        cons = region_constraints(params, split)
        pairs = covering_pairs(cons)
        assert len(pairs) == 9  # V1 and V2 each covered one of 3 ways
        enumerated = {(cons[i].subset, cons[j].subset) for i, j in pairs}
        for s1, s2 in THEOREM_PAIRINGS:
            assert (s1, s2) in enumerated

    def test_matches_min_bound(self, rng):
        for _ in range(300):
            params = verifier.sample_params(rng)
            split = verifier.sample_split(rng)
            cons = region_constraints(params, split)
            value, best = pairing_oracle(cons)
            assert value == pytest.approx(
                sum_rate_bounds(params, split).min_bound, abs=1e-12
            )
            assert best.rx1_subset | best.rx2_subset == frozenset(MessageId)

    def test_decoupled(self):
        params = validate_params(0, 0, 1, 1)
        value, _ = pairing_oracle(region_constraints(params, ALL_PRIVATE))
        assert value == pytest.approx(2 * cap(1), abs=1e-12)

    def test_degenerate_all_common_split(self):
        params = validate_params(1.5, 0.7, 1, 2)
        split = validate_split(0, 1, 0, 0, 1, 0)
        cons = region_constraints(params, split)
        pairs = covering_pairs(cons)
        assert len(pairs) == 9
        value, _ = pairing_oracle(cons)
        assert value == pytest.approx(sum_rate_bounds(params, split).min_bound, abs=1e-12)
