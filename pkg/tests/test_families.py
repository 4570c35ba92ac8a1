from itertools import combinations

import pytest

from zerosum.core import ElementSet, is_decomposable, min_zero_sum
from zerosum.errors import GroupError, SizeGuardExceeded
from zerosum.families import (
    canonical,
    classify,
    enumerate_decomposable,
    example1_set,
    example2_set,
    hunt,
)
from zerosum.groups import GroupContext

from oracles import naive_decomposable, naive_z


def brute_canonical_classes(n, M):
    """Canonical classes of decomposable n-subsets of [-M, M], by full scan."""
    Z = GroupContext.integers()
    return {
        canonical(s)
        for s in combinations(range(-M, M + 1), n)
        if naive_decomposable(Z, s)
    }


class TestExamples:
    def test_example1_small(self):
        D = example1_set(2)
        assert D.ctx == GroupContext.cyclic(3) and D.elems == (1, 2)
        D = example1_set(3)
        assert D.ctx == GroupContext.cyclic(7) and D.elems == (1, 2, 4)
        assert min_zero_sum(D).z == 3

    def test_example2_small(self):
        assert example2_set(2).elems == (-2, -1, 1, 2)
        assert example2_set(3).elems == (-6, -5, -3, 1, 2, 4)
        w = min_zero_sum(example2_set(3))
        assert w.z == 3 and w.witness.elems == (-6, 2, 4)

    def test_example2_witness_family(self):
        # {2^k : 1 <= k < n} together with 2 - 2^n
        for n in range(2, 9):
            Z = [2**k for k in range(1, n)] + [2 - 2**n]
            assert set(Z) <= set(example2_set(n).elems) and sum(Z) == 0

    def test_bad_arguments(self):
        with pytest.raises(GroupError):
            example1_set(1)
        with pytest.raises(GroupError):
            example2_set(0)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_example2_decomposable(self, n):
        D = example2_set(n)
        assert len(D) == 2 * n and is_decomposable(D)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_example2_z_matches_oracle(self, n):
        assert min_zero_sum(example2_set(n)).z == naive_z(example2_set(n))[0] == n

    @pytest.mark.parametrize("n", range(2, 10))
    def test_example1_z_matches_oracle(self, n):
        D = example1_set(n)
        assert is_decomposable(D)
        assert min_zero_sum(D).z == naive_z(D)[0] == n


class TestCanonical:
    @pytest.mark.parametrize("values", [(-2, -1, 1, 2), (1, 2, 4, -3, -5, -6), (0,), (0, 3, -7)])
    def test_scaling_and_sign_collapse(self, values):
        c = canonical(values)
        for r in (1, 2, 5):
            assert canonical([r * v for v in values]) == c
            assert canonical([-r * v for v in values]) == c
        assert canonical(c) == c

    def test_representative(self):
        assert canonical([1, 2, 4, -3, -5, -6]) == (-6, -5, -3, 1, 2, 4)
        assert canonical([-3, -2, -1, 2, 4]) == (-4, -2, 1, 2, 3)


class TestEnumeration:
    def test_singleton(self):
        assert [D.elems for D in enumerate_decomposable(1, 4)] == [(0,)]

    def test_four_without_zero(self):
        found = [D.elems for D in enumerate_decomposable(4, 4) if 0 not in D]
        assert found == [(-2, -1, 1, 2)]

    def test_pairs(self):
        assert sorted(D.elems for D in enumerate_decomposable(2, 4)) == [(-1, 0)]

    @pytest.mark.parametrize("n, M", [(2, 5), (3, 6), (4, 6), (5, 6), (6, 5)])
    def test_matches_brute_force(self, n, M):
        got = [D.elems for D in enumerate_decomposable(n, M)]
        assert len(got) == len(set(got))
        assert all(canonical(s) == s for s in got)
        assert set(got) == brute_canonical_classes(n, M)

    def test_budget_guard(self):
        with pytest.raises(SizeGuardExceeded):
            list(enumerate_decomposable(9, 4))
        with pytest.raises(SizeGuardExceeded):
            list(enumerate_decomposable(4, 25))

    def test_parallel_merge_is_identical(self):
        serial = [D.elems for D in enumerate_decomposable(5, 7)]
        parallel = [D.elems for D in enumerate_decomposable(5, 7, jobs=2)]
        assert serial == parallel


class TestClassify:
    def test_small_sets_contain_zero(self):
        report = classify(3, 10)
        claim = report.claim("contains_zero")
        assert claim.passed and claim.hypothesis_count == report.decomposable_count

    def test_six_element_extremal(self):
        claim = classify(6, 8).claim("six_with_z_three_is_d3")
        assert claim.passed and claim.hypothesis_sets == [(-6, -5, -3, 1, 2, 4)]

    def test_five_element_families_report_the_missing_class(self):
        claim = classify(5, 6).claim("five_without_zero_families")
        assert claim.counterexamples == [(-4, -3, -1, 1, 2)]
        assert claim.verdict == "counterexample found"

    def test_verdicts_stable_when_window_shrinks(self):
        for n in (4, 6):
            big = classify(n, 9)
            for M in range(2, 9):
                small = classify(n, M)
                for a, b in zip(big.claims, small.claims):
                    assert a.id == b.id
                    if a.passed:
                        assert b.passed

    def test_report_wording(self):
        d = classify(4, 4).to_dict()
        assert d["schema"] == 1
        assert all(c["verdict"] in ("no counterexample in window", "counterexample found")
                   for c in d["claims"])
        assert "not covered" in d["coverage"]


class TestHunt:
    def test_reproducible(self):
        assert hunt(5, trials=300, seed=3) == hunt(5, trials=300, seed=3)

    def test_parallel_is_identical(self):
        assert hunt(6, trials=400, seed=1) == hunt(6, trials=400, seed=1, jobs=2)

    def test_finds_half_ratio(self):
        for n in (4, 6):
            rec = hunt(n, trials=2000, seed=0)
            assert rec.ratio is not None and rec.ratio >= 0.5
            D = ElementSet.ints(rec.best_set)
            assert is_decomposable(D) and min_zero_sum(D).z == rec.best_z

    def test_contract_large_size(self):
        rec = hunt(15, trials=50, seed=2)
        d = rec.to_dict()
        assert d["seed"] == 2 and d["trials_run"] == 50
        if rec.ratio is not None:
            assert rec.ratio <= 1
