import random

import pytest

from zerosum.core import ElementSet
from zerosum.errors import GroupError, NotDecomposable, SizeGuardExceeded, TreeInconsistency
from zerosum.families import example1_set, example2_set
from zerosum.groups import GroupContext
from zerosum.trees import (
    BinaryTree,
    Certificate,
    DTree,
    audit_tree,
    build_maximal_tree,
    certify,
    derive_regressive,
    extract_certificate,
    regressive_collision,
    verify_certificate,
)

from oracles import collision_pairs, random_binary_tree, random_decomposable

ints = ElementSet.ints


class TestBuild:
    def test_singleton_zero(self):
        T = build_maximal_tree(ints([0]), 0)
        assert len(T) == 3
        assert T.labels == (0, 0, 0)
        assert audit_tree(T) == []

    def test_d2_branch_bound(self):
        D = ints([-2, -1, 1, 2])
        T = build_maximal_tree(D, 1)
        assert audit_tree(T) == []
        assert max(len(T.path(v)) for v in T.leaves()) <= len(D) + 1

    def test_not_decomposable(self):
        with pytest.raises(NotDecomposable):
            build_maximal_tree(ints([1, 2]), 1)

    def test_root_outside(self):
        with pytest.raises(GroupError):
            build_maximal_tree(ints([0]), 5)

    def test_node_cap(self):
        with pytest.raises(SizeGuardExceeded):
            build_maximal_tree(example2_set(4), -14, node_cap=16)

    def test_random_audit(self):
        rng = random.Random(4)
        for _ in range(60):
            ctx = rng.choice([GroupContext.integers(), GroupContext.cyclic(rng.randint(3, 50))])
            D = random_decomposable(rng, ctx, 8, allow_zero=rng.random() < 0.2)
            for root in D.elems[:2]:
                assert audit_tree(build_maximal_tree(D, root)) == []


class TestRegressive:
    def test_singleton_zero(self):
        T = build_maximal_tree(ints([0]), 0)
        R = derive_regressive(T)
        assert set(R.f) == {1, 2}
        assert all(r.target == 0 and r.both_matched for r in R.records.values())

    def test_d2_targets_strictly_below(self):
        T = build_maximal_tree(ints([-2, -1, 1, 2]), -2)
        R = derive_regressive(T)
        for leaf, target in R.f.items():
            assert T.is_below(target, leaf)

    def test_non_maximal_tree_is_rejected(self):
        D = ints([-2, -1, 1, 2])
        # root 2 = 1 + 1 and nothing else: leaves are still expandable
        T = DTree((-1, 0, 0), ((1, 2), None, None), (2, 1, 1), D)
        with pytest.raises(TreeInconsistency):
            derive_regressive(T)


class TestCollision:
    def test_forced_pair(self):
        T = BinaryTree.from_children([(1, 2), None, None])
        assert regressive_collision(T, {1: 0, 2: 0}) == (1, 2)

    def test_split_across_root(self):
        # r=0 with children a=1, b=2; a has leaves c=3, d=4
        T = BinaryTree.from_children([(1, 2), (3, 4), None, None, None])
        assert regressive_collision(T, {3: 0, 4: 1, 2: 0}) == (3, 2)
        assert T.meet(3, 2) == 0

    def test_descends_into_subtree(self):
        T = BinaryTree.from_children([(1, 2), (3, 4), None, None, None])
        assert regressive_collision(T, {3: 1, 4: 1, 2: 0}) == (3, 4)
        assert T.meet(3, 4) == 1

    def test_height_one(self):
        with pytest.raises(GroupError):
            regressive_collision(BinaryTree.from_children([None]), {})

    def test_not_regressive(self):
        T = BinaryTree.from_children([(1, 2), None, None])
        with pytest.raises(GroupError):
            regressive_collision(T, {1: 1, 2: 0})

    def test_random_against_scan(self):
        rng = random.Random(8)
        for _ in range(200):
            T = BinaryTree.from_children(random_binary_tree(rng, 127))
            f = {leaf: rng.choice(T.path(leaf)[:-1]) for leaf in T.leaves()}
            x, y = regressive_collision(T, f)
            assert (x, y) in collision_pairs(T, f)


class TestCertificate:
    def test_singleton_zero(self):
        c = certify(ints([0]))
        assert c.A.elems == (0,) and c.B.elems == (0,)

    @pytest.mark.parametrize("D", [
        ints([-2, -1, 1, 2]),
        ElementSet.of(GroupContext.cyclic(7), [1, 2, 4]),
        example2_set(3),
    ], ids=["d2", "z7", "d3"])
    def test_examples_verify(self, D):
        assert verify_certificate(D, certify(D))

    def test_not_decomposable(self):
        with pytest.raises(NotDecomposable):
            certify(ints([1, 2]))

    def test_deterministic(self):
        D = example2_set(4)
        assert certify(D) == certify(D)

    def test_extract_rejects_non_collision(self):
        D = ints([-2, -1, 1, 2])
        T = build_maximal_tree(D, -2)
        R = derive_regressive(T)
        x, _ = regressive_collision(T, R.f)
        with pytest.raises(TreeInconsistency):
            extract_certificate(T, R, x, x)

    def test_families(self):
        for n in range(1, 5):
            D = example2_set(n)
            assert verify_certificate(D, certify(D))
        for n in range(2, 7):
            D = example1_set(n)
            assert verify_certificate(D, certify(D))


class TestVerify:
    D2 = ints([-2, -1, 1, 2])

    def test_examples(self):
        assert verify_certificate(ints([0]), Certificate(ints([0]), ints([0])))
        assert verify_certificate(self.D2, Certificate(ints([1]), ints([-1])))
        assert not verify_certificate(self.D2, Certificate(ints([1]), ints([2])))

    def test_rejects_empty_and_foreign(self):
        assert not verify_certificate(self.D2, Certificate(ints([]), ints([])))
        assert not verify_certificate(self.D2, Certificate(ints([3]), ints([-3])))
        C = ElementSet.of(GroupContext.cyclic(5), [1])
        assert not verify_certificate(self.D2, Certificate(C, C))
