"""Labelled binary trees and the two-set zero-sum certificate.

For a finite decomposable ``D`` the procedure below always finds non-empty
``A, B`` in ``D`` with ``sum(A) + sum(B) = 0``:

1. grow a binary tree whose nodes carry labels from ``D`` so that every
   inner node is the sum of its two children, never letting two off-branch
   siblings along one root-to-leaf path share a label, until no leaf can be
   split any further;
2. for every leaf look one level further: at least one label of its
   would-be children already hangs off its branch, which points back to an
   ancestor ``f(leaf)``;
3. two leaves whose pointers meet at their last common ancestor exist for
   any such backward map; telescoping the sums along both branches gives
   the certificate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .core import ElementSet, decomposition_table, is_decomposable, _show
from .errors import GroupError, NotDecomposable, SizeGuardExceeded, TreeInconsistency
from .groups import Element

DEFAULT_NODE_CAP = 2**20


@dataclass(frozen=True)
class BinaryTree:
    """Rooted tree on nodes ``0..n-1`` (root 0); inner nodes have two children."""

    parent: Tuple[int, ...]
    children: Tuple[Optional[Tuple[int, int]], ...]

    def __post_init__(self):
        if not self.parent or self.parent[0] != -1:
            raise GroupError("node 0 must be the root")
        for v, kids in enumerate(self.children):
            if kids is None:
                continue
            if len(kids) != 2 or kids[0] == kids[1]:
                raise GroupError(f"node {v} must have exactly two children")
            for c in kids:
                if self.parent[c] != v:
                    raise GroupError(f"parent link of node {c} is inconsistent")

    @classmethod
    def from_children(cls, children: Sequence[Optional[Tuple[int, int]]]) -> "BinaryTree":
        parent = [-1] * len(children)
        for v, kids in enumerate(children):
            for c in kids or ():
                parent[c] = v
        return cls(tuple(parent), tuple(None if k is None else tuple(k) for k in children))

    def __len__(self) -> int:
        return len(self.parent)

    def depth(self, v: int) -> int:
        d = 0
        while self.parent[v] != -1:
            v = self.parent[v]
            d += 1
        return d

    def depths(self) -> List[int]:
        out = [0] * len(self)
        for v in self.preorder():
            if v:
                out[v] = out[self.parent[v]] + 1
        return out

    def preorder(self, start: int = 0) -> List[int]:
        out, stack = [], [start]
        while stack:
            v = stack.pop()
            out.append(v)
            kids = self.children[v]
            if kids:
                stack.append(kids[1])
                stack.append(kids[0])
        return out

    def leaves(self, start: int = 0) -> List[int]:
        return [v for v in self.preorder(start) if self.children[v] is None]

    def path(self, v: int) -> List[int]:
        """Nodes from the root down to ``v`` inclusive."""
        out = [v]
        while self.parent[v] != -1:
            v = self.parent[v]
            out.append(v)
        out.reverse()
        return out

    def height(self) -> int:
        return max(self.depths()) + 1

    def is_below(self, a: int, b: int) -> bool:
        """True when ``a`` is a strict ancestor of ``b``."""
        while self.parent[b] != -1:
            b = self.parent[b]
            if b == a:
                return True
        return False

    def meet(self, x: int, y: int) -> int:
        """Last common ancestor of ``x`` and ``y``."""
        ancestors = set(self.path(x))
        while y not in ancestors:
            y = self.parent[y]
        return y


@dataclass(frozen=True)
class DTree(BinaryTree):
    """A binary tree labelled by elements of ``D``; inner label = sum of child labels."""

    labels: Tuple[Element, ...] = ()
    D: Optional[ElementSet] = None

    def off_branch(self, leaf: int) -> List[Tuple[int, int]]:
        """``(t, sibling)`` for every strict ancestor ``t`` of ``leaf``, root first."""
        p = self.path(leaf)
        out = []
        for t, nxt in zip(p, p[1:]):
            a, b = self.children[t]
            out.append((t, b if a == nxt else a))
        return out

    def off_labels(self, leaf: int) -> Dict[Element, int]:
        """Off-branch label -> the ancestor it hangs from."""
        return {self.labels[s]: t for t, s in self.off_branch(leaf)}


@dataclass(frozen=True)
class LeafRecord:
    leaf: int
    target: int          # f(leaf), a strict ancestor
    first: Element       # label of the virtual child matched at ``target``
    second: Element      # label of the other virtual child
    both_matched: bool   # True when both virtual labels hang off the branch


@dataclass(frozen=True)
class RegressiveData:
    records: Dict[int, LeafRecord]

    @property
    def f(self) -> Dict[int, int]:
        return {leaf: r.target for leaf, r in self.records.items()}


@dataclass(frozen=True)
class Certificate:
    A: ElementSet
    B: ElementSet


# --------------------------------------------------------------------------


def build_maximal_tree(
    D: ElementSet, root_label: Element, node_cap: int = DEFAULT_NODE_CAP
) -> DTree:
    """Grow a maximal tree breadth-first, trying decomposition pairs in order.

    A leaf ``x`` with off-branch label set ``S`` is split by the first pair
    ``(a, b)`` of its row with ``a`` and ``b`` both outside ``S``.
    """
    if not is_decomposable(D):
        raise NotDecomposable(f"{_show(D)} is not decomposable")
    if root_label not in D:
        raise GroupError(f"root label {root_label!r} is not in D")
    table = decomposition_table(D)
    parent: List[int] = [-1]
    children: List[Optional[Tuple[int, int]]] = [None]
    labels: List[Element] = [root_label]
    queue = deque([(0, frozenset())])
    while queue:
        x, seen = queue.popleft()
        for a, b in table[labels[x]]:
            if a in seen or b in seen:
                continue
            if len(labels) + 2 > node_cap:
                raise SizeGuardExceeded(f"tree exceeds the node cap {node_cap}")
            y, z = len(labels), len(labels) + 1
            parent += [x, x]
            children += [None, None]
            labels += [a, b]
            children[x] = (y, z)
            queue.append((y, seen | {b}))
            queue.append((z, seen | {a}))
            break
    return DTree(tuple(parent), tuple(children), tuple(labels), D)


def audit_tree(T: DTree) -> List[str]:
    """Independent invariant check; returns a list of violations (empty = ok)."""
    problems = []
    D = T.D
    ctx = D.ctx
    for v, kids in enumerate(T.children):
        if T.labels[v] not in D:
            problems.append(f"node {v}: label outside D")
        if kids is not None:
            a, b = (T.labels[c] for c in kids)
            if ctx.add(a, b) != T.labels[v]:
                problems.append(f"node {v}: label is not the sum of its children")
    table = decomposition_table(D)
    for leaf in T.leaves():
        branch = [T.labels[s] for _, s in T.off_branch(leaf)]
        if len(set(branch)) != len(branch):
            problems.append(f"leaf {leaf}: repeated off-branch label")
        if len(branch) + 1 > len(D) + 1:
            problems.append(f"leaf {leaf}: branch longer than |D| + 1")
        seen = set(branch)
        for a, b in table[T.labels[leaf]]:
            if a not in seen and b not in seen:
                problems.append(f"leaf {leaf}: still expandable by {a!r} + {b!r}")
                break
    return problems


def derive_regressive(T: DTree, D: Optional[ElementSet] = None) -> RegressiveData:
    """Point every leaf back to an ancestor via a one-level extension.

    The first row entry ``(a, b)`` for the leaf label is used as the pair of
    virtual children.  If only one of the labels hangs off the branch the
    leaf points to where it hangs; if both do, to the deeper of the two.
    """
    D = D if D is not None else T.D
    table = decomposition_table(D)
    depth = T.depths()
    records = {}
    for leaf in T.leaves():
        row = table[T.labels[leaf]]
        if not row:
            raise TreeInconsistency(f"leaf {leaf}: label has no decomposition")
        a, b = row[0]
        hang = T.off_labels(leaf)
        ta, tb = hang.get(a), hang.get(b)
        if ta is None and tb is None:
            raise TreeInconsistency(f"leaf {leaf} could still be expanded; tree is not maximal")
        if tb is None or (ta is not None and depth[ta] >= depth[tb]):
            rec = LeafRecord(leaf, ta, a, b, tb is not None)
        else:
            rec = LeafRecord(leaf, tb, b, a, ta is not None)
        _check_record(T, rec, hang, depth)
        records[leaf] = rec
    return RegressiveData(records)


def _check_record(T: DTree, rec: LeafRecord, hang: Mapping, depth: Sequence[int]) -> None:
    ctx = T.D.ctx
    leaf = rec.leaf
    # one label hangs from a single ancestor: off-branch labels are distinct
    assert hang[rec.first] == rec.target
    if not depth[rec.target] < depth[leaf]:
        raise TreeInconsistency(f"leaf {leaf}: target is not strictly below it")
    if ctx.add(rec.first, rec.second) != T.labels[leaf]:
        raise TreeInconsistency(f"leaf {leaf}: virtual children do not sum to its label")
    between = {lab for lab, t in hang.items() if depth[t] > depth[rec.target]}
    if rec.second in between:
        raise TreeInconsistency(f"leaf {leaf}: second virtual label repeats above target")


def regressive_collision(T: BinaryTree, f: Mapping[int, int]) -> Tuple[int, int]:
    """Two distinct leaves ``x, y`` with ``f(x) = f(y) = meet(x, y)``.

    ``f`` must send each leaf to a strict ancestor.  Starting from the root:
    if all leaves of one child subtree point inside that subtree, descend
    into it (first child first); otherwise each child subtree has a leaf
    pointing at the current node, and the first such leaf of each is taken.
    """
    if T.children[0] is None:
        raise GroupError("a single-node tree has no backward map")
    depth = T.depths()
    for leaf in T.leaves():
        if leaf not in f or not T.is_below(f[leaf], leaf):
            raise GroupError(f"f({leaf}) is not a strict ancestor of {leaf}")
    r = 0
    while True:
        kids = T.children[r]
        descend = None
        for c in kids:
            if all(depth[f[leaf]] > depth[r] for leaf in T.leaves(c)):
                descend = c
                break
        if descend is None:
            x, y = (next(leaf for leaf in T.leaves(c) if f[leaf] == r) for c in kids)
            return x, y
        r = descend


def extract_certificate(T: DTree, R: RegressiveData, x: int, y: int) -> Certificate:
    """Telescope along both branches from the meet to build ``(A, B)``."""
    D = T.D
    ctx = D.ctx
    rx, ry = R.records[x], R.records[y]
    m = rx.target
    if ry.target != m or T.meet(x, y) != m:
        raise TreeInconsistency("leaves do not collide at their meet")
    u, v = T.children[m]
    if not T.is_below(u, x) and u != x:
        u, v = v, u
    # u is on the branch to x, v on the branch to y
    hang_x = [(t, s) for t, s in T.off_branch(x) if T.depth(t) > T.depth(m)]
    hang_y = [(t, s) for t, s in T.off_branch(y) if T.depth(t) > T.depth(m)]
    labels_a = [T.labels[s] for _, s in hang_x]
    labels_b = [T.labels[s] for _, s in hang_y]
    if rx.first != T.labels[v] or ry.first != T.labels[u]:
        raise TreeInconsistency("matched virtual labels disagree with the meet's children")
    if ctx.total([rx.first, rx.second, *labels_a]) != ry.first:
        raise TreeInconsistency("telescoping identity fails on the x branch")
    if ctx.total([ry.first, ry.second, *labels_b]) != rx.first:
        raise TreeInconsistency("telescoping identity fails on the y branch")
    A = D.subset(labels_a + [rx.second])
    B = D.subset(labels_b + [ry.second])
    if len(A) != len(labels_a) + 1 or len(B) != len(labels_b) + 1:
        raise TreeInconsistency("certificate labels are not distinct")
    cert = Certificate(A, B)
    if not verify_certificate(D, cert):
        raise TreeInconsistency("certificate does not sum to zero")
    return cert


def certify(D: ElementSet, node_cap: int = DEFAULT_NODE_CAP) -> Certificate:
    T = build_maximal_tree(D, D.elems[0] if D.elems else None, node_cap)
    R = derive_regressive(T, D)
    x, y = regressive_collision(T, R.f)
    return extract_certificate(T, R, x, y)


def verify_certificate(D: ElementSet, cert: Certificate) -> bool:
    A, B = cert.A, cert.B
    if A.ctx != D.ctx or B.ctx != D.ctx:
        return False
    if not A.elems or not B.elems:
        return False
    if any(a not in D for a in A.elems) or any(b not in D for b in B.elems):
        return False
    ctx = D.ctx
    return ctx.add(ctx.total(A.elems), ctx.total(B.elems)) == ctx.zero
