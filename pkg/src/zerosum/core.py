"""Decomposable sets and their zero-sum invariants.

A non-empty finite set ``D`` is decomposable when every element is a sum
``a + b`` of two (not necessarily distinct) elements of ``D``.  ``z(D)`` is
the smallest size of a non-empty zero-sum subset, or ``|D| + 1`` when no
such subset exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from .errors import GroupError, NotDecomposable, NotMinimal, SearchExhausted, SizeGuardExceeded
from .groups import Element, GroupContext, Kind

DEFAULT_SET_SIZE_CAP = 28
MITM_THRESHOLD = 20
WEIGHT_SEARCH_CAP = 10**6

Pair = Tuple[Element, Element]


@dataclass(frozen=True)
class ElementSet:
    """A finite set of distinct elements stored in canonical sorted order."""

    ctx: GroupContext
    elems: Tuple[Element, ...]

    def __post_init__(self):
        for x in self.elems:
            self.ctx.check(x)
        if any(a >= b for a, b in zip(self.elems, self.elems[1:])):
            raise GroupError("elements must be distinct and sorted; use ElementSet.of")

    @classmethod
    def of(cls, ctx: GroupContext, values: Iterable) -> "ElementSet":
        """Canonicalize ``values`` into ``ctx``; duplicates collapse."""
        return cls(ctx, tuple(sorted({ctx.element(v) for v in values})))

    @classmethod
    def ints(cls, values: Iterable[int]) -> "ElementSet":
        return cls.of(GroupContext.integers(), values)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elems)

    def __len__(self) -> int:
        return len(self.elems)

    def __contains__(self, x) -> bool:
        return x in self._members

    @property
    def _members(self) -> frozenset:
        # cached lazily; frozen dataclass forbids normal assignment
        try:
            return self.__dict__["_member_cache"]
        except KeyError:
            members = frozenset(self.elems)
            object.__setattr__(self, "_member_cache", members)
            return members

    def subset(self, values: Iterable[Element]) -> "ElementSet":
        """Sub-set of already-canonical members of this set."""
        values = set(values)
        if not values <= self._members:
            raise GroupError("not a subset")
        return ElementSet(self.ctx, tuple(sorted(values)))

    def without(self, x: Element) -> "ElementSet":
        return ElementSet(self.ctx, tuple(e for e in self.elems if e != x))

    def total(self) -> Element:
        return self.ctx.total(self.elems)

    def scaled(self, r: int) -> "ElementSet":
        if self.ctx.kind is not Kind.INTEGERS:
            raise GroupError("scaling is only defined here for integer sets")
        return ElementSet.ints(r * x for x in self.elems)

    def negated(self) -> "ElementSet":
        return ElementSet.of(self.ctx, (self.ctx.neg(x) for x in self.elems))


@dataclass(frozen=True)
class ZeroSumWitness:
    z: int
    witness: Optional[ElementSet] = None


@dataclass(frozen=True)
class WeightFunction:
    """Non-negative weights with total ``|D|`` and weighted sum zero.

    ``choice`` records the decomposition ``x = a + b`` picked for every ``x``.
    """

    ctx: GroupContext
    weights: Dict[Element, int]
    choice: Dict[Element, Pair] = field(default_factory=dict)


@dataclass(frozen=True)
class LineReduction:
    """The homomorphism Z^k -> Z sending the i-th unit vector to ``base**i``."""

    bound: int
    base: int
    multipliers: Tuple[int, ...]

    def __call__(self, x: Tuple[int, ...]) -> int:
        return sum(c * h for c, h in zip(x, self.multipliers))


# --------------------------------------------------------------------------
# decomposability


def _has_pair(ctx: GroupContext, d: Element, pool) -> bool:
    return any(ctx.sub(d, a) in pool for a in pool)


def is_decomposable(D: ElementSet) -> bool:
    if not D.elems:
        return False
    pool = D._members
    return all(_has_pair(D.ctx, d, pool) for d in D.elems)


def decomposition_table(D: ElementSet) -> Dict[Element, List[Pair]]:
    """Every unordered pair ``(a, b)``, ``a <= b``, of members with ``a + b = d``."""
    table: Dict[Element, List[Pair]] = {d: [] for d in D.elems}
    ctx = D.ctx
    for i, a in enumerate(D.elems):
        for b in D.elems[i:]:
            s = ctx.add(a, b)
            if s in table:
                table[s].append((a, b))
    for row in table.values():
        row.sort()
    return table


def decomposable_core(D: ElementSet) -> ElementSet:
    """Largest decomposable subset of ``D`` (empty when there is none).

    The union of decomposable subsets is decomposable, so repeatedly
    discarding elements without a pair converges to it.
    """
    pool = set(D.elems)
    ctx = D.ctx
    while True:
        dead = [d for d in pool if not _has_pair(ctx, d, pool)]
        if not dead:
            break
        pool.difference_update(dead)
    return ElementSet(ctx, tuple(sorted(pool)))


def is_minimal_decomposable(D: ElementSet) -> bool:
    if not is_decomposable(D):
        return False
    return all(not decomposable_core(D.without(x)).elems for x in D.elems)


def minimal_decomposable_subset(D: ElementSet) -> ElementSet:
    """A decomposable subset of ``D`` with no proper decomposable subset.

    Removal candidates are tried in canonical ascending order; a removal is
    kept when the remainder still has a non-empty decomposable core, and the
    scan restarts from the core.  At the fixed point no single removal
    leaves a decomposable core, which is exactly minimality.
    """
    if not is_decomposable(D):
        raise NotDecomposable(f"{_show(D)} is not decomposable")
    current = D
    restart = True
    while restart:
        restart = False
        for x in current.elems:
            core = decomposable_core(current.without(x))
            if core.elems:
                current = core
                restart = True
                break
    return current


# --------------------------------------------------------------------------
# minimum zero-sum subsets


def min_zero_sum(D: ElementSet, cap: int = DEFAULT_SET_SIZE_CAP) -> ZeroSumWitness:
    """Compute ``z(D)`` with the lexicographically least minimum witness.

    Raises SizeGuardExceeded when ``|D| > cap``.
    """
    n = len(D)
    if n > cap:
        raise SizeGuardExceeded(f"|D| = {n} exceeds the exact-search cap {cap}")
    ctx = D.ctx
    if ctx.zero in D:
        return ZeroSumWitness(1, D.subset([ctx.zero]))
    if n > MITM_THRESHOLD:
        found = _zero_sum_mitm(ctx, D.elems)
    else:
        found = _zero_sum_dfs(ctx, D.elems)
    if found is None:
        return ZeroSumWitness(n + 1, None)
    return ZeroSumWitness(len(found), ElementSet(ctx, found))


def _zero_sum_dfs(ctx: GroupContext, elems: Tuple[Element, ...]) -> Optional[Tuple[Element, ...]]:
    n = len(elems)
    zero = ctx.zero
    add = ctx.add
    integer = ctx.kind is Kind.INTEGERS
    prefix = [0]
    if integer:
        for x in elems:
            prefix.append(prefix[-1] + x)

    def search(t: int) -> Optional[List[Element]]:
        chosen: List[Element] = []

        def go(start: int, need: int, partial) -> bool:
            if need == 0:
                return partial == zero
            for i in range(start, n - need + 1):
                if integer:
                    # elems are ascending: bound every completion that starts at i
                    lo = prefix[i + need] - prefix[i]
                    hi = elems[i] + prefix[n] - prefix[n - need + 1]
                    if partial + lo > 0:
                        return False
                    if partial + hi < 0:
                        continue
                chosen.append(elems[i])
                if go(i + 1, need - 1, add(partial, elems[i])):
                    return True
                chosen.pop()
            return False

        return chosen if go(0, t, zero) else None

    for t in range(1, n + 1):
        hit = search(t)
        if hit is not None:
            return tuple(hit)
    return None


def _half_tables(ctx: GroupContext, part: Tuple[Element, ...], offset: int):
    """For each size, map subset sum -> lexicographically least index tuple."""
    tables = []
    for size in range(len(part) + 1):
        table: Dict[Element, Tuple[int, ...]] = {}
        for combo in combinations(range(len(part)), size):
            s = ctx.total(part[i] for i in combo)
            if s not in table:
                table[s] = tuple(offset + i for i in combo)
        tables.append(table)
    return tables


def _zero_sum_mitm(ctx: GroupContext, elems: Tuple[Element, ...]) -> Optional[Tuple[Element, ...]]:
    n = len(elems)
    h = n // 2
    left = _half_tables(ctx, elems[:h], 0)
    right = _half_tables(ctx, elems[h:], h)
    for t in range(1, n + 1):
        best = None
        for a in range(max(0, t - (n - h)), min(t, h) + 1):
            rtab = right[t - a]
            for s, lidx in left[a].items():
                ridx = rtab.get(ctx.neg(s))
                if ridx is None:
                    continue
                cand = lidx + ridx
                if best is None or cand < best:
                    best = cand
        if best is not None:
            return tuple(elems[i] for i in best)
    return None


def boolean_zero_sum(D: ElementSet) -> ElementSet:
    """A zero-sum subset of size at most 3 in a decomposable Boolean set.

    Take the least ``a`` with its first decomposition ``a = b + c``.  If one
    of them is zero return ``{0}``; otherwise ``a + b + c = 2(b + c) = 0``.
    """
    if D.ctx.kind is not Kind.BOOLEAN:
        raise GroupError(f"boolean_zero_sum needs a Boolean group, got {D.ctx}")
    if not is_decomposable(D):
        raise NotDecomposable(f"{_show(D)} is not decomposable")
    a = D.elems[0]
    b, c = decomposition_table(D)[a][0]
    zero = D.ctx.zero
    if zero in (a, b, c):
        return D.subset([zero])
    return D.subset([a, b, c])


# --------------------------------------------------------------------------
# weight functions


def weight_function(D: ElementSet, cap: int = WEIGHT_SEARCH_CAP) -> WeightFunction:
    """Weights from a choice of decompositions covering all of ``D``.

    Every ``x`` is assigned a pair ``x = a + b`` from its decomposition row;
    ``g(y)`` counts the occurrences of ``y`` among all chosen summands and
    ``f = g - 1``.  Assignments are scanned in lexicographic order and the
    first one whose summands cover ``D`` is used, which makes ``f >= 0``.
    """
    if not is_minimal_decomposable(D):
        raise NotMinimal(f"{_show(D)} is not minimal decomposable")
    table = decomposition_table(D)
    rows = [(x, table[x]) for x in D.elems]
    n = len(rows)
    counts: Dict[Element, int] = {x: 0 for x in D.elems}
    picked: List[Pair] = []
    visited = 0

    def go(i: int, uncovered: int) -> bool:
        nonlocal visited
        if uncovered > 2 * (n - i):
            return False
        if i == n:
            return uncovered == 0
        for a, b in rows[i][1]:
            visited += 1
            if visited > cap:
                raise SearchExhausted(
                    f"no covering decomposition choice within {cap} assignments"
                )
            fresh = 0
            for y in (a, b):
                if counts[y] == 0:
                    fresh += 1
                counts[y] += 1
            picked.append((a, b))
            if go(i + 1, uncovered - fresh):
                return True
            picked.pop()
            counts[a] -= 1
            counts[b] -= 1
        return False

    if not go(0, n):
        raise SearchExhausted("no decomposition choice covers the whole set")
    weights = {x: counts[x] - 1 for x in D.elems}
    choice = {x: p for (x, _), p in zip(rows, picked)}
    return WeightFunction(D.ctx, weights, choice)


# --------------------------------------------------------------------------
# reduction from Z^k to Z


def reduce_to_line(D: ElementSet) -> Tuple[ElementSet, LineReduction]:
    """Map a subset of Z^k into Z preserving every zero-sum relation.

    ``bound`` is the least ``m`` with every subset sum inside ``[-m, m]^k``;
    the map sends the i-th unit vector to ``(2m + 1)**i`` (base 3 when m = 0),
    which is injective on that box.
    """
    ctx = D.ctx
    if ctx.kind is not Kind.VECTORS:
        raise GroupError(f"reduce_to_line needs Z^k, got {ctx}")
    bound = 0
    for i in range(ctx.rank):
        pos = sum(x[i] for x in D.elems if x[i] > 0)
        neg = -sum(x[i] for x in D.elems if x[i] < 0)
        bound = max(bound, pos, neg)
    base = 2 * bound + 1 if bound else 3
    h = LineReduction(bound, base, tuple(base**i for i in range(1, ctx.rank + 1)))
    image = [h(x) for x in D.elems]
    if len(set(image)) != len(image):
        raise GroupError("reduction is not injective on D")  # unreachable by construction
    return ElementSet.ints(image), h


def _show(D: ElementSet) -> str:
    return "{" + ", ".join(map(str, D.elems)) + "}"
