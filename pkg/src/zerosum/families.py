"""Explicit extremal families, window-bounded classification and random hunts."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .core import ElementSet, min_zero_sum
from .errors import GroupError, SizeGuardExceeded
from .groups import GroupContext

MAX_ENUM_SIZE = 8
MAX_ENUM_WINDOW = 24

Canon = Tuple[int, ...]


def example1_set(n: int) -> ElementSet:
    """Powers of two ``{1, 2, ..., 2**(n-1)}`` in the cyclic group of order ``2**n - 1``."""
    if n < 2:
        raise GroupError(f"n must be >= 2, got {n}")
    m = 2**n - 1
    return ElementSet.of(GroupContext.cyclic(m), (2**k for k in range(n)))


def example2_set(n: int) -> ElementSet:
    """``{2**k} ∪ {2**k - 2**n + 1}`` for ``0 <= k < n``: 2n integers with z = n."""
    if n < 1:
        raise GroupError(f"n must be >= 1, got {n}")
    shift = 2**n - 1
    return ElementSet.ints([2**k for k in range(n)] + [2**k - shift for k in range(n)])


def canonical(values) -> Canon:
    """Representative of ``values`` up to positive scaling and negation.

    Divides by the gcd of the entries and returns whichever of the set and
    its negation is lexicographically smaller as a sorted tuple.
    """
    vals = sorted(set(values))
    g = reduce(gcd, (abs(v) for v in vals), 0)
    if g > 1:
        vals = [v // g for v in vals]
    neg = sorted(-v for v in vals)
    return tuple(min(vals, neg))


def _is_canonical(vals: Sequence[int]) -> bool:
    if reduce(gcd, vals, 0) not in (0, 1):
        return False
    return tuple(vals) <= tuple(-v for v in reversed(vals))


# --------------------------------------------------------------------------
# enumeration


def _check_budget(n: int, M: int) -> None:
    if not 1 <= n <= MAX_ENUM_SIZE:
        raise SizeGuardExceeded(f"set size {n} outside 1..{MAX_ENUM_SIZE}")
    if not 1 <= M <= MAX_ENUM_WINDOW:
        raise SizeGuardExceeded(f"window {M} outside 1..{MAX_ENUM_WINDOW}")


def _max_in_sumset(side: Sequence[int]) -> bool:
    # largest |x| on one side must be a sum of two same-side elements when 0 is absent
    top = side[-1]
    pool = set(side)
    return any(top - a in pool for a in side)


def _sides(n: int, M: int):
    """Partitions ``(with_zero, positives, negative_count)`` in enumeration order."""
    for with_zero in (False, True):
        r = n - with_zero
        for k in range(r + 1):
            for pos in combinations(range(1, M + 1), k):
                if not with_zero and pos and not _max_in_sumset(pos):
                    continue
                yield with_zero, pos, r - k


def _partition(M: int, with_zero: bool, pos: Tuple[int, ...], nneg: int) -> List[Canon]:
    out = []
    for mags in combinations(range(1, M + 1), nneg):
        if not with_zero and mags and not _max_in_sumset(mags):
            continue
        vals = [-v for v in reversed(mags)] + ([0] if with_zero else []) + list(pos)
        if not _is_canonical(vals):
            continue
        if with_zero or _int_decomposable(vals):
            out.append(tuple(vals))
    return out


def _partition_star(args):
    return _partition(*args)


def _int_decomposable(vals: Sequence[int]) -> bool:
    pool = set(vals)
    return all(any(d - a in pool for a in vals) for d in vals)


def enumerate_decomposable(n: int, M: int, jobs: int = 1) -> Iterator[ElementSet]:
    """Every canonical decomposable integer set of size ``n`` inside ``[-M, M]``.

    Work is split by the positive part of the set; with ``jobs > 1`` the
    parts run in worker processes and are merged back in the serial order.
    """
    _check_budget(n, M)
    tasks = ((M, wz, pos, k) for wz, pos, k in _sides(n, M))
    if jobs <= 1:
        parts = map(_partition_star, tasks)
        for part in parts:
            for vals in part:
                yield ElementSet.ints(vals)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_partition_star, tasks, chunksize=16):
            for vals in part:
                yield ElementSet.ints(vals)


# --------------------------------------------------------------------------
# classification


@dataclass
class ClaimResult:
    id: str
    statement: str
    hypothesis_count: int = 0
    counterexamples: List[Canon] = field(default_factory=list)
    hypothesis_sets: List[Canon] = field(default_factory=list)
    expected_families: List[Canon] = field(default_factory=list)
    missing_families: List[Canon] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples and not self.missing_families

    @property
    def verdict(self) -> str:
        return "no counterexample in window" if self.passed else "counterexample found"

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "statement": self.statement,
            "verdict": self.verdict,
            "passed": self.passed,
            "hypothesis_count": self.hypothesis_count,
            "counterexamples": [list(c) for c in self.counterexamples],
        }
        if self.expected_families:
            out["expected_families"] = [list(c) for c in self.expected_families]
            out["missing_families"] = [list(c) for c in self.missing_families]
        out["hypothesis_sets"] = [list(c) for c in self.hypothesis_sets]
        return out


@dataclass
class ClassificationReport:
    size: int
    window: int
    decomposable_count: int
    z_histogram: Dict[int, int]
    claims: List[ClaimResult]

    @property
    def max_z(self) -> int:
        return max(self.z_histogram) if self.z_histogram else 0

    def claim(self, claim_id: str) -> ClaimResult:
        for c in self.claims:
            if c.id == claim_id:
                return c
        raise KeyError(claim_id)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "size": self.size,
            "window": self.window,
            "coverage": (
                f"integer sets with all elements in [-{self.window}, {self.window}] "
                "after canonical scaling; larger and non-integer sets are not covered"
            ),
            "decomposable_count": self.decomposable_count,
            "max_z": self.max_z,
            "z_histogram": {str(z): c for z, c in sorted(self.z_histogram.items())},
            "claims": [c.to_dict() for c in self.claims],
        }


@dataclass(frozen=True)
class _Claim:
    id: str
    statement: str
    sizes: Tuple[int, ...]
    hypothesis: Callable[[Canon, int], bool]
    conclusion: Callable[[Canon, int], bool]
    families: Tuple[Canon, ...] = ()


D2 = canonical(example2_set(2).elems)
D3 = canonical(example2_set(3).elems)
FIVE_FAMILIES = tuple(
    canonical(s) for s in ((-3, -2, -1, 1, 2), (-4, -2, -1, 1, 2), (-3, -2, -1, 2, 4))
)


def _all(s, z):
    return True


def _no_zero(s, z):
    return 0 not in s


CLAIMS = (
    _Claim("contains_zero", "every decomposable set with at most 3 elements contains 0",
           (1, 2, 3), _all, lambda s, z: 0 in s),
    _Claim("four_without_zero_is_d2",
           "a decomposable 4-set without 0 is a scaling of {-2,-1,1,2}",
           (4,), _no_zero, lambda s, z: s == D2, (D2,)),
    _Claim("z_at_most_two", "every decomposable set with 4 or 5 elements has z <= 2",
           (4, 5), _all, lambda s, z: z <= 2),
    _Claim("five_without_zero_families",
           "a decomposable 5-set without 0 is a scaling of one of "
           "{-3,-2,-1,1,2}, {-4,-2,-1,1,2}, {-3,-2,-1,2,4}",
           (5,), _no_zero, lambda s, z: s in FIVE_FAMILIES, FIVE_FAMILIES),
    _Claim("six_with_z_three_is_d3",
           "a decomposable 6-set with z >= 3 is a scaling of {-6,-5,-3,1,2,4} and has z = 3",
           (6,), lambda s, z: z >= 3, lambda s, z: s == D3 and z == 3, (D3,)),
    _Claim("z_at_most_three", "every decomposable 7-set has z <= 3",
           (7,), _all, lambda s, z: z <= 3),
    _Claim("half_z_is_dn",
           "a decomposable 2n-set with z = n (n = 2, 3) is a scaling of D_n",
           (4, 6), lambda s, z: 2 * z == len(s),
           lambda s, z: s == canonical(example2_set(len(s) // 2).elems)),
    _Claim("z_at_most_half", "every decomposable set with 2..7 elements has z <= |D|/2",
           (2, 3, 4, 5, 6, 7), _all, lambda s, z: 2 * z <= len(s)),
)


def classify(n: int, M: int, jobs: int = 1) -> ClassificationReport:
    """Enumerate the window and test every claim that applies to size ``n``."""
    _check_budget(n, M)
    found = [(c.elems, min_zero_sum(c).z) for c in enumerate_decomposable(n, M, jobs)]
    hist: Dict[int, int] = {}
    for _, z in found:
        hist[z] = hist.get(z, 0) + 1
    results = []
    for claim in CLAIMS:
        if n not in claim.sizes:
            continue
        res = ClaimResult(claim.id, claim.statement)
        for s, z in found:
            if not claim.hypothesis(s, z):
                continue
            res.hypothesis_count += 1
            res.hypothesis_sets.append(s)
            if not claim.conclusion(s, z):
                res.counterexamples.append(s)
        reachable = [f for f in claim.families if max(map(abs, f)) <= M]
        res.expected_families = list(reachable)
        present = set(res.hypothesis_sets)
        res.missing_families = [f for f in reachable if f not in present]
        results.append(res)
    return ClassificationReport(n, M, len(found), hist, results)


# --------------------------------------------------------------------------
# randomized hunt


@dataclass(frozen=True)
class HuntRecord:
    size: int
    seed: int
    trials: int
    trials_run: int
    found: int
    best_z: Optional[int] = None
    best_set: Optional[Tuple[int, ...]] = None
    best_trial: Optional[int] = None

    @property
    def ratio(self) -> Optional[Fraction]:
        if self.best_z is None:
            return None
        return Fraction(self.best_z, self.size)

    def to_dict(self) -> dict:
        ratio = self.ratio
        return {
            "schema": 1,
            "size": self.size,
            "seed": self.seed,
            "trials": self.trials,
            "trials_run": self.trials_run,
            "decomposable_found": self.found,
            "best_z": self.best_z,
            "best_ratio": None if ratio is None else f"{ratio.numerator}/{ratio.denominator}",
            "best_ratio_value": None if ratio is None else float(ratio),
            "best_set": None if self.best_set is None else list(self.best_set),
            "best_trial": self.best_trial,
            "note": "best effort search; absence of a better set is not a proof",
        }


def _random_decomposable(n: int, rng: random.Random, spread: int) -> Optional[List[int]]:
    """Grow a zero-free set by adding missing summands until it is decomposable."""

    def draw():
        v = 0
        while v == 0:
            v = rng.randint(-spread, spread)
        return v

    cur = {draw()}
    while len(cur) < 2:
        cur.add(draw())
    for _ in range(8 * n):
        missing = sorted(d for d in cur if not any(d - a in cur for a in cur))
        if not missing:
            if len(cur) == n:
                return sorted(cur)
            cur.add(draw())
            continue
        if len(cur) >= n:
            return None
        d = rng.choice(missing)
        options = [d - a for a in sorted(cur) if a != d]
        if d % 2 == 0:
            options.append(d // 2)
        cur.add(rng.choice(options))
    return None


def _hunt_chunk(args) -> Tuple[int, int, Optional[Tuple[int, Tuple[int, ...], int]]]:
    n, seed, start, stop, spread, deadline = args
    best = None
    found = run = 0
    for i in range(start, stop):
        if deadline is not None and time.monotonic() > deadline:
            break
        run += 1
        rng = random.Random(f"{seed}:{i}")
        vals = _random_decomposable(n, rng, spread)
        if vals is None:
            continue
        found += 1
        z = min_zero_sum(ElementSet.ints(vals)).z
        if best is None or z > best[0]:
            best = (z, canonical(vals), i)
    return run, found, best


def hunt(
    n: int,
    trials: int = 2000,
    seed: int = 0,
    max_seconds: Optional[float] = None,
    jobs: int = 1,
    spread: Optional[int] = None,
) -> HuntRecord:
    """Random search for decomposable ``n``-sets with large ``z``.

    Trial ``i`` draws from its own generator seeded by ``(seed, i)``, so the
    result depends only on ``seed`` and ``trials`` unless ``max_seconds``
    cuts the run short.
    """
    if n < 1:
        raise GroupError(f"size must be >= 1, got {n}")
    spread = spread or max(6, 2 * n)
    deadline = None if max_seconds is None else time.monotonic() + max_seconds
    chunk = max(1, -(-trials // max(jobs, 1)))
    tasks = [(n, seed, s, min(s + chunk, trials), spread, deadline)
             for s in range(0, trials, chunk)]
    if jobs <= 1:
        parts = [_hunt_chunk(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_hunt_chunk, tasks))
    best = None
    run = found = 0
    for r, f, b in parts:
        run += r
        found += f
        if b is not None and (best is None or b[0] > best[0]):
            best = b
    if best is None:
        return HuntRecord(n, seed, trials, run, found)
    return HuntRecord(n, seed, trials, run, found, best[0], best[1], best[2])
