"""Exact arithmetic in the supported abelian groups.

Four kinds are supported: the integers, integer lattices Z^k, cyclic
groups Z_m and Boolean groups Z_2^k.  Elements are plain Python values:
``int`` for Z and Z_m (residues kept in ``[0, m)``), tuples of ``int`` for
Z^k and tuples of bits for Z_2^k.  Python integers have arbitrary
precision, so integer arithmetic never wraps.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, Sequence, Tuple, Union

from .errors import GroupError

Element = Union[int, Tuple[int, ...]]


class Kind(str, enum.Enum):
    INTEGERS = "Z"
    VECTORS = "Z^k"
    CYCLIC = "Z_m"
    BOOLEAN = "Z_2^k"


@dataclass(frozen=True)
class GroupContext:
    kind: Kind
    rank: int = 1
    modulus: int = 0

    def __post_init__(self):
        if self.kind is Kind.CYCLIC and self.modulus < 2:
            raise GroupError(f"cyclic modulus must be >= 2, got {self.modulus}")
        if self.kind in (Kind.VECTORS, Kind.BOOLEAN) and self.rank < 1:
            raise GroupError(f"rank must be >= 1, got {self.rank}")

    # constructors
    @classmethod
    def integers(cls) -> "GroupContext":
        return cls(Kind.INTEGERS)

    @classmethod
    def vectors(cls, rank: int) -> "GroupContext":
        return cls(Kind.VECTORS, rank=rank)

    @classmethod
    def cyclic(cls, modulus: int) -> "GroupContext":
        return cls(Kind.CYCLIC, modulus=modulus)

    @classmethod
    def boolean(cls, rank: int) -> "GroupContext":
        return cls(Kind.BOOLEAN, rank=rank)

    def __str__(self):
        if self.kind is Kind.INTEGERS:
            return "Z"
        if self.kind is Kind.CYCLIC:
            return f"Z_{self.modulus}"
        if self.kind is Kind.VECTORS:
            return f"Z^{self.rank}"
        return f"Z_2^{self.rank}"

    @property
    def zero(self) -> Element:
        if self.kind in (Kind.INTEGERS, Kind.CYCLIC):
            return 0
        return (0,) * self.rank

    @property
    def is_vector(self) -> bool:
        return self.kind in (Kind.VECTORS, Kind.BOOLEAN)

    def element(self, value) -> Element:
        """Validate ``value`` and return its canonical representative."""
        if self.kind is Kind.INTEGERS:
            return _as_int(value, self)
        if self.kind is Kind.CYCLIC:
            return _as_int(value, self) % self.modulus
        if isinstance(value, (str, bytes)) or not isinstance(value, Sequence):
            raise GroupError(f"{self} expects a vector of length {self.rank}, got {value!r}")
        if len(value) != self.rank:
            raise GroupError(f"{self} expects a vector of length {self.rank}, got {value!r}")
        coords = tuple(_as_int(v, self) for v in value)
        if self.kind is Kind.BOOLEAN:
            if any(c not in (0, 1) for c in coords):
                raise GroupError(f"{self} coordinates must be 0 or 1, got {value!r}")
        return coords

    def check(self, x: Element) -> Element:
        """Raise unless ``x`` is already a canonical element of this group."""
        if self.kind is Kind.INTEGERS:
            ok = type(x) is int
        elif self.kind is Kind.CYCLIC:
            ok = type(x) is int and 0 <= x < self.modulus
        else:
            ok = (
                type(x) is tuple
                and len(x) == self.rank
                and all(type(c) is int for c in x)
                and (self.kind is Kind.VECTORS or all(c in (0, 1) for c in x))
            )
        if not ok:
            raise GroupError(f"{x!r} is not a canonical element of {self}")
        return x

    def add(self, a: Element, b: Element) -> Element:
        kind = self.kind
        if kind is Kind.INTEGERS:
            return a + b
        if kind is Kind.CYCLIC:
            return (a + b) % self.modulus
        if kind is Kind.VECTORS:
            return tuple(x + y for x, y in zip(a, b))
        return tuple(x ^ y for x, y in zip(a, b))

    def neg(self, a: Element) -> Element:
        kind = self.kind
        if kind is Kind.INTEGERS:
            return -a
        if kind is Kind.CYCLIC:
            return -a % self.modulus
        if kind is Kind.VECTORS:
            return tuple(-x for x in a)
        return a

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def total(self, elems: Iterable[Element]) -> Element:
        return reduce(self.add, elems, self.zero)


def _as_int(value, ctx) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise GroupError(f"{ctx} expects integer entries, got {value!r}")
    return int(value)


def element_add(ctx: GroupContext, a: Element, b: Element) -> Element:
    """Return ``a + b`` in ``ctx``; both operands must belong to ``ctx``."""
    return ctx.add(ctx.check(a), ctx.check(b))


def set_sum(ctx: GroupContext, elems: Iterable[Element]) -> Element:
    """Sum of a finite collection of elements; the empty sum is the identity."""
    return ctx.total(ctx.check(x) for x in elems)


def clear_denominators(values: Sequence) -> list:
    """Scale a list of rationals (or rational vectors) to integers.

    Multiplies every entry by the lcm of all denominators.  Positive
    scaling preserves decomposability and every zero-sum relation.
    """
    flat = []
    for v in values:
        if isinstance(v, (list, tuple)):
            flat.extend(Fraction(c) for c in v)
        else:
            flat.append(Fraction(v))
    scale = reduce(lcm, (f.denominator for f in flat), 1)

    def fix(c):
        return int(Fraction(c) * scale)

    return [
        [fix(c) for c in v] if isinstance(v, (list, tuple)) else fix(v)
        for v in values
    ]
