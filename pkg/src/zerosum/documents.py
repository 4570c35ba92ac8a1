"""JSON documents for sets, certificates and results.

A set document looks like::

    {"schema": 1, "group": {"kind": "Z_m", "modulus": 7}, "elems": [1, 2, 4]}

``group`` defaults to the integers.  Integers beyond 2**53 - 1 in magnitude
are written as decimal strings and read back from strings.  Integer and
lattice groups also accept rationals, either as ``"p/q"`` strings,
``{"num": p, "den": q}`` objects or, for plain integers, ``[p, q]`` pairs;
all denominators are cleared by one common positive factor.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Any, Dict, List, Optional

from .core import ElementSet
from .errors import ZeroSumError
from .groups import GroupContext, Kind, clear_denominators
from .trees import Certificate

SCHEMA = 1
SAFE_INT = 2**53 - 1

_KIND_ALIASES = {
    "Z": Kind.INTEGERS, "integers": Kind.INTEGERS,
    "Z^k": Kind.VECTORS, "vectors": Kind.VECTORS, "integer_vectors": Kind.VECTORS,
    "Z_m": Kind.CYCLIC, "cyclic": Kind.CYCLIC,
    "Z_2^k": Kind.BOOLEAN, "boolean": Kind.BOOLEAN,
}


class DocumentError(ZeroSumError):
    code = "invalid_document"


def group_to_json(ctx: GroupContext) -> Dict[str, Any]:
    out: Dict[str, Any] = {"kind": ctx.kind.value}
    if ctx.kind is Kind.CYCLIC:
        out["modulus"] = int_to_json(ctx.modulus)
    elif ctx.kind in (Kind.VECTORS, Kind.BOOLEAN):
        out["rank"] = ctx.rank
    return out


def group_from_json(obj: Optional[dict]) -> GroupContext:
    if obj is None:
        return GroupContext.integers()
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DocumentError("group must be an object with a 'kind' field")
    kind = _KIND_ALIASES.get(obj["kind"])
    if kind is None:
        raise DocumentError(f"unknown group kind {obj['kind']!r}")
    if kind is Kind.CYCLIC:
        return GroupContext.cyclic(_int(obj.get("modulus")))
    if kind in (Kind.VECTORS, Kind.BOOLEAN):
        return GroupContext(kind, rank=_int(obj.get("rank")))
    return GroupContext.integers()


def int_to_json(x: int):
    return x if -SAFE_INT <= x <= SAFE_INT else str(x)


def element_to_json(x):
    if isinstance(x, tuple):
        return [int_to_json(c) for c in x]
    return int_to_json(x)


def elements_to_json(elems) -> List:
    return [element_to_json(x) for x in elems]


def _int(v) -> int:
    if isinstance(v, bool):
        raise DocumentError(f"expected an integer, got {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v)
        except ValueError:
            pass
    raise DocumentError(f"expected an integer, got {v!r}")


def _number(v):
    """An int, or a Fraction when ``v`` spells a non-integral rational."""
    if isinstance(v, dict):
        if set(v) != {"num", "den"}:
            raise DocumentError(f"rational objects need exactly 'num' and 'den': {v!r}")
        den = _int(v["den"])
        if den == 0:
            raise DocumentError("zero denominator")
        return Fraction(_int(v["num"]), den)
    if isinstance(v, str) and "/" in v:
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"bad rational {v!r}") from None
    return _int(v)


def _raw_elements(ctx: GroupContext, values) -> list:
    if not isinstance(values, list):
        raise DocumentError("'elems' must be a list")
    out = []
    for v in values:
        if ctx.kind is Kind.INTEGERS:
            if isinstance(v, list):
                if len(v) != 2:
                    raise DocumentError(f"rational pairs must be [num, den], got {v!r}")
                v = {"num": v[0], "den": v[1]}
            out.append(_number(v))
        elif ctx.is_vector:
            if not isinstance(v, list):
                raise DocumentError(f"{ctx} elements must be arrays, got {v!r}")
            out.append([_number(c) for c in v])
        else:
            out.append(_int(v))
    return out


def _entries(raw: list):
    for v in raw:
        yield from (v if isinstance(v, list) else [v])


def _normalize(ctx: GroupContext, raw: list):
    fractions = [c for c in _entries(raw) if isinstance(c, Fraction)]
    if not fractions:
        return raw, 1
    if ctx.kind not in (Kind.INTEGERS, Kind.VECTORS):
        raise DocumentError(f"rational entries are not allowed in {ctx}")
    scaled = clear_denominators(raw)
    scale = lcm(*(c.denominator for c in fractions))
    return scaled, scale


def read_set(doc: dict, key: str = "elems"):
    """Parse a set document; returns ``(set, scale)``.

    ``scale`` is the positive integer every entry was multiplied by to clear
    denominators (1 for integral input).
    """
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if key not in doc:
        raise DocumentError(f"document has no {key!r} field")
    ctx = group_from_json(doc.get("group"))
    values, scale = _normalize(ctx, _raw_elements(ctx, doc[key]))
    return ElementSet.of(ctx, values), scale


def set_from_json(doc: dict, key: str = "elems") -> ElementSet:
    return read_set(doc, key)[0]


def set_to_json(D: ElementSet) -> Dict[str, Any]:
    return {"schema": SCHEMA, "group": group_to_json(D.ctx), "elems": elements_to_json(D.elems)}


def certificate_from_json(doc: dict) -> tuple:
    """Parse ``{"group", "elems", "certificate": {"A": [...], "B": [...]}}``.

    ``A`` and ``B`` are written in the same units as ``elems`` and receive
    the same denominator-clearing scale.
    """
    D, scale = read_set(doc)
    cert = doc.get("certificate")
    if not isinstance(cert, dict) or "A" not in cert or "B" not in cert:
        raise DocumentError("document needs a 'certificate' object with 'A' and 'B'")
    ctx = D.ctx
    parts = []
    for key in ("A", "B"):
        raw = _raw_elements(ctx, cert[key])
        if scale != 1:
            raw = [
                [_rescale(c, scale) for c in v] if isinstance(v, list) else _rescale(v, scale)
                for v in raw
            ]
        elif any(isinstance(c, Fraction) for c in _entries(raw)):
            raise DocumentError("certificate entries must use the units of 'elems'")
        parts.append(ElementSet.of(ctx, raw))
    return D, Certificate(parts[0], parts[1])


def _rescale(c, scale: int) -> int:
    v = Fraction(c) * scale
    if v.denominator != 1:
        raise DocumentError("certificate entries must use the units of 'elems'")
    return int(v)


def certificate_to_json(D: ElementSet, cert: Certificate, verified: bool) -> Dict[str, Any]:
    return {
        "schema": SCHEMA,
        "group": group_to_json(D.ctx),
        "elems": elements_to_json(D.elems),
        "certificate": {
            "A": elements_to_json(cert.A.elems),
            "B": elements_to_json(cert.B.elems),
        },
        "verified": verified,
    }
