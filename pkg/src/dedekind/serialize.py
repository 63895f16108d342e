"""JSON-ready views of the package's objects.  Exact numbers become strings."""
from __future__ import annotations

from fractions import Fraction

from .arith import parse_rational, rational_str
from .errors import InvalidArgument
from .numberfield import FieldElement, NumberField
from .primes import INFINITY


def num(x) -> str:
    if x is INFINITY:
        return "+oo"
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    return rational_str(Fraction(x))


def element(x: FieldElement) -> list[str]:
    return [num(c) for c in x.coords]


def element_str(x: FieldElement) -> str:
    return ",".join(element(x))


def parse_element(K: NumberField, text: str) -> FieldElement:
    """Comma-separated rational coordinates over the power basis; missing trailing zeros allowed."""
    parts = [t for t in str(text).replace(" ", "").split(",") if t != ""]
    if not parts:
        raise InvalidArgument("empty element")
    if len(parts) > K.degree:
        raise InvalidArgument(f"element has {len(parts)} coordinates, field degree is {K.degree}")
    coords = [parse_rational(t) for t in parts] + [Fraction(0)] * (K.degree - len(parts))
    return K.element(coords)


def poly(coeffs) -> list[str]:
    return [num(c) for c in coeffs]


def prime(Q) -> dict:
    out = {"p": num(Q.p), "e": num(Q.e), "f": num(Q.f), "hnf": [[num(x) for x in r] for r in Q.hnf]}
    out["gen"] = element(Q.gen) if Q.gen is not None else None
    return out


def field(K: NumberField) -> dict:
    return {
        "label": K.label,
        "defining_polynomial": poly(K.poly),
        "integral_basis": [[num(x) for x in row] for row in K.basis],
        "discriminant": num(K.discriminant),
    }
