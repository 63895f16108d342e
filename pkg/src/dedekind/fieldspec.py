"""Field-spec files and the built-in catalog of test fields.

A field spec is a UTF-8 JSON object::

    {"defining_polynomial": [1, 0, 1],
     "integral_basis": [["1", "0"], ["0", "1"]],      # optional, rows over the power basis
     "automorphisms": [[0, 1], [0, -1]],               # optional, images of the generator
     "label": "Q(i)"}                                  # optional
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import InvalidArgument
from .numberfield import NumberField, make_field

BIQUADRATIC_BASIS = [
    ["1", "0", "0", "0"],
    ["0", "-9/2", "0", "1/2"],
    ["0", "11/2", "0", "-1/2"],
    ["-5/4", "-9/4", "1/4", "1/4"],
]

CATALOG = {
    "rationals": {"defining_polynomial": [-1, 1], "label": "Q"},
    "gauss": {"defining_polynomial": [1, 0, 1], "label": "Q(i)"},
    "sqrt2": {"defining_polynomial": [-2, 0, 1], "label": "Q(sqrt(2))"},
    "sqrt-5": {"defining_polynomial": [5, 0, 1], "label": "Q(sqrt(-5))"},
    "zeta5": {"defining_polynomial": [1, 1, 1, 1, 1], "label": "Q(zeta_5)"},
    "biquad": {
        "defining_polynomial": [1, 0, -10, 0, 1],
        "integral_basis": BIQUADRATIC_BASIS,
        "label": "Q(sqrt(2), sqrt(3))",
    },
}

_cache: dict[str, NumberField] = {}


def field_from_spec(spec: dict) -> NumberField:
    if not isinstance(spec, dict) or "defining_polynomial" not in spec:
        raise InvalidArgument("field spec needs a 'defining_polynomial' key")
    f = [int(c) for c in spec["defining_polynomial"]]
    basis = spec.get("integral_basis")
    if basis is not None:
        basis = [[Fraction(str(x)) for x in row] for row in basis]
    autos = spec.get("automorphisms")
    if autos is not None:
        autos = [[Fraction(str(x)) for x in img] for img in autos]
    return make_field(f, integral_basis=basis, label=spec.get("label"), automorphisms=autos)


def catalog_field(name: str) -> NumberField:
    if name not in CATALOG:
        raise InvalidArgument(f"unknown catalog field {name!r}; known: {', '.join(sorted(CATALOG))}")
    if name not in _cache:
        _cache[name] = field_from_spec(CATALOG[name])
    return _cache[name]


def load_field(ref: str) -> NumberField:
    """A field from a spec file path, or from the catalog by name (``gauss`` or ``gauss.field``)."""
    path = Path(ref)
    if path.is_file():
        try:
            spec = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise InvalidArgument(f"{ref}: not valid JSON ({exc.msg})") from exc
        key = f"file:{path.resolve()}"
        if key not in _cache:
            _cache[key] = field_from_spec(spec)
        return _cache[key]
    stem = path.name[: -len(".field")] if path.name.endswith(".field") else path.name
    if stem in CATALOG:
        return catalog_field(stem)
    raise InvalidArgument(f"no field spec file or catalog entry named {ref!r}")


def write_catalog(directory) -> list[Path]:
    out = []
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for name, spec in CATALOG.items():
        p = d / f"{name}.field"
        p.write_text(json.dumps(spec, indent=2) + "\n", encoding="utf-8")
        out.append(p)
    return out
