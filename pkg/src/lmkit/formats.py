"""The ``lmkit-algebra/1`` JSON format.

Three kinds are accepted::

    {"format": "lmkit-algebra/1", "kind": "chain", "n": 3}
    {"format": "lmkit-algebra/1", "kind": "chain", "n": 3, "values": [0, 2]}
    {"format": "lmkit-algebra/1", "kind": "product", "factors": [<spec>, <spec>]}
    {"format": "lmkit-algebra/1", "kind": "explicit", "n": 3,
     "elements": ["0", "e", "1"], "leq": [["0", "e"], ["e", "1"]],
     "phi": {"1": {"0": "0", "e": "0", "1": "1"}, "2": {"0": "0", "e": "1", "1": "1"}}}

Every kind also takes an optional ``"name"``.  Only the order is read for
the lattice and ``phi_bar`` is derived; unknown fields are rejected.
Nested factors may omit the ``format`` tag.
"""

import json

from .algebra import algebra_from_tables, check_algebra, make_chain, make_product
from .errors import ParseError

FORMAT = "lmkit-algebra/1"

_FIELDS = {
    "chain": {"format", "kind", "name", "n", "values"},
    "product": {"format", "kind", "name", "factors"},
    "explicit": {"format", "kind", "name", "n", "elements", "leq", "phi"},
}
_REQUIRED = {
    "chain": {"n"},
    "product": {"factors"},
    "explicit": {"n", "elements", "leq", "phi"},
}


def _expect(cond, message):
    if not cond:
        raise ParseError(message)


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _build(spec, top):
    _expect(isinstance(spec, dict), "an algebra spec must be a JSON object")
    if top or "format" in spec:
        _expect(spec.get("format") == FORMAT, f'"format" must be "{FORMAT}"')
    kind = spec.get("kind")
    _expect(kind in _FIELDS, f"unknown kind {kind!r}; expected chain, product or explicit")
    extra = set(spec) - _FIELDS[kind]
    _expect(not extra, f"unknown field(s) for kind {kind}: {', '.join(sorted(extra))}")
    missing = _REQUIRED[kind] - set(spec)
    _expect(not missing, f"missing field(s) for kind {kind}: {', '.join(sorted(missing))}")
    name = spec.get("name", "")
    _expect(isinstance(name, str), '"name" must be a string')

    if kind == "chain":
        _expect(_is_int(spec["n"]), '"n" must be an integer')
        values = spec.get("values")
        if values is not None:
            _expect(
                isinstance(values, list) and all(_is_int(v) for v in values),
                '"values" must be a list of integers',
            )
        A = make_chain(spec["n"], values)
    elif kind == "product":
        factors = spec["factors"]
        _expect(isinstance(factors, list) and len(factors) >= 1, '"factors" must be a nonempty list')
        parts = [_build(f, top=False) for f in factors]
        A = parts[0]
        for B in parts[1:]:
            A = make_product(A, B)
    else:
        n = spec["n"]
        _expect(_is_int(n), '"n" must be an integer')
        elements = spec["elements"]
        _expect(
            isinstance(elements, list) and all(isinstance(e, str) for e in elements),
            '"elements" must be a list of strings',
        )
        leq = spec["leq"]
        _expect(
            isinstance(leq, list)
            and all(isinstance(p, list) and len(p) == 2 and all(isinstance(v, str) for v in p) for p in leq),
            '"leq" must be a list of [lower, upper] name pairs',
        )
        phi_in = spec["phi"]
        _expect(isinstance(phi_in, dict), '"phi" must map indices to tables')
        phi = {}
        for key, table in phi_in.items():
            _expect(key.isdigit(), f"phi index {key!r} is not a positive integer")
            _expect(
                isinstance(table, dict) and all(isinstance(v, str) for v in table.values()),
                f"phi table {key} must map names to names",
            )
            phi[int(key)] = table
        A = algebra_from_tables(elements, [tuple(p) for p in leq], n, phi)
    if name:
        A = type(A)(A.lattice, A.n, A.phi, name)
    return A


def algebra_from_dict(spec):
    """Build and validate an algebra from a decoded spec.

    Raises ``ParseError`` for malformed specs, an ``InvalidInput`` subclass
    for an order that is not a distributive lattice (or other structural
    problems) and ``ValidationError`` when L1-L5 fail.
    """
    return check_algebra(_build(spec, top=True))


def parse_spec(text):
    """Parse ``lmkit-algebra/1`` JSON text into a validated algebra."""
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return algebra_from_dict(spec)


def load_algebra(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_spec(text)


def algebra_to_dict(A):
    """Explicit spec of ``A``; parsing it rebuilds an isomorphic algebra with
    the same element names."""
    P = A.poset
    out = {"format": FORMAT, "kind": "explicit"}
    if A.name:
        out["name"] = A.name
    out["n"] = A.n
    out["elements"] = list(A.names)
    out["leq"] = [[P.names[x], P.names[y]] for x, y in P.covers]
    out["phi"] = {
        str(i): {A.names[x]: A.names[A.phi_at(i, x)] for x in range(A.size)} for i in A.indices
    }
    return out


def dump_algebra(A):
    return json.dumps(algebra_to_dict(A), indent=2) + "\n"


__all__ = [
    "FORMAT",
    "algebra_from_dict",
    "algebra_to_dict",
    "dump_algebra",
    "load_algebra",
    "parse_spec",
]
