"""Command-line interface.

Every command prints one JSON document on standard output.  Exit status is
0 on success, 1 for usage errors, 2 for mathematical-domain errors and 3
when a resource cap is hit.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import ffield
from . import serialize as S
from .arith import parse_rational
from .closure import (
    ClosureQuery,
    approx_member,
    closure_intersection_probe,
    closure_member,
    non_member_level,
)
from .errors import DedekindError, InvalidArgument, MethodUnavailable
from .fieldspec import load_field
from .galois import automorphisms, chebotarev_census, decomposition_field, frobenius
from .ge2 import (
    ElementaryOp,
    ReductionTrace,
    bounded_search,
    parse_ring,
    reduce_localized,
    verify_reduction,
)
from .intpoly import build_witness, image_description, int_membership
from .numberfield import RATIONALS, rational_embedding, subfield_from_element
from .primes import factor_prime, valuation, valuation_by_ideals

VERIFY_LEVELS = 8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# shared argument handling


def _field(args):
    return load_field(args.field)


def _prime(L, args):
    primes = factor_prime(L, args.prime_over).primes
    if not 0 <= args.index < len(primes):
        raise InvalidArgument(f"prime index {args.index} out of range: {len(primes)} prime(s) above {args.prime_over}")
    return primes[args.index][0]


def _base(L, args):
    if getattr(args, "base_gen", None):
        _, emb = subfield_from_element(L, S.parse_element(L, args.base_gen))
        return emb
    return rational_embedding(L)


def _group(L, base, required=True):
    try:
        return automorphisms(L, base)
    except DedekindError:
        if required:
            raise MethodUnavailable("no Galois group available for this extension; use approx")
        return None


def _base_element(base, x):
    return S.element(x) if base.source.degree > 1 else S.num(x.coords[0])


# ---------------------------------------------------------------------------
# commands


def cmd_factor_prime(args):
    L = _field(args)
    data = factor_prime(L, args.p)
    out = {
        "field": L.label or S.poly(L.poly),
        "p": S.num(args.p),
        "primes": [dict(S.prime(Q), exponent=S.num(k)) for Q, k in data.primes],
        "degree_sum": S.num(data.degree_sum()),
    }
    if args.verify:
        out["verified"] = data.check()
    return out


def cmd_valuation(args):
    L = _field(args)
    Q = _prime(L, args)
    c = S.parse_element(L, args.element)
    v = valuation(Q, c)
    out = {"prime": S.prime(Q), "element": S.element(c), "valuation": S.num(v)}
    if args.verify:
        out["verified"] = valuation_by_ideals(Q, c) == v
    return out


def cmd_decomposition_field(args):
    L = _field(args)
    base = _base(L, args)
    G = _group(L, base)
    Q = _prime(L, args)
    data = decomposition_field(G, Q)
    out = {
        "prime": S.prime(Q),
        "subgroup": [S.element(G.elements[i].image) for i in data.subgroup],
        "field": S.field(data.field),
        "embedding_image": S.element(data.embedding.image),
        "contracted_prime": S.prime(data.contracted),
        "checks": data.checks,
    }
    if args.verify:
        out["verified"] = all(data.checks.values())
    return out


def cmd_frobenius(args):
    L = _field(args)
    base = _base(L, args)
    G = _group(L, base)
    Q = _prime(L, args)
    i = frobenius(G, Q)
    out = {"prime": S.prime(Q), "index": S.num(i), "image": S.element(G.elements[i].image)}
    if args.verify:
        # the Frobenius generates G_Q and its order is the residue degree over the base
        from .galois import decomposition_group

        sub = G.cyclic_subgroup(i)
        out["verified"] = set(sub) == set(decomposition_group(G, Q))
    return out


def cmd_chebotarev(args):
    L = _field(args)
    G = _group(L, rational_embedding(L))
    census = chebotarev_census(G, args.bound)
    rows = [
        {
            "representative": S.element(G.elements[r.representative].image),
            "size": S.num(r.size),
            "count": S.num(r.count),
            "empirical": S.num(r.empirical),
            "predicted": S.num(r.predicted),
        }
        for r in census.rows
    ]
    dev = max(abs(r.empirical - r.predicted) for r in census.rows)
    out = {"bound": S.num(args.bound), "total": S.num(census.total), "classes": rows,
           "skipped": [S.num(p) for p in census.skipped], "max_deviation": S.num(dev),
           "max_deviation_decimal": f"{float(dev):.6f}"}
    if args.verify:
        out["verified"] = sum(r.count for r in census.rows) == census.total
    return out


def _closure_setup(args):
    L = _field(args)
    base = _base(L, args)
    Q = _prime(L, args)
    c = S.parse_element(L, args.element)
    return L, base, Q, c


def cmd_closure_member(args):
    L, base, Q, c = _closure_setup(args)
    G = _group(L, base)
    q = ClosureQuery(base, Q, c, G)
    member = closure_member(q)
    out = {"prime": S.prime(Q), "element": S.element(c), "member": member, "method": "decomposition-group"}
    if args.verify:
        if member:
            ok = all(approx_member(q, k).member for k in range(1, VERIFY_LEVELS + 1))
            out["verification"] = {"method": "lattice-approximation", "levels": S.num(VERIFY_LEVELS)}
        else:
            w = non_member_level(q)
            ok = True
            out["verification"] = {"method": "lattice-approximation", "failing_level": S.num(w.failing_level)}
        out["verified"] = ok
    return out


def _witness_doc(w, base):
    out = {"member": w.member, "level": S.num(w.level), "e": S.num(w.e)}
    if w.member:
        out["approximant"] = _base_element(base, w.approximant)
        out["approximant_valuation"] = S.num(w.approximant_valuation)
    else:
        out["failing_level"] = S.num(w.failing_level)
        out["m"] = S.num(w.m)
    return out


def cmd_approx(args):
    L, base, Q, c = _closure_setup(args)
    q = ClosureQuery(base, Q, c, None)
    w = approx_member(q, args.level)
    out = {"prime": S.prime(Q), "element": S.element(c), **_witness_doc(w, base)}
    if args.verify and w.member:
        out["verified"] = valuation_by_ideals(Q, c - base(w.approximant), cap=args.level + 1) >= args.level
    elif args.verify:
        out["verified"] = not approx_member(q, w.failing_level).member if w.failing_level else True
    return out


def cmd_probe(args):
    L = _field(args)
    base = _base(L, args)
    c = S.parse_element(L, args.element)
    G = _group(L, base, required=False)
    res = closure_intersection_probe(base, c, args.budget, G)
    out = {"status": res.status, "primes_scanned": [S.num(p) for p in res.primes_scanned],
           "skipped": [S.num(p) for p in res.skipped]}
    if res.prime is not None:
        out["prime"] = S.prime(res.prime)
        out["failing_level"] = S.num(res.failing_level)
        if args.verify:
            q = ClosureQuery(base, res.prime, c, None)
            out["verified"] = not approx_member(q, res.failing_level).member
    return out


def cmd_witness(args):
    L, base, Q, c = _closure_setup(args)
    G = _group(L, base, required=False)
    w = build_witness(c, Q, base, G)
    out = {
        "prime": S.prime(Q),
        "contracted_prime": S.prime(w.P),
        "element": S.element(c),
        "m": S.num(w.m),
        "e": S.num(w.e),
        "failing_level": S.num(w.failing_level),
        "residue_size": S.num(w.residue_size),
        "beta": S.num(w.beta),
        "d": _base_element(base, w.d),
        "d_valuation": S.num(w.d_valuation),
        "residues": [_base_element(base, a) for a in w.residues],
        "coefficients": [_base_element(base, a) for a in w.coeffs],
        "degree": S.num(w.degree),
        "g_value_valuation": S.num(w.g_value_valuation),
        "f_value_valuation": S.num(w.f_value_valuation),
        "bound_e_beta_minus_1": S.num(w.e * w.beta - 1),
    }
    if args.verify:
        out["verified"] = int_membership(w.coeffs, base.source) and w.f_value_valuation < 0
    return out


def _parse_poly(K, text):
    if ";" in text or K.degree == 1:
        parts = text.split(";") if ";" in text else text.split(",")
        return [S.parse_element(K, t) for t in parts]
    raise InvalidArgument("coefficients over a number field are separated by ';'")


def cmd_int_member(args):
    K = load_field(args.field) if args.field else RATIONALS
    f = _parse_poly(K, args.poly)
    out = {"polynomial": [S.element(a) if K.degree > 1 else S.num(a.coords[0]) for a in f],
           "member": int_membership(f, K, cap=args.cap)}
    return out


def cmd_image(args):
    L = _field(args)
    base = _base(L, args)
    c = S.parse_element(L, args.element)
    d = image_description(c, base, args.budget)
    out = {
        "kind": d.kind,
        "field": S.field(d.F),
        "flags": [{"prime": S.prime(Q), "member": ok} for Q, ok in d.flags],
        "excluded": [S.prime(P) for P in d.excluded],
        "skipped": [S.num(p) for p in d.skipped],
        "incomplete": d.incomplete,
        "budget": S.num(d.budget),
        "method": d.method,
    }
    if args.verify and d.kind == "strict-overring-of-E":
        wit = None
        for Q, ok in d.flags:
            if not ok and valuation(Q, d.c) >= 0:
                wit = build_witness(d.c, Q, d.base)
                break
        out["verified"] = wit is not None and wit.f_value_valuation < 0
    return out


def _trace_doc(t: ReductionTrace):
    return {
        "ring": t.ring.label,
        "start": [S.element_str(x) for x in t.start],
        "ops": [{"side": S.num(op.side), "multiplier": S.element_str(op.multiplier)} for op in t.ops],
        "end": [S.element_str(x) for x in t.end],
    }


def cmd_ge2_reduce(args):
    R = parse_ring(args.ring)
    pair = (S.parse_element(R.field, args.a), S.parse_element(R.field, args.b))
    t = reduce_localized(pair, R)
    out = _trace_doc(t)
    out["length"] = S.num(len(t))
    if args.verify:
        out["verified"] = verify_reduction(t)
    return out


def _read_trace(R, doc):
    if "result" in doc:
        doc = doc["result"]
    try:
        K = R.field
        start = tuple(S.parse_element(K, x) for x in doc["start"])
        end = tuple(S.parse_element(K, x) for x in doc["end"])
        ops = [ElementaryOp(int(op["side"]), S.parse_element(K, op["multiplier"])) for op in doc["ops"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidArgument(f"malformed trace document: {exc}") from exc
    return ReductionTrace(R, start, ops, end)


def cmd_ge2_verify(args):
    R = parse_ring(args.ring)
    text = sys.stdin.read() if args.trace == "-" else open(args.trace, encoding="utf-8").read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"trace is not valid JSON ({exc.msg})") from exc
    t = _read_trace(R, doc)
    return {"ring": R.label, "valid": verify_reduction(t), "length": S.num(len(t))}


def cmd_ge2_search(args):
    R = parse_ring(args.ring)
    pair = (S.parse_element(R.field, args.a), S.parse_element(R.field, args.b))
    res = bounded_search(pair, R, args.depth, args.height, cap=args.cap)
    out = {"status": res.status, "states": S.num(res.states), "depth": S.num(args.depth),
           "height": S.num(args.height)}
    if res.trace is not None:
        out["trace"] = _trace_doc(res.trace)
        if args.verify:
            out["verified"] = verify_reduction(res.trace)
    if res.status == "cap":
        from .errors import SearchCap

        raise SearchCap(f"state cap {args.cap} reached after {res.states} states", states=res.states)
    return out


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="dedekind", description="Exact computations around Q-adic closures of rings of integers.")
    ap.add_argument("--seed", type=int, default=None, help="seed for randomized steps (default: $DEDEKIND_SEED or 0)")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, field=True, prime=False, element=False, base=False):
        p = sub.add_parser(name, help=help_)
        if field:
            p.add_argument("field", help="field-spec file or catalog name (gauss, sqrt2, sqrt-5, zeta5, biquad)")
        if prime:
            p.add_argument("--prime-over", type=int, required=True, metavar="P")
            p.add_argument("--index", type=int, default=0, help="which prime above P (factorization order)")
        if element:
            p.add_argument("--element", required=True, help="comma-separated coordinates, e.g. 0,1")
        if base:
            p.add_argument("--base-gen", default=None, help="generator of the base field inside L (default Q)")
        p.add_argument("--verify", action="store_true", help="re-check the result by an independent method")
        p.set_defaults(func=func)
        return p

    p = add("factor-prime", cmd_factor_prime, "factor pO_K into prime ideals")
    p.add_argument("p", type=int)
    add("valuation", cmd_valuation, "v_Q of an element", prime=True, element=True)
    add("decomposition-field", cmd_decomposition_field, "decomposition group and field of Q", prime=True, base=True)
    add("frobenius", cmd_frobenius, "Frobenius automorphism of an unramified Q", prime=True, base=True)
    p = add("chebotarev", cmd_chebotarev, "Frobenius class census up to a bound")
    p.add_argument("--bound", type=int, default=1000)
    add("closure-member", cmd_closure_member, "is c in the Q-adic closure of O_K", prime=True, element=True, base=True)
    p = add("approx", cmd_approx, "approximate c by O_K modulo Q^k", prime=True, element=True, base=True)
    p.add_argument("--level", type=int, required=True, metavar="K")
    p = add("probe", cmd_probe, "find a prime whose closure excludes c", element=True, base=True)
    p.add_argument("--budget", type=int, default=25)
    add("witness", cmd_witness, "integer-valued witness polynomial", prime=True, element=True, base=True)
    p = add("int-member", cmd_int_member, "is f integer-valued on O_K", field=False)
    p.add_argument("--field", default=None, help="field of coefficients (default Q)")
    p.add_argument("--poly", required=True, help="coefficients, constant first (',' over Q, ';' between elements otherwise)")
    p.add_argument("--cap", type=int, default=2**20)
    p = add("image", cmd_image, "describe the image of c under Int(O_K)", element=True, base=True)
    p.add_argument("--budget", type=int, default=25)
    for name, func, help_ in (
        ("ge2-reduce", cmd_ge2_reduce, "reduce a unimodular pair to (1, 0)"),
        ("ge2-search", cmd_ge2_search, "bounded search for a reduction"),
    ):
        p = add(name, func, help_, field=False)
        p.add_argument("--ring", required=True, help="Z, Z[i], Z[sqrt(-2)], O(d), optionally followed by [1/n]")
        p.add_argument("a")
        p.add_argument("b")
        if name == "ge2-search":
            p.add_argument("--depth", type=int, default=6)
            p.add_argument("--height", type=int, default=2)
            p.add_argument("--cap", type=int, default=200_000)
    p = add("ge2-verify", cmd_ge2_verify, "verify a reduction trace", field=False)
    p.add_argument("--ring", required=True)
    p.add_argument("--trace", required=True, help="JSON trace file or - for standard input")
    return ap


def _emit(doc, stream):
    stream.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        print(ap.format_usage(), file=sys.stderr, end="")
        return 1
    seed = args.seed if args.seed is not None else os.environ.get("DEDEKIND_SEED")
    if seed is not None:
        try:
            ffield.DEFAULT_SEED = int(parse_rational(seed))
        except DedekindError:
            print(f"invalid seed {seed!r}", file=sys.stderr)
            return 1
    try:
        result = args.func(args)
    except DedekindError as exc:
        _emit({"command": args.command, "status": "error", "error": exc.code, "message": str(exc)}, sys.stdout)
        print(f"{args.command}: {exc.code}: {exc}", file=sys.stderr)
        return exc.exit_status
    except OSError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 1
    _emit({"command": args.command, "status": "ok", "result": result}, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
