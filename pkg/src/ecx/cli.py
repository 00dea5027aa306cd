"""
Command-line front end.

Exit codes: 0 success, 1 an audit lemma check failed, 2 usage or curve-file
error, 3 enumeration cap exceeded, 4 key-derivation failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import List, Optional

from . import __version__
from .config import enumeration_cap
from .curve import (
    Curve,
    Point,
    Subgroup,
    enumerate_points,
    find_subgroups,
    in_hasse_interval,
    point_from_json,
    subgroup_from_generator,
    subgroup_orders,
)
from .errors import DerivationFailed, EcxError, EnumerationTooLarge
from .extractors import EXTRACTORS, extract, extractor_for
from .finite_field import ExtField, PrimeField
from .keyflow import DEMO_LABEL, PrngState, output_bits, pack_bits, prng_stream, dh_derive
from .stat_lab import (
    additive_span,
    all_bilinear_sums,
    bound_D_k,
    bound_L_k,
    bound_ext1,
    bound_ext2,
    col_bound_D_k,
    kmax_D_k,
    kmax_L_k,
    kmax_ext1,
    kmax_ext2,
    run_audit,
    subgroup_char_sum,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_PROTOCOL = 4

DEFAULT_SEED = 20240101


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------


def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _element(field, text: str):
    if isinstance(field, PrimeField):
        try:
            return field(int(text))
        except ValueError:
            raise UsageError(f"expected an integer field element, got {text!r}")
    coeffs = _int_list(text)
    return field(coeffs[0]) if len(coeffs) == 1 else field(coeffs)


def load_curve(args) -> Curve:
    audit = args.audit_mode == "on"
    inline = args.p is not None
    if args.curve:
        if inline:
            print("warning: --curve file given; ignoring inline --p/--a/--b", file=sys.stderr)
        try:
            with open(args.curve) as fh:
                spec = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read curve file {args.curve}: {exc}")
        try:
            return Curve.from_json(spec, audit=audit)
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed curve file: {exc}")
    if not inline or args.a is None or args.b is None:
        raise UsageError("give a curve with --curve FILE or --p/--a/--b")
    if args.modulus:
        field = ExtField(args.p, tuple(_int_list(args.modulus)))
    else:
        field = PrimeField(args.p)
    return Curve(field, _element(field, args.a), _element(field, args.b), audit=audit)


def _point(curve: Curve, text: str) -> Point:
    text = text.strip()
    if text == "infinity":
        return curve.infinity
    if text.startswith("{"):
        try:
            return point_from_json(curve, json.loads(text))
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad point JSON {text!r}: {exc}")
    if isinstance(curve.field, PrimeField):
        xy = _int_list(text)
        if len(xy) != 2:
            raise UsageError(f"expected 'x,y', got {text!r}")
        return curve.point(*xy)
    raise UsageError('points over extension fields must be JSON: {"x": [...], "y": [...]}')


def _subgroup(curve: Curve, gen: Optional[str], order: Optional[int], index: int, cap: int,
              label: str) -> Optional[Subgroup]:
    if gen is not None:
        return subgroup_from_generator(_point(curve, gen), cap)
    if order is None:
        return None
    subs = find_subgroups(curve, order, cap)
    if not subs:
        raise UsageError(f"{label}: no cyclic subgroup of order {order}")
    if not 0 <= index < len(subs):
        raise UsageError(f"{label}: index {index} out of range (found {len(subs)})")
    return subs[index]


def _subgroups(curve, args, cap, need_second=True):
    sub1 = _subgroup(curve, args.gen1, args.order1, args.index1, cap, "subgroup 1")
    if sub1 is None:
        raise UsageError("give --gen1 or --order1")
    sub2 = _subgroup(curve, args.gen2, args.order2, args.index2, cap, "subgroup 2")
    if sub2 is None and need_second:
        sub2 = sub1
    return sub1, sub2


def _positive(name, v):
    if v is None or v <= 0:
        raise UsageError(f"--{name} must be a positive integer")
    return v


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_curve_info(args, cap):
    curve = load_curve(args)
    pts = enumerate_points(curve, cap)
    n = len(pts)
    lo, hi = curve.hasse_interval()
    orders = subgroup_orders(curve, cap)
    return {
        "curve": curve.to_json(),
        "field": str(curve.field),
        "field_order": curve.field.order,
        "nonsingular": True,
        "points": n,
        "hasse_interval": [lo, hi],
        "hasse_ok": in_hasse_interval(curve, n),
        "subgroup_orders": orders,
    }, EXIT_OK


def _subgroup_json(sub: Subgroup) -> dict:
    smallest = next((P for P in sorted(sub.elements, key=Point.key) if not P.is_infinity), None)
    return {
        "order": sub.order,
        "generator": sub.generator.to_json(),
        "smallest_element": smallest.to_json() if smallest else "infinity",
    }


def cmd_find_subgroups(args, cap):
    curve = load_curve(args)
    subs = find_subgroups(curve, _positive("order", args.order), cap)
    return {"curve": curve.to_json(), "order": args.order,
            "subgroups": [_subgroup_json(s) for s in subs]}, EXIT_OK


def cmd_extract(args, cap):
    curve = load_curve(args)
    name = args.extractor or extractor_for(curve.field, two_source=args.Q is not None)
    P = _point(curve, args.P)
    Q = _point(curve, args.Q) if args.Q is not None else P
    if name in ("ext1", "ext2") and args.Q is None:
        raise UsageError(f"{name} needs --Q")
    out = extract(name, P, Q, args.k)
    res = {"extractor": name, "k": args.k, "P": P.to_json(), "output": out.to_json()}
    if name in ("ext1", "ext2"):
        res["Q"] = Q.to_json()
    return res, EXIT_OK


def cmd_audit(args, cap):
    curve = load_curve(args)
    name = args.extractor or extractor_for(curve.field)
    from .extractors import check_k
    check_k(curve.field, args.k)
    sub1, sub2 = _subgroups(curve, args, cap)
    if name in ("L_k", "D_k"):
        sub2 = None
    report = run_audit(curve, sub1, sub2, name, args.k, _positive("e", args.e))
    return report, EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_bounds(args, cap):
    mode = args.mode
    e = _positive("e", args.e)
    res = {"mode": mode, "e": e}
    bounds = []
    if mode == "ext1":
        m, l, n = (_positive(x, getattr(args, x)) for x in ("m", "l", "n"))
        kmax = kmax_ext1(m, l, n, e)
        res["formula"] = "k <= m + l - (n + 2e + log2 n + 1)"
        if None not in (args.p, args.k, args.r, args.t):
            bounds.append(bound_ext1(args.p, args.k, args.r, args.t))
    elif mode == "ext2":
        l, s, m, n = (_positive(x, getattr(args, x)) for x in ("l", "s", "m", "n"))
        kmax = kmax_ext2(l, s, m, n, e)
        res["formula"] = "k <= (l + s - 2e - mn) / m"
        if None not in (args.p, args.k, args.r, args.t):
            bounds.append(bound_ext2(args.p, n, args.k, args.r, args.t))
    elif mode == "L_k":
        l, n = (_positive(x, getattr(args, x)) for x in ("l", "n"))
        kmax = kmax_L_k(l, n, e)
        res["formula"] = "k <= 2l - (n + 2e + log2 n + 6)"
        if None not in (args.p, args.k):
            bounds.append(bound_L_k(args.p, args.k, l))
    else:
        t, m, n = (_positive(x, getattr(args, x)) for x in ("t", "m", "n"))
        kmax = kmax_D_k(t, m, n, e)
        res["formula"] = "k <= (2t - 2e - nm - 4) / m"
        if None not in (args.p, args.k, args.order):
            bounds.append(bound_D_k(args.p, n, args.k, args.order))
            bounds.append(col_bound_D_k(args.p, n, args.k, args.order))
    res["kmax"] = kmax
    res["verdict"] = "feasible" if kmax >= 1 else "infeasible"
    if args.k is not None:
        res["k"] = args.k
        res["k_ok"] = args.k <= kmax
    res["bounds"] = [b.to_json() for b in bounds]
    return res, EXIT_OK


def cmd_char_sums(args, cap):
    curve = load_curve(args)
    field = curve.field
    res = {"curve": curve.to_json()}
    if field.order <= cap:
        base = [field(1)]
        cases = {
            "zero": [field.zero],
            "prime_subfield": additive_span(field, base),
            "whole_field": list(field.elements()),
        }
        res["additive_subgroups"] = {
            name: {"size": len(V), "value": (r := subgroup_char_sum(field, V, cap)).value,
                   "bound": r.bound, "holds": r.holds}
            for name, V in cases.items()
        }
    if args.gen1 is not None or args.order1 is not None:
        sub1, sub2 = _subgroups(curve, args, cap)
        sums = all_bilinear_sums(sub1, sub2)
        rt = sub1.order * sub2.order
        res["bilinear"] = {
            "r": sub1.order,
            "t": sub2.order,
            "characters": len(sums),
            "max_abs": max(s.magnitude for s in sums),
            "max_ratio": max(s.ratio for s in sums),
            "all_within_rt": all(s.magnitude <= rt + 1e-6 for s in sums),
            "sums": [s.to_json() for s in sums] if args.verbose else [],
        }
    return res, EXIT_OK


def _secret(rng, given, order):
    return given if given is not None else rng.randrange(1, order)


def cmd_dh_demo(args, cap):
    curve = load_curve(args)
    sub1, sub2 = _subgroups(curve, args, cap, need_second=False)
    if sub1.order < 2:
        raise UsageError("the exchange needs a subgroup of order >= 2")
    rng = random.Random(args.seed)
    a, b = _secret(rng, args.secret_a, sub1.order), _secret(rng, args.secret_b, sub1.order)
    second = None
    if args.mode == "two_source":
        s2 = sub2 or sub1
        second = (s2.generator, s2.order, _secret(rng, args.secret_a2, s2.order), _secret(rng, args.secret_b2, s2.order))
    session = dh_derive(curve, sub1.generator, sub1.order, a, b, args.k, args.mode, second)
    out = dict(session.transcript)
    out["seed"] = args.seed
    return out, EXIT_OK


def cmd_prng(args, cap):
    curve = load_curve(args)
    sub1, sub2 = _subgroups(curve, args, cap)
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    state = PrngState(sub1, sub2, args.s0, args.t0, args.k)
    outs, final = prng_stream(state, args.count)
    bits = "".join(output_bits(o, curve.field.p) for o in outs)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(pack_bits(bits))
    return {
        "label": DEMO_LABEL,
        "extractor": extractor_for(curve.field),
        "k": args.k,
        "count": len(outs),
        "outputs": [o.to_json() for o in outs],
        "bits": bits,
        "skipped": final.skipped,
        "final_state": {"s": final.s, "t": final.t, "step": final.step},
    }, EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _global_flags(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("json", "text"), default=d("json"))
    parser.add_argument("--cap", type=int, default=d(None),
                        help="enumeration cap (default: $ECX_CAP or 10^6)")
    parser.add_argument("--audit-mode", choices=("on", "off"), default=d("on"),
                        help="re-check every group-law result against the curve equation")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ecx", description="Two-source elliptic-curve extractors and exact audits.")
    parser.add_argument("--version", action="version", version=f"ecx {__version__}")
    _global_flags(parser, suppress=False)

    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)

    curve_opts = argparse.ArgumentParser(add_help=False)
    g = curve_opts.add_argument_group("curve")
    g.add_argument("--curve", help="curve JSON file (wins over inline flags)")
    g.add_argument("--p", type=int)
    g.add_argument("--modulus", help="extension modulus, little-endian, monic, e.g. 1,0,1")
    g.add_argument("--a", help="coefficient a (int, or c0,c1,... over an extension)")
    g.add_argument("--b", help="coefficient b")

    sub_opts = argparse.ArgumentParser(add_help=False)
    s = sub_opts.add_argument_group("subgroups")
    s.add_argument("--gen1", help="generator of subgroup 1: 'x,y', JSON point or 'infinity'")
    s.add_argument("--gen2", help="generator of subgroup 2 (default: subgroup 1)")
    s.add_argument("--order1", type=int, help="pick subgroup 1 by order")
    s.add_argument("--order2", type=int, help="pick subgroup 2 by order")
    s.add_argument("--index1", type=int, default=0)
    s.add_argument("--index2", type=int, default=0)

    sp = parser.add_subparsers(dest="command", required=True)

    p = sp.add_parser("curve-info", parents=[common, curve_opts], help="point count and subgroup structure")
    p.set_defaults(func=cmd_curve_info)

    p = sp.add_parser("find-subgroups", parents=[common, curve_opts], help="cyclic subgroups of a given order")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_find_subgroups)

    p = sp.add_parser("extract", parents=[common, curve_opts], help="apply an extractor to points")
    p.add_argument("--extractor", choices=EXTRACTORS)
    p.add_argument("--P", required=True)
    p.add_argument("--Q")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_extract)

    p = sp.add_parser("audit", parents=[common, curve_opts, sub_opts], help="exact distribution audit")
    p.add_argument("--extractor", choices=EXTRACTORS)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--e", type=int, default=1, help="security parameter for the k_max verdict")
    p.set_defaults(func=cmd_audit)

    p = sp.add_parser("bounds", parents=[common], help="bound values and k_max")
    p.add_argument("--mode", choices=("ext1", "ext2", "L_k", "D_k"), required=True)
    for name in ("m", "l", "n", "s", "t", "e", "p", "k", "r", "order"):
        p.add_argument(f"--{name}", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sp.add_parser("char-sums", parents=[common, curve_opts, sub_opts], help="character-sum measurements")
    p.add_argument("--verbose", action="store_true", help="list every bilinear sum")
    p.set_defaults(func=cmd_char_sums)

    p = sp.add_parser("dh-demo", parents=[common, curve_opts, sub_opts], help="extractor-based key agreement")
    p.add_argument("--mode", choices=("single", "two_source"), default="single")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    for name in ("a", "b", "a2", "b2"):
        p.add_argument(f"--secret-{name}", dest=f"secret_{name}", type=int)
    p.set_defaults(func=cmd_dh_demo)

    p = sp.add_parser("prng", parents=[common, curve_opts, sub_opts], help=f"counter-driven stream ({DEMO_LABEL})")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--count", type=int, default=16)
    p.add_argument("--s0", type=int, default=1)
    p.add_argument("--t0", type=int, default=1)
    p.add_argument("--out", help="write packed bits (MSB first) to this file")
    p.set_defaults(func=cmd_prng)
    return parser


def _text(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, dict) and v or isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            body = _text(v, indent + 1) if isinstance(v, (dict, list)) else "  " * (indent + 1) + _scalar(v)
            lines.append(f"{pad}- " + body.lstrip())
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return "\n".join(lines)


def _scalar(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v)
    return str(v)


def emit(result, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        obj = result.to_json() if hasattr(result, "to_json") else result
        stream.write(json.dumps(obj, indent=2) + "\n")
    else:
        stream.write((result.to_text() if hasattr(result, "to_text") else _text(result)) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cap = args.cap if args.cap is not None else enumeration_cap()
        if cap <= 0:
            raise UsageError("--cap must be positive")
        result, code = args.func(args, cap)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except DerivationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROTOCOL
    except (EcxError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(result, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
