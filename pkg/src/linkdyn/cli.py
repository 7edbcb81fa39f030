"""Command-line front end: stable JSON on stdout, diagnostics on stderr.

Exit codes: 0 success (exists / realizable / checks pass), 3 negative
decision, 2 error.  Output is deterministic for identical inputs; timing
goes to stderr so stdout stays byte-identical across runs.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import braiding, cycles, diagram, exist, realize
from .errors import LinkdynError

SCHEMA = "linkdyn/1"

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_NEGATIVE = 3


def _emit(command: str, status: str, payload) -> None:
    report = {"schema": SCHEMA, "command": command, "status": status, "payload": payload}
    json.dump(report, sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")


def _load(path: str) -> diagram.LinkableDynkinDiagram:
    with open(path, "r", encoding="utf-8") as fh:
        return diagram.parse_diagram(fh.read())


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("LINKDYN_BUDGET")
    return int(env) if env else cycles.DEFAULT_CYCLE_BUDGET


def cmd_parse(args) -> int:
    d = _load(args.file)
    comps = [{"vertices": list(c), "type": t.name} for c, t in diagram.classify_components(d)]
    payload = {
        "theta": d.vertex_count,
        "components": comps,
        "links": sorted(sorted(l) for l in d.dotted_links),
        "link_connected": d.is_link_connected(),
        "cartan": [list(r) for r in diagram.to_cartan(d)],
        "canonical": diagram.print_diagram(d),
    }
    if args.dot:
        payload["dot"] = diagram.to_dot(d)
    _emit("parse", "ok", payload)
    return EXIT_OK


def cmd_cycles(args) -> int:
    d = _load(args.file)
    out = [cycles.cycle_report(d, c, args.mode)
           for c in cycles.enumerate_cycles(d, budget=_budget(args))]
    payload = {"mode": args.mode, "cycles": out,
               "genus_gcd": cycles.genus_gcd(d, args.mode, budget=_budget(args))}
    _emit("cycles", "ok", payload)
    return EXIT_OK


def cmd_decide(args) -> int:
    d = _load(args.file)
    if args.mode == "finite":
        dec = exist.decide_finite(d, budget=_budget(args))
    elif args.mode == "affine":
        dec = exist.decide_affine(d, budget=_budget(args))
    else:
        dec = exist.decide_nonroot(d, budget=_budget(args))
    _emit("decide", "exists" if dec.exists else "not-exists", dec.as_json())
    return EXIT_OK if dec.exists else EXIT_NEGATIVE


def cmd_construct(args) -> int:
    d = _load(args.file)
    if args.mode == "finite":
        dec = exist.decide_finite(d, budget=_budget(args))
        builder = braiding.construct_finite
    else:
        dec = exist.decide_affine(d, budget=_budget(args))
        builder = braiding.construct_affine
    if not dec.exists:
        _emit("construct", "not-exists", dec.as_json())
        return EXIT_NEGATIVE
    b = builder(d, dec, seed_vertex=args.seed_vertex, order=args.order,
                all_z_one=args.all_z_one)
    # excluded-case matrices are generic-order: only Definition-level
    # conditions apply, not the homogeneous prime-order requirement
    verify_mode = "finite" if dec.excluded_case else args.mode
    violations = braiding.verify(d, b, verify_mode)
    payload = {"decision": dec.as_json(), "matrix": b.as_json(),
               "verified": not violations}
    _emit("construct", "ok", payload)
    return EXIT_OK


def cmd_verify(args) -> int:
    d = _load(args.file)
    with open(args.matrix, "r", encoding="utf-8") as fh:
        b = braiding.BraidingMatrix.from_json(json.load(fh))
    violations = braiding.verify(d, b, args.mode)
    payload = {
        "violations": [{"kind": v.kind, "where": list(v.where), "detail": v.detail}
                       for v in violations],
        "ok": not violations,
    }
    _emit("verify", "ok" if not violations else "violations", payload)
    return EXIT_OK if not violations else EXIT_NEGATIVE


def cmd_realize(args) -> int:
    d = _load(args.file)
    r = realize.realize(d, args.prime, t=args.t)
    if r is None:
        _emit("realize", "not-realizable",
              {"realizable": False, "p": args.prime,
               "reason": "discriminant is a quadratic non-residue"})
        return EXIT_NEGATIVE
    violations = realize.verify_realization(r.cartan, r)
    payload = r.as_json()
    payload["realizable"] = True
    payload["verified"] = not violations
    _emit("realize", "ok", payload)
    return EXIT_OK


def cmd_dim(args) -> int:
    d = _load(args.file)
    n_map = args.N if args.N is not None else 0
    dim = diagram.hopf_dimension(d, args.group_order, n_map)
    _emit("dim", "ok", {"group_order": args.group_order, "N": n_map, "dimension": dim})
    return EXIT_OK


def cmd_selflink(args) -> int:
    from .ncalg import (
        check_local_confluence,
        enumerate_basis,
        is_central,
        is_skew_primitive,
    )
    from .ncalg.presentations import (
        a2_selflink,
        a2_v_element,
        b2_selflink,
        b2_v_element,
        b2_w_element,
        cyclic_group_spec,
        free_group_spec,
        g2_selflink,
        g2_Z_element,
    )

    assignments = {}
    for item in args.set or []:
        key, _, val = item.partition("=")
        assignments[key.strip()] = int(val)

    kind = args.type
    spec = {"A2": free_group_spec(((1, 1), (1, 1))),
            "B2": free_group_spec(((2, 1), (2, 1))),
            "G2": free_group_spec(((1, 3), (1, 3)))}[kind]
    builders = {"A2": a2_selflink, "B2": b2_selflink, "G2": g2_selflink}

    def build(variant, **kw):
        # specialize the whole presentation: the rules carry the parameters
        P = builders[kind](variant, **kw)
        return P.specialize(assignments) if assignments else P

    payload = {"type": kind, "check": args.check, "parameters": assignments}

    def maybe_sub(e):
        return e.substitute(assignments) if assignments else e

    if args.check == "confluence":
        variant = "commutation" if kind == "G2" else "full"
        P = build(variant)
        fails = check_local_confluence(P)
        payload["variant"] = variant
        payload["ambiguities_unresolved"] = len(fails)
        payload["ok"] = not fails
    elif args.check == "primitive":
        if kind == "A2":
            P = build("ambient")
            items = [("v", a2_v_element(P, spec), spec.vec({1: 3, 2: 3}))]
        elif kind == "B2":
            P = build("ambient")
            items = [("v", b2_v_element(P, spec), spec.vec({1: 5, 2: 5})),
                     ("w", b2_w_element(P, spec), spec.vec({1: 5, 2: 10}))]
        else:
            P = build("ambient")
            items = [("Z", g2_Z_element(P, spec), spec.vec({1: 7, 2: 7}))]
        results = {}
        for name, el, grp in items:
            ok, resid = is_skew_primitive(maybe_sub(el), grp, P)
            results[name] = {"skew_primitive": ok, "residual_terms": len(resid.terms)}
        payload["results"] = results
        payload["ok"] = all(r["skew_primitive"] for r in results.values())
    elif args.check == "central":
        if kind == "A2":
            P = build("ambient")
            items = [("v", a2_v_element(P, spec))]
        elif kind == "B2":
            P = build("ambient")
            items = [("v", b2_v_element(P, spec)), ("w", b2_w_element(P, spec))]
        else:
            raise LinkdynError("central certificates are shipped for A2 and B2 only")
        results = {}
        for name, el in items:
            ok, wit = is_central(maybe_sub(el), P)
            results[name] = {"central": ok, "witness": wit}
        payload["results"] = results
        payload["ok"] = all(r["central"] for r in results.values())
    elif args.check == "basis":
        if kind == "A2":
            P = build("full", spec=cyclic_group_spec(9, (1, 1)))
            count, _ = enumerate_basis(P, {"z": 3, "x1": 3, "x2": 3})
            payload.update({"group": "Z/9", "count": count})
        elif kind == "B2":
            P = build("full", spec=cyclic_group_spec(20, (2, 1)))
            count, _ = enumerate_basis(P, {"u": 5, "z": 5, "x1": 5, "x2": 5})
            payload.update({"group": "Z/20", "count": count})
        else:
            raise LinkdynError("the G2 root-vector power relations are not shipped; "
                               "no basis certificate")
        payload["ok"] = True
    else:
        raise LinkdynError(f"unknown check {args.check!r}")
    _emit("selflink", "ok" if payload["ok"] else "failed", payload)
    return EXIT_OK if payload["ok"] else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="linkdyn",
                                 description="linkable Dynkin diagram toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("parse", help="parse and classify a diagram file")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", help="include DOT export")
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("cycles", help="enumerate cycles and their metrics")
    p.add_argument("file")
    p.add_argument("--mode", choices=("finite", "affine"), default="finite")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(fn=cmd_cycles)

    p = sub.add_parser("decide", help="decide existence of a linkable braiding matrix")
    p.add_argument("file")
    p.add_argument("--mode", choices=("finite", "affine", "nonroot"), default="finite")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(fn=cmd_decide)

    p = sub.add_parser("construct", help="construct a braiding matrix for an accepted diagram")
    p.add_argument("file")
    p.add_argument("--mode", choices=("finite", "affine"), default="finite")
    p.add_argument("--order", type=int, default=None, help="diagonal order d / prime p")
    p.add_argument("--seed-vertex", type=int, default=1)
    p.add_argument("--all-z-one", action="store_true",
                   help="concretize free symbols z := 1")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("verify", help="verify a candidate matrix against a diagram")
    p.add_argument("file")
    p.add_argument("matrix", help="JSON matrix file as emitted by construct")
    p.add_argument("--mode", choices=("finite", "affine", "nonroot"), default="finite")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("realize", help="realize a small diagram over (Z/p)^2")
    p.add_argument("file")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--t", type=int, default=0, help="free character exponent chi_1(g_2)")
    p.set_defaults(fn=cmd_realize)

    p = sub.add_parser("dim", help="Hopf algebra dimension group_order * prod N^|Phi+|")
    p.add_argument("file")
    p.add_argument("--group-order", type=int, required=True)
    p.add_argument("--N", type=int, default=None, required=True,
                   help="common diagonal order N per component")
    p.set_defaults(fn=cmd_dim)

    p = sub.add_parser("selflink", help="self-linking certificates (A2/B2/G2)")
    p.add_argument("--type", choices=("A2", "B2", "G2"), required=True)
    p.add_argument("--check", choices=("confluence", "primitive", "central", "basis"),
                   required=True)
    p.add_argument("--set", action="append", metavar="KEY=VAL",
                   help="specialize a parameter, e.g. --set lam12=1")
    p.set_defaults(fn=cmd_selflink)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.monotonic()
    try:
        code = args.fn(args)
    except LinkdynError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        elapsed = time.monotonic() - start
        print(f"[linkdyn] {elapsed:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
