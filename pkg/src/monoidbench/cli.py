"""Verb-style command line front end.

Reports are deterministic JSON (sorted keys, fixed layout); exit codes:
0 success, 1 checked property false, 2 invalid input, 3 resource bound.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import jsonio
from .asets import enumerate_asubsets, sset_proper_space, sset_space
from .closures import (
    ClosureOp,
    apply_closure_report,
    fixed_point_space,
    localization_check,
    persistence_check,
    saturation_closure,
    standard_closures,
)
from .errors import BenchError, RelationAxiomError, ResourceBound
from .ideals import (
    Ideal,
    bracket_power,
    colon,
    ideal_power,
    minimal_generators,
    mspec,
    radical,
)
from .monoids import TableMonoid
from .spv import (
    ITopology,
    basic_open_contains,
    cont_space,
    continuous_by_open_preimage,
    is_continuous,
    is_open_in_Itop,
    is_top_nilpotent,
    in_spv_A_I,
    metric_d,
    retract,
    spv_enumerate,
)
from .topology import (
    export_dot,
    hasse_edges,
    hochster_check,
    ultrafilter_criterion,
)
from .valuations import (
    are_equivalent,
    check_relation_axioms,
    equivalence_witness,
    relation_of,
    valuation_from_relation,
)

CLOSURE_BY_NAME = {cl.name: cl for cl in standard_closures()}


def _load(arg: str):
    text = arg
    if not arg.lstrip().startswith(("{", "[", '"')):
        text = Path(arg).read_text()
    return json.loads(text)


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")


def _ok_exit(ok: bool) -> int:
    return 0 if ok else 1


def _closure_from_args(args) -> ClosureOp:
    name = args.op
    if name not in CLOSURE_BY_NAME:
        raise BenchError(f"unknown closure operation {name!r}")
    cl = CLOSURE_BY_NAME[name]
    if name == "saturation" and getattr(args, "aux_ideal", None):
        A = jsonio.parse_monoid(_load(args.monoid))
        cl = saturation_closure(jsonio.parse_ideal(A, _load(args.aux_ideal)))
    return cl


def cmd_mspec(args) -> int:
    A = jsonio.parse_monoid(_load(args.monoid))
    primes, space, labels = mspec(A)
    report = {
        "verb": "mspec",
        "count": len(primes),
        "primes": [jsonio.ideal_to_json(p) for p in primes],
        "labels": labels,
        "poset_covers": [[x, y] for x, y in hasse_edges(space)],
    }
    if args.dot:
        sys.stdout.write(export_dot(space, "mspec"))
        return 0
    _emit(report)
    return 0


def cmd_ideal(args) -> int:
    A = jsonio.parse_monoid(_load(args.monoid))
    I = jsonio.parse_ideal(A, _load(args.ideal))
    if args.action == "radical":
        out = radical(I)
        _emit({"verb": "ideal.radical", "result": jsonio.ideal_to_json(out)})
        return 0
    if args.action == "power":
        out = ideal_power(I, args.n)
        _emit({"verb": "ideal.power", "n": args.n, "result": jsonio.ideal_to_json(out)})
        return 0
    if args.action == "bracket":
        out = bracket_power(I, args.n)
        _emit({"verb": "ideal.bracket", "n": args.n, "result": jsonio.ideal_to_json(out)})
        return 0
    if args.action == "colon":
        J = jsonio.parse_ideal(A, _load(args.ideal2))
        out = colon(I, J)
        _emit({"verb": "ideal.colon", "result": jsonio.ideal_to_json(out)})
        return 0
    x = jsonio.parse_element(A, _load_element(args.element))
    ok = I.contains(x)
    _emit({"verb": "ideal.member", "element": jsonio.element_to_json(A, x), "member": ok})
    return _ok_exit(ok)


def _load_element(arg: str):
    stripped = arg.lstrip()
    if stripped.startswith(("{", "[", '"')):
        return json.loads(arg)
    if stripped == "bottom":
        return "bottom"
    try:
        return json.loads(arg)
    except json.JSONDecodeError:
        return arg


def cmd_closure(args) -> int:
    cl = _closure_from_args(args)
    if args.action == "apply":
        A = jsonio.parse_monoid(_load(args.monoid))
        I = jsonio.parse_ideal(A, _load(args.ideal))
        out, cert = apply_closure_report(cl, I)
        _emit(
            {
                "verb": "closure.apply",
                "op": cl.label(),
                "input": jsonio.ideal_to_json(I),
                "closure": jsonio.ideal_to_json(out),
                "certificates": cert,
            }
        )
        return 0
    if args.action == "persistence":
        f = jsonio.parse_hom(_load(args.hom))
        I = jsonio.parse_ideal(f.source, _load(args.ideal))
        ok, witness = persistence_check(cl, f, I)
        report = {
            "verb": "closure.persistence",
            "op": cl.label(),
            "holds": ok,
        }
        if witness is not None:
            report["witness"] = witness if isinstance(witness, str) else list(witness)
        _emit(report)
        return _ok_exit(ok)
    if args.action == "localization":
        A = jsonio.parse_monoid(_load(args.monoid))
        I = jsonio.parse_ideal(A, _load(args.ideal))
        S = json.loads(args.set) if args.set else []
        if isinstance(A, TableMonoid):
            S = [jsonio.parse_element(A, s) for s in S]
        ok, detail = localization_check(cl, A, S, I)
        _emit(
            {
                "verb": "closure.localization",
                "op": cl.label(),
                "commutes": ok,
                "lhs": jsonio.ideal_to_json(detail["lhs"]),
                "rhs": jsonio.ideal_to_json(detail["rhs"]),
            }
        )
        return _ok_exit(ok)
    # fixed-points
    A = jsonio.parse_monoid(_load(args.monoid))
    if args.aset:
        M = jsonio.parse_aset(A, _load(args.aset))
    else:
        from .asets import regular_aset

        M = regular_aset(A)
    space, flag, fixed = fixed_point_space(cl, M)
    _emit(
        {
            "verb": "closure.fixed-points",
            "op": cl.label(),
            "fixed_points": list(fixed),
            "patch_closed": flag,
            "points": list(space.points),
        }
    )
    return _ok_exit(flag)


def cmd_sset(args) -> int:
    A = jsonio.parse_monoid(_load(args.monoid))
    if args.aset:
        M = jsonio.parse_aset(A, _load(args.aset))
    else:
        from .asets import regular_aset

        M = regular_aset(A)
    if args.action == "enumerate":
        subs = enumerate_asubsets(M)
        _emit(
            {
                "verb": "sset.enumerate",
                "count": len(subs),
                "asubsets": [sorted(s) for s in subs],
            }
        )
        return 0
    space, _ = sset_proper_space(M) if args.proper else sset_space(M)
    ok, witness = ultrafilter_criterion(space)
    _emit(
        {
            "verb": "sset.space",
            "proper": bool(args.proper),
            "space": jsonio.space_to_json(space),
            "ultrafilter_criterion": ok,
            "t0": space.is_t0(),
        }
    )
    return _ok_exit(ok)


def cmd_check_spectral(args) -> int:
    if args.space:
        space = jsonio.parse_space(_load(args.space))
        if hasattr(space, "materialize"):
            sub = space
            space = space.materialize()
        else:
            sub = None
        rep = hochster_check(space)
        report = {
            "verb": "check-spectral",
            "t0": rep.t0,
            "quasi_compact": rep.quasi_compact,
            "qc_basis_closed_under_intersection": rep.qc_basis_closed_under_intersection,
            "unique_generic_points": rep.unique_generic_points,
            "spectral": rep.spectral,
        }
        if sub is not None:
            ok, _ = ultrafilter_criterion(sub)
            report["ultrafilter_criterion"] = ok
        _emit(report)
        return _ok_exit(rep.spectral)
    A = jsonio.parse_monoid(_load(args.monoid))
    _, space, _ = mspec(A)
    rep = hochster_check(space)
    _emit(
        {
            "verb": "check-spectral",
            "object": "mspec",
            "t0": rep.t0,
            "quasi_compact": rep.quasi_compact,
            "qc_basis_closed_under_intersection": rep.qc_basis_closed_under_intersection,
            "unique_generic_points": rep.unique_generic_points,
            "spectral": rep.spectral,
        }
    )
    return _ok_exit(rep.spectral)


def cmd_spv(args) -> int:
    A = jsonio.parse_monoid(_load(args.monoid))
    if args.action == "enumerate":
        points, space, labels = spv_enumerate(A)
        _emit(
            {
                "verb": "spv.enumerate",
                "count": len(points),
                "points": [jsonio.valuation_to_json(v) for v in points],
                "labels": labels,
                "t0": space.is_t0(),
            }
        )
        return 0
    v = jsonio.parse_valuation(A, _load(args.valuation))
    if args.action == "retract":
        I = jsonio.parse_ideal(A, _load(args.ideal))
        rv = retract(v, I)
        _emit(
            {
                "verb": "spv.retract",
                "result": jsonio.valuation_to_json(rv),
                "fixed_point": are_equivalent(rv, v),
            }
        )
        return 0
    if args.action == "member":
        I = jsonio.parse_ideal(A, _load(args.ideal))
        ok = in_spv_A_I(v, I)
        _emit({"verb": "spv.member", "in_spv_A_I": ok})
        return _ok_exit(ok)
    w = jsonio.parse_valuation(A, _load(args.valuation2))
    witness = equivalence_witness(v, w)
    ok = witness is None
    report = {"verb": "spv.equiv", "equivalent": ok}
    if witness is not None:
        report["witness"] = [
            jsonio.element_to_json(A, witness[0]),
            jsonio.element_to_json(A, witness[1]),
        ]
    _emit(report)
    return _ok_exit(ok)


def cmd_cont(args) -> int:
    A = jsonio.parse_monoid(_load(args.monoid))
    I = jsonio.parse_ideal(A, _load(args.ideal))
    if args.action == "check":
        v = jsonio.parse_valuation(A, _load(args.valuation))
        ok = is_continuous(v, I)
        report = {"verb": "cont.check", "continuous": ok}
        if isinstance(A, TableMonoid):
            report["open_preimage_agrees"] = continuous_by_open_preimage(v, I) == ok
        _emit(report)
        return _ok_exit(ok)
    points, space, labels, verification = cont_space(A, I)
    ok, _ = ultrafilter_criterion(space)
    _emit(
        {
            "verb": "cont.space",
            "count": len(points),
            "labels": labels,
            "ultrafilter_criterion": ok,
            "verification": verification,
        }
    )
    return 0


def cmd_itop(args) -> int:
    A = jsonio.parse_monoid(_load(args.monoid))
    I = jsonio.parse_ideal(A, _load(args.ideal))
    T = ITopology(A, I)
    if args.action == "open":
        U = [jsonio.parse_element(A, u) for u in json.loads(args.set)]
        ok = is_open_in_Itop(T, U)
        _emit({"verb": "itop.open", "open": ok})
        return _ok_exit(ok)
    if args.action == "metric":
        a = jsonio.parse_element(A, _load_element(args.a))
        b = jsonio.parse_element(A, _load_element(args.b))
        d = metric_d(T, a, b)
        _emit({"verb": "itop.metric", "distance": str(d)})
        return 0
    x = jsonio.parse_element(A, _load_element(args.element))
    ok = is_top_nilpotent(T, x)
    _emit({"verb": "itop.nilpotent", "topologically_nilpotent": ok})
    return _ok_exit(ok)


def cmd_relation(args) -> int:
    A = jsonio.parse_monoid(_load(args.monoid))
    rel = jsonio.parse_relation(A, _load(args.relation))
    if args.action == "check":
        violations = check_relation_axioms(rel)
        _emit(
            {
                "verb": "relation.check",
                "valid": not violations,
                "violations": [
                    {"axiom": ax, "witness": list(wit)} for ax, wit in violations[:8]
                ],
            }
        )
        return _ok_exit(not violations)
    try:
        v = valuation_from_relation(A, rel)
    except RelationAxiomError as e:
        _emit(
            {
                "verb": "relation.reconstruct",
                "valid": False,
                "axiom": e.axiom,
                "witness": list(e.witness),
            }
        )
        return 1
    round_trip = relation_of(v).matrix == rel.matrix
    _emit(
        {
            "verb": "relation.reconstruct",
            "valid": True,
            "valuation": jsonio.valuation_to_json(v),
            "round_trip": round_trip,
        }
    )
    return 0


def cmd_export_dot(args) -> int:
    if args.space:
        space = jsonio.parse_space(_load(args.space))
        if hasattr(space, "materialize"):
            space = space.materialize()
        sys.stdout.write(export_dot(space))
        return 0
    A = jsonio.parse_monoid(_load(args.monoid))
    _, space, _ = mspec(A)
    sys.stdout.write(export_dot(space, "mspec"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monoidbench", allow_abbrev=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound-degree", type=int, default=8)
    p.add_argument("--bound-n", type=int, default=12)
    sub = p.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("mspec")
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--dot", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_mspec)

    sp = sub.add_parser("ideal")
    sp.add_argument("action", choices=["radical", "power", "bracket", "colon", "member"])
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--ideal2")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--element")
    sp.set_defaults(func=cmd_ideal)

    sp = sub.add_parser("closure")
    sp.add_argument("action", choices=["apply", "persistence", "localization", "fixed-points"])
    sp.add_argument("--op", required=True)
    sp.add_argument("--monoid")
    sp.add_argument("--ideal")
    sp.add_argument("--hom")
    sp.add_argument("--aset")
    sp.add_argument("--set")
    sp.add_argument("--aux-ideal", dest="aux_ideal")
    sp.set_defaults(func=cmd_closure)

    sp = sub.add_parser("sset")
    sp.add_argument("action", choices=["enumerate", "space"])
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--aset")
    sp.add_argument("--proper", action="store_true")
    sp.set_defaults(func=cmd_sset)

    sp = sub.add_parser("check-spectral")
    sp.add_argument("--monoid")
    sp.add_argument("--space")
    sp.set_defaults(func=cmd_check_spectral)

    sp = sub.add_parser("spv")
    sp.add_argument("action", choices=["enumerate", "retract", "member", "equiv"])
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--valuation")
    sp.add_argument("--valuation2")
    sp.add_argument("--ideal")
    sp.set_defaults(func=cmd_spv)

    sp = sub.add_parser("cont")
    sp.add_argument("action", choices=["check", "space"])
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--valuation")
    sp.set_defaults(func=cmd_cont)

    sp = sub.add_parser("itop")
    sp.add_argument("action", choices=["open", "metric", "nilpotent"])
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--set")
    sp.add_argument("--elem-a", dest="a")
    sp.add_argument("--elem-b", dest="b")
    sp.add_argument("--element")
    sp.set_defaults(func=cmd_itop)

    sp = sub.add_parser("relation")
    sp.add_argument("action", choices=["check", "reconstruct"])
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--relation", required=True)
    sp.set_defaults(func=cmd_relation)

    sp = sub.add_parser("export-dot")
    sp.add_argument("--monoid")
    sp.add_argument("--space")
    sp.set_defaults(func=cmd_export_dot)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except json.JSONDecodeError as e:
        _emit({"error": "malformed JSON", "line": e.lineno, "column": e.colno})
        return 2
    except ResourceBound as e:
        _emit({"error": "resource bound exceeded", "detail": str(e)})
        return 3
    except (BenchError, FileNotFoundError, OSError) as e:
        _emit({"error": type(e).__name__, "detail": str(e)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
