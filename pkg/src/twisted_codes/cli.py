"""Command-line entry point: `twisted-codes <subcommand> [--system FILE | --builtin NAME]`.

Exit codes: 0 ok, 1 a checked statement failed, 2 bad input, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import re
import sys

import numpy as np

from . import groups as gr
from .abelianize import abelian_reduce
from .catalog import by_name, field as make_field
from .checkable import code_checkable_scan
from .codes import LinearCode, bound_report, extremal_decompose, search_codes
from .crossed import CrossedSystem, validate_crossed_system
from .errors import BudgetExceeded, InvalidCrossedSystem, NotKLinear, ReductionStalled, TwistedCodesError
from .hatgroup import HatGroup, hat_axioms_report, hat_transfer_report, psi_multiplicativity_violations
from .ring import TwistedRing

log = logging.getLogger("twisted_codes")

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def load_system(args, check: bool = True) -> CrossedSystem:
    path = args.system or getattr(args, "path", None)
    if path:
        try:
            return CrossedSystem.load(path, check=check)
        except FileNotFoundError as exc:
            raise InputError(str(exc)) from exc
    if args.builtin:
        try:
            return by_name(args.builtin).system
        except KeyError:
            pass
        m = re.fullmatch(r"F(\d+)\[(\w+)\]", args.builtin)
        if m:
            return CrossedSystem(make_field(int(m.group(1))), gr.builtin(m.group(2)))
        raise InputError(f"unknown builtin system {args.builtin!r}")
    raise InputError("give --system FILE or --builtin NAME")


def _code_row(C: LinearCode, with_extremal: bool = True) -> dict:
    P = C.params
    row = P.to_json()
    row["generator"] = C.generator.tolist() if C.generator is not None else None
    if with_extremal and C.k_linear and P.d is not None:
        row["extremal"] = P.d * P.k == P.n
        if row["extremal"]:
            w = extremal_decompose(C)
            row["witness"] = w.to_json()
    return row


# --- subcommands ----------------------------------------------------------------------

def cmd_validate(args) -> tuple[dict, int]:
    s = load_system(args, check=False)
    rep = validate_crossed_system(s)
    return {"system": s.label(), **rep.to_json()}, EXIT_OK if rep.valid else EXIT_INPUT


def cmd_ring_info(args) -> tuple[dict, int]:
    s = load_system(args)
    G, K = s.group, s.field
    return {
        "system": s.label(),
        "field": K.spec(),
        "group": G.name,
        "order": G.n,
        "dim_p": G.n * K.m,
        "sigma_trivial": s.is_twisted_only,
        "alpha_trivial": s.alpha.is_trivial,
        "p_nilpotent": G.is_p_nilpotent(K.p)[0],
        "sylow_cyclic": G.has_cyclic_sylow(K.p),
    }, EXIT_OK


def cmd_hat_report(args) -> tuple[dict, int]:
    s = load_system(args)
    rep = hat_axioms_report(s)
    hat = HatGroup(s)
    psi_bad = psi_multiplicativity_violations(hat)
    tr = hat_transfer_report(s, hat=hat)
    ok = rep.ok and not psi_bad and tr.p_nilpotency_agrees and tr.sylow_cyclicity_agrees
    return {"system": s.label(), "axioms": rep.to_json(), "psi_violations": len(psi_bad), "transfer": tr.to_json()}, EXIT_OK if ok else EXIT_VIOLATION


def cmd_ideals(args) -> tuple[dict, int]:
    s = load_system(args)
    R = TwistedRing(s)
    ideals = R.enumerate_ideals(args.side) if args.all else R.enumerate_principal_ideals(args.side, budget=args.budget)
    rows = []
    for I in ideals:
        row = {"dim_p": I.dim_p, "dim_K": I.dim_K, "k_linear": I.k_linear, "basis": I.to_json()["basis"]}
        if I.generator is not None:
            row["generator"] = I.generator.tolist()
        rows.append(row)
    return {"system": s.label(), "side": args.side, "count": len(rows), "ideals": rows}, EXIT_OK


def _codes(args, R: TwistedRing):
    if args.generator:
        v = R.elem([int(x) for x in args.generator.split(",")])
        return [LinearCode(R.principal_ideal(v, args.side), budget=args.budget)]
    return [LinearCode(I, budget=args.budget) for I in R.enumerate_principal_ideals(args.side) if I.dim_p]


def cmd_distance(args) -> tuple[dict, int]:
    s = load_system(args)
    R = TwistedRing(s)
    rows = [_code_row(C, with_extremal=False) for C in _codes(args, R)]
    return {"system": s.label(), "side": args.side, "codes": rows}, EXIT_OK


def cmd_bound(args) -> tuple[dict, int]:
    s = load_system(args)
    R = TwistedRing(s)
    rows, bad = [], 0
    if args.elements:
        vecs = R.all_vectors()[1:]
        if args.sample:
            rng = np.random.default_rng(args.seed)
            vecs = vecs[rng.choice(len(vecs), size=min(args.sample, len(vecs)), replace=False)]
        for v in vecs:
            rep = bound_report(R.elem_from_vec(v))
            bad += not (rep.holds and rep.rank_covers_s_rank)
            rows.append({"f": R.from_vec(v).tolist(), **rep.to_json()})
    if args.all_principal or args.generator or not args.elements:
        for C in _codes(args, R):
            try:
                rep = bound_report(C)
            except NotKLinear:
                rows.append({**C.params.to_json(), "k_linear": False, "holds": None})
                continue
            bad += not (rep.holds and rep.amgm_holds)
            rows.append({**_code_row(C), **rep.to_json()})
    return {"system": s.label(), "rows": rows, "violations": bad}, EXIT_VIOLATION if bad else EXIT_OK


def cmd_checkable(args) -> tuple[dict, int]:
    s = load_system(args)
    rep = code_checkable_scan(s, budget=args.budget, jobs=args.jobs)
    out = rep.to_json()
    bad = not rep.checkable_claim_holds or not rep.frobenius_agrees
    if args.verify:
        R = TwistedRing(s)
        rechecked = 0
        for row, I in zip(rep.ideals, R.enumerate_ideals("right")):
            if row.witness is not None:
                v = R.elem(row.witness)
                rechecked += 1
                bad |= R.annihilator(v, "right") != I
        out["rechecked_witnesses"] = rechecked
    return out, EXIT_VIOLATION if bad else EXIT_OK


def cmd_abelian(args) -> tuple[dict, int]:
    s = load_system(args)
    R = TwistedRing(s)
    rows, stalled = [], 0
    for I in R.enumerate_principal_ideals(args.side):
        k = I.dim_K
        if k is None or not 1 <= k <= 3:
            continue
        row = {"dim_K": k, "generator": I.generator.tolist() if I.generator is not None else None}
        try:
            red = abelian_reduce(I, budget=args.budget)
            row.update(red.to_json())
            if args.verify:
                row["verified"] = red.verify()
        except ReductionStalled as exc:
            stalled += 1
            row["stalled"] = str(exc)
        rows.append(row)
    return {"system": s.label(), "side": args.side, "rows": rows, "stalled": stalled}, EXIT_VIOLATION if stalled else EXIT_OK


def cmd_extremal(args) -> tuple[dict, int]:
    s = load_system(args)
    R = TwistedRing(s)
    rows = []
    for C in _codes(args, R):
        if not C.k_linear:
            continue
        P = C.params
        if P.d * P.k == P.n:
            rows.append(_code_row(C))
    return {"system": s.label(), "side": args.side, "extremal_codes": rows}, EXIT_OK


def cmd_search(args) -> tuple[dict, int]:
    s = load_system(args)
    target = tuple(int(x) for x in args.target.split(",")) if args.target else None
    hits, found = search_codes(TwistedRing(s), args.side, min_d=args.min_d, target=target, budget=args.budget)
    return {"system": s.label(), "codes": [h.to_json() for h in hits[: args.top]], "target": target, "target_found": found}, EXIT_OK


def cmd_catalog(args) -> tuple[dict, int]:
    from .suite import run_all

    results = run_all(skip_stretch=args.skip_stretch)
    for r in results:
        log.info(r.line())
    failed = [r.key for r in results if r.gating and not r.passed]
    return {"results": [r.to_json() for r in results], "failed": failed}, EXIT_VIOLATION if failed else EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "ring-info": cmd_ring_info,
    "hat-report": cmd_hat_report,
    "ideals": cmd_ideals,
    "distance": cmd_distance,
    "bound": cmd_bound,
    "checkable": cmd_checkable,
    "abelian": cmd_abelian,
    "extremal": cmd_extremal,
    "search": cmd_search,
    "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", help="crossed-system JSON file")
    common.add_argument("--builtin", help="catalog name such as 'F2[S3]' or 'F3^a[C2]'")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--budget", type=int, default=10**6)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--verify", action="store_true", help="recheck every witness in the report")
    common.add_argument("--side", choices=["left", "right"], default="right")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="twisted-codes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "validate":
            p.add_argument("path", nargs="?")
        if name == "ideals":
            p.add_argument("--all", action="store_true", help="close principal ideals under sums")
        if name in ("distance", "bound", "extremal"):
            p.add_argument("--generator", help="comma-separated field codes of one generator")
        if name == "bound":
            p.add_argument("--all-principal", action="store_true")
            p.add_argument("--elements", action="store_true", help="element form over every nonzero f")
            p.add_argument("--sample", type=int, default=0, help="random subset of elements (uses --seed)")
        if name == "search":
            p.add_argument("--min-d", type=int)
            p.add_argument("--target", help="n,k,d")
            p.add_argument("--top", type=int, default=20)
        if name == "catalog":
            p.add_argument("--skip-stretch", action="store_true")
    return parser


def _text(report: dict, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}: {len(v)} rows")
            for row in v:
                lines.append(pad + "  - " + ", ".join(f"{a}={b}" for a, b in row.items() if not isinstance(b, (list, dict))))
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def cli_run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose or args.command == "catalog" else logging.WARNING, format="%(message)s", stream=sys.stderr)
    try:
        report, code = COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(json.dumps({"error": "budget", "message": str(exc)}))
        return EXIT_BUDGET
    except (InputError, InvalidCrossedSystem, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": "input", "message": str(exc)}))
        return EXIT_INPUT
    except TwistedCodesError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return EXIT_VIOLATION
    if args.format == "json":
        print(json.dumps(report, indent=2, default=_json_default))
    else:
        print(_text(report))
    return code


def _json_default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(type(o).__name__)


def main() -> None:
    sys.exit(cli_run())


if __name__ == "__main__":
    main()
