"""Command-line front end: ``ringgroom <subcommand> ...``.

Exit status: 0 on success, 1 when a verification or table check fails,
2 on bad arguments, 3 when a construction fails.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from . import formulas
from .constructions import BuildRequest, build, fixture, fixture_info, fixture_names
from .designkit.errors import ConstructionFailure
from .model import ContractViolation, Decomposition, ProblemInstance, verify

OK, CHECK_FAILED, USAGE, BUILD_FAILED = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _instance_args(p: argparse.ArgumentParser, cprime: bool = True) -> None:
    p.add_argument("--n", type=int, required=True, help="ring size")
    p.add_argument("--v", type=int, required=True, help="nodes with full traffic in both periods")
    if cprime:
        p.add_argument("--cprime", type=int, required=True, choices=(1, 2, 3, 4))


def _summary(dec: Decomposition) -> dict:
    r = verify(dec)
    return {"valid": r.valid, "cost": r.drop_cost, "wavecost": r.wavecost, "triangles": r.triangle_count}


# --- subcommands ----------------------------------------------------------


def cmd_construct(args) -> int:
    inst = ProblemInstance(args.n, args.v, args.cprime)
    dec = build(BuildRequest(inst, args.mon, args.seed))
    s = _summary(dec)
    if args.output:
        Path(args.output).write_text(dec.to_json(indent=1) + "\n")
    if args.format == "json":
        out = dict(s, decomposition=dec.to_dict())
        print(json.dumps(out, sort_keys=True))
    else:
        print(f"N({inst.n},{inst.v};4,{inst.groom_cprime}) {'MON' if args.mon else 'ON'}: "
              f"cost {s['cost']}, wavecost {s['wavecost']}, triangles {s['triangles']}")
    return OK if s["valid"] else CHECK_FAILED


def cmd_verify(args) -> int:
    try:
        dec = Decomposition.from_json(Path(args.path).read_text())
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise _UsageError(f"cannot read decomposition: {exc}") from exc
    r = verify(dec)
    lines = [f"{'valid' if r.valid else 'INVALID'}: cost {r.drop_cost}, wavecost {r.wavecost}, "
             f"triangles {r.triangle_count}"]
    lines += [f"  {v.kind} at {v.location}" for v in r.violations]
    _emit(args, r.to_dict(), "\n".join(lines))
    return OK if r.valid else CHECK_FAILED


def cmd_cost(args) -> int:
    n, v, cp = args.n, args.v, args.cprime
    out = {"n": n, "v": v, "cprime": cp, "cost": formulas.cost_two_period(n, v, cp)}
    try:
        out["wavecost_mon"] = formulas.wavecost_mon(n, v, cp)
    except formulas.Unsupported:
        out["wavecost_mon"] = None
    _emit(args, out, f"cost {out['cost']}, MON wavecost {out['wavecost_mon']}")
    return OK


def cmd_bounds(args) -> int:
    v, w = args.v, args.w
    tb = formulas.triangle_lower_bound(v, w)
    out = {
        "v": v,
        "w": w,
        "L": str(tb.l_value),
        "delta_min": tb.delta_min,
        "residue": tb.residue,
        "slack_ceiling": tb.slack_ceiling,
        "neutral_edges_c1": formulas.neutral_edge_bound(v, w, 1),
        "neutral_edges_c2": formulas.neutral_edge_bound(v, w, 2),
        "mu3": formulas.mu3(v) if v >= 4 else None,
    }
    text = (f"L = {tb.l_value}, δ_min = {tb.delta_min} (residue {tb.residue} mod 4)\n"
            f"neutral edges: C'=1 at most {out['neutral_edges_c1']}, C'=2 at most {out['neutral_edges_c2']}")
    if out["mu3"] is not None:
        text += f"\nμ3({v}) = {out['mu3']}"
    _emit(args, out, text)
    return OK


def cmd_oracle(args) -> int:
    from .oracle import Budget, solve_min_cost, solve_min_triangles

    inst = ProblemInstance(args.n, args.v, args.cprime)
    budget = Budget(nodes=args.nodes, seconds=args.seconds, extended=args.extended)
    res = solve_min_triangles(inst, budget=budget) if args.triangles else solve_min_cost(inst, budget)
    text = f"optimum cost {res.optimum_cost}"
    if res.optimum_triangles_at_cost is not None:
        text += f", fewest triangles {res.optimum_triangles_at_cost}"
    text += f" ({res.nodes_explored} nodes{', budget exhausted' if res.time_limit_hit else ''})"
    _emit(args, res.to_dict(), text)
    return OK


def _table_cell(n: int, v: int, cp: int, mon: bool, seed: int) -> dict:
    t0 = time.monotonic()
    row = {"n": n, "v": v, "cprime": cp, "mon": mon, "expected_cost": formulas.cost_two_period(n, v, cp)}
    try:
        dec = build(BuildRequest(ProblemInstance(n, v, cp), mon, seed))
    except ConstructionFailure as exc:
        row.update(ok=False, error=str(exc))
        return row
    r = verify(dec)
    row.update(valid=r.valid, cost=r.drop_cost, wavecost=r.wavecost, triangles=r.triangle_count)
    ok = r.valid and r.drop_cost == row["expected_cost"]
    if mon:
        row["expected_wavecost"] = formulas.wavecost_mon(n, v, cp)
        ok = ok and r.wavecost == row["expected_wavecost"]
        if cp == 3:
            row["expected_triangles"] = formulas.triangle_lower_bound(v, n - v).delta_min
            ok = ok and r.triangle_count == row["expected_triangles"]
    row["ok"] = ok
    row["seconds"] = round(time.monotonic() - t0, 3)
    return row


def cmd_table(args) -> int:
    if args.n_min < 5 or args.n_max < args.n_min:
        raise _UsageError("table needs 5 <= n-min <= n-max")
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        for cp in args.cprime:
            for v in range(n + 1):
                if cp == 3 and v == n:
                    continue
                row = _table_cell(n, v, cp, args.mon, args.seed)
                rows.append(row)
                if args.format == "json":
                    print(json.dumps(row, sort_keys=True), flush=True)
                elif not row["ok"]:
                    print(f"MISMATCH {row}", flush=True)
    bad = sum(1 for r in rows if not r["ok"])
    if args.format != "json":
        print(f"{len(rows)} cells, {bad} mismatches")
    return CHECK_FAILED if args.check and bad else OK


def cmd_fixture(args) -> int:
    if args.list or not args.name:
        for name in fixture_names():
            print(name)
        return OK
    if args.name not in fixture_names():
        raise _UsageError(f"unknown fixture {args.name!r}; try --list")
    dec = fixture(args.name)
    info = fixture_info(args.name)
    if args.output:
        Path(args.output).write_text(dec.to_json(indent=1) + "\n")
    if args.format == "json":
        print(dec.to_json())
    else:
        s = _summary(dec)
        print(f"{args.name}: cost {s['cost']}, wavecost {s['wavecost']}, triangles {s['triangles']}")
        for note in info.notes:
            print(f"  note: {note}")
    return OK


def cmd_designkit(args) -> int:
    from .designkit import factorizations, headset, mon4, partitions, triples

    kind, k = args.kind, args.order
    if kind == "sts":
        obj = triples.steiner_triple_system(k).check()
        out = {"points": obj.points, "triples": [list(t) for t in obj.triples]}
    elif kind == "pts":
        shape = {"c4": "FOURCYCLE", "l": "GRAPH_L"}.get(args.leave) or ("CYCLE", int(args.leave))
        obj = triples.pts_with_leave(k, shape, args.seed).check()
        out = {"points": obj.points, "triples": [list(t) for t in obj.triples], "leave": sorted(obj.leave)}
    elif kind == "gdd":
        obj = triples.gdd3(args.group, k, args.seed).check()
        out = {"groups": [list(g) for g in obj.groups], "triples": [list(t) for t in obj.triples]}
    elif kind == "headset":
        ts = triples.steiner_triple_system(k)
        hs = headset.headset(ts).check(ts)
        out = {"triples": [list(t) for t in ts.triples], "heads": list(hs.heads)}
    elif kind == "factorization":
        fs = (factorizations.one_factorization(k) if k % 2 == 0 else factorizations.near_one_factorization(k))
        fs.check()
        out = {"order": k, "factors": fs.factors}
    elif kind == "cocktail":
        out = {"blocks": [b.edges for b in partitions.cocktail_partition(k)]}
    else:
        out = mon4.build_mon_n4(k, seed=args.seed).to_dict()
    if args.format == "json":
        print(json.dumps(out, default=list))
    else:
        key = next(x for x in ("triples", "factors", "blocks", "wavelengths") if x in out)
        print(f"{kind}({k}): ok, {len(out[key])} {key}")
    return OK


# --- parser ---------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ringgroom", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        sp.set_defaults(func=fn)
        return sp

    sp = add("construct", cmd_construct, help="build an optimal decomposition")
    _instance_args(sp)
    sp.add_argument("--mon", action="store_true", help="also minimise the number of wavelengths")
    sp.add_argument("--output", "-o", help="write the decomposition JSON here")

    sp = add("verify", cmd_verify, help="check a decomposition JSON file")
    sp.add_argument("path")

    sp = add("cost", cmd_cost, help="closed-form optimum cost")
    _instance_args(sp)

    sp = add("bounds", cmd_bounds, help="triangle and neutral-edge bounds")
    sp.add_argument("--v", type=int, required=True)
    sp.add_argument("--w", type=int, required=True)

    sp = add("oracle", cmd_oracle, help="exact search on a small instance")
    _instance_args(sp)
    sp.add_argument("--triangles", action="store_true", help="minimise triangles at cost binom(n,2)")
    sp.add_argument("--nodes", type=int, help="node budget (overrides RINGGROOM_ORACLE_NODES)")
    sp.add_argument("--seconds", type=float)
    sp.add_argument("--extended", action="store_true", help="allow n = 9")

    sp = add("table", cmd_table, help="sweep builders against the formulas")
    sp.add_argument("--n-min", type=int, default=5)
    sp.add_argument("--n-max", type=int, default=40)
    sp.add_argument("--cprime", type=int, nargs="+", choices=(1, 2, 3), default=[1, 2, 3])
    sp.add_argument("--mon", action="store_true")
    sp.add_argument("--check", action="store_true", help="exit 1 on any mismatch")

    sp = add("fixture", cmd_fixture, help="dump a stored small decomposition")
    sp.add_argument("name", nargs="?")
    sp.add_argument("--list", action="store_true")
    sp.add_argument("--output", "-o")

    sp = add("designkit", cmd_designkit, help="run one design primitive")
    sp.add_argument("kind", choices=("sts", "pts", "gdd", "headset", "factorization", "cocktail", "mon4"))
    sp.add_argument("--order", type=int, required=True, help="point count (group count for gdd)")
    sp.add_argument("--leave", default="c4", help="pts leave: c4, l or a cycle length")
    sp.add_argument("--group", type=int, default=6, help="gdd group size")
    return p


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = make_parser().parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return USAGE
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else OK
    except ContractViolation as exc:
        print(f"ringgroom: invalid parameters: {exc}", file=sys.stderr)
        return USAGE
    except ConstructionFailure as exc:
        print(f"ringgroom: construction failed in {exc.primitive}: {exc}", file=sys.stderr)
        return BUILD_FAILED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
