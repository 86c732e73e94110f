"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 refusal
(a resource guard declined the computation).  Every file-producing
subcommand also writes ``<output>.manifest.json`` recording the
subcommand, its full parameter set, input hashes, and the tool version;
re-running a manifest's command line reproduces the outputs byte for
byte.  ``POLYSCHED_GUARD`` overrides the oracle state-space guard.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from fractions import Fraction

from . import __version__
from .converters import dps_to_ops, ops_to_dps
from .core import (
    DpsInstance,
    OpsInstance,
    PolyschedError,
    RefusalError,
    gstar,
    heat,
    validate_dps,
)
from .density import density_bounds, poly_density_dps, poly_density_ops
from .gadgets import verify_gadget_properties
from .instances import (
    frac_to_str,
    gen_disjoint_stars,
    gen_kn_adversarial,
    gen_random_dps,
    gen_random_ops,
    read_instance,
    read_schedule,
    str_to_frac,
    write_instance,
    write_schedule,
)
from .oracle import dps_feasible, optimal_heat, state_space_guard
from .reduction import (
    Assignment,
    build_polycule,
    check_structure,
    parse_dimacs,
    slot_violations,
    witness_schedule,
)
from .schedulers import (
    RfConfig,
    color_edges,
    color_schedule,
    compact,
    polygreedy,
    reduce_fastest,
    schedule_low_density,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_manifest(out_path: str, subcommand: str, params: dict, inputs: list[str]) -> None:
    doc = {
        "subcommand": subcommand,
        "params": params,
        "inputs": {p: _sha256(p) for p in inputs},
        "version": __version__,
    }
    with open(out_path + ".manifest.json", "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _heat_report_json(inst: OpsInstance, sched) -> dict:
    rep = heat(sched, inst)
    return {
        "heat": frac_to_str(rep.heat) if rep.heat is not None else "infinite",
        "gstar": frac_to_str(gstar(inst)),
        "per_edge": {
            str(e): {"recurrence": r, "contribution": frac_to_str(c) if c is not None else "infinite"}
            for e, (r, c) in rep.per_edge.items()
        },
    }


def _require_ops(inst, what: str) -> OpsInstance:
    if not isinstance(inst, OpsInstance):
        raise PolyschedError(f"{what} needs an optimisation instance (kind 'ops')")
    return inst


def _require_dps(inst, what: str) -> DpsInstance:
    if not isinstance(inst, DpsInstance):
        raise PolyschedError(f"{what} needs a decision instance (kind 'dps')")
    return inst


# ---------------------------------------------------------------------------
# subcommands


def _cmd_gen(args) -> int:
    params = {}
    tie_order = None
    if args.family == "stars":
        inst = gen_disjoint_stars(args.d)
        params = {"family": "stars", "d": args.d}
    elif args.family == "kn":
        inst, tie_order = gen_kn_adversarial(args.n)
        params = {"family": "kn", "n": args.n}
    else:
        if args.kind == "ops":
            inst = gen_random_ops(args.seed, args.people, args.edge_prob)
        else:
            cap = str_to_frac(args.density_cap, "--density-cap") if args.density_cap else None
            freq = tuple(int(x) for x in args.freqs.split(",")) if args.freqs else (2, 3, 4, 6, 8, 12)
            inst = gen_random_dps(args.seed, args.people, args.edge_prob, freq, cap)
        params = {
            "family": "random",
            "kind": args.kind,
            "seed": args.seed,
            "people": args.people,
            "edge_prob": args.edge_prob,
            "density_cap": args.density_cap,
            "freqs": args.freqs,
        }
    write_instance(args.out, inst)
    if tie_order is not None:
        tie_path = args.out + ".tie.json"
        with open(tie_path, "w") as fh:
            json.dump(list(tie_order), fh)
            fh.write("\n")
        print(f"wrote {tie_path}")
    _write_manifest(args.out, "gen", params, [])
    print(f"wrote {args.out} ({len(inst.edges)} edges)")
    return EXIT_OK


def _cmd_convert(args) -> int:
    inst = read_instance(args.input)
    if args.to == "dps":
        h = str_to_frac(args.heat, "--heat")
        out = ops_to_dps(_require_ops(inst, "convert --to dps"), h)
    else:
        out = dps_to_ops(_require_dps(inst, "convert --to ops"))
    write_instance(args.out, out)
    _write_manifest(args.out, "convert", {"to": args.to, "heat": args.heat}, [args.input])
    print(f"wrote {args.out}")
    return EXIT_OK


def _verify_and_report(inst, sched) -> int:
    """Shared final gate: every scheduler's output passes through here."""
    if isinstance(inst, DpsInstance):
        violations = validate_dps(sched, inst)
        if violations:
            for v in violations:
                print(f"violation[{v.kind}] day={v.day} edges={list(v.edges)}: {v.detail}")
            return EXIT_VERIFY
        print("ok: schedule satisfies every frequency")
        return EXIT_OK
    rep = heat(sched, inst)
    if rep.heat is None:
        print("violation[missed]: some edge never scheduled; heat infinite")
        return EXIT_VERIFY
    print(f"ok: heat {frac_to_str(rep.heat)} (gstar lower bound {frac_to_str(gstar(inst))})")
    return EXIT_OK


def _cmd_run(args) -> int:
    inst = read_instance(args.input)
    params: dict = {"algorithm": args.algorithm}
    if args.algorithm == "rf":
        ops = _require_ops(inst, "run rf")
        tie = None
        if args.tie_order:
            with open(args.tie_order) as fh:
                tie = tuple(json.load(fh))
        cfg = RfConfig(x=str_to_frac(args.x, "--x"), horizon=args.horizon, tie_order=tie)
        trace = reduce_fastest(ops, cfg)
        params.update({"x": args.x, "horizon": args.horizon, "tie_order": args.tie_order})
        print(
            f"max heat {frac_to_str(trace.max_heat_seen)} on day {trace.day_of_max}"
            f" (gstar {frac_to_str(gstar(ops))})"
        )
        if args.out:
            doc = {
                "period": len(trace.schedule_prefix),
                "days": [sorted(d) for d in trace.schedule_prefix],
            }
            with open(args.out, "w") as fh:
                json.dump(doc, fh)
                fh.write("\n")
            with open(args.out + ".heat.json", "w") as fh:
                json.dump(
                    {
                        "max_heat_seen": frac_to_str(trace.max_heat_seen),
                        "day_of_max": trace.day_of_max,
                        "heats_final": {str(e): frac_to_str(hf) for e, hf in sorted(trace.heats_final.items())},
                    },
                    fh,
                    indent=2,
                )
                fh.write("\n")
            _write_manifest(args.out, "run", params, [args.input])
            print(f"wrote {args.out}")
        return EXIT_OK

    if args.algorithm == "polygreedy":
        dps = _require_dps(inst, "run polygreedy")
        sched = polygreedy(dps)
    elif args.algorithm == "lowdensity":
        dps = _require_dps(inst, "run lowdensity")
        sched = schedule_low_density(dps)
    elif args.algorithm == "colorrr":
        sched = color_schedule(inst, color_edges(inst))
    else:  # compact
        ops = _require_ops(inst, "run compact")
        sa = read_schedule(args.input_schedule)
        sched = compact(ops, sa)
        params["input_schedule"] = args.input_schedule
    if args.out:
        write_schedule(args.out, sched)
        _write_manifest(args.out, "run", params, [args.input])
        print(f"wrote {args.out} (period {sched.period})")
        if isinstance(inst, OpsInstance):
            with open(args.out + ".heat.json", "w") as fh:
                json.dump(_heat_report_json(inst, sched), fh, indent=2)
                fh.write("\n")
    return _verify_and_report(inst, sched)


def _cmd_verify(args) -> int:
    inst = read_instance(args.instance)
    sched = read_schedule(args.schedule)
    return _verify_and_report(inst, sched)


def _cmd_density(args) -> int:
    inst = read_instance(args.input)
    ops = inst if isinstance(inst, OpsInstance) else None
    if args.bounds_only:
        base = ops if ops is not None else dps_to_ops(inst)
        lo, hi = density_bounds(base)
        doc = {"lower": frac_to_str(lo), "upper": frac_to_str(hi)}
    else:
        report = poly_density_ops(ops) if ops is not None else poly_density_dps(inst)
        doc = {
            "value": frac_to_str(report.value),
            "gstar": frac_to_str(report.gstar),
            "lower": frac_to_str(report.lower),
            "upper": frac_to_str(report.upper),
            "witness_z": {str(e): frac_to_str(z) for e, z in sorted(report.witness_z.z.items())},
            "witness_y": {
                "+".join(map(str, mm)): frac_to_str(y) for mm, y in sorted(report.witness_y.y.items())
            },
        }
    print(json.dumps(doc, indent=2))
    return EXIT_OK


def _cmd_oracle(args) -> int:
    if args.oracle_cmd == "gadget-verify":
        checks = verify_gadget_properties()
        for c in checks:
            print(f"{'PASS' if c.ok else 'FAIL'} {c.name}: {c.detail}")
        return EXIT_OK if all(c.ok for c in checks) else EXIT_VERIFY
    inst = read_instance(args.input)
    guard = args.guard if args.guard else state_space_guard()
    if args.oracle_cmd == "feasible":
        dps = _require_dps(inst, "oracle feasible")
        res = dps_feasible(dps, guard)
        if res.status == "refused":
            print(f"refused: {res.detail}")
            return EXIT_REFUSED
        print(res.status)
        if res.feasible and args.out:
            write_schedule(args.out, res.schedule)
            _write_manifest(args.out, "oracle", {"cmd": "feasible", "guard": guard}, [args.input])
        return EXIT_OK
    ops = _require_ops(inst, "oracle optimal-heat")
    try:
        h = optimal_heat(ops, guard)
    except RefusalError as exc:
        print(f"refused: {exc}")
        return EXIT_REFUSED
    print(frac_to_str(h))
    return EXIT_OK


def _cmd_reduce(args) -> int:
    with open(args.formula) as fh:
        phi = parse_dimacs(fh.read())
    g = build_polycule(phi)
    report = check_structure(g)
    for c in report.checks:
        print(f"{'PASS' if c.ok else 'FAIL'} {c.name}: {c.detail}")
    if not report.ok:
        return EXIT_VERIFY
    write_instance(args.out, g.dps)
    sidecar = {
        "sex": list(g.sex),
        "gadget_of": list(g.gadget_of),
        "expected_color": {
            str(e): (c.value if not isinstance(c, frozenset) else sorted(x.value for x in c))
            for e, c in sorted(g.expected_color.items())
        },
    }
    with open(args.out + ".gadgets.json", "w") as fh:
        json.dump(sidecar, fh, indent=2)
        fh.write("\n")
    _write_manifest(args.out, "reduce", {"formula": args.formula}, [args.formula])
    print(f"wrote {args.out} ({len(g.dps.people)} people, {len(g.dps.edges)} edges)")
    if args.witness:
        values: dict[int, bool] = {}
        with open(args.witness) as fh:
            for raw in fh:
                tok = raw.strip()
                if not tok:
                    continue
                var = int(tok.lstrip("+-"))
                values[var - 1] = not tok.startswith("-")
        assignment = Assignment(tuple(values.get(i, False) for i in range(phi.num_vars)))
        sched = witness_schedule(g, assignment)
        bad = slot_violations(g, sched)
        assert not bad
        write_schedule(args.witness_out, sched)
        _write_manifest(args.witness_out, "reduce", {"witness": args.witness}, [args.formula, args.witness])
        print(f"wrote {args.witness_out} (period {sched.period})")
    return EXIT_OK


def _cmd_bench(args) -> int:
    """Heuristic heats against the personal-growth lower bound, as CSV."""
    rows = []
    instances: list[tuple[str, OpsInstance]] = []
    for d in range(1, args.stars + 1):
        instances.append((f"stars-{d}", gen_disjoint_stars(d)))
    for i in range(args.count):
        instances.append((f"random-{i}", gen_random_ops(args.seed + i, 10, 0.35)))
    for name, inst in instances:
        gs = gstar(inst)
        rr = heat(color_schedule(inst, color_edges(inst)), inst).heat
        assert rr is not None
        cfg = RfConfig(x=Fraction(4), horizon=10 * max(1, int((4 + 2) / min(inst.growth))))
        trace = reduce_fastest(inst, cfg)
        rows.append(
            {
                "instance": name,
                "edges": len(inst.edges),
                "gstar": frac_to_str(gs),
                "colorrr_heat": frac_to_str(rr),
                "colorrr_ratio": f"{float(rr / gs):.4f}",
                "rf4_heat": frac_to_str(trace.max_heat_seen),
                "rf4_ratio": f"{float(trace.max_heat_seen / gs):.4f}",
            }
        )
    fieldnames = list(rows[0].keys())
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()
            _write_manifest(args.out, "bench", {"stars": args.stars, "count": args.count, "seed": args.seed}, [])
            print(f"wrote {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polysched", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate instances")
    gsub = g.add_subparsers(dest="family", required=True)
    g1 = gsub.add_parser("stars", help="disjoint stars with harmonic growth")
    g1.add_argument("--d", type=int, required=True)
    g1.add_argument("-o", "--out", required=True)
    g2 = gsub.add_parser("kn", help="uniform complete graph with adversarial tie order")
    g2.add_argument("--n", type=int, required=True)
    g2.add_argument("-o", "--out", required=True)
    g3 = gsub.add_parser("random", help="seeded random instance")
    g3.add_argument("--seed", type=int, required=True)
    g3.add_argument("--kind", choices=["ops", "dps"], default="ops")
    g3.add_argument("--people", type=int, default=10)
    g3.add_argument("--edge-prob", type=float, default=0.4)
    g3.add_argument("--density-cap", default=None, help="rational like 1/4 (dps only)")
    g3.add_argument("--freqs", default=None, help="comma-separated frequency choices (dps only)")
    g3.add_argument("-o", "--out", required=True)

    c = sub.add_parser("convert", help="convert between ops and dps")
    c.add_argument("--to", choices=["dps", "ops"], required=True)
    c.add_argument("--heat", default=None, help="target heat (required for --to dps)")
    c.add_argument("input")
    c.add_argument("out")

    r = sub.add_parser("run", help="run a scheduler")
    rsub = r.add_subparsers(dest="algorithm", required=True)
    r1 = rsub.add_parser("rf", help="threshold heuristic simulation")
    r1.add_argument("--x", required=True, help="threshold multiplier, rational like 4 or 289/100")
    r1.add_argument("--horizon", type=int, required=True)
    r1.add_argument("--tie-order", default=None, help="JSON file with an edge-index permutation")
    r1.add_argument("input")
    r1.add_argument("-o", "--out", default=None)
    for name in ("polygreedy", "lowdensity", "colorrr"):
        rn = rsub.add_parser(name)
        rn.add_argument("input")
        rn.add_argument("-o", "--out", default=None)
    r5 = rsub.add_parser("compact")
    r5.add_argument("--input-schedule", required=True)
    r5.add_argument("input")
    r5.add_argument("-o", "--out", default=None)

    v = sub.add_parser("verify", help="validate a schedule against an instance")
    v.add_argument("instance")
    v.add_argument("schedule")

    d = sub.add_parser("density", help="exact density or closed-form bounds")
    d.add_argument("input")
    d.add_argument("--bounds-only", action="store_true")

    o = sub.add_parser("oracle", help="brute-force ground truth")
    osub = o.add_subparsers(dest="oracle_cmd", required=True)
    o1 = osub.add_parser("feasible")
    o1.add_argument("input")
    o1.add_argument("--guard", type=int, default=None)
    o1.add_argument("-o", "--out", default=None)
    o2 = osub.add_parser("optimal-heat")
    o2.add_argument("input")
    o2.add_argument("--guard", type=int, default=None)
    osub.add_parser("gadget-verify")

    rd = sub.add_parser("reduce", help="compile a 3-CNF formula to a polycule")
    rd.add_argument("formula")
    rd.add_argument("-o", "--out", required=True)
    rd.add_argument("--witness", default=None, help="assignment file, one ±var per line")
    rd.add_argument("--witness-out", default="witness-schedule.json")

    b = sub.add_parser("bench", help="heuristic heats vs the gstar lower bound (CSV)")
    b.add_argument("--stars", type=int, default=4)
    b.add_argument("--count", type=int, default=10)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("-o", "--out", default=None)
    return p


_DISPATCH = {
    "gen": _cmd_gen,
    "convert": _cmd_convert,
    "run": _cmd_run,
    "verify": _cmd_verify,
    "density": _cmd_density,
    "oracle": _cmd_oracle,
    "reduce": _cmd_reduce,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.cmd](args)
    except RefusalError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except PolyschedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
