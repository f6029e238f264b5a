"""Command-line front end tying the pipeline together.

Subcommands: ``partition``, ``synthesize``, ``compare``, ``simulate`` and
``bench``.  Inputs are structural netlist files (or ``.json`` model dumps);
any bundled benchmark name is accepted wherever a file path is.
"""

import argparse
import json
import os
import random
import sys

from . import benchmarks
from .chain import WeightMode, build_chain_graph, build_chain_from_nets
from .netlist import (NetlistError, levelize, netlist_from_json,
                      netlist_to_json, netlist_to_text, parse_netlist)
from .partition import assign_parts, assign_parts_by_level, partition_chain
from .sim import SimulationError, compare_with_oracle, simulate
from .synth import (ClockPlan, ClockScheme, as_single_clock, cost_report,
                    dcm_synthesize, full_path_balance, load_cost_table,
                    share_and_retime)


class CliError(Exception):
    pass


def load_netlist(spec):
    suite = benchmarks.bundled_suite()
    if spec in suite:
        return suite[spec]
    if not os.path.exists(spec):
        raise CliError("no such file or bundled benchmark: %s" % spec)
    with open(spec) as f:
        text = f.read()
    if spec.endswith(".json"):
        return netlist_from_json(text)
    return parse_netlist(text)


def _mode(args):
    return WeightMode.EDGE if args.mode == "edge" else WeightMode.HYPEREDGE


def _costs(args):
    return load_cost_table(getattr(args, "costs", None))


def _emit(args, text):
    if getattr(args, "output", None):
        with open(args.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def cmd_partition(args):
    if args.p is None or args.p < 1:
        raise CliError("partition needs --p >= 1")
    mode = _mode(args)
    if args.input == "fixture10":
        # pinned abstract partitioning fixture (counts PI nets)
        pis, fanins = benchmarks.partition_fixture_dag()
        levels, depth = benchmarks.dag_levels(pis, fanins)
        nets = benchmarks.dag_nets(pis, fanins, levels, include_pi_nets=True)
        chain = build_chain_from_nets(depth, nets, mode)
        cuts, tcw = partition_chain(chain, args.p)
        parts = assign_parts_by_level(levels, depth, cuts)
        result = {"p": args.p, "K": len(parts), "cuts": list(cuts),
                  "tcw": tcw, "parts": [sorted(s) for s in parts]}
    else:
        net = load_netlist(args.input)
        levels = levelize(net)
        chain = build_chain_graph(net, levels, mode,
                                  include_pi_nets=args.pi_nets)
        cuts, tcw = partition_chain(chain, args.p)
        sol = assign_parts(net, levels, cuts, chain=chain, p=args.p)
        result = json.loads(sol.to_json())
    if args.emit_chain:
        result["chain"] = json.loads(chain.to_json())
    if args.format == "json":
        _emit(args, json.dumps(result, indent=2) + "\n")
    else:
        lines = ["p=%d  K=%d  tcw=%d  cuts=%s"
                 % (result["p"], result["K"], result["tcw"], result["cuts"])]
        for i, part in enumerate(result["parts"], start=1):
            lines.append("part %d (%d nodes): %s"
                         % (i, len(part), " ".join(part)))
        if args.emit_chain:
            lines.append("chain weights (%s): %s"
                         % (result["chain"]["mode"], result["chain"]["weights"]))
        _emit(args, "\n".join(lines) + "\n")


def synthesize_one(net, args):
    if args.method == "fpb":
        return full_path_balance(net)
    if args.method == "fpb-share":
        return share_and_retime(full_path_balance(net))
    if args.p is None or args.p < 2:
        raise CliError("dcm synthesis needs --p >= 2")
    return dcm_synthesize(net, args.p, _mode(args))


def cmd_synthesize(args):
    net = load_netlist(args.input)
    circuit = synthesize_one(net, args)
    report = cost_report(circuit, _costs(args), args.clock_overhead)
    if args.output:
        base = args.output
        with open(base + ".net", "w") as f:
            f.write(netlist_to_text(circuit.netlist))
        with open(base + ".cost.json", "w") as f:
            f.write(report.to_json() + "\n")
        with open(base + ".provenance.json", "w") as f:
            json.dump({"method": args.method,
                       "clock": circuit.clocking.scheme.value,
                       "p": circuit.clocking.p,
                       "cuts": list(circuit.cuts),
                       "inserted": circuit.provenance}, f, indent=2)
        print("wrote %s.net, %s.cost.json, %s.provenance.json"
              % (base, base, base))
    elif args.format == "json":
        print(json.dumps({"circuit": json.loads(netlist_to_json(circuit.netlist)),
                          "cost": report.to_dict()}, indent=2))
    else:
        sys.stdout.write(netlist_to_text(circuit.netlist))
        sys.stdout.write(report.to_json() + "\n")


def cmd_compare(args):
    from . import report as rpt
    names = args.inputs or sorted(benchmarks.bundled_suite())
    costs = _costs(args)
    p_values = args.p or [5, 10]
    rows = []
    for name in names:
        net = load_netlist(name)
        rows.append(rpt.build_comparison(
            os.path.basename(name), net, p_values=p_values, costs=costs,
            mode=_mode(args), include_clock_overhead=args.clock_overhead))
    if args.random:
        rng = random.Random(args.seed)
        for i in range(args.random):
            net = benchmarks.random_netlist(rng, 40, 8)
            rows.append(rpt.build_comparison("rand%d" % i, net,
                                             p_values=p_values, costs=costs,
                                             mode=_mode(args)))
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        csv_path = rpt.write_csv(rows, os.path.join(args.out_dir,
                                                    "compare.csv"))
        figs = rpt.write_figures(rows, args.out_dir)
        print("wrote %s" % ", ".join([csv_path] + figs))
    if args.format == "json":
        out = [{"name": r["name"],
                "reports": {k: v.to_dict() for k, v in r["reports"].items()}}
               for r in rows]
        print(json.dumps(out, indent=2))
    elif not args.out_dir or args.format == "text":
        sys.stdout.write(rpt.comparison_text(rows))


def cmd_simulate(args):
    net = load_netlist(args.input)
    if args.method:
        circuit = synthesize_one(net, args)
    elif args.p and args.p >= 2:
        circuit = dcm_synthesize(net, args.p, _mode(args))
    else:
        circuit = as_single_clock(net)
    with open(args.stimulus) as f:
        stim = json.load(f)
    if not stim:
        raise CliError("empty stimulus")
    cycles = args.cycles or min(len(s) for s in stim.values())
    if cycles <= 0:
        raise CliError("empty stimulus")
    wave = simulate(circuit, stim, cycles, record_internal=args.internal)
    if args.output:
        with open(args.output + ".json", "w") as f:
            f.write(wave.to_json() + "\n")
        with open(args.output + ".txt", "w") as f:
            f.write(wave.to_ascii())
        from .report import waveform_figure
        waveform_figure(wave, args.output + ".png")
        print("wrote %s.json, %s.txt, %s.png"
              % (args.output, args.output, args.output))
    elif args.format == "json":
        print(wave.to_json())
    else:
        sys.stdout.write(wave.to_ascii())


def cmd_bench(args):
    suite = benchmarks.bundled_suite()
    if args.name:
        if args.name not in suite:
            raise CliError("unknown benchmark %s" % args.name)
        sys.stdout.write(netlist_to_text(suite[args.name]))
    else:
        for name, net in sorted(suite.items()):
            levels = levelize(net)
            print("%-14s %4d gates  %3d PIs  %3d POs  depth %d"
                  % (name, len(net), len(net.primary_inputs),
                     len(net.primary_outputs), levels.depth))


def build_parser():
    ap = argparse.ArgumentParser(
        prog="sfqsynth",
        description="Depth-bounded level partitioning and SFQ circuit "
                    "synthesis toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_p=True):
        if with_p:
            p.add_argument("--p", type=int, default=None,
                           help="depth bound / micro-to-macro clock ratio")
        p.add_argument("--mode", choices=["edge", "hyper"], default="hyper",
                       help="boundary weight mode")
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("partition", help="optimally cut the level chain")
    p.add_argument("input", help="netlist file, benchmark name, or fixture10")
    common(p)
    p.add_argument("--pi-nets", action="store_true",
                   help="count primary-input nets in chain weights")
    p.add_argument("--emit-chain", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("synthesize", help="emit a timing-correct circuit")
    p.add_argument("input")
    p.add_argument("--method", choices=["fpb", "fpb-share", "dcm"],
                   default="fpb")
    common(p)
    p.add_argument("--costs", help="JSON cost-table overrides")
    p.add_argument("--clock-overhead", action="store_true")
    p.add_argument("-o", "--output", help="output file prefix")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("compare", help="side-by-side cost table")
    p.add_argument("inputs", nargs="*",
                   help="netlist files or benchmark names "
                        "(default: bundled suite)")
    p.add_argument("--p", type=int, action="append",
                   help="dual-clock ratio column (repeatable)")
    p.add_argument("--mode", choices=["edge", "hyper"], default="hyper")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--costs")
    p.add_argument("--clock-overhead", action="store_true")
    p.add_argument("--random", type=int, default=0,
                   help="add N randomly generated circuits")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", help="write compare.csv plus figures here")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("simulate", help="pulse-level simulation")
    p.add_argument("input")
    p.add_argument("--stimulus", required=True,
                   help="JSON {signal: bitstring}")
    p.add_argument("--cycles", type=int)
    p.add_argument("--method", choices=["fpb", "fpb-share", "dcm"],
                   help="synthesize before simulating")
    common(p)
    p.add_argument("--costs")
    p.add_argument("--internal", action="store_true",
                   help="record internal node waveforms")
    p.add_argument("-o", "--output", help="output file prefix")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bench", help="list or emit bundled benchmarks")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.func(args)
    except (CliError, NetlistError, SimulationError, ValueError,
            OSError, json.JSONDecodeError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
