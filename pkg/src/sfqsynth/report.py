"""Side-by-side synthesis comparison: text tables, CSV, and figures."""

import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .synth import (full_path_balance, share_and_retime, dcm_synthesize,
                    cost_report)
from .chain import WeightMode


def method_label(method, p=None):
    return {"fpb": "Baseline1", "fpb-share": "Baseline2"}.get(
        method, "DCM(%d)" % p)


def build_comparison(name, netlist, p_values=(5, 10), costs=None,
                     mode=WeightMode.HYPEREDGE, include_clock_overhead=False):
    """Synthesize one circuit with every method; returns a report row."""
    reports = {}
    fpb = full_path_balance(netlist)
    reports["Baseline1"] = cost_report(fpb, costs, include_clock_overhead)
    reports["Baseline2"] = cost_report(share_and_retime(fpb), costs,
                                       include_clock_overhead)
    for p in p_values:
        dcm = dcm_synthesize(netlist, p, mode)
        reports["DCM(%d)" % p] = cost_report(dcm, costs,
                                             include_clock_overhead)
    return {"name": name, "reports": reports}


def _columns(rows):
    return list(rows[0]["reports"].keys())


def comparison_text(rows):
    cols = _columns(rows)
    lines = []
    for metric in ("dff_count", "jj_total"):
        lines.append("%s:" % metric)
        header = "%-14s" % "circuit" + "".join("%12s" % c for c in cols)
        lines.append(header)
        for row in rows:
            vals = [row["reports"][c].to_dict()[metric] for c in cols]
            lines.append("%-14s" % row["name"]
                         + "".join("%12d" % v for v in vals))
        base = cols[0]
        for row in rows:
            b = row["reports"][base].to_dict()[metric]
            ratios = []
            for c in cols:
                v = row["reports"][c].to_dict()[metric]
                ratios.append("%12s" % ("inf" if v == 0 and b > 0 else
                                        "%.2fx" % (b / v) if v else "1.00x"))
            lines.append("%-14s" % (row["name"] + "*") + "".join(ratios))
        lines.append("")
    lines.append("(* rows show the %s-to-method ratio)" % cols[0])
    return "\n".join(lines) + "\n"


def write_csv(rows, path):
    cols = _columns(rows)
    metrics = ("dff_count", "dff_dro", "dff_ndro", "splitter_count",
               "jj_total", "part_count", "depth")
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["circuit", "method"] + list(metrics))
        for row in rows:
            for c in cols:
                d = row["reports"][c].to_dict()
                w.writerow([row["name"], c] + [d[m] for m in metrics])
    return path


def _bar_figure(rows, metric, title, path):
    cols = _columns(rows)
    names = [r["name"] for r in rows]
    fig, ax = plt.subplots(figsize=(max(6, 1.6 * len(names)), 4))
    width = 0.8 / len(cols)
    for j, c in enumerate(cols):
        vals = [max(r["reports"][c].to_dict()[metric], 0.1) for r in rows]
        xs = [i + j * width for i in range(len(names))]
        ax.bar(xs, vals, width=width, label=c)
    ax.set_yscale("log")
    ax.set_xticks([i + 0.4 - width / 2 for i in range(len(names))])
    ax.set_xticklabels(names, rotation=30, ha="right")
    ax.set_ylabel(metric)
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_figures(rows, out_dir):
    paths = []
    paths.append(_bar_figure(rows, "dff_count", "Path-balancing DFF count",
                             os.path.join(out_dir, "dff_count.png")))
    paths.append(_bar_figure(rows, "jj_total", "Total JJ count",
                             os.path.join(out_dir, "jj_total.png")))
    return paths


def waveform_figure(wave, path, signals=None):
    """Render a waveform as stacked digital traces."""
    names = signals or list(wave.signals)
    fig, ax = plt.subplots(figsize=(max(6, wave.cycles * 0.3),
                                    0.6 * len(names) + 1))
    for i, name in enumerate(names):
        base = (len(names) - 1 - i) * 1.5
        bits = wave.signals[name]
        xs, ys = [], []
        for t, b in enumerate(bits):
            v = 0.5 if b == "x" else int(b)
            xs.extend([t, t + 1])
            ys.extend([base + v, base + v])
        ax.plot(xs, ys, drawstyle="steps-post")
        for t, b in enumerate(bits):
            if b == "x":
                ax.text(t + 0.5, base + 0.5, "x", ha="center", va="center",
                        fontsize=7)
        ax.text(-0.5, base + 0.5, name, ha="right", va="center")
    if wave.macro_period:
        for t in range(wave.macro_period, wave.cycles + 1, wave.macro_period):
            ax.axvline(t, color="grey", lw=0.5, ls="--")
    ax.set_xlim(-2, wave.cycles + 1)
    ax.set_yticks([])
    ax.set_xlabel("micro cycle")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
