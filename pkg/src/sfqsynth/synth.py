"""SFQ circuit synthesis: path balancing, DFF-chain sharing, and the
dual-clock pipeline built on the optimal level partition.

Three flows produce timing-correct circuits from a combinational netlist:

* ``full_path_balance`` -- pad every short fanin path (and every primary
  output) with DRO DFF chains so all fanins of each clocked gate arrive
  at the same level (Baseline1).
* ``share_and_retime`` -- same balancing requirement, but parallel DFF
  chains hanging off one driver are merged into a single tapped chain
  (Baseline2, a chain-sharing approximation of retiming).
* ``dcm_synthesize`` -- partition levels under a depth bound p, run each
  part on a fast micro clock, and pass signals between parts through
  pulse-repeating gates written on a p-times-slower macro clock.
"""

from dataclasses import dataclass, field
from enum import Enum
import json
import os

from .netlist import (GateKind, GateNode, Netlist, NetlistError, levelize)
from .chain import WeightMode, build_chain_graph
from .partition import partition_chain, part_index


class ClockScheme(str, Enum):
    SINGLE = "single"
    DUAL = "dual"


@dataclass(frozen=True)
class ClockPlan:
    scheme: ClockScheme
    p: int = 1  # micro cycles per macro tick (DUAL only)

    def __post_init__(self):
        if self.scheme == ClockScheme.DUAL and self.p < 2:
            raise ValueError("dual clocking needs p >= 2")


@dataclass
class SfqCircuit:
    netlist: Netlist
    clocking: ClockPlan
    source: Netlist               # original combinational netlist
    provenance: dict              # inserted node id -> reason
    depth: int                    # logic depth of the source netlist
    part_count: int = 1
    cuts: tuple = ()
    part_of: dict = None          # node id -> part index (DCM only)
    repeaters_by_boundary: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# cost model

DEFAULT_JJ_PER_CELL = {
    GateKind.AND2: 12,
    GateKind.OR2: 8,
    GateKind.XOR2: 8,
    GateKind.NOT: 9,
    GateKind.DFF_DRO: 7,
    GateKind.SPLITTER: 3,
    GateKind.BUF: 2,  # JTL
}

DEFAULT_NDRO_JJ = 10

# cells that consume the (micro) clock
CLOCKED_KINDS = frozenset({
    GateKind.AND2, GateKind.OR2, GateKind.XOR2, GateKind.NOT,
    GateKind.BUF, GateKind.DFF_DRO, GateKind.DFF_NDRO, GateKind.REPEATER,
})


@dataclass(frozen=True)
class CostTable:
    jj_per_cell: dict = field(default_factory=lambda: dict(DEFAULT_JJ_PER_CELL))
    ndro_jj: int = DEFAULT_NDRO_JJ

    def jj_of(self, kind):
        if kind == GateKind.DFF_NDRO:
            return self.ndro_jj
        if kind == GateKind.REPEATER:
            # NDRO DFF + AND gate + two clock splitters
            return (self.ndro_jj + self.jj_per_cell[GateKind.AND2]
                    + 2 * self.jj_per_cell[GateKind.SPLITTER])
        try:
            return self.jj_per_cell[kind]
        except KeyError:
            raise NetlistError("no JJ cost for cell kind %s" % kind)

    @classmethod
    def from_overrides(cls, overrides):
        """Build from a {cell name: jj} mapping; 'NDRO' overrides ndro_jj."""
        cells = dict(DEFAULT_JJ_PER_CELL)
        ndro = DEFAULT_NDRO_JJ
        for name, jj in overrides.items():
            if name.upper() in ("NDRO", "NDRO_JJ"):
                ndro = int(jj)
            else:
                cells[GateKind(name.upper())] = int(jj)
        return cls(jj_per_cell=cells, ndro_jj=ndro)


def load_cost_table(path=None):
    """Cost table from a JSON file, the DLGP_COST_TABLE env var, or defaults."""
    if path is None:
        path = os.environ.get("DLGP_COST_TABLE")
    if path is None:
        return CostTable()
    with open(path) as f:
        return CostTable.from_overrides(json.load(f))


@dataclass(frozen=True)
class CostReport:
    gate_count: int
    dff_dro: int
    dff_ndro: int            # pulse-repeating gates
    dff_count: int
    splitter_count: int
    jj_total: int
    jj_clock_overhead: int
    part_count: int
    depth: int
    peak_throughput_ratio: float
    ndro_jj_assumed: int

    def to_dict(self):
        return {
            "gate_count": self.gate_count,
            "dff_dro": self.dff_dro,
            "dff_ndro": self.dff_ndro,
            "dff_count": self.dff_count,
            "splitter_count": self.splitter_count,
            "jj_total": self.jj_total,
            "jj_clock_overhead": self.jj_clock_overhead,
            "part_count": self.part_count,
            "depth": self.depth,
            "peak_throughput_ratio": self.peak_throughput_ratio,
            "ndro_jj_assumed": self.ndro_jj_assumed,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


def cost_report(circuit, costs=None, include_clock_overhead=False):
    """Itemized cell and JJ counts for a fully synthesized circuit."""
    costs = costs or CostTable()
    kind_count = {}
    jj_total = 0
    for n in circuit.netlist.nodes:
        kind_count[n.kind] = kind_count.get(n.kind, 0) + 1
        jj_total += costs.jj_of(n.kind)
    dro = kind_count.get(GateKind.DFF_DRO, 0)
    ndro = (kind_count.get(GateKind.REPEATER, 0)
            + kind_count.get(GateKind.DFF_NDRO, 0))
    splitters = kind_count.get(GateKind.SPLITTER, 0)
    logic = sum(c for k, c in kind_count.items()
                if k not in (GateKind.DFF_DRO, GateKind.DFF_NDRO,
                             GateKind.REPEATER, GateKind.SPLITTER))
    overhead = 0
    if include_clock_overhead:
        # binary clock-distribution trees, one splitter per extra leaf
        micro = sum(c for k, c in kind_count.items() if k in CLOCKED_KINDS)
        macro = kind_count.get(GateKind.REPEATER, 0)
        overhead = 3 * max(0, micro - 1) + 3 * max(0, macro - 1)
    dual = circuit.clocking.scheme == ClockScheme.DUAL
    return CostReport(
        gate_count=logic,
        dff_dro=dro,
        dff_ndro=ndro,
        dff_count=dro + ndro,
        splitter_count=splitters,
        jj_total=jj_total + overhead,
        jj_clock_overhead=overhead,
        part_count=circuit.part_count,
        depth=circuit.depth,
        peak_throughput_ratio=1.0 / circuit.clocking.p if dual else 1.0,
        ndro_jj_assumed=costs.ndro_jj,
    )


# ---------------------------------------------------------------------------
# splitter insertion

def _insert_splitters(nodes, primary_inputs, primary_outputs, provenance):
    """Materialize binary splitter trees so every net drives one sink.

    ``nodes`` is a list of ``[id, kind, [fanins]]`` records, mutated in
    place; returns the rewired ``(nodes, primary_outputs)``.
    """
    consumers = {}  # signal -> list of ("fanin", node_idx, pos) | ("po", po_idx)
    for idx, (_, _, fanins) in enumerate(nodes):
        for pos, s in enumerate(fanins):
            consumers.setdefault(s, []).append(("fanin", idx, pos))
    pos_out = [list(po) for po in primary_outputs]
    for idx, (_, drv) in enumerate(primary_outputs):
        consumers.setdefault(drv, []).append(("po", idx, None))

    counter = [0]

    def rewire(target, signal):
        where, i, pos = target
        if where == "fanin":
            nodes[i][2][pos] = signal
        else:
            pos_out[i][1] = signal

    def expand(src_signal, cons, root):
        if len(cons) == 1:
            rewire(cons[0], src_signal)
            return
        sp = "%s__sp%d" % (root, counter[0])
        counter[0] += 1
        nodes.append([sp, GateKind.SPLITTER, [src_signal]])
        provenance[sp] = "fanout-splitter"
        half = (len(cons) + 1) // 2
        expand(sp, cons[:half], root)
        expand(sp, cons[half:], root)

    for signal in list(consumers):
        cons = consumers[signal]
        if len(cons) >= 2:
            expand(signal, cons, signal)
    return nodes, [tuple(po) for po in pos_out]


def _finish(nodes, source, primary_outputs, provenance, **kw):
    nodes, pos = _insert_splitters(nodes, source.primary_inputs,
                                   primary_outputs, provenance)
    net = Netlist([GateNode(i, k, tuple(f)) for i, k, f in nodes],
                  source.primary_inputs, pos)
    return SfqCircuit(netlist=net, source=source, provenance=provenance, **kw)


# ---------------------------------------------------------------------------
# Baseline1: full path balancing

def as_single_clock(netlist, depth=None):
    """Wrap a netlist as a single-clock circuit without modification."""
    if depth is None:
        depth = levelize(netlist).depth
    return SfqCircuit(netlist=netlist, clocking=ClockPlan(ClockScheme.SINGLE),
                      source=netlist, provenance={}, depth=depth)


def full_path_balance(netlist):
    """Insert one DRO DFF per missing level on every fanin edge, then pad
    all primary outputs out to the circuit depth.  No chain sharing."""
    levels = levelize(netlist)
    L = levels.depth
    nodes = []
    provenance = {}

    def chain_of(signal, gap, tag, reason):
        for i in range(gap):
            nid = "%s__%s%d" % (signal, tag, i)
            nodes.append([nid, GateKind.DFF_DRO, [signal]])
            provenance[nid] = reason
            signal = nid
        return signal

    for g in netlist.nodes:
        fanins = []
        for pos, s in enumerate(g.fanins):
            gap = levels.level[g.id] - levels.level.get(s, 0) - 1
            fanins.append(chain_of(s, gap, "pb_%s_%d_" % (g.id, pos),
                                   "path-balance"))
        nodes.append([g.id, g.kind, fanins])

    pos_out = []
    for name, drv in netlist.primary_outputs:
        gap = L - levels.level.get(drv, 0)
        pos_out.append((name, chain_of(drv, gap, "pob_%s_" % name,
                                       "po-balance")))

    return _finish(nodes, netlist, pos_out, provenance,
                   clocking=ClockPlan(ClockScheme.SINGLE), depth=L)


# ---------------------------------------------------------------------------
# Baseline2: shared balancing chains

def share_and_retime(circuit):
    """Merge parallel DFF chains from a common driver into one tapped chain.

    Rebuilt from the balancing requirements of the source netlist: every
    consumer of a driver needs that driver delayed by its level slack, so a
    single chain of length max-slack with taps serves all of them.
    """
    source = circuit.source
    levels = levelize(source)
    L = levels.depth

    need = {}  # driver signal -> list of ("fanin", gate id, pos, delay) | ("po", ...)
    for g in source.nodes:
        for pos, s in enumerate(g.fanins):
            d = levels.level[g.id] - levels.level.get(s, 0) - 1
            need.setdefault(s, []).append(("fanin", g.id, pos, d))
    for idx, (name, drv) in enumerate(source.primary_outputs):
        need.setdefault(drv, []).append(("po", idx, None, L - levels.level.get(drv, 0)))

    nodes = [[g.id, g.kind, list(g.fanins)] for g in source.nodes]
    by_id = {rec[0]: rec for rec in nodes}
    pos_out = [list(po) for po in source.primary_outputs]
    provenance = {}

    for drv, uses in need.items():
        max_d = max(u[3] for u in uses)
        max_gate_d = max((u[3] for u in uses if u[0] == "fanin"), default=0)
        taps = [drv]
        for i in range(max_d):
            nid = "%s__sh%d" % (drv, i)
            nodes.append([nid, GateKind.DFF_DRO, [taps[-1]]])
            provenance[nid] = "path-balance" if i < max_gate_d else "po-balance"
            taps.append(nid)
        for where, gid, pos, d in uses:
            if where == "fanin":
                by_id[gid][2][pos] = taps[d]
            else:
                pos_out[gid][1] = taps[d]

    return _finish(nodes, source, [tuple(po) for po in pos_out], provenance,
                   clocking=ClockPlan(ClockScheme.SINGLE), depth=L)


# ---------------------------------------------------------------------------
# dual clocking method

def dcm_synthesize(netlist, p, mode=WeightMode.HYPEREDGE):
    """Depth-bound the level graph, then pipeline the parts on two clocks.

    Every net crossing a part boundary passes through one pulse-repeating
    gate per crossed boundary (primary-input nets included); primary
    outputs produced before the final part are carried forward the same
    way so all outputs exit at the final macro stage.  Inside a part no
    balancing DFFs are needed: part inputs are held by the repeaters for a
    whole macro period, so every gate settles before the boundary write.
    """
    if p < 2:
        raise ValueError("dual clocking needs p >= 2 (p=1 degenerates to "
                         "full path balancing)")
    levels = levelize(netlist)
    L = levels.depth
    chain = build_chain_graph(netlist, levels, mode, include_pi_nets=False)
    cuts, tcw = partition_chain(chain, p)
    K = len(cuts) + 1

    part_of = {nid: part_index(lvl, cuts) for nid, lvl in levels.level.items()}

    nodes = [[g.id, g.kind, list(g.fanins)] for g in netlist.nodes]
    by_id = {rec[0]: rec for rec in nodes}
    pos_out = [list(po) for po in netlist.primary_outputs]
    provenance = {}
    repeaters_by_boundary = {m: [] for m in cuts}

    po_drivers = {drv for _, drv in netlist.primary_outputs}
    # per-net repeater chains
    all_signals = list(netlist.primary_inputs) + [g.id for g in netlist.nodes]
    for s in all_signals:
        sinks = netlist.fanouts.get(s, [])
        dl = levels.level.get(s, 0)
        sink_levels = [levels.level[t] for t in sinks]
        max_real = max(sink_levels, default=0)
        eff_max = L if s in po_drivers and cuts else max_real
        crossed = [m for m in cuts if dl <= m < eff_max]
        if not crossed:
            continue
        stage = s
        stage_by_cut = {}
        for m in crossed:
            rid = "%s__rp%d" % (s, m)
            nodes.append([rid, GateKind.REPEATER, [stage]])
            provenance[rid] = "repeater" if max_real > m else "po-balance"
            repeaters_by_boundary[m].append(rid)
            part_of[rid] = part_index(m, cuts) + 1
            stage_by_cut[m] = rid
            stage = rid
        # consumers beyond a boundary read the repeater for the last
        # boundary they sit behind
        for t, tl in zip(sinks, sink_levels):
            below = [m for m in crossed if m < tl]
            if below:
                rec = by_id[t]
                for pos, f in enumerate(rec[2]):
                    if f == s:
                        rec[2][pos] = stage_by_cut[below[-1]]
        if s in po_drivers:
            for po in pos_out:
                if po[1] == s:
                    po[1] = stage

    return _finish(nodes, netlist, [tuple(po) for po in pos_out], provenance,
                   clocking=ClockPlan(ClockScheme.DUAL, p), depth=L,
                   part_count=K, cuts=cuts, part_of=part_of,
                   repeaters_by_boundary=repeaters_by_boundary)
