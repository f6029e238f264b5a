"""Cycle-accurate pulse-level simulation of SFQ circuits.

The model is discrete: per micro-cycle, a signal either carries a pulse
('1'), carries none ('0'), or is unknown ('x', warm-up).  Clocked gates
consume the pulses that arrived during a cycle and emit their result at the
end of that cycle; the emitted pulse reaches consumers during the next
cycle.  Splitters are transparent.  A pulse-repeating gate holds a bit in
its NDRO stage, re-emits it every micro cycle, and overwrites it only on
the last micro cycle of each macro period.
"""

from dataclasses import dataclass
import json

from .netlist import GateKind
from .synth import ClockScheme


class SimulationError(Exception):
    pass


def _and(a, b):
    if a == "0" or b == "0":
        return "0"
    if a == "1" and b == "1":
        return "1"
    return "x"


def _or(a, b):
    if a == "1" or b == "1":
        return "1"
    if a == "0" and b == "0":
        return "0"
    return "x"


def _xor(a, b):
    if a == "x" or b == "x":
        return "x"
    return str(int(a) ^ int(b))


def _not(a):
    if a == "x":
        return "x"
    return str(1 - int(a))


_LOGIC = {
    GateKind.AND2: _and,
    GateKind.OR2: _or,
    GateKind.XOR2: _xor,
    GateKind.NOT: _not,
}

_IDENTITY_CLOCKED = (GateKind.BUF, GateKind.DFF_DRO, GateKind.DFF_NDRO)


@dataclass(frozen=True)
class Waveform:
    signals: dict          # name -> string over {0,1,x}, one char per cycle
    cycles: int
    macro_period: int = None  # p in dual-clock mode

    def macro_samples(self, name):
        """Values at macro ticks (the last micro cycle of each period)."""
        if not self.macro_period:
            raise SimulationError("not a dual-clock waveform")
        s = self.signals[name]
        return s[self.macro_period - 1::self.macro_period]

    def to_json(self):
        return json.dumps({
            "cycles": self.cycles,
            "macro_period": self.macro_period,
            "signals": dict(self.signals),
        }, indent=2)

    def to_ascii(self):
        width = max((len(n) for n in self.signals), default=0)
        lines = []
        if self.macro_period:
            marks = "".join("|" if (t + 1) % self.macro_period == 0 else "."
                            for t in range(self.cycles))
            lines.append("%-*s  %s" % (width, "macro", marks))
        for name, bits in self.signals.items():
            lines.append("%-*s  %s" % (width, name, bits))
        return "\n".join(lines) + "\n"


def simulate(circuit, stimulus, cycles, record_internal=False):
    """Drive ``circuit`` with per-PI bit strings for ``cycles`` micro cycles.

    Returns a Waveform over the primary inputs and outputs (all internal
    node outputs too when ``record_internal``).
    """
    net = circuit.netlist
    dual = circuit.clocking.scheme == ClockScheme.DUAL
    p = circuit.clocking.p if dual else None
    for pi in net.primary_inputs:
        if pi not in stimulus:
            raise SimulationError("no stimulus for primary input %s" % pi)
        if len(stimulus[pi]) < cycles:
            raise SimulationError(
                "stimulus for %s covers %d of %d requested cycles"
                % (pi, len(stimulus[pi]), cycles))
    repeaters = [n for n in net.nodes if n.kind == GateKind.REPEATER]
    if repeaters and not dual:
        raise SimulationError("pulse-repeating gates need a dual clock plan")

    topo = net.topo_order
    node = net.node_by_id
    prev_emit = {}
    state = {r.id: "x" for r in repeaters}
    rows = {pi: [] for pi in net.primary_inputs}
    po_names = [name for name, _ in net.primary_outputs]
    for name in po_names:
        rows[name] = []
    if record_internal:
        for n in net.nodes:
            rows.setdefault(n.id, [])

    for t in range(cycles):
        val = {pi: stimulus[pi][t] for pi in net.primary_inputs}
        for nid in topo:
            n = node[nid]
            if n.kind == GateKind.SPLITTER:
                val[nid] = val[n.fanins[0]]
            elif n.kind == GateKind.REPEATER:
                val[nid] = state[nid]
            else:
                val[nid] = prev_emit.get(nid, "x")

        emit = {}
        for nid in topo:
            n = node[nid]
            if n.kind in _LOGIC:
                emit[nid] = _LOGIC[n.kind](*(val[s] for s in n.fanins))
            elif n.kind in _IDENTITY_CLOCKED:
                emit[nid] = val[n.fanins[0]]

        def end_view(s):
            # the value a pulse observer sees at the end of this cycle
            n = node.get(s)
            if n is None:
                return stimulus[s][t]
            if n.kind == GateKind.SPLITTER:
                return end_view(n.fanins[0])
            if n.kind == GateKind.REPEATER:
                return val[s]  # pre-update held bit
            return emit[s]

        if dual and t % p == p - 1:
            captures = {r.id: end_view(r.fanins[0]) for r in repeaters}
            state.update(captures)

        def observe(s):
            n = node.get(s)
            if n is None:
                return stimulus[s][t]
            if n.kind == GateKind.SPLITTER:
                return observe(n.fanins[0])
            if n.kind == GateKind.REPEATER:
                return val[s]
            return emit[s]

        for pi in net.primary_inputs:
            rows[pi].append(stimulus[pi][t])
        for name, drv in net.primary_outputs:
            rows[name].append(observe(drv))
        if record_internal:
            for n in net.nodes:
                rows[n.id].append(observe(n.id))
        prev_emit = emit

    return Waveform(signals={k: "".join(v) for k, v in rows.items()},
                    cycles=cycles, macro_period=p)


@dataclass(frozen=True)
class CompareResult:
    ok: bool
    vectors_checked: int
    first_mismatch: tuple = None  # (vector index, po name, got, expected)

    def __bool__(self):
        return self.ok


def compare_with_oracle(circuit, vectors):
    """Simulate ``vectors`` through a synthesized circuit and check each
    primary output against the combinational evaluation at the circuit's
    pipeline latency (depth cycles for single clock, one macro tick per
    part for dual clock)."""
    from .netlist import eval_combinational

    net = circuit.source
    if not vectors:
        return CompareResult(ok=True, vectors_checked=0)
    dual = circuit.clocking.scheme == ClockScheme.DUAL
    if dual:
        p, K = circuit.clocking.p, circuit.part_count
        periods = len(vectors) + K
        cycles = periods * p
        stim = {pi: "".join(str(v[pi]) * p for v in vectors) for pi in net.primary_inputs}
        sample = [(m + K) * p - 1 for m in range(len(vectors))]
    else:
        L = max(circuit.depth, 1)
        cycles = len(vectors) + L
        stim = {pi: "".join(str(v[pi]) for v in vectors) for pi in net.primary_inputs}
        sample = [m + L - 1 for m in range(len(vectors))]
    pad = cycles - len(stim[net.primary_inputs[0]]) if net.primary_inputs else 0
    if pad > 0:
        stim = {pi: s + s[-1] * pad for pi, s in stim.items()}

    wave = simulate(circuit, stim, cycles)
    for m, vec in enumerate(vectors):
        expect = eval_combinational(net, vec)
        for name, _ in net.primary_outputs:
            got = wave.signals[name][sample[m]]
            if got != str(expect[name]):
                return CompareResult(ok=False, vectors_checked=m,
                                     first_mismatch=(m, name, got,
                                                     str(expect[name])))
    return CompareResult(ok=True, vectors_checked=len(vectors))
