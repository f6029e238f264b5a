"""Gate-level combinational netlists: model, parser, levelization, evaluation.

The netlist is a DAG of clocked logic cells.  Primary inputs are ports (not
nodes) and sit at level 0; every gate gets level ``1 + max(fanin levels)``.
"""

from dataclasses import dataclass, field
from enum import Enum
import json


class NetlistError(Exception):
    """Base error for malformed netlists."""


class ParseError(NetlistError):
    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class CycleError(NetlistError):
    """The node/edge structure contains a combinational cycle."""


class GateKind(str, Enum):
    AND2 = "AND2"
    OR2 = "OR2"
    XOR2 = "XOR2"
    NOT = "NOT"
    BUF = "BUF"
    DFF_DRO = "DFF_DRO"
    DFF_NDRO = "DFF_NDRO"
    SPLITTER = "SPLITTER"
    REPEATER = "REPEATER"


# REPEATER carries one data fanin; its micro/macro clock pins are implicit.
FANIN_ARITY = {
    GateKind.AND2: 2,
    GateKind.OR2: 2,
    GateKind.XOR2: 2,
    GateKind.NOT: 1,
    GateKind.BUF: 1,
    GateKind.DFF_DRO: 1,
    GateKind.DFF_NDRO: 1,
    GateKind.SPLITTER: 1,
    GateKind.REPEATER: 1,
}

# Cells that act as identity when evaluating Boolean function of the circuit.
IDENTITY_KINDS = frozenset({
    GateKind.BUF, GateKind.DFF_DRO, GateKind.DFF_NDRO,
    GateKind.SPLITTER, GateKind.REPEATER,
})

# Cells that pass pulses through combinationally (no clock, no latency).
TRANSPARENT_KINDS = frozenset({GateKind.SPLITTER})


@dataclass(frozen=True)
class GateNode:
    id: str
    kind: GateKind
    fanins: tuple

    def __post_init__(self):
        object.__setattr__(self, "fanins", tuple(self.fanins))
        want = FANIN_ARITY[self.kind]
        if len(self.fanins) != want:
            raise NetlistError(
                "gate %s of kind %s needs %d fanin(s), got %d"
                % (self.id, self.kind.value, want, len(self.fanins)))


class Netlist:
    """Immutable gate-level netlist.

    Node output signals share the node id.  Primary outputs are
    ``(name, driver_signal)`` pairs where the driver is a node id or a
    primary input.
    """

    def __init__(self, nodes, primary_inputs, primary_outputs):
        self.nodes = tuple(nodes)
        self.primary_inputs = tuple(primary_inputs)
        self.primary_outputs = tuple(tuple(po) for po in primary_outputs)
        self.node_by_id = {}
        for n in self.nodes:
            if n.id in self.node_by_id or n.id in self.primary_inputs:
                raise NetlistError("duplicate signal name: %s" % n.id)
            self.node_by_id[n.id] = n
        pi_set = set(self.primary_inputs)
        if len(pi_set) != len(self.primary_inputs):
            raise NetlistError("duplicate primary input")
        for n in self.nodes:
            for s in n.fanins:
                if s not in self.node_by_id and s not in pi_set:
                    raise NetlistError(
                        "gate %s references undeclared signal %s" % (n.id, s))
        for name, drv in self.primary_outputs:
            if drv not in self.node_by_id and drv not in pi_set:
                raise NetlistError(
                    "output %s driven by undeclared signal %s" % (name, drv))
        self._topo = self._toposort()
        # fanout sets per driver signal, declaration order preserved
        self.fanouts = {s: [] for s in self.primary_inputs}
        self.fanouts.update({n.id: [] for n in self.nodes})
        for n in self.nodes:
            for s in n.fanins:
                self.fanouts[s].append(n.id)

    def _toposort(self):
        indeg = {n.id: 0 for n in self.nodes}
        succs = {n.id: [] for n in self.nodes}
        for n in self.nodes:
            for s in n.fanins:
                if s in indeg:
                    succs[s].append(n.id)
                    indeg[n.id] += 1
        ready = [n.id for n in self.nodes if indeg[n.id] == 0]
        order = []
        while ready:
            nid = ready.pop()
            order.append(nid)
            for t in succs[nid]:
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
        if len(order) != len(self.nodes):
            stuck = sorted(i for i, d in indeg.items() if d > 0)
            raise CycleError("combinational cycle through: %s" % ", ".join(stuck))
        return tuple(order)

    @property
    def topo_order(self):
        return self._topo

    def is_pi(self, signal):
        return signal in self.fanouts and signal not in self.node_by_id

    def __len__(self):
        return len(self.nodes)

    def __repr__(self):
        return "Netlist(%d nodes, %d PIs, %d POs)" % (
            len(self.nodes), len(self.primary_inputs), len(self.primary_outputs))


@dataclass(frozen=True)
class LevelMap:
    level: dict
    depth: int


def parse_netlist(text):
    """Parse the structural netlist format.

    Directives: ``.inputs a b``, ``.outputs y z=g4`` and one
    ``gate KIND out in...`` line per node.  ``#`` starts a comment.
    """
    inputs = []
    outputs = []
    nodes = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == ".inputs":
            inputs.extend(toks[1:])
        elif toks[0] == ".outputs":
            for t in toks[1:]:
                if "=" in t:
                    name, _, drv = t.partition("=")
                    if not name or not drv:
                        raise ParseError("malformed output '%s'" % t, lineno)
                    outputs.append((name, drv))
                else:
                    outputs.append((t, t))
        elif toks[0] == "gate":
            if len(toks) < 3:
                raise ParseError("malformed gate line", lineno)
            kind_name, out = toks[1], toks[2]
            try:
                kind = GateKind(kind_name)
            except ValueError:
                raise ParseError("unsupported gate kind '%s'" % kind_name, lineno)
            try:
                nodes.append(GateNode(out, kind, tuple(toks[3:])))
            except NetlistError as e:
                raise ParseError(str(e), lineno)
        else:
            raise ParseError("unknown directive '%s'" % toks[0], lineno)
    try:
        return Netlist(nodes, inputs, outputs)
    except (ParseError, CycleError):
        raise
    except NetlistError as e:
        raise ParseError(str(e))


def netlist_to_text(netlist):
    """Serialize to the canonical structural form (parse round-trips)."""
    lines = []
    if netlist.primary_inputs:
        lines.append(".inputs " + " ".join(netlist.primary_inputs))
    if netlist.primary_outputs:
        toks = [n if n == d else "%s=%s" % (n, d)
                for n, d in netlist.primary_outputs]
        lines.append(".outputs " + " ".join(toks))
    for n in netlist.nodes:
        lines.append("gate %s %s %s" % (n.kind.value, n.id, " ".join(n.fanins)))
    return "\n".join(lines) + "\n"


def netlist_to_json(netlist):
    return json.dumps({
        "inputs": list(netlist.primary_inputs),
        "outputs": [list(po) for po in netlist.primary_outputs],
        "gates": [{"id": n.id, "kind": n.kind.value, "fanins": list(n.fanins)}
                  for n in netlist.nodes],
    }, indent=2)


def netlist_from_json(text):
    d = json.loads(text)
    nodes = [GateNode(g["id"], GateKind(g["kind"]), tuple(g["fanins"]))
             for g in d["gates"]]
    return Netlist(nodes, d["inputs"], [tuple(po) for po in d["outputs"]])


def levelize(netlist):
    """Assign levels in one topological pass.

    Primary inputs are ports at level 0; a clocked gate sits one level above
    its deepest fanin; transparent fanout cells add no level of their own.
    """
    level = {pi: 0 for pi in netlist.primary_inputs}
    for nid in netlist.topo_order:
        node = netlist.node_by_id[nid]
        deepest = max((level.get(s, 0) for s in node.fanins), default=0)
        level[nid] = deepest if node.kind in TRANSPARENT_KINDS else deepest + 1
    depth = max(level.values(), default=0)
    return LevelMap(level=level, depth=depth)


_GATE_FN = {
    GateKind.AND2: lambda a, b: a & b,
    GateKind.OR2: lambda a, b: a | b,
    GateKind.XOR2: lambda a, b: a ^ b,
    GateKind.NOT: lambda a: 1 - a,
}


def eval_combinational(netlist, inputs):
    """Evaluate the Boolean function; storage/fanout cells act as identity.

    ``inputs`` maps every primary input to 0/1; returns a dict over PO names.
    """
    values = {}
    for pi in netlist.primary_inputs:
        if pi not in inputs:
            raise NetlistError("missing assignment for primary input %s" % pi)
        values[pi] = int(inputs[pi])
    for nid in netlist.topo_order:
        node = netlist.node_by_id[nid]
        args = [values[s] for s in node.fanins]
        if node.kind in IDENTITY_KINDS:
            values[nid] = args[0]
        else:
            values[nid] = _GATE_FN[node.kind](*args)
    return {name: values[drv] for name, drv in netlist.primary_outputs}
