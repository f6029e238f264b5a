"""Bundled benchmark circuits and fixture graphs.

Small reconstructed circuits used by the test suite and the CLI: adders
(ripple-carry and Kogge-Stone), an equality-compare chain, and two pinned
fixture graphs (a 10-node leveled DAG for the partitioner and a depth-12
pipeline with straggler paths for the synthesis comparison).  Also hosts
the deterministic random-netlist generators used for property testing.
"""

import random

from .netlist import GateKind, GateNode, Netlist, parse_netlist


# ---------------------------------------------------------------------------
# abstract leveled DAGs (arbitrary fanin, for the partitioning core)

def dag_levels(pis, fanins):
    """Levels of an abstract DAG given ``{node: [fanin signals]}``."""
    level = {}
    remaining = dict(fanins)
    while remaining:
        progressed = False
        for nid in list(remaining):
            fs = remaining[nid]
            if all(f in level or f in pis for f in fs):
                level[nid] = 1 + max((level.get(f, 0) for f in fs), default=0)
                del remaining[nid]
                progressed = True
        if not progressed:
            raise ValueError("cycle in abstract DAG")
    return level, max(level.values(), default=0)


def dag_nets(pis, fanins, levels, include_pi_nets=True):
    """``(driver_level, sink_levels)`` pairs for an abstract DAG."""
    sinks = {}
    for nid, fs in fanins.items():
        for f in fs:
            sinks.setdefault(f, []).append(nid)
    nets = []
    for drv, consumers in sinks.items():
        dl = levels.get(drv, 0)
        if dl == 0 and not include_pi_nets:
            continue
        nets.append((dl, [levels[c] for c in consumers]))
    return nets


def partition_fixture_dag():
    """Pinned 10-node, depth-5 DAG for the chain-partitioning examples.

    With primary-input nets counted, its chain weights are [6, 3, 2, 3] in
    hyper-edge mode and [7, 4, 4, 3] in edge mode; the optimal depth-2
    partition cuts levels {2, 3} giving parts {v1..v4}, {v5, v6},
    {v7..v10}.  Some nodes have three fanins: these weight vectors are not
    realizable with one- and two-input cells only, so the fixture lives at
    the abstract-DAG layer.
    """
    pis = ["a", "b", "c", "e"]
    fanins = {
        "v1": ["a"],
        "v2": ["b"],
        "v3": ["v1", "a", "b"],
        "v4": ["v2", "c", "b"],
        "v5": ["v3", "v4"],
        "v6": ["v4", "e"],
        "v7": ["v5", "v6"],
        "v8": ["v5"],
        "v9": ["v7", "v6"],
        "v10": ["v8"],
    }
    return pis, fanins


# ---------------------------------------------------------------------------
# pinned netlists

def example1():
    """Two-gate AND/NOT circuit showing why unbalanced paths misbehave."""
    return parse_netlist("""
        .inputs a b
        .outputs x=g2
        gate NOT g1 b
        gate AND2 g2 a g1
    """)


def straggler_pipeline():
    """Depth-7 pipeline with straggler primary inputs and a shallow output.

    Pinned so that full path balancing needs 9 DRO DFFs, while the
    dual-clock flow with depth bound 6 cuts at level 1 (the unique minimum
    boundary) and needs 5 pulse repeaters: one net plus four late-consumed
    primary inputs cross the cut.
    """
    return parse_netlist("""
        .inputs a e1 e2 e3 e4
        .outputs y=c7 z=z7 w=g4
        gate NOT c1 a
        gate AND2 c2 c1 e1
        gate NOT c3 c2
        gate NOT c4 c3
        gate NOT c5 c4
        gate NOT c6 c5
        gate NOT c7 c6
        gate AND2 d2 c1 e2
        gate AND2 d3 d2 e3
        gate AND2 f3 d2 e4
        gate AND2 g4 d3 f3
        gate NOT d4 d3
        gate NOT d5 d4
        gate NOT d6 d5
        gate AND2 z7 d6 c6
    """)


def ksa2():
    """2-bit Kogge-Stone adder, depth 5."""
    return parse_netlist("""
        .inputs a0 a1 b0 b1 cin
        .outputs s0 s1 cout
        gate XOR2 p0 a0 b0
        gate AND2 g0 a0 b0
        gate XOR2 p1 a1 b1
        gate AND2 g1 a1 b1
        gate XOR2 s0 p0 cin
        gate AND2 t0 p0 cin
        gate OR2 c1 g0 t0
        gate XOR2 s1 p1 c1
        gate AND2 t1 p1 c1
        gate OR2 cout g1 t1
    """)


def rca(n):
    """n-bit ripple-carry adder; deeply unbalanced carry chain."""
    nodes = []
    pis = ["a%d" % i for i in range(n)] + ["b%d" % i for i in range(n)] + ["cin"]
    carry = "cin"
    pos = []
    for i in range(n):
        nodes.append(GateNode("p%d" % i, GateKind.XOR2, ("a%d" % i, "b%d" % i)))
        nodes.append(GateNode("g%d" % i, GateKind.AND2, ("a%d" % i, "b%d" % i)))
        nodes.append(GateNode("s%d" % i, GateKind.XOR2, ("p%d" % i, carry)))
        nodes.append(GateNode("t%d" % i, GateKind.AND2, ("p%d" % i, carry)))
        nodes.append(GateNode("c%d" % i, GateKind.OR2, ("g%d" % i, "t%d" % i)))
        pos.append(("s%d" % i, "s%d" % i))
        carry = "c%d" % i
    pos.append(("cout", carry))
    return Netlist(nodes, pis, pos)


def ksa(n):
    """n-bit Kogge-Stone adder (n a power of two), log-depth carry tree."""
    nodes = []
    pis = ["a%d" % i for i in range(n)] + ["b%d" % i for i in range(n)] + ["cin"]
    G = []
    P = []
    for i in range(n):
        nodes.append(GateNode("p%d" % i, GateKind.XOR2, ("a%d" % i, "b%d" % i)))
        nodes.append(GateNode("g%d" % i, GateKind.AND2, ("a%d" % i, "b%d" % i)))
        G.append("g%d" % i)
        P.append("p%d" % i)
    d = 1
    stage = 0
    while d < n:
        ng, np_ = list(G), list(P)
        for i in range(d, n):
            t = "kt%d_%d" % (stage, i)
            nodes.append(GateNode(t, GateKind.AND2, (P[i], G[i - d])))
            ng[i] = "kg%d_%d" % (stage, i)
            nodes.append(GateNode(ng[i], GateKind.OR2, (G[i], t)))
            np_[i] = "kp%d_%d" % (stage, i)
            nodes.append(GateNode(np_[i], GateKind.AND2, (P[i], P[i - d])))
        G, P = ng, np_
        d *= 2
        stage += 1
    carries = []
    for i in range(n):
        u = "cu%d" % i
        nodes.append(GateNode(u, GateKind.AND2, (P[i], "cin")))
        nodes.append(GateNode("c%d" % i, GateKind.OR2, (G[i], u)))
        carries.append("c%d" % i)
    pos = []
    prev = "cin"
    for i in range(n):
        nodes.append(GateNode("s%d" % i, GateKind.XOR2, ("p%d" % i, prev)))
        pos.append(("s%d" % i, "s%d" % i))
        prev = carries[i]
    pos.append(("cout", carries[n - 1]))
    return Netlist(nodes, pis, pos)


def cmpchain(n):
    """n-bit equality comparator with a serial AND chain."""
    nodes = []
    pis = ["a%d" % i for i in range(n)] + ["b%d" % i for i in range(n)]
    for i in range(n):
        nodes.append(GateNode("x%d" % i, GateKind.XOR2, ("a%d" % i, "b%d" % i)))
        nodes.append(GateNode("e%d" % i, GateKind.NOT, ("x%d" % i,)))
    acc = "e0"
    for i in range(1, n):
        nxt = "r%d" % i
        nodes.append(GateNode(nxt, GateKind.AND2, (acc, "e%d" % i)))
        acc = nxt
    return Netlist(nodes, pis, [("eq", acc)])


def bundled_suite():
    """The benchmark set used by the comparison reports."""
    return {
        "example1": example1(),
        "ksa2": ksa2(),
        "ksa8": ksa(8),
        "rca8": rca(8),
        "rca16": rca(16),
        "cmpchain16": cmpchain(16),
        "straggler": straggler_pipeline(),
    }


# ---------------------------------------------------------------------------
# random generators (fixed-seed property testing, scaling runs)

_RAND_KINDS = (GateKind.AND2, GateKind.OR2, GateKind.XOR2, GateKind.NOT)


def random_netlist(rng, n_gates, n_pis):
    """Random combinational DAG; dangling signals become primary outputs."""
    pis = ["i%d" % k for k in range(n_pis)]
    signals = list(pis)
    nodes = []
    for k in range(n_gates):
        kind = rng.choice(_RAND_KINDS)
        arity = 1 if kind == GateKind.NOT else 2
        fanins = []
        for _ in range(arity):
            # bias toward recent signals to build up depth
            if rng.random() < 0.6 and len(signals) > 4:
                fanins.append(signals[rng.randrange(len(signals) - 4,
                                                    len(signals))])
            else:
                fanins.append(rng.choice(signals))
        nid = "n%d" % k
        nodes.append(GateNode(nid, kind, tuple(fanins)))
        signals.append(nid)
    used = {s for g in nodes for s in g.fanins}
    pos = [(g.id, g.id) for g in nodes if g.id not in used]
    if not pos:
        pos = [(nodes[-1].id, nodes[-1].id)]
    return Netlist(nodes, pis, pos)


def random_leveled_netlist(rng, n_gates, n_pis, max_depth):
    """Random DAG with an enforced depth cap (for partitioning properties)."""
    pis = ["i%d" % k for k in range(n_pis)]
    by_level = {0: list(pis)}
    nodes = []
    top = 0
    for k in range(n_gates):
        lvl = rng.randint(1, min(max_depth, top + 1))
        kind = rng.choice(_RAND_KINDS)
        first = rng.choice(by_level[lvl - 1])
        fanins = [first]
        if kind != GateKind.NOT:
            low = rng.randint(0, lvl - 1)
            fanins.append(rng.choice(by_level[low]))
        nid = "n%d" % k
        nodes.append(GateNode(nid, kind, tuple(fanins)))
        by_level.setdefault(lvl, []).append(nid)
        top = max(top, lvl)
    used = {s for g in nodes for s in g.fanins}
    pos = [(g.id, g.id) for g in nodes if g.id not in used]
    return Netlist(nodes, pis, pos)


def scaling_netlist(n_gates, width=64, seed=7):
    """Deterministic layered DAG for run-time scaling measurements."""
    rng = random.Random(seed)
    pis = ["i%d" % k for k in range(width)]
    prev = list(pis)
    nodes = []
    k = 0
    while k < n_gates:
        layer = []
        for _ in range(min(width, n_gates - k)):
            nid = "n%d" % k
            nodes.append(GateNode(nid, GateKind.AND2,
                                  (rng.choice(prev), rng.choice(prev))))
            layer.append(nid)
            k += 1
        prev = layer
    used = {s for g in nodes for s in g.fanins}
    pos = [(g.id, g.id) for g in nodes if g.id not in used]
    return Netlist(nodes, pis, pos)
