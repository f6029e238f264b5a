import json
import random

import pytest

import sfqsynth as sq
from sfqsynth import benchmarks as B
from sfqsynth.netlist import GateKind
from sfqsynth.synth import CostTable, DEFAULT_NDRO_JJ


def _counts(circuit):
    c = {}
    for n in circuit.netlist.nodes:
        c[n.kind] = c.get(n.kind, 0) + 1
    return c


def _assert_single_fanout(circuit):
    """Splitters drive up to two sinks; every other signal exactly one."""
    kinds = {n.id: n.kind for n in circuit.netlist.nodes}
    for drv, sinks in circuit.netlist.fanouts.items():
        limit = 2 if kinds.get(drv) == GateKind.SPLITTER else 1
        assert len(sinks) <= limit, "%s drives %d sinks" % (drv, len(sinks))


def _assert_balanced(circuit):
    """Every clocked gate's fanins sit exactly one level below it."""
    lv = sq.levelize(circuit.netlist)
    transparent = {GateKind.SPLITTER}
    for n in circuit.netlist.nodes:
        if n.kind in transparent:
            continue
        for s in n.fanins:
            assert lv.level[n.id] == lv.level[s] + 1


def test_fpb_example1_one_dff():
    c = sq.full_path_balance(B.example1())
    r = sq.cost_report(c)
    assert r.dff_dro == 1 and r.dff_ndro == 0 and r.dff_count == 1
    _assert_single_fanout(c)
    _assert_balanced(c)


def test_fpb_straggler_nine_dffs():
    c = sq.full_path_balance(B.straggler_pipeline())
    assert sq.cost_report(c).dff_count == 9
    _assert_balanced(c)


def test_fpb_ksa2_fourteen_dffs():
    c = sq.full_path_balance(B.ksa2())
    assert sq.cost_report(c).dff_count == 14


def test_fpb_pads_primary_outputs_to_depth():
    # output w taps level 4 of a depth-7 circuit: 3 padding DFFs expected
    net = B.straggler_pipeline()
    c = sq.full_path_balance(net)
    lv = sq.levelize(c.netlist)
    for name, drv in c.netlist.primary_outputs:
        assert lv.level[drv] == c.depth


def test_share_merges_equal_slack_chains():
    # 'a' feeds two gates at level 3: FPB needs 2+2 DFFs, sharing needs 2
    net = sq.parse_netlist(
        ".inputs a b\n.outputs g1 g2\n"
        "gate NOT c1 b\ngate NOT c2 c1\n"
        "gate AND2 g1 a c2\ngate OR2 g2 a c2\n")
    fpb = sq.full_path_balance(net)
    shared = sq.share_and_retime(fpb)
    assert sq.cost_report(fpb).dff_count == 4
    assert sq.cost_report(shared).dff_count == 2
    _assert_single_fanout(shared)
    _assert_balanced(shared)


def test_share_taps_unequal_slacks():
    # 'a' feeds gates at levels 2 and 4: slacks 1 and 3 share one 3-chain
    net = sq.parse_netlist(
        ".inputs a b\n.outputs g2\n"
        "gate NOT c1 b\ngate AND2 g1 a c1\n"
        "gate NOT c3 g1\ngate AND2 g2 a c3\n")
    fpb = sq.full_path_balance(net)
    shared = sq.share_and_retime(fpb)
    assert sq.cost_report(fpb).dff_count == 4
    assert sq.cost_report(shared).dff_count == 3
    _assert_balanced(shared)


def test_share_never_increases_dffs():
    rng = random.Random(31)
    for _ in range(30):
        net = B.random_netlist(rng, rng.randint(4, 50), rng.randint(2, 8))
        fpb = sq.full_path_balance(net)
        shared = sq.share_and_retime(fpb)
        assert (sq.cost_report(shared).dff_count
                <= sq.cost_report(fpb).dff_count)
        _assert_single_fanout(shared)
        _assert_balanced(shared)


def test_dcm_requires_p_at_least_two():
    with pytest.raises(ValueError):
        sq.dcm_synthesize(B.example1(), 1)


def test_dcm_straggler_five_repeaters():
    c = sq.dcm_synthesize(B.straggler_pipeline(), 6)
    r = sq.cost_report(c)
    assert c.cuts == (1,) and c.part_count == 2
    assert r.dff_ndro == 5 and r.dff_dro == 0
    _assert_single_fanout(c)


def test_dcm_trivial_when_p_covers_depth():
    c = sq.dcm_synthesize(B.ksa2(), 5)  # depth 5 fits one part
    r = sq.cost_report(c)
    assert c.part_count == 1 and c.cuts == ()
    assert r.dff_count == 0


def _recount_repeaters(net, p):
    """Independent repeater count from the source netlist and chosen cuts."""
    lv = sq.levelize(net)
    chain = sq.build_chain_graph(net, lv)
    cuts, _ = sq.partition_chain(chain, p)
    po_drivers = {drv for _, drv in net.primary_outputs}
    total = 0
    for drv in set(net.fanouts) | po_drivers:
        sinks = net.fanouts.get(drv, [])
        if not sinks and drv not in po_drivers:
            continue
        dl = lv.level.get(drv, 0)
        mx = max((lv.level[s] for s in sinks), default=dl)
        if drv in po_drivers and cuts:
            mx = lv.depth  # outputs are carried out to the final level
        total += sum(1 for m in cuts if dl <= m < mx)
    return total


def test_dcm_repeater_count_matches_structural_recount():
    rng = random.Random(32)
    for _ in range(30):
        net = B.random_netlist(rng, rng.randint(4, 50), rng.randint(2, 8))
        for p in (2, 3, 5):
            c = sq.dcm_synthesize(net, p)
            got = _counts(c).get(GateKind.REPEATER, 0)
            assert got == _recount_repeaters(net, p)
            _assert_single_fanout(c)


def test_dcm_part_assignment_recorded():
    net = B.straggler_pipeline()
    c = sq.dcm_synthesize(net, 6)
    lv = sq.levelize(net)
    for nid, lvl in lv.level.items():
        if lvl >= 1:
            assert c.part_of[nid] == sq.part_index(lvl, c.cuts)


def test_cost_arithmetic_hand_circuit():
    net = sq.parse_netlist(
        ".inputs a b\n.outputs q=d1\n"
        "gate AND2 g1 a b\ngate DFF_DRO d1 g1\n")
    c = sq.full_path_balance(net)
    # gate already balanced: exactly 1 AND2 + 1 DFF; add one splitter by hand
    assert sq.cost_report(c).jj_total == 12 + 7
    counts = _counts(c)
    assert counts.get(GateKind.SPLITTER, 0) == 0
    table = CostTable()
    assert (table.jj_of(GateKind.AND2) + table.jj_of(GateKind.DFF_DRO)
            + table.jj_of(GateKind.SPLITTER)) == 22


def test_repeater_cost_is_ndro_plus_18():
    for ndro in (6, 10, 13):
        t = CostTable(ndro_jj=ndro)
        assert t.jj_of(GateKind.REPEATER) == ndro + 18
    assert CostTable().jj_of(GateKind.REPEATER) == DEFAULT_NDRO_JJ + 18


def test_cost_table_overrides_and_env(tmp_path, monkeypatch):
    path = tmp_path / "costs.json"
    path.write_text(json.dumps({"AND2": 20, "NDRO": 5}))
    t = sq.load_cost_table(str(path))
    assert t.jj_of(GateKind.AND2) == 20
    # the repeater folds in the (overridden) AND cost plus two splitters
    assert t.jj_of(GateKind.REPEATER) == 5 + 20 + 6
    monkeypatch.setenv("DLGP_COST_TABLE", str(path))
    t2 = sq.load_cost_table()
    assert t2.jj_of(GateKind.AND2) == 20
    monkeypatch.delenv("DLGP_COST_TABLE")
    assert sq.load_cost_table().jj_of(GateKind.AND2) == 12


def test_clock_overhead_line_item():
    net = B.straggler_pipeline()
    c = sq.dcm_synthesize(net, 6)
    base = sq.cost_report(c)
    with_ovh = sq.cost_report(c, include_clock_overhead=True)
    assert base.jj_clock_overhead == 0
    assert with_ovh.jj_clock_overhead > 0
    assert with_ovh.jj_total == base.jj_total + with_ovh.jj_clock_overhead


def test_synthesized_circuits_keep_po_names():
    for name, net in B.bundled_suite().items():
        for circ in (sq.full_path_balance(net),
                     sq.share_and_retime(sq.full_path_balance(net)),
                     sq.dcm_synthesize(net, 3)):
            assert ([n for n, _ in circ.netlist.primary_outputs]
                    == [n for n, _ in net.primary_outputs])
            assert circ.netlist.primary_inputs == net.primary_inputs
