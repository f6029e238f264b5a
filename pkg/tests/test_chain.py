import random

import pytest

import sfqsynth as sq
from sfqsynth import benchmarks as B
from sfqsynth.chain import WeightMode


def _recount(depth, nets, mode, k):
    """Independent crossing count for boundary k (between levels k, k+1)."""
    total = 0
    for dl, sink_levels in nets:
        if mode == WeightMode.HYPEREDGE:
            if dl <= k and max(sink_levels) > k:
                total += 1
        else:
            total += sum(1 for sl in sink_levels if dl <= k < sl)
    return total


def test_fixture_weights_match_both_modes():
    pis, fanins = B.partition_fixture_dag()
    levels, depth = B.dag_levels(pis, fanins)
    nets = list(B.dag_nets(pis, fanins, levels, include_pi_nets=True))
    hyper = sq.build_chain_from_nets(depth, nets, WeightMode.HYPEREDGE)
    edge = sq.build_chain_from_nets(depth, nets, WeightMode.EDGE)
    assert hyper.boundary_weights == (6, 3, 2, 3)
    assert edge.boundary_weights == (7, 4, 4, 3)


def test_straggler_chain_weights():
    net = B.straggler_pipeline()
    lv = sq.levelize(net)
    chain = sq.build_chain_graph(net, lv, WeightMode.HYPEREDGE)
    assert chain.length == 7
    assert chain.boundary_weights == (1, 2, 3, 2, 2, 2)


def test_chain_matches_brute_force_recount():
    rng = random.Random(11)
    for _ in range(50):
        net = B.random_netlist(rng, rng.randint(4, 40), rng.randint(2, 8))
        lv = sq.levelize(net)
        for mode in (WeightMode.HYPEREDGE, WeightMode.EDGE):
            for pi_nets in (False, True):
                nets = list(sq.iter_nets(net, lv, include_pi_nets=pi_nets))
                chain = sq.build_chain_from_nets(lv.depth, nets, mode)
                for k in range(1, lv.depth):
                    assert sq.cut_weight(chain, k) == _recount(
                        lv.depth, nets, mode, k)


def test_hyper_never_exceeds_edge():
    rng = random.Random(12)
    for _ in range(30):
        net = B.random_netlist(rng, rng.randint(4, 40), rng.randint(2, 8))
        lv = sq.levelize(net)
        h = sq.build_chain_graph(net, lv, WeightMode.HYPEREDGE)
        e = sq.build_chain_graph(net, lv, WeightMode.EDGE)
        assert all(hw <= ew for hw, ew in
                   zip(h.boundary_weights, e.boundary_weights))


def test_cut_weight_bounds():
    chain = sq.ChainGraph(length=4, boundary_weights=(1, 2, 3),
                          mode=WeightMode.HYPEREDGE)
    assert sq.cut_weight(chain, 1) == 1
    assert sq.cut_weight(chain, 3) == 3
    for bad in (0, 4, -1):
        with pytest.raises(IndexError):
            sq.cut_weight(chain, bad)


def test_chain_invariants_enforced():
    with pytest.raises(ValueError):
        sq.ChainGraph(length=3, boundary_weights=(1,),
                      mode=WeightMode.HYPEREDGE)
    with pytest.raises(ValueError):
        sq.ChainGraph(length=2, boundary_weights=(-1,),
                      mode=WeightMode.HYPEREDGE)


def test_depth_one_chain_has_no_boundaries():
    net = sq.parse_netlist(".inputs a b\n.outputs g1\ngate AND2 g1 a b\n")
    lv = sq.levelize(net)
    chain = sq.build_chain_graph(net, lv)
    assert chain.length == 1
    assert chain.boundary_weights == ()
