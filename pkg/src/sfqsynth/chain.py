"""Reduction of a leveled DAG to its weighted chain graph.

The chain has one node per level, 1..L, and an edge between consecutive
levels whose weight counts how many netlist edges (EDGE mode) or nets
(HYPEREDGE mode) cross that level boundary.
"""

from dataclasses import dataclass
from enum import Enum
import json


class WeightMode(str, Enum):
    EDGE = "edge"
    HYPEREDGE = "hyper"


@dataclass(frozen=True)
class ChainGraph:
    length: int
    boundary_weights: tuple
    mode: WeightMode

    def __post_init__(self):
        object.__setattr__(self, "boundary_weights",
                           tuple(self.boundary_weights))
        if self.length < 1:
            raise ValueError("chain length must be >= 1")
        if len(self.boundary_weights) != self.length - 1:
            raise ValueError("need exactly length-1 boundary weights")
        if any(w < 0 for w in self.boundary_weights):
            raise ValueError("boundary weights must be non-negative")

    def to_json(self):
        return json.dumps({
            "length": self.length,
            "weights": list(self.boundary_weights),
            "mode": self.mode.value,
        })


def cut_weight(chain, k):
    """Weight of boundary k (between chain nodes k and k+1), 1-based.

    Chain edges exist only between consecutive levels, so the separator sum
    collapses to this single adjacent-edge weight.
    """
    if not 1 <= k <= chain.length - 1:
        raise IndexError("boundary index %d out of range 1..%d"
                         % (k, chain.length - 1))
    return chain.boundary_weights[k - 1]


def iter_nets(netlist, levels, include_pi_nets=False):
    """Yield ``(driver_level, sink_levels)`` for every net with sinks."""
    for drv, sinks in netlist.fanouts.items():
        if not sinks:
            continue
        dl = levels.level.get(drv, 0)
        if dl == 0 and not include_pi_nets:
            continue
        yield dl, [levels.level[s] for s in sinks]


def build_chain_from_nets(depth, nets, mode=WeightMode.HYPEREDGE):
    """Accumulate boundary weights with a difference array (linear time).

    ``nets`` is an iterable of ``(driver_level, sink_levels)``.  An edge
    (u, v) crosses boundaries k with level(u) <= k < level(v); a net crosses
    k when its driver is at level <= k and some sink is at level > k.
    """
    if depth < 1:
        raise ValueError("graph depth must be >= 1")
    diff = [0] * (depth + 1)
    for dl, sink_levels in nets:
        lo = max(dl, 1)
        if mode == WeightMode.HYPEREDGE:
            hi = max(sink_levels) - 1
            if hi >= lo:
                diff[lo] += 1
                diff[hi + 1] -= 1
        else:
            for sl in sink_levels:
                if sl - 1 >= lo:
                    diff[lo] += 1
                    diff[sl] -= 1
    weights = []
    acc = 0
    for k in range(1, depth):
        acc += diff[k]
        weights.append(acc)
    return ChainGraph(length=depth, boundary_weights=tuple(weights), mode=mode)


def build_chain_graph(netlist, levels, mode=WeightMode.HYPEREDGE,
                      include_pi_nets=False):
    """Chain graph of a leveled netlist.

    PI-driven nets are excluded by default: the cut objective is defined
    over graph nodes, while synthesis handles PI crossings separately.
    """
    return build_chain_from_nets(
        levels.depth, iter_nets(netlist, levels, include_pi_nets), mode)
