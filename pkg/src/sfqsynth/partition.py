"""Optimal depth-bounded partitioning of the chain graph.

A partition of levels 1..L into blocks of consecutive levels, each spanning
at most p levels, minimizing the total weight of cut boundaries.  Solved
exactly by dynamic programming over block endpoints; a brute-force
enumerator over all block compositions serves as the optimality oracle.
"""

from dataclasses import dataclass
import json

from .chain import cut_weight


@dataclass(frozen=True)
class DpTable:
    opt: tuple     # opt[i] = minimal total cut weight for levels 1..i (1-based)
    choice: tuple  # choice[i] = block length q realizing opt[i]
    p: int


@dataclass(frozen=True)
class PartitionSolution:
    cut_levels: tuple
    parts: tuple          # tuple of frozensets of node ids
    part_count: int
    tcw: int
    depth_bound: int

    def to_json(self):
        return json.dumps({
            "p": self.depth_bound,
            "K": self.part_count,
            "cuts": list(self.cut_levels),
            "tcw": self.tcw,
            "parts": [sorted(part) for part in self.parts],
        }, indent=2)


def solve_dcgp(chain, p):
    """Fill the DP table: opt[i] is the best cut weight for the first i levels.

    Recurrence: opt[i] = min over block length q in 1..p of
    opt[i-q] + weight of the boundary between levels i-q and i-q+1.
    Ties break toward the largest q, which minimizes the part count.
    """
    if p < 1:
        raise ValueError("depth bound p must be >= 1")
    L = chain.length
    opt = [0] * (L + 1)
    choice = [0] * (L + 1)
    for i in range(1, min(p, L) + 1):
        choice[i] = i  # whole prefix fits in one block, no cut
    for i in range(p + 1, L + 1):
        best = None
        best_q = None
        for q in range(p, 0, -1):
            cand = opt[i - q] + chain.boundary_weights[i - q - 1]
            if best is None or cand < best:
                best, best_q = cand, q
        opt[i] = best
        choice[i] = best_q
    return DpTable(opt=tuple(opt), choice=tuple(choice), p=p)


def traceback(table, chain):
    """Recover the selected cut levels from a solved table."""
    cuts = []
    i = chain.length
    while i > 0:
        q = table.choice[i]
        i -= q
        if i > 0:
            cuts.append(i)
    cuts.reverse()
    return tuple(cuts)


def partition_chain(chain, p):
    """Convenience: solve and trace back; returns ``(cuts, tcw)``."""
    if p >= chain.length:
        return (), 0
    table = solve_dcgp(chain, p)
    return traceback(table, chain), table.opt[chain.length]


def part_index(level, cuts):
    """1-based index of the part holding ``level`` (cuts sorted ascending)."""
    k = 1
    for m in cuts:
        if level > m:
            k += 1
    return k


def assign_parts_by_level(level_map, depth, cuts):
    """Group node ids into parts by level, given cut levels.

    Part 1 holds levels 1..m1, part i holds levels m_{i-1}+1..m_i, the last
    part holds everything above the final cut.
    """
    cuts = tuple(cuts)
    if list(cuts) != sorted(set(cuts)):
        raise ValueError("cut levels must be strictly increasing")
    if cuts and not (1 <= cuts[0] and cuts[-1] <= depth - 1):
        raise ValueError("cut levels must lie in 1..depth-1")
    parts = [set() for _ in range(len(cuts) + 1)]
    for nid, lvl in level_map.items():
        parts[part_index(lvl, cuts) - 1].add(nid)
    return tuple(frozenset(s) for s in parts)


def assign_parts(netlist, levels, cuts, chain=None, p=None):
    """Materialize a PartitionSolution for a netlist from chosen cut levels."""
    parts = assign_parts_by_level(levels.level, levels.depth, cuts)
    tcw = sum(cut_weight(chain, m) for m in cuts) if chain is not None else 0
    return PartitionSolution(
        cut_levels=tuple(cuts),
        parts=parts,
        part_count=len(parts),
        tcw=tcw,
        depth_bound=p if p is not None else levels.depth,
    )


def brute_force_partition(chain, p):
    """Exhaustive minimum over all compositions of L into blocks of size <= p.

    Optimality oracle for the DP; guarded to short chains.
    """
    L = chain.length
    if L > 25:
        raise ValueError("chain too long for enumeration (L=%d > 25)" % L)
    if p < 1:
        raise ValueError("depth bound p must be >= 1")
    best = None
    best_cuts = None
    stack = [(0, 0, ())]  # (levels covered, weight so far, cuts)
    while stack:
        i, w, cuts = stack.pop()
        if i == L:
            if best is None or w < best:
                best, best_cuts = w, cuts
            continue
        for q in range(1, min(p, L - i) + 1):
            j = i + q
            extra = 0 if j == L else chain.boundary_weights[j - 1]
            cut = cuts if j == L else cuts + (j,)
            stack.append((j, w + extra, cut))
    return best, best_cuts
