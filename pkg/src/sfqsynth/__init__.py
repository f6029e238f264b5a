"""Depth-bounded level partitioning and SFQ logic synthesis toolkit."""

from .netlist import (GateKind, GateNode, Netlist, LevelMap, NetlistError,
                      ParseError, CycleError, parse_netlist, netlist_to_text,
                      netlist_to_json, netlist_from_json, levelize,
                      eval_combinational)
from .chain import (WeightMode, ChainGraph, build_chain_graph,
                    build_chain_from_nets, cut_weight, iter_nets)
from .partition import (DpTable, PartitionSolution, solve_dcgp,
                        traceback, partition_chain, assign_parts,
                        assign_parts_by_level, brute_force_partition,
                        part_index)
from .synth import (ClockScheme, ClockPlan, CostTable, CostReport, SfqCircuit,
                    full_path_balance, share_and_retime, dcm_synthesize,
                    cost_report, as_single_clock, load_cost_table)
from .sim import (Waveform, CompareResult, SimulationError, simulate,
                  compare_with_oracle)

__version__ = "0.1.0"
