"""Fault-tree analysis for trees with logical loops.

Loops are read as a monotone Boolean equation system whose meaning, for
non-repairable basic events, is its least fixed point.
"""

__version__ = "0.1.0"

from .cutset import eliminate_self, minimal_cut_sets, normalize
from .errors import *  # noqa: F401,F403
from .fixpoint import RelaxResult, eval_least_fixpoint, relax_from_state
from .loops import LoopClass, SccReport, analyze_structure
from .model import (
    And,
    BasicEvent,
    BasicRef,
    FaultTree,
    Gate,
    GateRef,
    Kind,
    KooN,
    Or,
    build_tree,
    expand_koon,
)
from .parser import TrajectoryEvent, parse_trajectory, parse_tree, serialize
from .quantify import Method, QuantResult, top_probability
from .simulate import SimResult, simulate
from .solutions import SolutionReport, StateTable, build_state_table, enumerate_solutions
