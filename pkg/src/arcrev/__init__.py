"""Cycle-reversal equivalence of orientations of vertex-multiplied graphs."""

from .difference import DiffDigraph, build_ddg, dicycle_decomposition, relabel
from .graph_core import MultGraph, ParentGraph, Vertex, build_multiplication
from .orientation import FamilySpec, Orientation, OrientedCycle, dicycles, oriented_cycles, tt3
from .planner import PlanReport, PlanRequest, plan, verify_script
from .refine import Script, Step, refine_cycle, replay

__version__ = "0.1.0"

__all__ = [
    "DiffDigraph", "FamilySpec", "MultGraph", "Orientation", "OrientedCycle", "ParentGraph", "PlanReport",
    "PlanRequest", "Script", "Step", "Vertex", "build_ddg", "build_multiplication", "dicycle_decomposition",
    "dicycles", "oriented_cycles", "plan", "refine_cycle", "relabel", "replay", "tt3", "verify_script",
]
