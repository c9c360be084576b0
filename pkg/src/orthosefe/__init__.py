"""Simultaneous planar orthogonal drawings (OrthoSEFE) of graphs sharing a common subgraph.

Decides whether k planar graphs on one vertex set, pairwise sharing the same
edges, admit planar orthogonal grid drawings that draw the shared edges
identically, and draws them with at most three bends per edge.
"""
from __future__ import annotations

from .constraints import Side, Verdict, Violation, check_assignment, check_sefe_orthogonality, oracle
from .cyclesolver import solve_cycle
from .drawing import OrthogonalDrawing, draw, export_svg, st_order, validate_drawing
from .embedding import rotation_search
from .instance import CycleInstance, InstanceError, SunflowerInstance, dump_instance, load_instance
from .spqr import build_spqr, solve_biconnected

__all__ = [
    "CycleInstance",
    "InstanceError",
    "OrthogonalDrawing",
    "Side",
    "SunflowerInstance",
    "Verdict",
    "Violation",
    "build_spqr",
    "check_assignment",
    "check_sefe_orthogonality",
    "draw",
    "dump_instance",
    "export_svg",
    "load_instance",
    "oracle",
    "rotation_search",
    "solve_biconnected",
    "solve_cycle",
    "st_order",
    "validate_drawing",
]
