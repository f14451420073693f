"""Exact winding numbers, Wu numbers and linking numbers of piecewise linear graph drawings."""
from .errors import *  # noqa: F401,F403
from .geometry import Point2, Point3, Q, format_q, orientation, point_on_segment, pt, pt3, segment_crossing
from .graph import Grade, Graph, GraphDrawing, crossing_number_V, is_general_position, restrict_cycle, restrict_path, validate
from .harness import RadonCounters, SweepConfig, SweepReport, compute_I, search_conjecture, sweep
from .invariants import W_f, degree, invariant_report, w_f, wu_cyclic, wu_f_cycle, wu_f_star, wu_ncyclic, wu_triodic
from .moves import FingerMoveSpec, finger_move, random_almost_embedding, random_drawing
from .space3 import ClosedPolyline3, SpatialK6Drawing, cgs_check, gen_example_8_2a, linking_number
from .winding import ClosedPolyline, Polyline, d_box, signed_crossing_sum, winding_number

__version__ = "0.1.0"
