"""Dispersion of point sets in the unit cube, cover-free families, and bounds on N(eps, d)."""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    best_main_bound,
    bc_dispersion_lower,
    lower_bound_catalog,
    n_exact_1d,
    region_scan,
    theorem_main_bound,
    upper_bound_catalog,
)
from .cff import SetFamily, michel_scott_bound, min_ground_size, split_st, verify_cover_free
from .emptybox import DispersionResult, largest_empty_box, min_dispersion_search, sampled_empty_box_lower
from .geometry import AxisBox, PointSet, box_avoids_all, box_contains, box_volume, generate_points
from .reduction import (
    BoxFamilyParams,
    BoxSpec,
    enumerate_box_family,
    extract_family,
    hits_all_boxes,
    reduction_consistency,
    reduction_params,
)
