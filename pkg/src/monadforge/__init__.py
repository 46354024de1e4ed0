"""Linear monads on products of projective spaces, in exact arithmetic."""

from .cohomology import (CohomTable, LineBundleSum, bott_h, exterior_power_sum, kunneth_h, sum_h,
                         vanishing_region_check)
from .constructions import PairedSpaceParams, band_f, band_g, build_homogenized_monad, build_monad
from .grading import InhomogeneousError, grading_inference, homogeneity_check
from .lattice import Space, degree_of, intersection_number, normalize_twist, slope
from .monad import Monad, display_invariants, existence_conditions, max_rank_probe, validate
from .polys import QQ, FieldSpec, MultiPoly, ParseError, PolyMatrix, matrix_compose, matrix_evaluate_rank, parse_poly
from .stability import (dual_kernel_h0_h1, h0_twisted_kernel, hoppe_scan, induced_section_map,
                        section_basis, simplicity_ingredients)

__version__ = "0.1.0"
