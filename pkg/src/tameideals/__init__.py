"""Decide whether the blowup of affine space in a monomial ideal is smooth."""

from .exactmath import DimensionError
from .ideal import (CoordinateCloud, MonomialIdeal, ParseError, equals, format_ideal,
                    ideal_sum, intersect, maximal_ideal, minimalize, parse_ideal, power,
                    product, product_all, radical, support_contains)
from .cone import (ChartClass, ChartKind, ConsistencyError, IdealTangentCone, classify_chart,
                   in_nspan, is_pointed, is_simplicial, minimal_generators, real_cone_contains,
                   tangent_cone, vertex_cones, vertices)
from .tameness import (TamenessReport, TriVerdict, check_power_invariance,
                       check_transverse_product, coord_pair_tame, coord_triple_tame, is_tame,
                       transverse, verify_chart, verify_report)
from .constructions import (BuildingFamily, PermutohedronSpec, ResourceGuardError,
                            arrangement_closure, axes_ideal, building_product, coordinate_ideal,
                            is_building_set, pairwise_sum_product, permutation_polynomial_maxvectors,
                            permutohedral_ideal, permutohedron_vertices, rosenberg_ideal,
                            rosenberg_vertices, smooth_product)

__version__ = "0.1.0"
