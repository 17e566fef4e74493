"""Certified computations for heights of totally p-adic numbers."""

from __future__ import annotations

__version__ = "0.1.0"

from .enclosure import RealEnclosure, log_enclosure
from .poly_exact import IntPoly, parse_poly, format_poly, resultant, reciprocal
from .roots_certified import (ComplexDiskEnclosure, MahlerResult, PrecisionExhausted,
                              mahler_measure, supnorm_unit_circle, enclose_roots,
                              all_roots_on_unit_circle)
from .padic import (newton_polygon, count_distinct_qp_roots, quadratic_splits,
                    hensel_lift, SplittingCertificate)
from .heights import AlgebraicNumberRep, HeightValue, height, height_of_image, check_height_image_bound
from .families import FamilyId, construct, self_reciprocal, fermat_decompose
from .bounds import (IntegralityClass, TestPolynomialScheme, line_intersection_bound,
                     theorem1_lower, ramified_lower, galateau_bound, multi_prime_bounds,
                     upper_bounds, verify_corollary_S, bounds_row)
