"""Exact-arithmetic line geometry over the rationals and GF(2)(x, y):
quadratic division algebras, the quadric of lines with its polarity, and the
translation (Clifford) parallelisms cut out by planes external to that
quadric, together with machine-checkable verification suites."""

from .clifford import (ExternalityCertificate, ParallelClass, Parallelism,
                       c_parallel, class_is_regular_spread,
                       crossed_pencils_check, double_space_check,
                       hyperplane_for_classes, hyperplane_from_form, kappa,
                       kappa_prime, left_parallel, parallel_class,
                       parallel_through, perp_parallelism, plane_C,
                       plane_Cprime, right_parallel,
                       translation_invariance_check)
from .kleingeom import (LinearComplex, NullPolarity, Regulus,
                        complex_from_hyperplane, lines_meet, null_polarity,
                        omega, perp, pluecker, pluecker_inverse, polar_form,
                        regulus_contains, regulus_opposite, regulus_through,
                        ruled_plane, star_plane, wedge)
from .linalg import Subspace, annihilator, solve_homogeneous, span
from .qalg import (Algebra, DivisionCertificate, exterior_square,
                   left_translation, make_algebra, quadratic_algebra_check,
                   right_translation)
from .scalars import (RATIONALS, FieldSpec, RatFunc, Scalar, characteristic,
                      field_add, field_inv, field_mul, field_neg,
                      parse_scalar, random_scalar, scalar_to_string)

__version__ = "0.1.0"
