"""Modular invariant rings of the cyclic group C_2p over finite fields."""

from .errors import (BudgetExceeded, InvalidField, InvalidWeight, ModqError, NotPolynomialCount,
                     ObstructionFound, ParseError, RegimeMismatch, RingMismatch, UnsupportedRegime,
                     UnsupportedShape)
from .field import field_of_size, field_with_roots, make_field, parse_field, root_of_unity
from .geometry import (AffineVarietyPresentation, MotiveClass, count_points, fit_motive_class,
                       jacobian_ideal, mckay_report, singular_locus)
from .groebner import (Ideal, groebner_basis, ideal_contains, ideal_equal, is_groebner,
                       kernel_of_algebra_map, normal_form, s_polynomial, same_subalgebra,
                       subalgebra_membership)
from .invariants import (diagonal_relations, hilbert_basis_diagonal, hilbert_series_check,
                         invariant_space, minimal_generators, norm, presentation)
from .poly import MonomialOrder, MultiPoly, PolyRing, parse_poly
from .rep import Representation, build_representation, parse_summands, structure_predicates
from .structure import (classify_cm, cm_defect, gorenstein_verdict, jordan4_probe,
                        regular_sequence_probe, structure_report)

__version__ = "0.1.0"
