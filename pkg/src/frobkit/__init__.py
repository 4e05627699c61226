"""Exact computations with Frobenius n-homomorphisms and p|q-homomorphisms of
finite-dimensional commutative algebras over Q."""

__version__ = "0.1.0"

from .algebra import (Algebra, AlgebraMismatch, Element, LinearMap, NotInvertible,
                      check_algebra_axioms, compose, evaluation_hom, function_algebra,
                      ground_field, integer_combination, invert, mul, pullback_hom,
                      tensor_power, tensor_product, truncated_polynomial_algebra)
from .charfn import (BerezinianUndefined, berezinian, char_function, character,
                     infinity_expansion, monic_polynomial_form, psi, psi_newton,
                     psi_sequence)
from .finitespace import (FiniteSpace, enumerate_n_homs, enumerate_sym_pq, ev_map,
                          open_question_probe, verify_ev_well_defined,
                          verify_variety_equations)
from .frobenius import check_polarization, check_symmetry, frobenius_map
from .homclass import (RationalForm, ReconstructionError, Strategy, detect_degrees,
                       is_n_hom, is_pq_hom, reconstruct_rational, replay_witness)
from .series import (TruncatedSeries, series_exp, series_invert, series_log)
from .sympower import (br_F_from_f, br_f_from_F, correspondence, sym_power_algebra,
                       verify_key_formula)

__all__ = [
    "Algebra",
    "AlgebraMismatch",
    "Element",
    "LinearMap",
    "NotInvertible",
    "check_algebra_axioms",
    "compose",
    "evaluation_hom",
    "function_algebra",
    "ground_field",
    "integer_combination",
    "invert",
    "mul",
    "pullback_hom",
    "tensor_power",
    "tensor_product",
    "truncated_polynomial_algebra",
    "BerezinianUndefined",
    "berezinian",
    "char_function",
    "character",
    "infinity_expansion",
    "monic_polynomial_form",
    "psi",
    "psi_newton",
    "psi_sequence",
    "FiniteSpace",
    "enumerate_n_homs",
    "enumerate_sym_pq",
    "ev_map",
    "open_question_probe",
    "verify_ev_well_defined",
    "verify_variety_equations",
    "check_polarization",
    "check_symmetry",
    "frobenius_map",
    "RationalForm",
    "ReconstructionError",
    "Strategy",
    "detect_degrees",
    "is_n_hom",
    "is_pq_hom",
    "reconstruct_rational",
    "replay_witness",
    "TruncatedSeries",
    "series_exp",
    "series_invert",
    "series_log",
    "br_F_from_f",
    "br_f_from_F",
    "correspondence",
    "sym_power_algebra",
    "verify_key_formula",
]
