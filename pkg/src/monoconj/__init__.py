"""Birational conjugacy of monomial maps through their exponent matrices."""

from .dyndeg import DegreeGrowth, DegreeProfile, degree_growth, dynamical_degrees
from .gln import (
    FrobeniusForm,
    SolutionLattice,
    frobenius_form,
    integral_conjugacy,
    invariant_filter,
    rational_conjugacy,
    solution_lattice,
)
from .matrix import IntMatrix, SmithForm, char_poly, det, exterior_power, is_unimodular, smith_normal_form
from .monomial import INFINITE, MonomialMap, compose, inverse, order, parse_map, print_map, projective_degree
from .poly import IntPoly
from .sail import Sail2D, sail_lls_oracle
from .sl2 import (
    CFExpansion,
    LLSPeriod,
    ReducedForm,
    cf_eval,
    cf_expand_odd,
    classify,
    conjugate_2x2,
    enumerate_reduced,
    lls_period,
    realize,
    reduce,
)
from .verdict import Conjugate, ConjugacyVerdict, NotConjugate, Undecided, verify_certificate

__all__ = [
    "cf_eval",
    "cf_expand_odd",
    "CFExpansion",
    "char_poly",
    "classify",
    "compose",
    "ConjugacyVerdict",
    "Conjugate",
    "conjugate_2x2",
    "degree_growth",
    "DegreeGrowth",
    "DegreeProfile",
    "det",
    "dynamical_degrees",
    "enumerate_reduced",
    "exterior_power",
    "frobenius_form",
    "FrobeniusForm",
    "INFINITE",
    "integral_conjugacy",
    "IntMatrix",
    "IntPoly",
    "invariant_filter",
    "inverse",
    "is_unimodular",
    "lls_period",
    "LLSPeriod",
    "MonomialMap",
    "NotConjugate",
    "order",
    "parse_map",
    "print_map",
    "projective_degree",
    "rational_conjugacy",
    "realize",
    "reduce",
    "ReducedForm",
    "Sail2D",
    "sail_lls_oracle",
    "smith_normal_form",
    "SmithForm",
    "solution_lattice",
    "SolutionLattice",
    "Undecided",
    "verify_certificate",
]
