"""Exact computer algebra for Euler-graded differential operators.

The package models a trivial vector bundle R^m x R^n -> R^m and provides,
with exact rational arithmetic throughout:

* :class:`FiberPoly` - fiberwise polynomial functions, graded by Euler weight;
* :class:`DiffOp` - normal-ordered differential operators: application,
  composition, commutator, Euler field, weight decomposition;
* :class:`SymbolPoly` - principal symbols and the canonical Poisson bracket;
* structural witnesses - jet factorization, derivation extension,
  infinitesimal automorphisms, commutator certificates, substitution
  morphisms with filtration and graded parts;
* an expression grammar, a CLI (``eulerops``) and named verification suites.
"""

from .errors import (
    EuleropsError,
    JetNotZeroError,
    ModelMismatchError,
    NotAFunctionError,
    NotFilteredError,
    ParseError,
    UndefinedSymbolError,
)
from .operators import (
    DiffOp,
    bracket,
    compose,
    euler_field,
    lie_derivative,
    multiplication_operator,
)
from .parsing import parse, parse_expr, parse_function, parse_operator, parse_symbol
from .poly import BundleModel, FiberPoly, Point
from .structure import (
    AlgebraMorphism,
    Derivation,
    JetSpec,
    NonSingularityCertificate,
    extend_derivation,
    graded_part,
    is_filtered,
    is_infinitesimal_automorphism,
    jet_factorize,
    jet_is_zero,
    morphism_apply,
    non_singularity_witness,
    preserves_degree_zero,
)
from .suites import SUITES, SuiteReport, run_all, run_suite
from .symbols import (
    SymbolPoly,
    distinguishing_witness,
    hamiltonian_action,
    poisson_bracket,
    principal_symbol,
    symbol_mul,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraMorphism",
    "BundleModel",
    "Derivation",
    "DiffOp",
    "EuleropsError",
    "FiberPoly",
    "JetNotZeroError",
    "JetSpec",
    "ModelMismatchError",
    "NonSingularityCertificate",
    "NotAFunctionError",
    "NotFilteredError",
    "ParseError",
    "Point",
    "SUITES",
    "SuiteReport",
    "SymbolPoly",
    "UndefinedSymbolError",
    "bracket",
    "compose",
    "distinguishing_witness",
    "euler_field",
    "extend_derivation",
    "graded_part",
    "hamiltonian_action",
    "is_filtered",
    "is_infinitesimal_automorphism",
    "jet_factorize",
    "jet_is_zero",
    "lie_derivative",
    "morphism_apply",
    "multiplication_operator",
    "non_singularity_witness",
    "parse",
    "parse_expr",
    "parse_function",
    "parse_operator",
    "parse_symbol",
    "poisson_bracket",
    "preserves_degree_zero",
    "principal_symbol",
    "run_all",
    "run_suite",
    "symbol_mul",
]
