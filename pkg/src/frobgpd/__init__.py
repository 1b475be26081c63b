"""Finite relative Frobenius and H*-algebras in Rel, groupoids and semigroupoids."""

from __future__ import annotations

from .algebra import (FrobAlgebra, HStarAlgebra, MulCandidate, as_frobenius, as_hstar, check_A, check_F, check_H,
                      check_hopf_compatibility, check_M, check_U, find_unit, pseudoinverses)
from .correspond import frob_to_groupoid, groupoid_to_frob, hstar_to_semigroupoid, semigroupoid_to_hstar
from .errors import (ClosureError, CompositionError, ConversionError, FrobError, InvariantViolation, ParseError,
                     PreconditionError)
from .finrel import FinSet, ProductSet, Rel
from .formats import load, parse, serialize
from .kernels import BACKEND
from .morphisms import Functor, MultiFunctor, RelMorphism, SubMorphism, classify
from .quotient import F_functor, corollary_quotient
from .structures import (Groupoid, Semigroupoid, is_locally_cancellative, is_regular, promote_to_groupoid,
                         validate_groupoid, validate_semigroupoid)

__all__ = [
    "BACKEND", "CompositionError", "ConversionError", "FinSet", "FrobAlgebra", "FrobError", "F_functor", "Functor",
    "ClosureError", "Groupoid", "HStarAlgebra", "InvariantViolation", "MulCandidate", "MultiFunctor", "ParseError",
    "PreconditionError", "ProductSet", "Rel", "RelMorphism", "Semigroupoid", "SubMorphism", "as_frobenius",
    "as_hstar", "check_A", "check_F", "check_H", "check_M", "check_U", "check_hopf_compatibility", "classify",
    "corollary_quotient", "find_unit", "frob_to_groupoid", "groupoid_to_frob", "hstar_to_semigroupoid",
    "is_locally_cancellative", "is_regular", "load", "parse", "promote_to_groupoid", "pseudoinverses",
    "semigroupoid_to_hstar", "serialize", "validate_groupoid", "validate_semigroupoid",
]
