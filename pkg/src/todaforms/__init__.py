"""Exact f-invariants of Toda brackets via divided congruences of modular forms."""

from .arith import INTEGER, RATIONAL, qmodz_reduce, solve_mod_integers
from .congruence import (EMPTY, BivariateCongruence, DividedCongruence, IndeterminacySpec, QuotientClass,
                         TensorForm, bracket1, bracket2, class_eq, fingerprint, order, p_adapt, zero_test)
from .errors import (BasisError, Infeasible, LevelError, NotInSpace, NotPTorsion, NoVirtualWeight,
                     PrecisionTooLow, TodaFormsError)
from .modforms import FormSpace, GradedForm, dim_formula, space, sturm_bound, to_coordinates
from .qseries import DEFAULT_PREC, Series1, Series2, chi0_left, eisenstein, tensor
from .toda import (EInvariant, FInvariantClass, catalog, element, f_product, indeterminacy_for, toda3_center_p,
                   toda3_odd, toda3_with_p, toda4)

__version__ = "0.1.0"
