"""Finite-scale workbench for algebraizable propositional logics."""

from .syntax import (App, Equation, FlexibleMorphism, Formula, QuasiIdentity,
                     Signature, SignatureError, StrictMorphism, Substitution,
                     Var, app, flex_compose, flex_extend, flex_identity,
                     formulas_by_depth, formulas_up_to_depth, strict_extend,
                     subst, var, vars_of)
from .finalg import (AxiomSet, Congruence, EvaluationError, Filter,
                     FiniteAlgebra, all_congruences, congruence_generated,
                     evaluate, find_violation, homs, is_congruence,
                     is_homomorphism, is_l_filter, leibniz, leibniz_delta,
                     product, quotient, satisfies, subalgebra, truth_table)
from .consequence import (Budget, CounterModel, DEFAULT_BUDGET,
                          LogicPresentation, Matrix, OracleCertificate,
                          Report, Rule, Status, Trace, Verdict,
                          check_translation, combine, derive, enumerate_matrices,
                          eq_consequence, eq_counterexample, instantiate_trace,
                          interderivable, is_congruential, replay,
                          validate_matrix, verify_trace)
from .algebraize import (AlgebraizableLogic, AlgebraizingPair,
                         DensityWitnesses, PairReport, approx_equiv,
                         axiomatize, check_pair, connective_witnesses,
                         delta_dense, delta_dense_single, is_lindenbaum,
                         preserves_pair)
from .functors import (AdjointResult, LindenbaumResult, PropsReport,
                       ReflectionResult, eta_check, functor_props,
                       in_quasivariety, induced_adjoint, lindenbaum_algebra,
                       membership_violation, natural_epi_check, reduct,
                       reduct_hom, reflect, regular_elements,
                       restriction_check)

__version__ = "0.1.0"
