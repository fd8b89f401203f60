"""Polya groups of real quadratic and totally real bi-quadratic number fields.

The pipeline: classify a real quadratic field by its fundamental unit
(`zantema_classify`, cross-checked by the ideal-based
`quadratic_polya_oracle`), then assemble a bi-quadratic field's first unit
cohomology from square classes of subfield data (`polya_report`) and read the
Polya group's order off the ramification exact sequence.  `verify` adds
theorem-level harnesses for three families claiming Polya order 2, and `cli`
exposes everything as a command-line tool.
"""

from .arith import (DEFAULT_FACTOR_BUDGET, FactorBudgetError, Factorization, factor,
                    is_prime, is_square, jacobi, sieve_primes, squarefree_part)
from .biquad import (OUTSIDE_PROPOSITION, BiquadraticField, LericheVerdict,
                     PolyaReport, RamificationProfile, biquadratic_field,
                     h1_order, h_generators, leriche_classify, polya_report,
                     ramification, subfields)
from .quadratic import (NOT_POLYA, POLYA, UNDECIDED, ContinuedFraction,
                        DirichletReport, FundamentalUnit, NormEquationSolution,
                        QuadraticField, UndecidedError, UnitSplit, ZantemaVerdict,
                        a_value, cf_expand, dirichlet_norm_criterion,
                        epsilon_decomposition, fundamental_unit, norm_equation,
                        quadratic_polya_oracle, ramified_primes, zantema_classify)
from .sqclass import (IDENTITY, SquareClass, SquareClassSubgroup, class_of, span,
                      subgroup_order)
from .verify import (T1, T2, T3, TABLE_ROWS, THEOREMS, ContrastReport,
                     EpsilonWitness, HypothesisReport, TheoremReport,
                     WitnessInapplicableError, admissible_triples, check_hypotheses,
                     contrast_rajaei, epsilon_witness, hypotheses_t1, hypotheses_t2,
                     hypotheses_t3, pollack_search, scan, smallest_admissible,
                     verify_table, verify_theorem)

__all__ = [
    "DEFAULT_FACTOR_BUDGET", "FactorBudgetError", "Factorization", "factor",
    "is_prime", "is_square", "jacobi", "sieve_primes", "squarefree_part",
    "OUTSIDE_PROPOSITION", "BiquadraticField", "LericheVerdict", "PolyaReport",
    "RamificationProfile", "biquadratic_field", "h1_order", "h_generators",
    "leriche_classify", "polya_report", "ramification", "subfields",
    "NOT_POLYA", "POLYA", "UNDECIDED", "ContinuedFraction", "DirichletReport",
    "FundamentalUnit", "NormEquationSolution", "QuadraticField", "UndecidedError",
    "UnitSplit", "ZantemaVerdict", "a_value", "cf_expand",
    "dirichlet_norm_criterion", "epsilon_decomposition", "fundamental_unit",
    "norm_equation", "quadratic_polya_oracle", "ramified_primes",
    "zantema_classify",
    "IDENTITY", "SquareClass", "SquareClassSubgroup", "class_of", "span",
    "subgroup_order",
    "T1", "T2", "T3", "TABLE_ROWS", "THEOREMS", "ContrastReport", "EpsilonWitness",
    "HypothesisReport", "TheoremReport", "WitnessInapplicableError",
    "admissible_triples", "check_hypotheses", "contrast_rajaei", "epsilon_witness",
    "hypotheses_t1", "hypotheses_t2", "hypotheses_t3", "pollack_search", "scan",
    "smallest_admissible", "verify_table", "verify_theorem",
]
