"""O-space semantics and sequent calculus for a non-commutative logic of
measurements: finite and exact-rational O-spaces, evaluation and validity,
a proof checker for the ten primitive rules, derived-rule macros and a
bounded prover paired with countermodel search."""

__version__ = "0.1.0"

from .errors import EvaluationError, OSLError, ParseError, ResourceError, StructureError
from .ospace import FiniteFlat, FiniteOSpace, OSpace, check_axioms, generate_flat_family, restrict
from .hilbert import RationalSpace, Subspace, span
from .zoo import classical_sets, powerset_space, q2_space, resolve_model, union
from .syntax import (And, Atom, Neg, Or, Sequent, negate_in_L, normalize_sequent, parse_prop,
                     parse_sequent, to_nnf)
from .semantics import eval_prop, eval_sequent_holds, find_countermodel, valid_in_model
from .kernel import ProofScript, ProofStep, RuleId, check_script, check_step
from .derived import expand_derived
from .search import SearchConfig, decide, implies, logically_equivalent, prove
