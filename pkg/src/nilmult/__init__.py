"""Nilpotent multipliers of pairs of finitely generated abelian groups."""

from .analysis import CoveringDecision, TripleSpec, check_lemma41, covering_pair_decision, pair_class
from .groups import AbelianStructure, FgAbelianGroup, PairSpec, d, direct_sum, exp, normalize, order, parse_group_spec
from .hall import Alphabet, Commutator, compare, enumerate_basic, is_basic, parse_bracket, support
from .lattice import QuotientInvariants, hnf, quotient_invariants, snf_diagonal
from .lie import LieVector, bracket, expand, left_normed
from .multiplier import (
    MultiplierRequest,
    closed_form,
    count_general,
    lemma23_verify,
    nilpotent_multiplier,
    oracle,
    pair_multiplier,
    schur_multiplier,
)
from .witt import mobius, witt

__version__ = "0.1.0"
