"""Orderly terms, orderly algebras and bounded Ramsey-type searches."""

__version__ = "0.1.0"

from .algebras import (
    FiniteReductionSet,
    NatAdd,
    PairAlgebra,
    TableAlgebra,
    VariableWords,
    evaluate,
    finite_reductions,
    pair_algebra,
    reduce_sequence,
    tuple_reductions,
    variable_word_ops,
)
from .colorings import Component, LeadingSymbolParity, MemberSet, Residue
from .orderly import (
    Free,
    IndexSet,
    Induced,
    Patched,
    Reduced,
    TrivialConstant,
    check_congruence,
    check_prehomogeneous,
    induced_sequence,
    is_orderly_semigroup,
    reconstruct_algebra,
    reduce_view,
)
from .reports import Bounds, CheckReport
from .search import (
    SearchConfig,
    SearchResult,
    check_injectivity,
    find_constant_reduction,
    find_homogeneous_reduction,
    find_tuple_homogeneous,
    verify_certificate,
    verify_one_to_one_obstruction,
)
from .sharp import (
    SharpView,
    check_claim_1010a,
    check_theorem_0107b,
    sharp_pair_witness,
    sharp_split,
    sharp_view,
    sharp_witness_transform,
)
from .terms import (
    AdmissiblePrefix,
    App,
    Signature,
    Var,
    enumerate_admissible_prefixes,
    enumerate_orderly_terms,
    is_orderly,
    parse_term,
    substitute,
    term_lt,
    variables_of,
)
