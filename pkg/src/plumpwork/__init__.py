"""Workbench for finite Heyting-valued set models: names, bounded formulas,
plump ordinals, plump arithmetic and the incomparable-map coding."""
from .heyting import (
    HeytingAlgebra, Poset, TruthValue, all_posets, big_join, big_meet, builtin_names,
    check_laws, downset_algebra, get_algebra,
)
from .names import (
    Budget, BudgetExceeded, Context, Name, check_name, check_ordinal_value, empty, eq_value,
    mem_value, normalize, pair_name, subset_names, subset_value, union_name, weighted_union,
)
from .logic import (
    FALSE, TRUE, And, Const, Eq, ExistsIn, ExistsSubset, ForallIn, ForallSubset, Formula,
    Implies, Mem, Not, Or, Sub, Var, evaluate, relpl_formula, relpl_value,
)
from .syntax import ParseError, format_formula, format_name, parse_formula, parse_name
from .plump import (
    is_ord_value, is_thin_value, plord_crit_value, plord_value, plump_op, plump_successor,
    thin_successor, vartheta,
)
from .arith import pair_code, pl_add, pl_mul, pl_pow, pl_pow_literal
from .coding import (
    FiniteMap, MapError, decode_map, encode_map, finite_map, pairwise_incomparable_value,
    reconstruct_sx, sigma_x, strongly_incomparable_value,
)

__version__ = "0.1.0"
