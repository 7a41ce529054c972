"""Finite automata, rational transductions, and linear languages over
inverse-closed alphabets, with the two constructions relating prefix-closed
combings with uniqueness to linear languages of kernel generators carrying
significant letters."""

from .words import (
    Alphabet,
    Word,
    center_distance,
    free_reduce,
    invert_word,
    shortlex_compare,
    shortlex_key,
)
from .nfa import (
    Nfa,
    accepts,
    concat,
    difference,
    difference_witness,
    enumerate_words,
    equivalent,
    freely_reduced_lang,
    from_word,
    from_words,
    intersection,
    inverse_lang,
    is_empty_language,
    minimize,
    remove_epsilon,
    renumber_bfs,
    reverse,
    sigma_star,
    split_decomposition,
    trim,
    union,
)
from .transducer import (
    Transducer,
    accepts_pair,
    check_balanced_cycles,
    enumerate_pairs,
    from_pairs,
    identity_of,
    intersect_rect,
    project,
    strip_epsilon_cycles,
    synchronized_bound,
)
from .linear import (
    LinearLanguage,
    combine_linear,
    convert_mode,
    enumerate_members,
    intersect_regular,
    invert_linear,
    member,
)
from .oracle import (
    AbelianOracle,
    CapExceeded,
    CayleyBall,
    FiniteOracle,
    FreeOracle,
    GroupOracle,
    ball,
    cayley_transducer,
    distance,
    ft_distance,
)
from .structures import (
    BuildReport,
    CentralReport,
    CombingReport,
    SigViolation,
    SigWord,
    build_combing,
    check_central,
    check_combing,
    check_significant,
    core_subgraph,
    extract_generators,
    ft_bound_of_combing,
    search_significant,
)
from .fileformat import FormatError, parse, parse_file, write, write_file

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "Word",
    "center_distance",
    "free_reduce",
    "invert_word",
    "shortlex_compare",
    "shortlex_key",
    "Nfa",
    "accepts",
    "concat",
    "difference",
    "difference_witness",
    "enumerate_words",
    "equivalent",
    "freely_reduced_lang",
    "from_word",
    "from_words",
    "intersection",
    "inverse_lang",
    "is_empty_language",
    "minimize",
    "remove_epsilon",
    "renumber_bfs",
    "reverse",
    "sigma_star",
    "split_decomposition",
    "trim",
    "union",
    "Transducer",
    "accepts_pair",
    "check_balanced_cycles",
    "enumerate_pairs",
    "from_pairs",
    "identity_of",
    "intersect_rect",
    "project",
    "strip_epsilon_cycles",
    "synchronized_bound",
    "LinearLanguage",
    "combine_linear",
    "convert_mode",
    "enumerate_members",
    "intersect_regular",
    "invert_linear",
    "member",
    "AbelianOracle",
    "CapExceeded",
    "CayleyBall",
    "FiniteOracle",
    "FreeOracle",
    "GroupOracle",
    "ball",
    "cayley_transducer",
    "distance",
    "ft_distance",
    "BuildReport",
    "CentralReport",
    "CombingReport",
    "SigViolation",
    "SigWord",
    "build_combing",
    "check_central",
    "check_combing",
    "check_significant",
    "core_subgraph",
    "extract_generators",
    "ft_bound_of_combing",
    "search_significant",
    "FormatError",
    "parse",
    "parse_file",
    "write",
    "write_file",
]
