"""Character sums over Z3 with quadratic forms over Z2.

Thin wrapper over the C++ core: forms and Witt decomposition, character
tables and expansions, MOD-gate circuit converters, group programs, and
the sampling/enumeration experiments.
"""

from ._core import (
    CapacityError,
    CharacterSum,
    Circuit,
    FunctionTable,
    InputError,
    LinearForm,
    MultilinearPoly,
    ParseError,
    Permutation,
    QuadraticForm,
    VerificationError,
    WeightWitness,
    WittDecomposition,
    and_product_construction,
    and_table,
    bfs_min_weight,
    character_table,
    characters_to_depth2,
    characters_to_depth3,
    check_tradeoff,
    closure,
    depth2_to_characters,
    depth3_to_characters,
    enumerate_weight3,
    eval_g72_program,
    expand_character,
    expand_to_full_rank,
    family_support_profile,
    g72_generators,
    g72_word,
    interpolate,
    occupancy_grid,
    pair_sums_to_and,
    poly_degree,
    random_form,
    sample_histogram,
    scan_complementary_pairs,
    shift_sum,
    sum_table,
    witt_class_sizes,
    witt_decompose,
    witt_normal_form,
    witt_rank,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CharacterSum",
    "Circuit",
    "FunctionTable",
    "InputError",
    "LinearForm",
    "MultilinearPoly",
    "ParseError",
    "Permutation",
    "QuadraticForm",
    "VerificationError",
    "WeightWitness",
    "WittDecomposition",
    "and_product_construction",
    "and_table",
    "bfs_min_weight",
    "character_table",
    "characters_to_depth2",
    "characters_to_depth3",
    "check_tradeoff",
    "closure",
    "depth2_to_characters",
    "depth3_to_characters",
    "enumerate_weight3",
    "eval_g72_program",
    "expand_character",
    "expand_to_full_rank",
    "family_support_profile",
    "g72_generators",
    "g72_word",
    "interpolate",
    "occupancy_grid",
    "pair_sums_to_and",
    "poly_degree",
    "random_form",
    "sample_histogram",
    "scan_complementary_pairs",
    "shift_sum",
    "sum_table",
    "witt_class_sizes",
    "witt_decompose",
    "witt_normal_form",
    "witt_rank",
]
