"""Structural descriptions of suborder-closed classes of SP posets.

Given a finite list of forbidden suborders, synthesize a finite
recursive system of two-point labeled construction rules generating
exactly the series-parallel posets avoiding them, and verify the result
by exhaustive enumeration at desk scale.
"""

from .terms import (
    EMPTY,
    POINT,
    PosetRelation,
    ResourceLimitError,
    SpTerm,
    TermParseError,
    antichain_sum,
    canonicalize,
    chain_sum,
    compare,
    enumerate_sp,
    enumerate_sp_by_closure,
    finest_antichain_rep,
    finest_chain_rep,
    is_suborder,
    parse_term,
    print_term,
    size,
    to_relation,
)
from .ideals import (
    ALL_SP_IDEAL,
    EMPTY_ONLY_IDEAL,
    VOID_IDEAL,
    Ideal,
    contains_ideal,
    ideal_key,
    intersect,
    load_obstruction_file,
    make_ideal,
    member,
    members_upto,
    parse_obstruction_lines,
)
from .bits import (
    Bit,
    DocumentFormatError,
    Entry,
    IdealRef,
    R,
    R_ANTICHAIN_BIT,
    R_CHAIN_BIT,
    StructuralDescription,
    UnknownIdealKeyError,
    antichain_bit,
    chain_bit,
    deserialize,
    from_json,
    make_entry,
    rank,
    serialize,
    to_dot,
    to_json,
    validate,
)
from .closure import GeneratedSet, generate_upto, member_topdown
from .synth import (
    BlockCapError,
    ComponentBlocks,
    DegenerateIdealError,
    StrictDecreaseError,
    SynthesisError,
    antichain_bit_set,
    chain_bit_set_multi,
    chain_bit_set_single,
    component_blocks,
    mixed_bit_set,
    normalize_bit,
    prune_dominated,
    synthesize,
)
from .oracle import (
    EquivalenceReport,
    SizeGuardError,
    avoiders_upto,
    brute_embed,
    diamond_free_shape,
    verify_equivalence,
)

__all__ = [
    "ALL_SP_IDEAL",
    "Bit",
    "BlockCapError",
    "ComponentBlocks",
    "DegenerateIdealError",
    "DocumentFormatError",
    "EMPTY",
    "EMPTY_ONLY_IDEAL",
    "Entry",
    "EquivalenceReport",
    "GeneratedSet",
    "Ideal",
    "IdealRef",
    "POINT",
    "PosetRelation",
    "R",
    "R_ANTICHAIN_BIT",
    "R_CHAIN_BIT",
    "ResourceLimitError",
    "SizeGuardError",
    "SpTerm",
    "StrictDecreaseError",
    "StructuralDescription",
    "SynthesisError",
    "TermParseError",
    "UnknownIdealKeyError",
    "VOID_IDEAL",
    "antichain_bit",
    "antichain_bit_set",
    "antichain_sum",
    "avoiders_upto",
    "brute_embed",
    "canonicalize",
    "chain_bit",
    "chain_bit_set_multi",
    "chain_bit_set_single",
    "chain_sum",
    "compare",
    "component_blocks",
    "contains_ideal",
    "deserialize",
    "diamond_free_shape",
    "enumerate_sp",
    "enumerate_sp_by_closure",
    "finest_antichain_rep",
    "finest_chain_rep",
    "from_json",
    "generate_upto",
    "ideal_key",
    "intersect",
    "is_suborder",
    "load_obstruction_file",
    "make_entry",
    "make_ideal",
    "member",
    "member_topdown",
    "members_upto",
    "mixed_bit_set",
    "normalize_bit",
    "parse_obstruction_lines",
    "parse_term",
    "print_term",
    "prune_dominated",
    "rank",
    "serialize",
    "size",
    "synthesize",
    "to_dot",
    "to_json",
    "to_relation",
    "validate",
    "verify_equivalence",
]
