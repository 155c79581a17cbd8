"""Localization of finite categories by a calculus of fractions."""

from .additive import (
    BiproductDiagram,
    PreadditiveStructure,
    add_roofs,
    check_additive_localization,
    check_L2_doubleprime,
    common_denominator,
    find_biproduct,
    induced_preadditive,
    negate_roof,
    validate_preadditive,
    zero_roof,
)
from .category import (
    FiniteCategory,
    Functor,
    MorphClass,
    Morphism,
    ValidationReport,
    check_functor,
    compose_functors,
    identity_functor,
    is_iso,
    opposite,
    split_monos,
    validate_category,
)
from .errors import (
    AxiomFailure,
    BoundsError,
    CatFracError,
    ComposabilityError,
    Disagreement,
    NotLocal,
    NoWitness,
    ParallelismError,
    ParseError,
)
from .fileformat import CategoryData, load_category, parse_category, parse_functor, serialize_category
from .fractions import (
    AxiomReport,
    EquivWitness,
    FractionCategory,
    L1Witness,
    Roof,
    check_axioms,
    check_L0,
    check_L1,
    check_L1_prime,
    check_L2,
    check_L2_prime,
    compose_roofs,
    factor_functor,
    find_k,
    generate_WL,
    l1_complete,
    localize,
    localize_right,
    roof_equivalent,
    roof_equivalent_generated,
    roof_equivalent_weak,
    saturate,
)
from .oracle import Literal, LiteralString, oracle_compare, rewrite_step, word_equal

__all__ = [name for name in dir() if not name.startswith("_")]
