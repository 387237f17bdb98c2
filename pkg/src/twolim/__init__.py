"""Glued categories over finite indexes: filtered colimit-style and finite
limit-style constructions for category-valued diagrams, canonical comparison
functors, and constructive equivalence verification."""

from .errors import TwolimError
from .fincat import (
    FinCategory,
    FinFunctor,
    NatTransformation,
    build_category,
    cocone_and_equalize,
    cospan_category,
    is_filtered,
    opposite_category,
    validate_category,
    validate_functor,
    validate_nat,
)
from .setdiag import (
    BiSetDiagram,
    ColimSet,
    LimSet,
    SetDiagram,
    colim_set,
    interchange_map_set,
    lim_set,
)
from .pseudo import (
    BiIndexedPseudoFunctor,
    PseudoFunctor,
    PseudoNat,
    product_index,
    slice_at,
    strict_bi_pseudofunctor,
    strict_pseudofunctor,
    validate_pseudofunctor,
)
from .bicolim import (
    Cocone,
    LaxFactorization,
    Modification,
    TwoColimCategory,
    build_2colim,
    colim_hom_class,
    compose_in_colim,
    induced_functor_colim,
    modification_nat,
    strong_factor_colim,
)
from .bilim import (
    Cone,
    TwoLimCategory,
    TwoLimObject,
    build_2lim,
    check_object_conditions,
    induced_functor_lim,
    lim_hom_family,
    strong_factor_lim,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
