"""Affine structures on finite topological spaces.

Small commutative rings and their spectra, pseudogroups of ring
isomorphisms, affine atlases, the schemes they extend to, and the
relations between structure sets on different spaces.
"""

from .atlas import (
    AffineChart,
    AtlasData,
    StructureHandle,
    compatible,
    enumerate_charts,
    same_structure,
    validate_atlas,
)
from .pseudogroup import Pseudogroup, Universe, close, contains_iso, is_k_pseudogroup
from .rings import (
    GaloisQuotient,
    NumberField,
    PolyQuotient,
    Product,
    RingPresentation,
    Zmod,
    check_hom,
    enumerate_ideals,
    find_isos,
    iso_search,
    localize,
    make_ring,
    ring,
)
from .sheaf import (
    a_star,
    affine_scheme,
    associate_scheme,
    build_extension,
    canonical_generators,
    extensions_isomorphic,
    relative_canonical_structure,
    unique_structure_check,
)
from .spectrum import TopSpace, spec, spec_functor

__all__ = [
    "AffineChart",
    "AtlasData",
    "GaloisQuotient",
    "NumberField",
    "PolyQuotient",
    "Product",
    "Pseudogroup",
    "RingPresentation",
    "StructureHandle",
    "TopSpace",
    "Universe",
    "Zmod",
    "a_star",
    "affine_scheme",
    "associate_scheme",
    "build_extension",
    "canonical_generators",
    "check_hom",
    "close",
    "compatible",
    "contains_iso",
    "enumerate_charts",
    "enumerate_ideals",
    "extensions_isomorphic",
    "find_isos",
    "is_k_pseudogroup",
    "iso_search",
    "localize",
    "make_ring",
    "relative_canonical_structure",
    "ring",
    "same_structure",
    "spec",
    "spec_functor",
    "unique_structure_check",
    "validate_atlas",
]
