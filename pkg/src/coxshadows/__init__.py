"""Shadows of positively folded galleries in finite and affine Weyl groups.

The group lives in exact integer coordinates (``coxeter``), orientations
put signs on the two sides of every wall (``orientations``), galleries
are words with fold marks (``galleries``), and shadows collect the end
alcoves of the positive foldings (``shadows``), computed either by the
exponential sweep or by the two linear recursions.  ``oracles`` rechecks
everything against independent re-derivations, ``render`` draws rank-2
scenes, ``cli`` wires it all to the command line.
"""

from .coxeter import (
    CoxeterDatum,
    GroupElement,
    Hyperplane,
    Panel,
    build_datum,
    datum_from_tag,
    descents,
    element_from_json,
    element_from_word,
    element_to_json,
    is_reflection,
    length,
    multiply,
    reduced_word,
    reflection_length,
    separating_hyperplanes,
    side_of,
    spherical_projection,
)
from .errors import (
    BoundRequiresWeylOrientation,
    CoxshadowsError,
    Exceeded,
    LengthNotAdditive,
    NotADescent,
    NotAffine,
    NotIncident,
    NotPeriodic,
    NotWallConsistent,
    PositionOutOfRange,
    RenderUnsupported,
    UnsupportedType,
    WordTooLong,
)
from .galleries import (
    DecoratedWord,
    Gallery,
    act_on_gallery,
    end_alcove,
    fold,
    footprint,
    gallery_from,
    is_minimal,
    is_positively_folded,
    minimal_gallery,
    multifold,
)
from .orientations import (
    AlcoveOrientation,
    CustomTableOrientation,
    Direction,
    Orientation,
    PeriodicOrientation,
    Simplex,
    SimplexOrientation,
    TrivialOrientation,
    WeylChamberOrientation,
    act,
    affine_orientation,
    alcove_orientation,
    boundary_orientation,
    braid_sensitive_orientation,
    chamber_orientation,
    dominant_orientation,
    evaluate,
    is_dominant,
    orientation_from_tag,
    positive_side,
    simplex_orientation,
    trivial_orientation,
    valuation,
)
from .shadows import (
    ShadowSet,
    braid_equivalent_words,
    bruhat_interval,
    compose_partial,
    descent_recursion_step,
    full_shadow,
    is_braid_invariant,
    partial_shadow,
    shadow_L,
    shadow_naive,
    shadow_R,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
