"""Separation systems, tree sets, and their tree representations."""

from .errors import *  # noqa: F401,F403
from .orientations import (
    Orientation,
    enumerate_orientations,
    extend,
    is_consistent,
    is_splitting,
    is_star,
    lies_in_splitting_star,
    make_orientation,
    orientation_of,
    star_of,
)
from .presented import (
    ChainTreePresentation,
    Interval,
    OrderTypeLabel,
    PresentedElement,
    PresentedTLS,
    Vertex,
    build_tls,
    compare,
    contract,
    contraction,
    presentation,
    pseudo_arc,
    realize_tame_tree,
    splitting_status,
    subbase_member,
    tame_check,
    truncate,
)
from .separations import (
    SeparationSystem,
    build_system,
    check_isomorphism,
    classify,
    nested,
    validate_tree_set,
)
from .trees import (
    MinorModel,
    Tree,
    edge_tree_set,
    flip_path,
    minor_subset,
    roundtrip_tau,
    roundtrip_tree,
    subset_minor,
    tree_of,
)

__version__ = "0.1.0"
