"""parity-kit: parity functors and derived invariants of chord diagrams.

Gauss-diagram data model for free, flat, and virtual knots; Reidemeister
move calculus with crossing correspondences; the oriented Gaussian,
index, and homological parity functors; Carter-surface topology; and the
linking invariants built on top of them.
"""

from .diagrams import (
    Arc,
    BadPairing,
    ChordDiagram,
    CorpusEntry,
    Flavor,
    GroupMismatch,
    Half,
    IllegalProjection,
    InapplicableMove,
    InconsistentDecoration,
    MalformedToken,
    MissingBasepoint,
    ParityKitError,
    SizeLimit,
    UnknownChord,
    WrongFlavor,
    half,
    linked,
    load_corpus,
    parse_gauss_code,
    project,
    separating_arcs,
    serialize,
)
from .surface import (
    Face,
    FaceData,
    FgAbelianGroup,
    GroupPresentation,
    genus,
    homology_group,
    homotopical_parity_words,
    presentation,
    rotation_system,
    smith_normal_form,
    trace_faces,
)
from .parity import (
    AxiomCheck,
    AxiomReport,
    ChordClass,
    ConsistencyError,
    CoefficientGroup,
    CyclicGroup,
    IntegerGroup,
    ParityAssignment,
    TrivialGroup,
    Z2,
    Z4WithClasses,
    check_axioms,
    classify_chords,
    gaussian_parity,
    gaussian_parity_assignment,
    homological_parity,
    index_parity,
    index_parity_assignment,
    oriented_gaussian_parity,
    parity_assignment,
    polygon_identity_holds,
    polygons,
)
from .moves import (
    MoveRecord,
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3Move,
    apply,
    compose_correspondence,
    enumerate_moves,
    format_move,
    inverse,
    parse_move,
    r1_remove_sites,
    r2_remove_sites,
    r3_sites,
    random_walk,
)
from .invariants import (
    GroupAlgebraElement,
    l_odd,
    linking_invariant,
    linking_multiset_signed,
    linking_multisets_unsigned,
    linking_unsigned,
    og_linking_multisets,
    writhe,
)
from .oracle import (
    count_diagrams,
    enumerate_diagrams,
    oracle_classify,
    oracle_face_count,
    oracle_gaussian_parity,
    oracle_genus,
    oracle_linked,
    verify_class_consistency,
    verify_parity_axioms,
)

__version__ = "0.1.0"
