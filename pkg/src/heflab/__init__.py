"""heflab: quasi-Heffter arrays, their rotation-system embeddings of
K_{(v/t) x t}, automorphism/isomorphism machinery, and seeded Monte Carlo
experiments over random fills."""

from .arrays import (
    ArrayVerdict,
    PartiallyFilledArray,
    Skeleton,
    cyclic_diagonal_skeleton,
    random_fill,
    row_major_fill,
    transpose,
    validate_nh,
    validate_qh,
)
from .autiso import (
    AutReport,
    IsoVerdict,
    MorphismVerdict,
    VertexMap,
    aut0_minus,
    aut0_plus,
    diagonal_shift_equivalent,
    embeddings_equal,
    extend_candidate,
    full_aut,
    isomorphic,
    phi_check,
    translation,
    unit_multiplier,
    verify_morphism,
)
from .embedding import (
    DifferenceRotation,
    EmbeddingError,
    Face,
    FaceCensus,
    RotationSystem,
    all_faces,
    build_rho0,
    euler_genus,
    expand,
    face_multiset_formula,
    face_successor,
    generating_line,
    is_single_cycle,
    lambda_of,
    trace_face,
)
from .harness import (
    ExperimentError,
    ExperimentReport,
    ExperimentSpec,
    run_aut_trivial_fraction,
    run_census_consistency,
    run_distinctness,
    run_experiment,
    run_nh_fraction,
)
from .orderings import (
    Orientation,
    OrderingPair,
    composite_step,
    is_compatible,
    knight_walk,
    orderings_from_orientation,
    solve_knight,
)
from .prng import SplitMix64, subseed
from .rings import (
    InvalidRingError,
    Ring,
    Support,
    default_support,
    nonsubgroup_elements,
    random_support,
    subgroup_j,
)

__version__ = "0.1.0"
