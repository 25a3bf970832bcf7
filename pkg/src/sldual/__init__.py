"""Finite-model workbench for semilattice duality.

Builds dual spaces of finite meet-semilattices, checks the space and
relation axioms, converts between binary-relational and multirelational
presentations, and verifies the duality and category-isomorphism laws as
executable properties on finite instances.
"""

from .errors import (
    BudgetExhausted,
    CarrierMismatch,
    CertificationError,
    InputError,
    InvalidStructure,
    UnverifiedSpace,
    WorkbenchError,
)
from .order import (
    FinitePoset,
    MonotoneMap,
    check_adjunction,
    find_left_adjoint,
    is_dually_directed,
    principal_upset,
)
from .semilattice import (
    FiniteSemilattice,
    ModalSemilattice,
    MonotoneSemilattice,
    SemilatticeHom,
    Slata,
    check_hom,
    enumerate_filters,
    enumerate_order_ideals,
    hom_compose,
    identity_hom,
    is_modal_op,
    is_monotone_op,
    slata_hom_criterion,
    validate_semilattice,
    validate_slata,
)
from .sspace import (
    FiniteSpace,
    SpaceReport,
    check_s_axioms,
    closure,
    closure_system,
    d_family,
    down_set,
    dual_specialization,
    l_family,
    saturated_subbasics,
    subbasic_closed,
)
from .relations import (
    BinaryRelation,
    RelSSpace,
    box,
    box_star,
    dual_order_relation,
    is_a_relation,
    is_adjoint_preserving,
    is_compatible,
    is_meet_relation,
    star_compose,
)
from .multirel import (
    Multirelation,
    SigmaRelation,
    SlataSpace,
    check_ms_space,
    check_sigma_space,
    check_slata_space,
    is_monotone_meet_relation,
    is_normal,
    m_of_multirel,
    m_of_sigma,
    meet_from_normal,
    multirel_from_meet,
    multirel_from_sigma,
    psi,
    sigma_from_meet,
)
from .duality import (
    DualSpaceBundle,
    PointFilterMap,
    dual_space,
    filter_closed_correspondence,
    functor_m,
    functor_p,
    functor_q,
    functor_r,
    functor_r_hom,
    h_map,
    i_relation,
    i_relation_inverse,
    multirel_of_monotone,
    relation_of_hom,
    sigma_of_monotone,
    verify_roundtrips,
)

__version__ = "0.1.0"
