"""Exact-arithmetic algebras of conjugacy classes of partial symmetries.

The package builds finite truncations of the algebra spanned by classes of
partial elements of (possibly decorated) symmetric groups, computes all
structure constants by enumeration over explicit finite groups, and checks
the identities tying them to centers of group algebras as exact integer
equalities.
"""

from .center_algebra import (
    CenterBasisLabel,
    center_basis,
    center_basis_vector,
    center_product,
    center_product_oracle,
    center_unit,
    class_size,
    s_constant,
)
from .correspondence import (
    AuditReport,
    AuditWitness,
    FamilySpec,
    InversionRecord,
    MainLemmaRecord,
    RSystem,
    admissibility_audit,
    build_r_system,
    parse_family,
    phi,
    phi_oracle,
    phi_preimage,
    solve_p_from_s,
    verify_inversion,
    verify_main_lemma,
    xi_closed_form,
    xi_count_oracle,
)
from .errors import (
    BudgetExceeded,
    ClassAlgError,
    GroupTableError,
    InvalidLabel,
    LevelMismatch,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotClosed,
    ParseError,
    UnknownBuiltin,
    WrongBaseGroup,
)
from .finite_group import (
    TRIVIAL,
    FiniteGroup,
    builtin_group,
    conjugacy_classes,
    load_group,
    load_group_file,
)
from .partial_algebra import (
    AlgebraVector,
    OmegaLabel,
    PartialElement,
    basis_vector,
    enumerate_omega_class,
    enumerate_partial_elements,
    ik_product,
    omega_of,
    p_constant,
    p_constant_all_representatives,
    partial_element,
    partial_orbit_oracle,
    partial_str,
    pmultiply,
    product_oracle,
    project,
    truncation_basis,
    unit_vector,
)
from .wreath import (
    ClassLabel,
    GroupElement,
    class_label,
    class_label_representative,
    conjugate,
    conjugation_orbits,
    d_type_membership,
    element_str,
    enumerate_elements,
    group_order,
    identity_element,
    inverse,
    labels_with_alpha_up_to,
    level_group,
    mask_points,
    mask_str,
    multiply,
    promote,
    support,
)

__version__ = "0.1.0"
