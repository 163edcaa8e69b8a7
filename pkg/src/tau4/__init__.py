"""Exact tau_4 invariants of 3-manifolds from framed links, with the
supporting algebra: cyclotomic integers, GF(2) linear algebra, Z/4
enhancements and their Brown invariants, Conway polynomials of PD
diagrams, and the counting reduction from 3-CNF formulas to cubic forms.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .cyclo import CycloInt, I, OMEGA, SQRT2
from .enhanced import (
    A,
    INFINITY,
    BrownValue,
    EnhancedSpace,
    P,
    T,
    brown,
    class_tuple,
    direct_sum,
    gauss_sum,
    normal_form,
)
from .errors import (
    BoundExceededError,
    InconsistentDataError,
    NotCharacteristicError,
    NotStablyDiagonalizableError,
    NotTotallyProperError,
    Tau4Error,
    ValidationError,
)
from .intmat import signature, stable_diagonalize, verify_certificate
from .pd import PDLink, delete_components, from_braid, linking_matrix
from .conway import c1, conway
from .invariants import (
    ImmersionData,
    LinkInvariantModel,
    arf_hoste_murakami,
    arf_theorem11,
    brown_of_proper_link,
    brown_totally_proper_model,
    mu_invariant,
    theorem4_combine,
)
from .surgery import (
    Sublink,
    Tau4Result,
    characteristic_sublinks,
    tau4_diagonalize_and_product,
    tau4_exponential,
    tau4_of_model,
    tau4_product,
    tau4_spin_sum,
)
from .sat import (
    CNF3,
    CubicForm,
    GF2Poly,
    QuadSystem,
    cnf_to_cubic_system,
    count_models,
    count_zeros,
    cubic_to_model,
    parse_dimacs,
    tau4_of_cubic,
    to_quad_system,
    to_single_cubic,
)
from .tangles import cubic_to_pdlink
