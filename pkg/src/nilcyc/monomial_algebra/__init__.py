"""Generalized monomials, the Lie derivative along r d/dr - rho d/drho, and root bounds."""

from .derdiv import (
    CertificateStep,
    LieSingularIdentity,
    RootBoundCertificate,
    bound_p_1,
    bound_p_geq_2,
    certify,
    derivation_division_bound,
    lie_singular,
)
from .io import LeafDomain, certificate_from_dict, certificate_to_dict, sum_from_dict, sum_to_dict
from .monomial import (
    ExponentPair,
    GeneralMonomial,
    OmegaBigFactor,
    OmegaFactor,
    is_resonant_pair,
    lie_monomial,
    monomial,
    reduce_mod_nu,
)
from .numeric import RootCount, count_roots_leaf, dd_step_evaluate, evaluate_sum, lie_evaluate
from .remainder import (
    EXACT_ZERO,
    SMALL_O,
    ConcreteRemainder,
    MonomialSum,
    RemainderClass,
    Term,
    big_o,
    lie_term,
)
from .templates import make_template

__all__ = [
    "CertificateStep",
    "ConcreteRemainder",
    "EXACT_ZERO",
    "ExponentPair",
    "GeneralMonomial",
    "LeafDomain",
    "LieSingularIdentity",
    "MonomialSum",
    "OmegaBigFactor",
    "OmegaFactor",
    "RemainderClass",
    "RootBoundCertificate",
    "RootCount",
    "SMALL_O",
    "Term",
    "big_o",
    "bound_p_1",
    "bound_p_geq_2",
    "certify",
    "certificate_from_dict",
    "certificate_to_dict",
    "count_roots_leaf",
    "dd_step_evaluate",
    "derivation_division_bound",
    "evaluate_sum",
    "is_resonant_pair",
    "lie_evaluate",
    "lie_monomial",
    "lie_singular",
    "lie_term",
    "make_template",
    "monomial",
    "reduce_mod_nu",
    "sum_from_dict",
    "sum_to_dict",
]
