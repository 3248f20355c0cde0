"""Exact equiresidual affine geometry: normic forms, signatures, equiradicals and section algebras."""

__version__ = "0.1.0"

from .errors import (
    AlgebraError,
    AmbientMismatch,
    ArityMismatch,
    CertificateInvalid,
    CommonZeroExists,
    DenominatorVanishes,
    DescriptorMismatch,
    DivisionByZero,
    HasRationalRoot,
    ImageNotInTarget,
    InfiniteField,
    InvalidField,
    NonSpecialAmbient,
    NonUnivariate,
    NotSpecialMaximal,
    ParseError,
    PointNotOnVariety,
    ResourceLimit,
    ZeroFunction,
    ZeroPolynomial,
)
from .exactfield import GF, QQ, FieldDescriptor, FieldValue
from .multipoly import GRLEX, LEX, ExponentOrder, MultiPoly
from .ideals import IdealHandle, buchberger, intersect, macaulay_member, vanishing_ideal
from .varieties import CoordRingElem, Variety
from .signature import (
    CanonicalLoc,
    FunctionField,
    LocFraction,
    NormicForm,
    OneElementLoc,
    SigmaElement,
    SignatureCert,
    default_binary_normic,
    in_signature,
    is_special_ideal_cert,
    is_star_algebra,
    m_element,
    normic_compose,
    normic_from_galois,
    normic_from_minpoly,
    sigma_element,
    signature_from_no_common_zero,
    signature_from_normic,
)
from .geometry import (
    SpmPoint,
    equiradical_certificate,
    equiradical_oracle,
    has_rational_zero,
    rabinowitsch_embed,
    special_maximal_to_point,
    zero_set,
)
from .sheafdual import (
    RegularMap,
    duality_check_f,
    duality_check_phi,
    section_from_fraction,
    sections_isomorphism_check,
    spm,
    stalk_at,
)
from .textio import parse_field, parse_input, parse_poly
from .suites import run_suite

__all__ = [
    "AlgebraError",
    "DescriptorMismatch",
    "DivisionByZero",
    "InfiniteField",
    "InvalidField",
    "ArityMismatch",
    "ZeroPolynomial",
    "NonUnivariate",
    "ResourceLimit",
    "HasRationalRoot",
    "CommonZeroExists",
    "CertificateInvalid",
    "AmbientMismatch",
    "NonSpecialAmbient",
    "NotSpecialMaximal",
    "ZeroFunction",
    "PointNotOnVariety",
    "DenominatorVanishes",
    "ImageNotInTarget",
    "ParseError",
    "GF",
    "QQ",
    "FieldDescriptor",
    "FieldValue",
    "GRLEX",
    "LEX",
    "ExponentOrder",
    "MultiPoly",
    "IdealHandle",
    "buchberger",
    "intersect",
    "macaulay_member",
    "vanishing_ideal",
    "CoordRingElem",
    "Variety",
    "CanonicalLoc",
    "FunctionField",
    "LocFraction",
    "NormicForm",
    "OneElementLoc",
    "SigmaElement",
    "SignatureCert",
    "default_binary_normic",
    "in_signature",
    "is_special_ideal_cert",
    "is_star_algebra",
    "m_element",
    "normic_compose",
    "normic_from_galois",
    "normic_from_minpoly",
    "sigma_element",
    "signature_from_no_common_zero",
    "signature_from_normic",
    "SpmPoint",
    "equiradical_certificate",
    "equiradical_oracle",
    "has_rational_zero",
    "rabinowitsch_embed",
    "special_maximal_to_point",
    "zero_set",
    "RegularMap",
    "duality_check_f",
    "duality_check_phi",
    "section_from_fraction",
    "sections_isomorphism_check",
    "spm",
    "stalk_at",
    "parse_field",
    "parse_input",
    "parse_poly",
    "run_suite",
]
