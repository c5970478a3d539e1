"""Operator identities via noncommutative ideal membership and quiver compatibility."""

from .free_algebra import DEGLEX, Alphabet, MonomialOrder, Polynomial
from .groebner import GBConfig, MembershipCertificate, buchberger, membership_certificate
from .quiver import Consistency, LabelledQuiver, SignatureSet
from .representation import QuiverRepresentation, realize, verify_theorem_instance
from .rewriting import reduce, rewrite_step
from .theorem import (
    ProofCertificate,
    ProofStatus,
    check_certificate,
    prove_identity,
    q_consequence_decomposition,
)
from .textio import parse_certificate, parse_polynomial, parse_problem, serialize_certificate

__version__ = "0.1.0"

__all__ = [
    "DEGLEX", "Alphabet", "MonomialOrder", "Polynomial",
    "GBConfig", "MembershipCertificate", "buchberger", "membership_certificate",
    "Consistency", "LabelledQuiver", "SignatureSet",
    "QuiverRepresentation", "realize", "verify_theorem_instance",
    "reduce", "rewrite_step",
    "ProofCertificate", "ProofStatus", "check_certificate", "prove_identity", "q_consequence_decomposition",
    "parse_certificate", "parse_polynomial", "parse_problem", "serialize_certificate",
]
