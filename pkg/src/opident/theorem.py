"""Proof certificates for operator identities.

A claim ``f`` follows from assumptions ``F`` for every consistent quiver
representation once three facts are established: ``f`` lies in the ideal
``(F)``, every element of ``F`` is uniformly compatible with the quiver, and
``f`` is compatible with it.  :func:`prove_identity` establishes them and
:func:`check_certificate` re-verifies a certificate without completion.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .free_algebra import Alphabet, AlphabetMismatch, Polynomial, Word
from .groebner import GBConfig, MembershipCertificate, membership_certificate
from .quiver import Consistency, LabelledQuiver, SignatureSet
from .rewriting import reduce


@dataclass(frozen=True)
class CompatibilityReport:
    assumptions_uniform: tuple[bool, ...]
    assumption_signatures: tuple[SignatureSet, ...]
    claim_compatible: bool
    claim_signature: SignatureSet

    @classmethod
    def compute(cls, Q: LabelledQuiver, F: Sequence[Polynomial], f: Polynomial) -> "CompatibilityReport":
        return cls(
            tuple(Q.is_uniformly_compatible(g) for g in F),
            tuple(Q.signature_of_poly(g) for g in F),
            Q.is_compatible(f),
            Q.signature_of_poly(f),
        )

    @property
    def ok(self) -> bool:
        return all(self.assumptions_uniform) and self.claim_compatible

    def first_failure(self) -> str | None:
        for k, u in enumerate(self.assumptions_uniform):
            if not u:
                return f"assumption {k} is not uniformly compatible"
        if not self.claim_compatible:
            return "claim is not compatible"
        return None


@dataclass(frozen=True)
class ProofCertificate:
    """Self-contained evidence; ``quiver`` is None for membership-only proofs."""

    alphabet: Alphabet
    assumption_names: Sequence[str]
    assumptions: Sequence[Polynomial]
    claim: Polynomial
    membership: MembershipCertificate
    quiver: LabelledQuiver | None = None
    compat: CompatibilityReport | None = None
    consistency: Consistency | None = None

    @property
    def membership_only(self) -> bool:
        return self.quiver is None

    def __eq__(self, other):
        if not isinstance(other, ProofCertificate):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and list(self.assumption_names) == list(other.assumption_names)
            and list(self.assumptions) == list(other.assumptions)
            and self.claim == other.claim
            and self.membership == other.membership
            and self.quiver == other.quiver
            and self.compat == other.compat
            and self.consistency == other.consistency
        )

    __hash__ = None


class ProofStatus(enum.Enum):
    PROVED = "Proved"
    FAILED_COMPAT = "FailedCompat"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ProofAttempt:
    status: ProofStatus
    certificate: ProofCertificate | None = None
    report: CompatibilityReport | None = None


def _check_alphabets(f, F, Q):
    for g in F:
        if g.alphabet != f.alphabet:
            raise AlphabetMismatch("assumption over a different alphabet")
    if Q is not None and Q.alphabet != f.alphabet:
        raise AlphabetMismatch("quiver labels use a different alphabet")


def prove_identity(f: Polynomial, F: Sequence[Polynomial], Q: LabelledQuiver | None,
                   cfg: GBConfig = GBConfig(), names: Sequence[str] | None = None) -> ProofAttempt:
    """Compatibility first (cheap), then ideal membership.

    With ``Q`` None only membership is certified.
    """
    _check_alphabets(f, F, Q)
    names = list(names) if names is not None else [f"f{k + 1}" for k in range(len(F))]
    report = None
    if Q is not None:
        report = CompatibilityReport.compute(Q, F, f)
        if not report.ok:
            return ProofAttempt(ProofStatus.FAILED_COMPAT, report=report)
    if not F:
        if f:
            return ProofAttempt(ProofStatus.INCONCLUSIVE, report=report)
        mc = MembershipCertificate(f, (), ())
    else:
        mc = membership_certificate(f, F, cfg)
        if mc is None:
            return ProofAttempt(ProofStatus.INCONCLUSIVE, report=report)
    cert = ProofCertificate(
        f.alphabet, tuple(names), tuple(F), f, mc, Q, report,
        Q.structural_consistency() if Q is not None else None,
    )
    return ProofAttempt(ProofStatus.PROVED, cert, report)


class CheckResult(NamedTuple):
    valid: bool
    reason: str | None = None

    def __bool__(self):
        return self.valid


def check_certificate(cert: ProofCertificate) -> CheckResult:
    """Recompute recombination, compatibility and fingerprints."""
    F, f = list(cert.assumptions), cert.claim
    try:
        _check_alphabets(f, F, cert.quiver)
    except AlphabetMismatch as e:
        return CheckResult(False, f"alphabet: {e}")
    mc = cert.membership
    if mc.claim != f:
        return CheckResult(False, "membership certificate is for a different claim")
    if any(not 0 <= s.index < len(F) for s in mc.summands):
        return CheckResult(False, "summand refers to a missing generator")
    if not mc.is_normalized():
        return CheckResult(False, "summands are not normalized")
    if mc.recombine(F) != f:
        return CheckResult(False, "recombination mismatch")
    if cert.quiver is not None:
        Q = cert.quiver
        report = CompatibilityReport.compute(Q, F, f)
        failure = report.first_failure()
        if failure:
            return CheckResult(False, f"compatibility: {failure}")
        if cert.compat != report:
            return CheckResult(False, "compatibility: stored report differs from recomputation")
        if cert.consistency != Q.structural_consistency():
            return CheckResult(False, "stored structural consistency verdict differs")
    elif cert.compat is not None:
        return CheckResult(False, "compatibility report without a quiver")
    if tuple(mc.fingerprints) != tuple(g.fingerprint() for g in F):
        return CheckResult(False, "fingerprint mismatch")
    return CheckResult(True)


@dataclass(frozen=True)
class QSummand:
    coeff: Fraction
    left: Word
    index: int
    right: Word
    signature: SignatureSet  # sigma(left * F[index] * right)


@dataclass(frozen=True)
class QConsequenceDecomposition:
    """``f == sum(coeff * left * F[index] * right)`` with every summand
    uniformly compatible and its signature containing sigma(f)."""

    summands: tuple[QSummand, ...]

    def recombine(self, F: Sequence[Polynomial], alphabet: Alphabet) -> Polynomial:
        out = Polynomial.zero(alphabet)
        for s in self.summands:
            out = out + F[s.index].sandwich(s.left, s.right, s.coeff)
        return out

    def verify(self, f: Polynomial, F: Sequence[Polynomial], Q: LabelledQuiver) -> str | None:
        """None if every invariant holds, else a description of the first failure."""
        if self.recombine(F, f.alphabet) != f:
            return "decomposition does not sum to the claim"
        target = Q.signature_of_poly(f)
        A = f.alphabet
        for n, s in enumerate(self.summands):
            a = Polynomial.monomial(A, s.left)
            b = Polynomial.monomial(A, s.right)
            agb = F[s.index].sandwich(s.left, s.right)
            for what, p in (("left cofactor", a), ("right cofactor", b), ("summand", agb)):
                if not Q.is_uniformly_compatible(p):
                    return f"summand {n}: {what} is not uniformly compatible"
            sig = Q.signature_of_poly(agb)
            if sig != s.signature:
                return f"summand {n}: recorded signature is wrong"
            if not sig >= target:
                return f"summand {n}: signature does not contain sigma(f)"
        return None


def q_consequence_decomposition(f: Polynomial, F: Sequence[Polynomial], Q: LabelledQuiver,
                                cfg: GBConfig = GBConfig()) -> QConsequenceDecomposition | None:
    """Rewrite ``f`` to zero with ``F`` itself and read the decomposition off the trace.

    Returns None (inconclusive) if direct reduction leaves a remainder.
    """
    _check_alphabets(f, F, Q)
    if not Q.is_compatible(f):
        raise ValueError("claim must be compatible with the quiver")
    for k, g in enumerate(F):
        if not Q.is_uniformly_compatible(g):
            raise ValueError(f"assumption {k} must be uniformly compatible")
    if not f:
        return QConsequenceDecomposition(())
    if not F:
        return None
    keep = [k for k, g in enumerate(F) if g]
    res = reduce(f, [F[k] for k in keep], cfg.order)
    if res.normal_form:
        return None
    summands = tuple(
        QSummand(-s.coeff, s.left, keep[s.index], s.right,
                 Q.signature_of_poly(F[keep[s.index]].sandwich(s.left, s.right)))
        for s in res.trace
    )
    dec = QConsequenceDecomposition(summands)
    failure = dec.verify(f, F, Q)
    if failure:
        raise RuntimeError(f"Q-consequence decomposition failed verification: {failure}")
    return dec
