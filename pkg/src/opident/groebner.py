"""Noncommutative Buchberger completion with provenance tracking.

Every basis element remembers how it was built from the input generators as
a sparse linear combination of ``left * F[k] * right`` with word cofactors.
This is what turns a successful reduction into an explicit membership
certificate.
"""

from __future__ import annotations

import enum
import heapq
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .free_algebra import DEGLEX, MonomialOrder, Polynomial, Word
from .rewriting import reduce

log = logging.getLogger(__name__)

# (left word, generator index, right word) -> coefficient
Provenance = dict[tuple[Word, int, Word], Fraction]


class CertificateError(RuntimeError):
    """A certificate failed to recombine; this is always a bug."""


class TracedPoly:
    """A polynomial together with its provenance over the input generators.

    Provenance can be given directly or as ``parts``, a list of
    ``(coeff, left, TracedPoly, right)`` whose sandwiched sum is ``value``.
    In the latter case it is expanded on first access, so elements that
    never contribute to a certificate are never expanded.
    """

    __slots__ = ("value", "_prov", "_parts")

    def __init__(self, value: Polynomial, provenance: Provenance | None = None, parts=None):
        if (provenance is None) == (parts is None):
            raise ValueError("give exactly one of provenance and parts")
        self.value = value
        self._prov = provenance
        self._parts = parts

    @property
    def provenance(self) -> Provenance:
        if self._prov is None:
            prov: Provenance = {}
            for coeff, left, t, right in self._parts:
                _accumulate(prov, t.provenance, left, right, coeff)
            self._prov, self._parts = prov, None
        return self._prov

    def __repr__(self):
        return f"TracedPoly({self.value})"

    @classmethod
    def generator(cls, f: Polynomial, k: int) -> "TracedPoly":
        return cls(f, {((), k, ()): Fraction(1)})

    def expand(self, F: Sequence[Polynomial]) -> Polynomial:
        return expand_provenance(self.provenance, F, self.value.alphabet)


def _accumulate(dst: Provenance, src: Provenance, left: Word, right: Word, coeff: Fraction):
    for (a, k, b), c in src.items():
        key = (left + a, k, b + right)
        s = dst.get(key, 0) + coeff * c
        if s:
            dst[key] = s
        else:
            dst.pop(key, None)


def expand_provenance(prov: Provenance, F: Sequence[Polynomial], alphabet) -> Polynomial:
    out: dict[Word, Fraction] = {}
    for (a, k, b), c in prov.items():
        for w, d in F[k]:
            ww = a + w + b
            s = out.get(ww, 0) + c * d
            if s:
                out[ww] = s
            else:
                out.pop(ww, None)
    return Polynomial._raw(alphabet, out)


class AmbiguityKind(enum.Enum):
    OVERLAP = "Overlap"
    INCLUSION = "Inclusion"


@dataclass(frozen=True)
class Ambiguity:
    """Two leading monomials placed inside one common word.

    ``common == left_i + m_i + right_i == left_j + m_j + right_j``.
    """

    kind: AmbiguityKind
    i: int
    j: int
    common: Word
    left_i: Word
    right_i: Word
    left_j: Word
    right_j: Word

    @property
    def degree(self) -> int:
        return len(self.common)


def _overlaps(m1: Word, m2: Word, i: int, j: int) -> list[Ambiguity]:
    # proper suffix of m1 == proper prefix of m2
    out = []
    for k in range(1, min(len(m1), len(m2))):
        if m1[-k:] == m2[:k]:
            out.append(Ambiguity(AmbiguityKind.OVERLAP, i, j, m1 + m2[k:], (), m2[k:], m1[:-k], ()))
    return out


def _inclusions(m1: Word, m2: Word, i: int, j: int) -> list[Ambiguity]:
    # m2 occurs inside m1
    out = []
    n, k = len(m1), len(m2)
    for p in range(n - k + 1):
        if m1[p:p + k] == m2:
            out.append(Ambiguity(AmbiguityKind.INCLUSION, i, j, m1, (), (), m1[:p], m1[p + k:]))
    return out


def ambiguities(m1: Word, m2: Word, i: int = 0, j: int = 1) -> list[Ambiguity]:
    """All ambiguities between leading monomials ``m1`` (of element i) and ``m2`` (of element j).

    For ``i == j`` only proper self-overlaps are returned.  Otherwise: overlaps
    with m1 on the left, overlaps with m2 on the left, then inclusions of m2
    in m1 and of m1 in m2, each group by position.
    """
    if not m1 or not m2:
        raise ValueError("ambiguities need nonempty words")
    if i == j:
        return _overlaps(m1, m2, i, i)
    out = _overlaps(m1, m2, i, j)
    out += [_swap(a) for a in _overlaps(m2, m1, j, i)]
    out += _inclusions(m1, m2, i, j)
    if m1 != m2:
        out += [_swap(a) for a in _inclusions(m2, m1, j, i)]
    return out


def _swap(a: Ambiguity) -> Ambiguity:
    return Ambiguity(a.kind, a.j, a.i, a.common, a.left_j, a.right_j, a.left_i, a.right_i)


def s_polynomial(amb: Ambiguity, g1: TracedPoly, g2: TracedPoly, order: MonomialOrder = DEGLEX) -> TracedPoly:
    """``left_i*g1*right_i/lc(g1) - left_j*g2*right_j/lc(g2)``, with provenance."""
    c1 = 1 / g1.value.leading(order)[1]
    c2 = -1 / g2.value.leading(order)[1]
    value = g1.value.sandwich(amb.left_i, amb.right_i, c1) + g2.value.sandwich(amb.left_j, amb.right_j, c2)
    return TracedPoly(value, parts=[(c1, amb.left_i, g1, amb.right_i), (c2, amb.left_j, g2, amb.right_j)])


@dataclass(frozen=True)
class GBConfig:
    max_degree: int = 12
    max_iterations: int = 10000
    order: MonomialOrder = DEGLEX
    check_provenance: bool = False

    def __post_init__(self):
        if self.max_degree < 1 or self.max_iterations < 1:
            raise ValueError("GBConfig bounds must be positive")


class CompletionStatus(enum.Enum):
    COMPLETE = "Complete"
    BOUND_REACHED = "BoundReached"


@dataclass
class PartialBasis:
    basis: list[TracedPoly]
    status: CompletionStatus
    iterations: int = 0
    skipped: int = 0  # ambiguities whose S-polynomial exceeds the degree bound
    stopped_early: bool = False  # the caller's stop test fired before the queue emptied

    @property
    def values(self) -> list[Polynomial]:
        return [g.value for g in self.basis]


def _reduce_traced(t: TracedPoly, basis: list[TracedPoly], order) -> TracedPoly:
    res = reduce(t.value, [g.value for g in basis], order)
    parts = [(Fraction(1), (), t, ())]
    parts += [(s.coeff, s.left, basis[s.index], s.right) for s in res.trace]
    return TracedPoly(res.normal_form, parts=parts)


def buchberger(F: Sequence[Polynomial], cfg: GBConfig = GBConfig(), stop=None) -> PartialBasis:
    """Degree-graded completion of ``F``.

    Ambiguities are processed in order of (degree of common word, creation
    index).  An ambiguity whose S-polynomial has degree above
    ``cfg.max_degree`` is skipped, so no polynomial of larger degree is ever
    reduced or added.  Nonzero reduced S-polynomials are made monic and
    appended; the basis is never interreduced.

    ``stop``, if given, is called with the current basis whenever the queue
    moves on to a larger common-word degree; a true result ends completion.
    """
    if not F:
        raise ValueError("buchberger needs at least one generator")
    if any(not f for f in F):
        raise ValueError("generators must be nonzero")
    order = cfg.order
    basis = [TracedPoly.generator(f, k) for k, f in enumerate(F)]
    leads: list[Word] = []
    queue: list = []
    counter = 0
    skipped = 0

    def add_pairs(j):
        nonlocal counter
        mj = leads[j]
        if not mj:
            return  # a nonzero constant reduces everything to zero
        for i in range(j + 1):
            if not leads[i]:
                continue
            for amb in ambiguities(leads[i], mj, i, j):
                heapq.heappush(queue, (amb.degree, counter, amb))
                counter += 1

    for j, g in enumerate(basis):
        leads.append(g.value.leading(order)[0])
        add_pairs(j)

    iterations = 0
    status = CompletionStatus.COMPLETE
    level = 0
    while queue:
        if stop is not None and queue[0][0] > level:
            level = queue[0][0]
            if stop(basis):
                log.info("completion stopped early before degree %d", level)
                return PartialBasis(basis, status, iterations, skipped, True)
        if iterations >= cfg.max_iterations:
            status = CompletionStatus.BOUND_REACHED
            break
        _, _, amb = heapq.heappop(queue)
        iterations += 1
        s = s_polynomial(amb, basis[amb.i], basis[amb.j], order)
        if s.value.degree() > cfg.max_degree:
            skipped += 1
            continue
        r = _reduce_traced(s, basis, order)
        if not r.value:
            continue
        lc = r.value.leading(order)[1]
        inv = 1 / lc
        r = TracedPoly(r.value.scale(inv), parts=[(inv, (), r, ())])
        if cfg.check_provenance and r.expand(F) != r.value:
            raise CertificateError("provenance invariant violated")
        basis.append(r)
        leads.append(r.value.leading(order)[0])
        log.debug("basis element %d: %s", len(basis) - 1, r.value)
        add_pairs(len(basis) - 1)

    log.info("completion: %d elements, %d iterations, %d skipped, %s",
             len(basis), iterations, skipped, status.value)
    return PartialBasis(basis, status, iterations, skipped)


@dataclass(frozen=True)
class Summand:
    coeff: Fraction
    left: Word
    index: int
    right: Word


def _summand_key(s: Summand):
    return (s.index, DEGLEX.key(s.left), DEGLEX.key(s.right))


@dataclass(frozen=True)
class MembershipCertificate:
    """``claim == sum(c * left * F[index] * right)`` over the summands."""

    claim: Polynomial
    summands: tuple[Summand, ...]
    fingerprints: tuple[str, ...]

    @classmethod
    def from_provenance(cls, claim: Polynomial, prov: Provenance, F: Sequence[Polynomial]):
        summands = [Summand(c, a, k, b) for (a, k, b), c in prov.items() if c]
        return cls(claim, tuple(sorted(summands, key=_summand_key)), tuple(f.fingerprint() for f in F))

    @classmethod
    def from_terms(cls, claim: Polynomial, terms, F: Sequence[Polynomial]):
        """Build a normalized certificate from ``(coeff, left, index, right)``
        tuples, where cofactors may be words or polynomials."""
        prov: Provenance = {}
        for coeff, left, k, right in terms:
            lpoly = left if isinstance(left, Polynomial) else Polynomial.monomial(claim.alphabet, left)
            rpoly = right if isinstance(right, Polynomial) else Polynomial.monomial(claim.alphabet, right)
            for a, ca in lpoly:
                for b, cb in rpoly:
                    _accumulate(prov, {((), k, ()): Fraction(1)}, a, b, Fraction(coeff) * ca * cb)
        return cls.from_provenance(claim, prov, F)

    def recombine(self, F: Sequence[Polynomial]) -> Polynomial:
        prov = {(s.left, s.index, s.right): s.coeff for s in self.summands}
        return expand_provenance(prov, F, self.claim.alphabet)

    def max_degree(self, F: Sequence[Polynomial]) -> int:
        return max((len(s.left) + F[s.index].degree() + len(s.right) for s in self.summands), default=0)

    def is_normalized(self) -> bool:
        keys = [_summand_key(s) for s in self.summands]
        triples = [(s.left, s.index, s.right) for s in self.summands]
        return (
            keys == sorted(keys)
            and len(set(triples)) == len(triples)
            and all(s.coeff for s in self.summands)
        )


def membership_certificate(f: Polynomial, F: Sequence[Polynomial], cfg: GBConfig = GBConfig()):
    """Try to certify ``f in (F)``; returns a certificate, or None when inconclusive."""
    if not F:
        raise ValueError("need at least one generator")
    if not f:
        return MembershipCertificate(f, (), tuple(g.fingerprint() for g in F))
    def proved(basis):
        return not reduce(f, [g.value for g in basis], cfg.order).normal_form

    pb = buchberger(F, cfg, stop=proved)
    res = reduce(f, pb.values, cfg.order)
    if res.normal_form:
        log.info("claim has nonzero normal form %s", res.normal_form)
        return None
    prov: Provenance = {}
    for s in res.trace:
        _accumulate(prov, pb.basis[s.index].provenance, s.left, s.right, -s.coeff)
    cert = MembershipCertificate.from_provenance(f, prov, F)
    if cert.recombine(F) != f:
        raise CertificateError("membership certificate does not recombine to the claim")
    return cert
