"""Rewriting steps and cofactor-tracked reduction in Q<X>."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .free_algebra import DEGLEX, AlphabetMismatch, MonomialOrder, Polynomial, Word, as_fraction, find_subword


class NoMatchingOccurrence(ValueError):
    pass


@dataclass(frozen=True)
class RewriteTraceStep:
    """One step ``h = f + coeff * left * G[index] * right``."""

    coeff: Fraction
    left: Word
    index: int
    right: Word

    def __post_init__(self):
        if not self.coeff:
            raise ValueError("trace steps have nonzero coefficients")


@dataclass(frozen=True)
class ReductionResult:
    """Normal form and trace of a reduction.

    The trace follows the rewriting-step sign convention, so
    ``f == normal_form - sum(s.coeff * s.left * G[s.index] * s.right)``.
    """

    normal_form: Polynomial
    trace: tuple[RewriteTraceStep, ...] = field(default=())

    def recombine(self, G: Sequence[Polynomial]) -> Polynomial:
        out = self.normal_form
        for s in self.trace:
            out = out - G[s.index].sandwich(s.left, s.right, s.coeff)
        return out


def rewrite_step(f: Polynomial, g: Polynomial, a: Word, b: Word, lam) -> Polynomial:
    """Return ``f + lam * a * g * b``; some ``a*m*b`` with ``m`` in supp(g) must be in supp(f)."""
    a, b = tuple(a), tuple(b)
    if not any(a + m + b in f.terms for m, _ in g):
        raise NoMatchingOccurrence(
            f"no monomial of g placed between {a} and {b} occurs in f"
        )
    return f + g.sandwich(a, b, as_fraction(lam))


def _divisor(m: Word, lead_words: Sequence[Word]):
    for idx, d in enumerate(lead_words):
        if len(d) <= len(m):
            pos = find_subword(m, d)
            if pos >= 0:
                return idx, m[:pos], m[pos + len(d):]
    return None


def reduce(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder = DEGLEX) -> ReductionResult:
    """Full reduction of ``f`` by ``G``.

    Each step cancels the largest reducible monomial, using the lowest-index
    divisor and its leftmost occurrence.  Irreducible monomials larger than
    every remaining one can never be touched again (subtracting ``a*g*b``
    only changes monomials up to ``a*lm(g)*b``), so they are moved to the
    normal form as soon as they become the largest.
    """
    leads = []
    for g in G:
        if g.alphabet != f.alphabet:
            raise AlphabetMismatch("reducer over a different alphabet")
        if not g:
            raise ValueError("cannot reduce by the zero polynomial")
        leads.append(g.leading(order))
    lead_words = [w for w, _ in leads]
    hkey = order.heap_key

    p = dict(f.terms)
    heap = [(hkey(w), w) for w in p]
    heapq.heapify(heap)
    nf: dict[Word, Fraction] = {}
    trace = []
    while heap:
        m = heapq.heappop(heap)[1]
        if m not in p:
            continue  # cancelled since it was pushed
        hit = _divisor(m, lead_words)
        if hit is None:
            nf[m] = p.pop(m)
            continue
        idx, a, b = hit
        lam = -p[m] / leads[idx][1]
        for w, c in G[idx].terms.items():
            ww = a + w + b
            old = p.get(ww)
            s = (old or 0) + lam * c
            if s:
                p[ww] = s
                if old is None:
                    heapq.heappush(heap, (hkey(ww), ww))
            else:
                del p[ww]
        trace.append(RewriteTraceStep(lam, a, idx, b))
    return ReductionResult(Polynomial._raw(f.alphabet, nf), tuple(trace))
