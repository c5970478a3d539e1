"""Exact arithmetic in the free algebra Q<X>.

Words are tuples of variable ids, coefficients are :class:`fractions.Fraction`.
Polynomials are immutable sparse maps ``word -> coefficient`` that never store
a zero coefficient.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

Word = tuple[int, ...]

ONE: Word = ()


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of variable names; the id of a variable is its position."""

    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        object.__setattr__(self, "_ids", {n: i for i, n in enumerate(self.names)})

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self._ids

    def id(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise KeyError(f"undeclared variable {name!r}") from None

    def name(self, i: int) -> str:
        return self.names[i]

    def word(self, names: Iterable[str]) -> Word:
        return tuple(self.id(n) for n in names)

    def word_names(self, w: Word) -> list[str]:
        return [self.names[i] for i in w]

    def check_word(self, w: Word) -> None:
        n = len(self.names)
        for i in w:
            if not 0 <= i < n:
                raise AlphabetMismatch(f"letter id {i} not in alphabet of size {n}")

    def format_word(self, w: Word) -> str:
        return "*".join(self.names[i] for i in w) if w else "1"


def word_concat(u: Word, v: Word, alphabet: Alphabet | None = None) -> Word:
    if alphabet is not None:
        alphabet.check_word(u)
        alphabet.check_word(v)
    return u + v


def find_subword(m: Word, d: Word, start: int = 0) -> int:
    """Position of the first occurrence of ``d`` in ``m`` at or after ``start``, or -1."""
    n, k = len(m), len(d)
    if k == 0:
        return start if start <= n else -1
    first = d[0]
    for i in range(start, n - k + 1):
        if m[i] == first and m[i:i + k] == d:
            return i
    return -1


def word_divisions(m: Word, d: Word) -> list[tuple[Word, Word]]:
    """All factorizations ``m = a*d*b``, by increasing start of the occurrence."""
    if not d:
        raise ValueError("divisor word must be nonempty")
    out = []
    pos = find_subword(m, d)
    while pos >= 0:
        out.append((m[:pos], m[pos + len(d):]))
        pos = find_subword(m, d, pos + 1)
    return out


class MonomialOrder:
    """Degree-lexicographic order; letters compare by id (declaration order)."""

    kind = "deglex"

    @staticmethod
    def key(w: Word):
        return (len(w), w)

    @staticmethod
    def heap_key(w: Word):
        """Key whose ascending order is the descending monomial order."""
        return (-len(w), tuple(-x for x in w))

    def less(self, u: Word, v: Word) -> bool:
        return self.key(u) < self.key(v)

    def __repr__(self):
        return "MonomialOrder('deglex')"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.kind == self.kind

    def __hash__(self):
        return hash(self.kind)


DEGLEX = MonomialOrder()


def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"exact rational coefficient required, got {type(c).__name__}")


def format_fraction(c: Fraction) -> str:
    """Canonical ``p/q`` text used by the certificate format."""
    return f"{c.numerator}/{c.denominator}"


class Polynomial:
    """Element of Q<X>: an immutable map from words to nonzero rationals."""

    __slots__ = ("alphabet", "_terms", "_hash")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, object] | None = None):
        self.alphabet = alphabet
        clean = {}
        if terms:
            for w, c in terms.items():
                w = tuple(w)
                alphabet.check_word(w)
                c = as_fraction(c)
                if c:
                    clean[w] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, alphabet: Alphabet, terms: dict) -> "Polynomial":
        # trusted constructor: terms already pruned and validated
        p = cls.__new__(cls)
        p.alphabet = alphabet
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, alphabet):
        return cls._raw(alphabet, {})

    @classmethod
    def one(cls, alphabet):
        return cls._raw(alphabet, {ONE: Fraction(1)})

    @classmethod
    def constant(cls, alphabet, c):
        return cls(alphabet, {ONE: c})

    @classmethod
    def monomial(cls, alphabet, word: Word, coeff=1):
        return cls(alphabet, {tuple(word): coeff})

    @classmethod
    def var(cls, alphabet, name: str):
        return cls._raw(alphabet, {(alphabet.id(name),): Fraction(1)})

    @property
    def terms(self) -> Mapping[Word, Fraction]:
        return MappingProxyType(self._terms)

    def support(self) -> frozenset[Word]:
        return frozenset(self._terms)

    def coefficient(self, w: Word) -> Fraction:
        return self._terms.get(tuple(w), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Word, Fraction]]:
        return iter(self._terms.items())

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(len(w) for w in self._terms)

    def has_constant_term(self) -> bool:
        return ONE in self._terms

    def leading(self, order: MonomialOrder = DEGLEX) -> tuple[Word, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        w = max(self._terms, key=order.key)
        return w, self._terms[w]

    def sorted_terms(self, order: MonomialOrder = DEGLEX) -> list[tuple[Word, Fraction]]:
        """Terms from largest to smallest monomial."""
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def _check(self, other: "Polynomial"):
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("polynomials over different alphabets")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.alphabet, as_fraction(other))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return Polynomial._raw(self.alphabet, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.alphabet, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = as_fraction(c)
        if not c:
            return Polynomial.zero(self.alphabet)
        return Polynomial._raw(self.alphabet, {w: c * v for w, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: dict[Word, Fraction] = {}
        for u, c in self._terms.items():
            for v, d in other._terms.items():
                w = u + v
                s = out.get(w, 0) + c * d
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return Polynomial._raw(self.alphabet, out)

    def __rmul__(self, other):
        # scalar * poly; poly * poly is handled by __mul__
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.one(self.alphabet)
        for _ in range(n):
            out = out * self
        return out

    def sandwich(self, left: Word, right: Word, coeff=1) -> "Polynomial":
        """``coeff * left * self * right`` for words ``left``, ``right``."""
        c = as_fraction(coeff)
        if not c:
            return Polynomial.zero(self.alphabet)
        return Polynomial._raw(
            self.alphabet, {left + w + right: c * v for w, v in self._terms.items()}
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.alphabet == other.alphabet and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({ONE: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet, frozenset(self._terms.items())))
        return self._hash

    def to_string(self, order: MonomialOrder = DEGLEX) -> str:
        """Canonical text: terms by decreasing monomial, parseable by the DSL."""
        if not self._terms:
            return "0"
        parts = []
        for k, (w, c) in enumerate(self.sorted_terms(order)):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not w:
                body = str(a)
            elif a == 1:
                body = self.alphabet.format_word(w)
            else:
                body = f"{a}*{self.alphabet.format_word(w)}"
            if k == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    __str__ = to_string

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"

    def fingerprint(self) -> str:
        """SHA-256 over the canonical term list (variable names, ``p/q`` coefficients)."""
        lines = [
            " ".join(self.alphabet.word_names(w)) + "|" + format_fraction(c)
            for w, c in self.sorted_terms()
        ]
        return hashlib.sha256("\n".join(lines).encode()).hexdigest()


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_scale(c, f: Polynomial) -> Polynomial:
    return f.scale(c)


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def leading_monomial(f: Polynomial, order: MonomialOrder = DEGLEX) -> tuple[Word, Fraction]:
    return f.leading(order)
