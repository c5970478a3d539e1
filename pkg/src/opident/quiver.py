"""Labelled quivers and signature sets of monomials and polynomials.

A signature set is a relation on the vertices, stored as a dense boolean
matrix ``M`` with ``M[s, t]`` true iff ``(s, t)`` is in the set.  For a word
``m = x_n ... x_1`` the rightmost letter is traversed first, so

    sigma(m) = R(x_1) . R(x_2) . ... . R(x_n)

as a boolean matrix product, with ``R(x)`` the adjacency matrix of the
``x``-labelled edges.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, NamedTuple

import numpy as np

from .free_algebra import Alphabet, Polynomial, Word


class Edge(NamedTuple):
    source: int
    target: int
    label: int


class SignatureSet:
    """Subset of V x V, immutable."""

    __slots__ = ("_m",)

    def __init__(self, matrix):
        m = np.array(matrix, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("signature matrix must be square")
        m.setflags(write=False)
        self._m = m

    @classmethod
    def empty(cls, n):
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def full(cls, n):
        return cls(np.ones((n, n), dtype=bool))

    @classmethod
    def diagonal(cls, n):
        return cls(np.eye(n, dtype=bool))

    @classmethod
    def from_pairs(cls, n, pairs: Iterable[tuple[int, int]]):
        m = np.zeros((n, n), dtype=bool)
        for s, t in pairs:
            m[s, t] = True
        return cls(m)

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def size(self) -> int:
        return self._m.shape[0]

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(s), int(t)) for s, t in zip(*np.nonzero(self._m))]

    def __contains__(self, pair):
        s, t = pair
        return bool(self._m[s, t])

    def __len__(self):
        return int(self._m.sum())

    def __bool__(self):
        return bool(self._m.any())

    def __and__(self, other: "SignatureSet"):
        return SignatureSet(self._m & other._m)

    def __or__(self, other: "SignatureSet"):
        return SignatureSet(self._m | other._m)

    def __le__(self, other: "SignatureSet"):
        return not (self._m & ~other._m).any()

    def __ge__(self, other: "SignatureSet"):
        return other <= self

    def __eq__(self, other):
        if not isinstance(other, SignatureSet):
            return NotImplemented
        return self._m.shape == other._m.shape and bool((self._m == other._m).all())

    def __hash__(self):
        return hash((self._m.shape, self._m.tobytes()))

    def then(self, other: "SignatureSet") -> "SignatureSet":
        """Relational composite: ``(u, w)`` with ``(u, v)`` in self and ``(v, w)`` in other."""
        prod = self._m.astype(np.int64) @ other._m.astype(np.int64)
        return SignatureSet(prod > 0)

    def sources(self) -> set[int]:
        return {int(s) for s in np.nonzero(self._m.any(axis=1))[0]}

    def targets(self) -> set[int]:
        return {int(t) for t in np.nonzero(self._m.any(axis=0))[0]}

    def __repr__(self):
        return f"SignatureSet({self.pairs()})"


class Consistency(enum.Enum):
    BY_SOURCE_RULE = "BySourceRule"
    BY_TARGET_RULE = "ByTargetRule"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class LabelledQuiver:
    """Finite quiver whose edges carry labels from a shared alphabet.

    Edges are addressed by position in ``edges``; the text formats call
    edge ``k`` (0-based) ``e{k+1}``.
    """

    alphabet: Alphabet
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    _label_mats: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        if not self.vertices:
            raise ValueError("a quiver needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        n = len(self.vertices)
        mats = [np.zeros((n, n), dtype=bool) for _ in range(len(self.alphabet))]
        for k, (s, t, lab) in enumerate(self.edges):
            if not (0 <= s < n and 0 <= t < n):
                raise ValueError(f"edge e{k + 1} has an invalid vertex id")
            if not 0 <= lab < len(self.alphabet):
                raise ValueError(f"edge e{k + 1} has an undeclared label id {lab}")
            mats[lab][s, t] = True
        object.__setattr__(self, "_label_mats", tuple(SignatureSet(m) for m in mats))

    @classmethod
    def build(cls, alphabet: Alphabet, vertices, edges):
        """Convenience constructor taking vertex and label names."""
        vid = {v: i for i, v in enumerate(vertices)}
        return cls(
            alphabet,
            tuple(vertices),
            tuple(Edge(vid[s], vid[t], alphabet.id(lab)) for s, t, lab in edges),
        )

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_id(self, name: str) -> int:
        try:
            return self.vertices.index(name)
        except ValueError:
            raise KeyError(f"undeclared vertex {name!r}") from None

    def pair_names(self, sig: SignatureSet) -> list[tuple[str, str]]:
        return [(self.vertices[s], self.vertices[t]) for s, t in sig.pairs()]

    def format_signature(self, sig: SignatureSet) -> str:
        return "{" + ", ".join(f"({s},{t})" for s, t in self.pair_names(sig)) + "}"

    def with_alphabet(self, alphabet: Alphabet) -> "LabelledQuiver":
        return LabelledQuiver(alphabet, self.vertices, self.edges)

    # --- signatures -------------------------------------------------------

    def label_relation(self, x: int) -> SignatureSet:
        if not 0 <= x < len(self.alphabet):
            raise KeyError(f"undeclared variable id {x}")
        return self._label_mats[x]

    def signature_of_monomial(self, m: Word) -> SignatureSet:
        sig = SignatureSet.diagonal(self.n)
        for x in reversed(m):
            if not sig:
                break
            sig = sig.then(self.label_relation(x))
        return sig

    def signature_of_poly(self, f: Polynomial) -> SignatureSet:
        sig = SignatureSet.full(self.n)
        for w, _ in f:
            sig = sig & self.signature_of_monomial(w)
        return sig

    def is_compatible(self, f: Polynomial) -> bool:
        return bool(self.signature_of_poly(f))

    def is_uniformly_compatible(self, f: Polynomial) -> bool:
        sigs = {self.signature_of_monomial(w) for w, _ in f}
        if not sigs:
            # zero: sigma(0) = V x V, nonempty, and vacuously uniform
            return True
        return len(sigs) == 1 and bool(next(iter(sigs)))

    # --- consistency ------------------------------------------------------

    def structural_consistency(self) -> Consistency:
        def distinct(key):
            seen = set()
            for e in self.edges:
                k = (key(e), e.label)
                if k in seen:
                    return False
                seen.add(k)
            return True

        if distinct(lambda e: e.source):
            return Consistency.BY_SOURCE_RULE
        if distinct(lambda e: e.target):
            return Consistency.BY_TARGET_RULE
        return Consistency.INCONCLUSIVE

    def paths(self, max_len: int) -> list[tuple[int, ...]]:
        """All nonempty paths up to ``max_len`` edges, as edge ids in traversal order."""
        out_edges = [[] for _ in self.vertices]
        for k, e in enumerate(self.edges):
            out_edges[e.source].append(k)
        out = []
        frontier = [(k,) for k in range(len(self.edges))]
        for _ in range(max_len):
            out.extend(frontier)
            nxt = []
            for p in frontier:
                for k in out_edges[self.edges[p[-1]].target]:
                    nxt.append(p + (k,))
            frontier = nxt
        return out

    def path_label(self, path: tuple[int, ...]) -> Word:
        # the first traversed edge contributes the rightmost letter
        return tuple(self.edges[k].label for k in reversed(path))

    def duplicate_labelled_paths(self, max_len: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Pairs of distinct paths with equal source, target and label."""
        if max_len < 1:
            raise ValueError("max_len must be at least 1")
        groups: dict = {}
        for p in self.paths(max_len):
            key = (self.edges[p[0]].source, self.edges[p[-1]].target, self.path_label(p))
            groups.setdefault(key, []).append(p)
        pairs = []
        for ps in groups.values():
            pairs.extend(combinations(ps, 2))
        pairs.sort(key=lambda pq: (len(pq[0]), pq))
        return pairs


def label_relation(Q: LabelledQuiver, x: int) -> SignatureSet:
    return Q.label_relation(x)


def signature_of_monomial(Q: LabelledQuiver, m: Word) -> SignatureSet:
    return Q.signature_of_monomial(m)


def signature_of_poly(Q: LabelledQuiver, f: Polynomial) -> SignatureSet:
    return Q.signature_of_poly(f)


def is_compatible(Q: LabelledQuiver, f: Polynomial) -> bool:
    return Q.is_compatible(f)


def is_uniformly_compatible(Q: LabelledQuiver, f: Polynomial) -> bool:
    return Q.is_uniformly_compatible(f)


def structural_consistency(Q: LabelledQuiver) -> Consistency:
    return Q.structural_consistency()


def duplicate_labelled_paths(Q: LabelledQuiver, max_len: int):
    return Q.duplicate_labelled_paths(max_len)
