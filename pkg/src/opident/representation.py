"""Representations of labelled quivers by exact rational matrices.

The edge ``e: s -> t`` carries a ``dim(t) x dim(s)`` matrix, so a path
``e_n ... e_1`` is realized as the product ``M(e_n) @ ... @ M(e_1)``.
Matrices are numpy object arrays holding :class:`fractions.Fraction`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .free_algebra import Polynomial, Word
from .quiver import Consistency, LabelledQuiver


class ShapeError(ValueError):
    pass


class SignatureNotAdmitted(ValueError):
    pass


class HypothesisError(ValueError):
    """Preconditions of the theorem instance are not met."""


def rational_matrix(rows, shape=None) -> np.ndarray:
    """Object array of Fractions from nested lists (or an existing array)."""
    if shape is not None and len(rows) == 0:
        return np.empty(shape, dtype=object)
    arr = np.array([[Fraction(x) for x in row] for row in rows], dtype=object)
    if arr.ndim != 2:
        if shape is None:
            raise ShapeError("matrix must be two-dimensional")
        arr = arr.reshape(shape)
    return arr


def zeros(r, c) -> np.ndarray:
    out = np.empty((r, c), dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def is_zero_matrix(m: np.ndarray) -> bool:
    return all(x == 0 for x in m.flat)


def matrices_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    if a.shape[1] == 0:
        # object-dtype matmul over an empty inner dimension yields int 0s
        return zeros(a.shape[0], b.shape[1])
    return a @ b


@dataclass(frozen=True, eq=False)
class QuiverRepresentation:
    quiver: LabelledQuiver
    dims: tuple[int, ...]
    matrices: tuple[np.ndarray, ...]

    def __post_init__(self):
        Q = self.quiver
        if len(self.dims) != Q.n or any(d < 0 for d in self.dims):
            raise ShapeError("one nonnegative dimension per vertex required")
        if len(self.matrices) != len(Q.edges):
            raise ShapeError("one matrix per edge required")
        for k, (e, m) in enumerate(zip(Q.edges, self.matrices)):
            want = (self.dims[e.target], self.dims[e.source])
            if m.shape != want:
                raise ShapeError(f"matrix of e{k + 1} has shape {m.shape}, expected {want}")

    def __eq__(self, other):
        if not isinstance(other, QuiverRepresentation):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.dims == other.dims
            and all(matrices_equal(a, b) for a, b in zip(self.matrices, other.matrices))
        )

    __hash__ = None

    def path_matrix(self, path: Sequence[int], start: int | None = None) -> np.ndarray:
        """Matrix of a path given as edge ids in traversal order."""
        if not path:
            if start is None:
                raise ValueError("empty path needs a start vertex")
            return identity(self.dims[start])
        out = self.matrices[path[0]]
        for k in path[1:]:
            out = matmul(self.matrices[k], out)
        return out


def find_path(Q: LabelledQuiver, word: Word, source: int, target: int):
    """Lexicographically smallest edge-id sequence (traversal order) from
    ``source`` to ``target`` whose label is ``word``; None if absent."""
    letters = list(reversed(word))  # traversal order
    if not letters:
        return () if source == target else None
    out_edges = [[] for _ in Q.vertices]
    for k, e in enumerate(Q.edges):
        out_edges[e.source].append(k)

    # prune with reachability: can[i] = vertices from which letters[i:] reaches target
    can = [set() for _ in range(len(letters) + 1)]
    can[len(letters)] = {target}
    for i in range(len(letters) - 1, -1, -1):
        can[i] = {e.source for e in Q.edges if e.label == letters[i] and e.target in can[i + 1]}
    if source not in can[0]:
        return None
    path, v = [], source
    for i, x in enumerate(letters):
        k = next(k for k in out_edges[v] if Q.edges[k].label == x and Q.edges[k].target in can[i + 1])
        path.append(k)
        v = Q.edges[k].target
    return tuple(path)


class ConsistencyKind(enum.Enum):
    STRUCTURAL = "ConsistentStructural"
    UP_TO = "ConsistentUpTo"
    INCONSISTENT = "Inconsistent"


@dataclass(frozen=True)
class ConsistencyResult:
    kind: ConsistencyKind
    max_len: int | None = None
    witness: tuple | None = None  # pair of paths with differing matrices
    rule: Consistency | None = None

    @property
    def consistent(self) -> bool:
        return self.kind is not ConsistencyKind.INCONSISTENT


def check_representation_consistency(rep: QuiverRepresentation, Q: LabelledQuiver | None = None,
                                     max_len: int = 8) -> ConsistencyResult:
    Q = Q or rep.quiver
    if Q != rep.quiver:
        raise ShapeError("representation belongs to a different quiver")
    rule = Q.structural_consistency()
    if rule is not Consistency.INCONCLUSIVE:
        return ConsistencyResult(ConsistencyKind.STRUCTURAL, rule=rule)
    for p, q in Q.duplicate_labelled_paths(max_len):
        if not matrices_equal(rep.path_matrix(p), rep.path_matrix(q)):
            return ConsistencyResult(ConsistencyKind.INCONSISTENT, max_len, (p, q))
    return ConsistencyResult(ConsistencyKind.UP_TO, max_len)


def realize(rep: QuiverRepresentation, Q: LabelledQuiver | None, f: Polynomial, sig: tuple[int, int]) -> np.ndarray:
    """The realization of ``f`` from ``sig[0]`` to ``sig[1]``.

    Assumes ``rep`` is consistent; each word is evaluated along the path
    chosen by :func:`find_path`.
    """
    Q = Q or rep.quiver
    v, w = sig
    if sig not in Q.signature_of_poly(f):
        raise SignatureNotAdmitted(f"({Q.vertices[v]},{Q.vertices[w]}) is not a signature of {f}")
    out = zeros(rep.dims[w], rep.dims[v])
    for word, c in f:
        path = find_path(Q, word, v, w)
        out = out + rep.path_matrix(path, start=v) * c
    return out


class Verdict(enum.Enum):
    CLAIM_HOLDS = "ClaimHolds"
    ASSUMPTION_VIOLATED = "AssumptionViolated"
    CLAIM_VIOLATED = "ClaimViolated"


@dataclass(frozen=True)
class InstanceResult:
    verdict: Verdict
    index: int | None = None
    signature: tuple[int, int] | None = None
    checked: tuple = ()  # (polynomial index or None for the claim, signature)

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.CLAIM_HOLDS


def verify_theorem_instance(rep: QuiverRepresentation, Q: LabelledQuiver | None,
                            F: Sequence[Polynomial], f: Polynomial) -> InstanceResult:
    """Evaluate every realization of the assumptions, then of the claim."""
    Q = Q or rep.quiver
    if not Q.is_compatible(f):
        raise HypothesisError("claim is not compatible with the quiver")
    for k, g in enumerate(F):
        if not Q.is_uniformly_compatible(g):
            raise HypothesisError(f"assumption {k} is not uniformly compatible")
    checked = []
    for k, g in enumerate(F):
        for sig in Q.signature_of_poly(g).pairs():
            checked.append((k, sig))
            if not is_zero_matrix(realize(rep, Q, g, sig)):
                return InstanceResult(Verdict.ASSUMPTION_VIOLATED, k, sig, tuple(checked))
    for sig in Q.signature_of_poly(f).pairs():
        checked.append((None, sig))
        if not is_zero_matrix(realize(rep, Q, f, sig)):
            return InstanceResult(Verdict.CLAIM_VIOLATED, None, sig, tuple(checked))
    return InstanceResult(Verdict.CLAIM_HOLDS, checked=tuple(checked))
