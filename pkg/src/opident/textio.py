"""Input DSL parsing and canonical certificate serialization.

Polynomial grammar::

    poly     := ['+'|'-'] term (('+'|'-') term)*
    term     := rational ['*'] factor ('*' factor)* | rational | factor ('*' factor)*
    factor   := atom ('^' nat)*
    atom     := ident | '(' poly ')'
    rational := int ['/' posint]

Problem files are line based; a line starting with whitespace continues the
previous statement.  Statements::

    vars a ai y
    assume g = a*ai*a - a
    claim a*(ai + y - y*a*ai)*a - a
    vertex v
    edge v -> w : a          # edges are named e1, e2, ... in order
    dim v = 2
    matrix e1 = [[1, 0], [0, 0]]
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .free_algebra import Alphabet, Polynomial, format_fraction
from .groebner import MembershipCertificate, Summand
from .quiver import Consistency, Edge, LabelledQuiver
from .representation import QuiverRepresentation
from .theorem import CompatibilityReport, ProofCertificate

CERTIFICATE_FORMAT = "opident-certificate/1"


class ParseError(ValueError):
    def __init__(self, msg, line=None, col=None):
        self.msg, self.line, self.col = msg, line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + msg)


class FingerprintMismatch(ValueError):
    pass


# --- polynomials -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


class _Tokens:
    def __init__(self, text, line0=1, col0=1):
        self.toks = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", *self._loc(text, pos, line0, col0))
            kind = m.lastgroup
            start = m.start(kind)
            self.toks.append((kind, m.group(kind), self._loc(text, start, line0, col0)))
            pos = m.end()
        self.end_loc = self._loc(text, len(text), line0, col0)
        self.i = 0

    @staticmethod
    def _loc(text, pos, line0, col0):
        before = text[:pos]
        nl = before.count("\n")
        if nl:
            return line0 + nl, pos - before.rfind("\n")
        return line0, col0 + pos

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, self.end_loc)

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def expect_op(self, op):
        kind, val, loc = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val if val else 'end of input'!r}", *loc)

    def at_op(self, *ops):
        kind, val, _ = self.peek()
        return kind == "op" and val in ops


class _PolyParser:
    def __init__(self, toks: _Tokens, alphabet: Alphabet):
        self.t = toks
        self.alphabet = alphabet

    def poly(self):
        t = self.t
        sign = 1
        if t.at_op("+", "-"):
            sign = -1 if t.next()[1] == "-" else 1
        acc = self.term().scale(sign)
        while t.at_op("+", "-"):
            op = t.next()[1]
            term = self.term()
            acc = acc + term if op == "+" else acc - term
        return acc

    def rational(self):
        _, num, _ = self.t.next()
        c = Fraction(int(num))
        if self.t.at_op("/"):
            self.t.next()
            kind, den, loc = self.t.next()
            if kind != "int":
                raise ParseError("expected a denominator", *loc)
            if int(den) == 0:
                raise ParseError("zero denominator", *loc)
            c /= int(den)
        return c

    def term(self):
        t = self.t
        kind, _, _ = t.peek()
        if kind == "int":
            c = self.rational()
            if t.at_op("*"):
                t.next()
                acc = self.factor()
            elif t.peek()[0] == "ident" or t.at_op("("):
                acc = self.factor()
            else:
                return Polynomial.constant(self.alphabet, c)
            acc = acc.scale(c)
        else:
            acc = self.factor()
        while t.at_op("*"):
            t.next()
            acc = acc * self.factor()
        kind, val, loc = t.peek()
        if kind in ("ident", "int") or (kind == "op" and val == "("):
            raise ParseError(f"missing '*' before {val!r}", *loc)
        return acc

    def factor(self):
        acc = self.atom()
        while self.t.at_op("^"):
            self.t.next()
            kind, val, loc = self.t.next()
            if kind != "int":
                raise ParseError("expected a natural number exponent", *loc)
            acc = acc ** int(val)
        return acc

    def atom(self):
        kind, val, loc = self.t.next()
        if kind == "ident":
            if val not in self.alphabet:
                raise ParseError(f"undeclared identifier {val!r}", *loc)
            return Polynomial.var(self.alphabet, val)
        if kind == "op" and val == "(":
            p = self.poly()
            self.t.expect_op(")")
            return p
        raise ParseError(f"expected a variable or '(', found {val if val else 'end of input'!r}", *loc)


def parse_polynomial(text: str, alphabet: Alphabet, line: int = 1, col: int = 1) -> Polynomial:
    toks = _Tokens(text, line, col)
    if not toks.toks:
        raise ParseError("empty polynomial", line, col)
    p = _PolyParser(toks, alphabet)
    out = p.poly()
    kind, val, loc = toks.peek()
    if kind is not None:
        raise ParseError(f"unexpected {val!r}", *loc)
    return out


# --- line-based files -------------------------------------------------------

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_VERTEX = re.compile(rf"vertex\s+({_IDENT})$")
_EDGE = re.compile(rf"edge\s+({_IDENT})\s*->\s*({_IDENT})\s*:\s*({_IDENT})$")
_DIM = re.compile(rf"dim\s+({_IDENT})\s*=\s*(\d+)$")
_MATRIX = re.compile(r"matrix\s+(e[1-9][0-9]*)\s*=\s*(.*)$", re.S)
_VARS = re.compile(rf"vars((?:\s+{_IDENT})+)$")
_ASSUME = re.compile(rf"assume\s+({_IDENT})\s*=\s*(.*)$", re.S)
_CLAIM = re.compile(r"claim\s+(.*)$", re.S)


def _statements(text: str):
    """Yield ``(line_no, statement)`` with comments stripped and continuations joined."""
    if "\r" in text:
        text = text.replace("\r\n", "\n")
    stmts = []
    for no, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if line[0] in " \t" and stmts:
            stmts[-1][1] += "\n" + line
        else:
            stmts.append([no, line.strip()])
    return [(no, s.strip()) for no, s in stmts]


def _keyword(stmt):
    return stmt.split(None, 1)[0]


def _quiver_from_statements(stmts, alphabet: Alphabet | None) -> LabelledQuiver:
    vertices: list[str] = []
    edges = []
    labels: list[str] = []
    for no, s in stmts:
        m = _VERTEX.match(s)
        if m:
            if m.group(1) in vertices:
                raise ParseError(f"duplicate vertex {m.group(1)!r}", no, 1)
            vertices.append(m.group(1))
            continue
        m = _EDGE.match(s)
        if m:
            src, tgt, lab = m.groups()
            edges.append((no, src, tgt, lab))
            if lab not in labels:
                labels.append(lab)
            continue
        raise ParseError(f"cannot parse quiver statement {s!r}", no, 1)
    if not vertices:
        raise ParseError("a quiver needs at least one vertex", 1, 1)
    if alphabet is None:
        alphabet = Alphabet(tuple(labels))
    out = []
    for no, src, tgt, lab in edges:
        for v in (src, tgt):
            if v not in vertices:
                raise ParseError(f"undeclared vertex {v!r}", no, 1)
        if lab not in alphabet:
            raise ParseError(f"undeclared label {lab!r}", no, 1)
        out.append(Edge(vertices.index(src), vertices.index(tgt), alphabet.id(lab)))
    return LabelledQuiver(alphabet, tuple(vertices), tuple(out))


def parse_quiver(text: str, alphabet: Alphabet | None = None) -> LabelledQuiver:
    """Parse ``vertex``/``edge`` lines.  Without an alphabet, labels are
    declared in order of first use."""
    return _quiver_from_statements(_statements(text), alphabet)


def serialize_quiver(Q: LabelledQuiver) -> str:
    lines = [f"vertex {v}" for v in Q.vertices]
    for e in Q.edges:
        lines.append(f"edge {Q.vertices[e.source]} -> {Q.vertices[e.target]} : {Q.alphabet.name(e.label)}")
    return "\n".join(lines) + "\n"


_MATRIX_TOKEN = re.compile(r"\s*(?:(?P<num>[-+]?\d+(?:/\d+)?)|(?P<punct>[\[\],]))")


def _parse_matrix(text: str, no: int) -> list[list[Fraction]]:
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _MATRIX_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"bad matrix literal near {text[pos:pos + 10]!r}", no, 1)
        toks.append(m.group("num") or m.group("punct"))
        pos = m.end()
    i = 0

    def expect(tok):
        nonlocal i
        if i >= len(toks) or toks[i] != tok:
            raise ParseError(f"expected {tok!r} in matrix literal", no, 1)
        i += 1

    def seq(item):
        nonlocal i
        expect("[")
        out = []
        if i < len(toks) and toks[i] == "]":
            i += 1
            return out
        while True:
            out.append(item())
            if i < len(toks) and toks[i] == ",":
                i += 1
                continue
            expect("]")
            return out

    def number():
        nonlocal i
        if i >= len(toks) or toks[i] in "[],":
            raise ParseError("expected a rational entry", no, 1)
        tok = toks[i]
        i += 1
        num, _, den = tok.partition("/")
        if den and int(den) == 0:
            raise ParseError("zero denominator", no, 1)
        return Fraction(int(num), int(den) if den else 1)

    rows = seq(lambda: seq(number))
    if i != len(toks):
        raise ParseError("trailing tokens after matrix literal", no, 1)
    return rows


def _representation_from_statements(stmts, Q: LabelledQuiver) -> QuiverRepresentation:
    dims: dict[int, int] = {}
    mats: dict[int, tuple[int, list]] = {}
    for no, s in stmts:
        m = _DIM.match(s)
        if m:
            name, n = m.group(1), int(m.group(2))
            if name not in Q.vertices:
                raise ParseError(f"undeclared vertex {name!r}", no, 1)
            v = Q.vertex_id(name)
            if v in dims:
                raise ParseError(f"duplicate dim for {name!r}", no, 1)
            dims[v] = n
            continue
        m = _MATRIX.match(s)
        if m:
            k = int(m.group(1)[1:]) - 1
            if k >= len(Q.edges):
                raise ParseError(f"undeclared edge {m.group(1)!r}", no, 1)
            if k in mats:
                raise ParseError(f"duplicate matrix for {m.group(1)!r}", no, 1)
            mats[k] = (no, _parse_matrix(m.group(2), no))
            continue
        raise ParseError(f"cannot parse representation statement {s!r}", no, 1)
    for v, name in enumerate(Q.vertices):
        if v not in dims:
            raise ParseError(f"missing dim for vertex {name!r}")
    matrices = []
    for k, e in enumerate(Q.edges):
        if k not in mats:
            raise ParseError(f"missing matrix for edge e{k + 1}")
        no, rows = mats[k]
        r, c = dims[e.target], dims[e.source]
        if len(rows) != r or any(len(row) != c for row in rows):
            got = f"{len(rows)} rows" + (f" of lengths {sorted({len(x) for x in rows})}" if rows else "")
            raise ParseError(f"matrix e{k + 1} must be {r}x{c}, got {got}", no, 1)
        arr = np.empty((r, c), dtype=object)
        for a in range(r):
            for b in range(c):
                arr[a, b] = rows[a][b]
        matrices.append(arr)
    return QuiverRepresentation(Q, tuple(dims[v] for v in range(Q.n)), tuple(matrices))


def parse_representation(text: str, Q: LabelledQuiver) -> QuiverRepresentation:
    return _representation_from_statements(_statements(text), Q)


def serialize_representation(rep: QuiverRepresentation) -> str:
    Q = rep.quiver
    lines = [f"dim {v} = {d}" for v, d in zip(Q.vertices, rep.dims)]
    for k, m in enumerate(rep.matrices):
        rows = ", ".join("[" + ", ".join(_fmt_entry(x) for x in row) + "]" for row in m)
        lines.append(f"matrix e{k + 1} = [{rows}]")
    return "\n".join(lines) + "\n"


def _fmt_entry(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else format_fraction(x)


@dataclass
class ProblemFile:
    alphabet: Alphabet
    assumption_names: list[str]
    assumptions: list[Polynomial]
    claim: Polynomial
    quiver: LabelledQuiver | None = None
    representation: QuiverRepresentation | None = None
    text_sections: dict = field(default_factory=dict, repr=False)


def parse_problem(text: str) -> ProblemFile:
    stmts = _statements(text)
    alphabet = None
    names, polys = [], []
    claim = None
    quiver_stmts, rep_stmts = [], []
    for no, s in stmts:
        kw = _keyword(s)
        if kw == "vars":
            m = _VARS.match(s)
            if not m:
                raise ParseError("malformed vars declaration", no, 1)
            if alphabet is not None:
                raise ParseError("duplicate vars declaration", no, 1)
            try:
                alphabet = Alphabet(tuple(m.group(1).split()))
            except ValueError as e:
                raise ParseError(str(e), no, 1) from None
        elif kw in ("assume", "claim"):
            if alphabet is None:
                raise ParseError("vars must be declared before polynomials", no, 1)
            if kw == "assume":
                m = _ASSUME.match(s)
                if not m:
                    raise ParseError("expected 'assume <name> = <polynomial>'", no, 1)
                if m.group(1) in names:
                    raise ParseError(f"duplicate assumption name {m.group(1)!r}", no, 1)
                names.append(m.group(1))
                polys.append(parse_polynomial(m.group(2), alphabet, no, m.start(2) + 1))
            else:
                if claim is not None:
                    raise ParseError("duplicate claim", no, 1)
                m = _CLAIM.match(s)
                if not m:
                    raise ParseError("expected 'claim <polynomial>'", no, 1)
                claim = parse_polynomial(m.group(1), alphabet, no, m.start(1) + 1)
        elif kw in ("vertex", "edge"):
            quiver_stmts.append((no, s))
        elif kw in ("dim", "matrix"):
            rep_stmts.append((no, s))
        else:
            raise ParseError(f"unknown statement {kw!r}", no, 1)
    if alphabet is None:
        raise ParseError("missing vars declaration")
    if claim is None:
        raise ParseError("missing claim")
    quiver = _quiver_from_statements(quiver_stmts, alphabet) if quiver_stmts else None
    rep = None
    if rep_stmts:
        if quiver is None:
            raise ParseError("a representation needs a quiver", rep_stmts[0][0], 1)
        rep = _representation_from_statements(rep_stmts, quiver)
    return ProblemFile(alphabet, names, polys, claim, quiver, rep)


# --- certificates -----------------------------------------------------------

def _poly_json(f: Polynomial):
    return [
        {"coeff": format_fraction(c), "word": f.alphabet.word_names(w)}
        for w, c in f.sorted_terms()
    ]


def _poly_from_json(data, alphabet: Alphabet) -> Polynomial:
    terms = {}
    for t in data:
        w = alphabet.word(t["word"])
        if w in terms:
            raise ParseError(f"repeated monomial {t['word']}")
        c = Fraction(t["coeff"])
        if not c:
            raise ParseError("zero coefficient in polynomial")
        terms[w] = c
    return Polynomial(alphabet, terms)


def _sig_json(Q: LabelledQuiver, sig):
    return [list(p) for p in Q.pair_names(sig)]


def _sig_from_json(Q: LabelledQuiver, data):
    from .quiver import SignatureSet
    return SignatureSet.from_pairs(Q.n, [(Q.vertex_id(s), Q.vertex_id(t)) for s, t in data])


def certificate_to_dict(cert: ProofCertificate) -> dict:
    A = cert.alphabet
    doc = {
        "format": CERTIFICATE_FORMAT,
        "alphabet": list(A.names),
        "assumptions": [
            {"name": n, "terms": _poly_json(f)} for n, f in zip(cert.assumption_names, cert.assumptions)
        ],
        "claim": _poly_json(cert.claim),
        "summands": [
            {
                "coeff": format_fraction(s.coeff),
                "left": A.word_names(s.left),
                "generator": s.index,
                "right": A.word_names(s.right),
            }
            for s in cert.membership.summands
        ],
        "fingerprints": list(cert.membership.fingerprints),
    }
    if cert.quiver is not None:
        Q = cert.quiver
        doc["quiver"] = {
            "vertices": list(Q.vertices),
            "edges": [
                {"source": Q.vertices[e.source], "target": Q.vertices[e.target], "label": A.name(e.label)}
                for e in Q.edges
            ],
        }
        rep = cert.compat
        doc["compat_report"] = {
            "assumptions": [
                {"uniform": u, "signature": _sig_json(Q, s)}
                for u, s in zip(rep.assumptions_uniform, rep.assumption_signatures)
            ],
            "claim": {"compatible": rep.claim_compatible, "signature": _sig_json(Q, rep.claim_signature)},
        }
        doc["consistency"] = cert.consistency.value
    return doc


def serialize_certificate(cert: ProofCertificate) -> str:
    return json.dumps(certificate_to_dict(cert), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def certificate_from_dict(doc: dict, verify_fingerprints: bool = True) -> ProofCertificate:
    try:
        if doc.get("format") != CERTIFICATE_FORMAT:
            raise ParseError(f"unsupported certificate format {doc.get('format')!r}")
        A = Alphabet(tuple(doc["alphabet"]))
        names = [a["name"] for a in doc["assumptions"]]
        F = [_poly_from_json(a["terms"], A) for a in doc["assumptions"]]
        claim = _poly_from_json(doc["claim"], A)
        summands = []
        for s in doc["summands"]:
            k = int(s["generator"])
            if not 0 <= k < len(F):
                raise ParseError(f"summand refers to missing generator {k}")
            summands.append(Summand(Fraction(s["coeff"]), A.word(s["left"]), k, A.word(s["right"])))
        fps = tuple(doc["fingerprints"])
        if verify_fingerprints and fps != tuple(f.fingerprint() for f in F):
            raise FingerprintMismatch("generator fingerprints do not match the assumptions")
        membership = MembershipCertificate(claim, tuple(summands), fps)
        quiver = compat = consistency = None
        if "quiver" in doc:
            qd = doc["quiver"]
            vid = {v: i for i, v in enumerate(qd["vertices"])}
            quiver = LabelledQuiver(
                A,
                tuple(qd["vertices"]),
                tuple(Edge(vid[e["source"]], vid[e["target"]], A.id(e["label"])) for e in qd["edges"]),
            )
            cr = doc["compat_report"]
            compat = CompatibilityReport(
                tuple(bool(a["uniform"]) for a in cr["assumptions"]),
                tuple(_sig_from_json(quiver, a["signature"]) for a in cr["assumptions"]),
                bool(cr["claim"]["compatible"]),
                _sig_from_json(quiver, cr["claim"]["signature"]),
            )
            consistency = Consistency(doc["consistency"])
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, (ParseError, FingerprintMismatch)):
            raise
        raise ParseError(f"malformed certificate: {e}") from None
    return ProofCertificate(A, names, F, claim, membership, quiver, compat, consistency)


def parse_certificate(text: str, verify_fingerprints: bool = True) -> ProofCertificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("certificate must be a JSON object")
    return certificate_from_dict(doc, verify_fingerprints)
