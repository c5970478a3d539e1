"""Acceptance criteria, one group of tests per criterion.

Each test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion (see conftest.py).
"""

from __future__ import annotations

import dataclasses
import json
import random
import time
from fractions import Fraction

import pytest

from opident.cli import main as cli_main
from opident.free_algebra import Alphabet, Polynomial
from opident.groebner import GBConfig, MembershipCertificate, Summand, membership_certificate
from opident.quiver import Edge, LabelledQuiver
from opident.representation import (
    ConsistencyKind,
    QuiverRepresentation,
    Verdict,
    check_representation_consistency,
    is_zero_matrix,
    matmul,
    matrices_equal,
    rational_matrix,
    realize,
    verify_theorem_instance,
)
from opident.rewriting import reduce, rewrite_step
from opident.textio import parse_certificate, parse_polynomial, parse_problem, serialize_certificate
from opident.theorem import CompatibilityReport, ProofCertificate, ProofStatus, check_certificate, prove_identity

from conftest import PROBLEMS
from oracles import brute_poly_signature, brute_signature, d_add, d_sandwich, d_scale, mat_mul, mat_sub, oracle_member

SEED = 20240611
N_PROPERTY = 1000


def load(name):
    return parse_problem((PROBLEMS / name).read_text())


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


# --- AC1: inner inverse ---------------------------------------------------------

@pytest.mark.criterion("AC1")
def test_ac1_inner_inverse():
    prob = load("inner_inverse.prob")
    A = prob.alphabet
    (g,), f = prob.assumptions, prob.claim
    att, dt = timed(prove_identity, f, [g], prob.quiver, GBConfig(), prob.assumption_names)
    assert att.status is ProofStatus.PROVED
    # expansion of (1 - a*y)*g: g*1 with coefficient 1, and g with left cofactor a*y and coefficient -1
    expected = (Summand(Fraction(1), (), 0, ()), Summand(Fraction(-1), A.word(["a", "y"]), 0, ()))
    assert att.certificate.membership.summands == expected
    assert att.certificate.membership.recombine([g]) == parse_polynomial("(1 - a*y)*(a*ai*a - a)", A)
    assert check_certificate(att.certificate).valid
    assert dt < 1.0


@pytest.mark.criterion("AC1")
def test_ac1_cli_round_trip(tmp_path, capsys):
    out = tmp_path / "c.json"
    t0 = time.perf_counter()
    assert cli_main(["prove", str(PROBLEMS / "inner_inverse.prob"), "--out", str(out)]) == 0
    assert cli_main(["check", str(out), str(PROBLEMS / "inner_inverse.prob")]) == 0
    assert time.perf_counter() - t0 < 1.0
    assert out.read_text() == (PROBLEMS / "inner_inverse.cert.json").read_text()


# --- AC2: Woodbury --------------------------------------------------------------

def woodbury_handwritten(prob):
    A = prob.alphabet
    q = lambda s: parse_polynomial(s, A)
    return [
        (1, q("1"), 0, q("1")),
        (1, q("1"), 1, q("1 + (ai*y*b*si*b*z - 1)*ai*(a + y*b*z)")),
        (1, q("a*ai*y*((1 + b*z*ai*y)*b*si - 1)*b*z*ai"), 2, q("1")),
        (-1, q("a*ai*y"), 3, q("z*ai*a")),
    ]


@pytest.mark.criterion("AC2")
def test_ac2_woodbury_proved(tmp_path):
    prob = load("woodbury.prob")
    cfg = GBConfig(max_degree=12)
    att, dt = timed(prove_identity, prob.claim, prob.assumptions, prob.quiver, cfg, prob.assumption_names)
    assert att.status is ProofStatus.PROVED
    assert check_certificate(att.certificate).valid
    assert dt < 30.0
    assert cli_main(["prove", str(PROBLEMS / "woodbury.prob"), "--maxdeg", "12", "--out", str(tmp_path / "w.json")]) == 0
    assert cli_main(["check", str(tmp_path / "w.json"), str(PROBLEMS / "woodbury.prob")]) == 0


@pytest.mark.criterion("AC2")
def test_ac2_woodbury_handwritten_certificate():
    prob = load("woodbury.prob")
    F, f, Q = prob.assumptions, prob.claim, prob.quiver
    mc = MembershipCertificate.from_terms(f, woodbury_handwritten(prob), F)
    assert mc.recombine(F) == f
    report = CompatibilityReport.compute(Q, F, f)
    cert = ProofCertificate(prob.alphabet, tuple(prob.assumption_names), tuple(F), f, mc, Q, report,
                            Q.structural_consistency())
    assert check_certificate(cert).valid
    # and it survives the text format
    assert check_certificate(parse_certificate(serialize_certificate(cert))).valid


@pytest.mark.criterion("AC2")
def test_ac2_woodbury_compat_report(capsys):
    prob = load("woodbury.prob")
    report = CompatibilityReport.compute(prob.quiver, prob.assumptions, prob.claim)
    assert all(report.assumptions_uniform) and report.claim_compatible
    assert all(len(s) == 1 for s in report.assumption_signatures)
    assert cli_main(["compat", str(PROBLEMS / "woodbury.prob")]) == 0
    assert "hypotheses hold" in capsys.readouterr().out


# --- AC3: ODE ------------------------------------------------------------------

@pytest.mark.criterion("AC3")
def test_ac3_ode_explicit_representation():
    prob = load("ode.prob")
    A = prob.alphabet
    q = lambda s: parse_polynomial(s, A)
    terms = [
        (1, q("1"), 0, q("h2*i*ht2*h1*i*ht1")),
        (1, q("(d - b1)*h2"), 1, q("ht2*h1*i*ht1")),
        (1, q("h1"), 1, q("ht1")),
        (1, q("1"), 2, q("i*ht1")),
        (1, q("d - b1"), 3, q("i*ht2*h1*i*ht1")),
        (1, q("1"), 4, q("1")),
        (1, q("d - b1"), 5, q("h1*i*ht1")),
    ]
    mc = MembershipCertificate.from_terms(prob.claim, terms, prob.assumptions)
    assert mc.recombine(prob.assumptions) == prob.claim
    cert = ProofCertificate(A, tuple(prob.assumption_names), tuple(prob.assumptions), prob.claim, mc)
    assert check_certificate(cert).valid


@pytest.mark.criterion("AC3")
def test_ac3_ode_prove_membership_only(tmp_path, capsys):
    prob = load("ode.prob")
    assert prob.quiver is None  # the infinite quiver is not expressible
    att, dt = timed(prove_identity, prob.claim, prob.assumptions, None, GBConfig(), prob.assumption_names)
    assert att.status is ProofStatus.PROVED and att.certificate.membership_only
    assert check_certificate(att.certificate).valid
    assert dt < 30.0
    out = tmp_path / "ode.json"
    assert cli_main(["prove", str(PROBLEMS / "ode.prob"), "--out", str(out)]) == 0
    assert "membership only" in capsys.readouterr().out
    assert "compat_report" not in json.loads(out.read_text())
    assert "infinite quiver" in (PROBLEMS / "ode.prob").read_text()


# --- AC4: three-vertex realizations ------------------------------------------------

def _lists(m):
    return [list(r) for r in m]


@pytest.mark.criterion("AC4")
def test_ac4_realizations_match_matrix_formulas():
    t0 = time.perf_counter()
    prob = load("three_vertex.prob")
    Q, (g,) = prob.quiver, prob.assumptions
    v, w, u = (Q.vertex_id(n) for n in ("v", "w", "u"))
    rng = random.Random(SEED)
    rnd = lambda r, c: [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(c)] for _ in range(r)]
    for _ in range(5):
        dv, dw, du = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 3)
        A2, Am, Y, A1 = rnd(dw, dv), rnd(dv, dw), rnd(dv, dw), rnd(dw, du)
        rep = QuiverRepresentation(Q, (dv, dw, du), tuple(rational_matrix(m) for m in (A2, Am, Y, A1)))
        assert _lists(realize(rep, Q, g, (u, w))) == mat_sub(mat_mul(mat_mul(A2, Am), A1), A1)
        assert _lists(realize(rep, Q, g, (v, w))) == mat_sub(mat_mul(mat_mul(A2, Am), A2), A2)
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.criterion("AC4")
def test_ac4_claim_holds_at_both_signatures(capsys):
    t0 = time.perf_counter()
    prob = load("three_vertex.prob")
    Q, rep = prob.quiver, prob.representation
    v, w, u = (Q.vertex_id(n) for n in ("v", "w", "u"))
    assert check_representation_consistency(rep).kind is ConsistencyKind.STRUCTURAL
    for sig in ((u, w), (v, w)):
        assert is_zero_matrix(realize(rep, Q, prob.assumptions[0], sig))
        assert is_zero_matrix(realize(rep, Q, prob.claim, sig))
    res = verify_theorem_instance(rep, Q, prob.assumptions, prob.claim)
    assert res.verdict is Verdict.CLAIM_HOLDS
    assert {sig for k, sig in res.checked if k is None} == {(u, w), (v, w)}
    assert cli_main(["eval", str(PROBLEMS / "three_vertex.prob")]) == 0
    assert "ClaimHolds" in capsys.readouterr().out
    assert time.perf_counter() - t0 < 1.0


# --- AC5: oracle suite -----------------------------------------------------------

ORACLE_DEGREE = 6


def random_instance(rng):
    """|X| <= 3, |F| <= 3, generators of degree 1..3, claim a random
    combination of a*f*b with word cofactors of degree <= 2 and every
    summand of total degree <= ORACLE_DEGREE."""
    n = rng.randint(1, 3)
    X = Alphabet(tuple("xyz"[:n]))

    def word(k):
        return tuple(rng.randrange(n) for _ in range(k))

    F = []
    for _ in range(rng.randint(1, 3)):
        deg = rng.randint(1, 3)
        terms = {word(deg): Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))}
        for _ in range(rng.randint(0, 2)):
            terms[word(rng.randint(0, deg))] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        gk = Polynomial(X, terms)
        if gk.degree() < 1:
            gk = Polynomial(X, {word(deg): Fraction(1)})
        F.append(gk)
    while True:
        f = {}
        for _ in range(rng.randint(1, 4)):
            k = rng.randrange(len(F))
            room = ORACLE_DEGREE - F[k].degree()
            la = rng.randint(0, min(2, room))
            lb = rng.randint(0, min(2, room - la))
            c = Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 3))
            f = d_add(f, d_scale(c, d_sandwich(word(la), dict(F[k].terms), word(lb))))
        if f:
            return X, F, Polynomial(X, f)


@pytest.mark.criterion("AC5")
def test_ac5_oracle_suite():
    rng = random.Random(SEED)
    cfg = GBConfig(max_degree=ORACLE_DEGREE)
    t0 = time.perf_counter()
    mismatches = []
    n_instances = 200
    for n in range(n_instances):
        X, F, f = random_instance(rng)
        cert = membership_certificate(f, F, cfg)
        proved = cert is not None and cert.recombine(F) == f
        oracle = oracle_member(dict(f.terms), [dict(g.terms) for g in F], len(X), ORACLE_DEGREE)
        if not (proved and oracle):
            mismatches.append((n, [g.to_string() for g in F], f.to_string(), proved, oracle))
    elapsed = time.perf_counter() - t0
    assert mismatches == []
    assert elapsed < 300


@pytest.mark.criterion("AC5")
def test_ac5_oracle_detects_non_members():
    # sanity check that the oracle is not vacuous: x is not in (x*x) at any degree
    X = Alphabet(("x", "y"))
    assert not oracle_member({(0,): Fraction(1)}, [{(0, 0): Fraction(1)}], 2, ORACLE_DEGREE)
    # x*y - y*x is in (x*x - y) since y commutes with x modulo it, but not in (x*x)
    assert oracle_member({(0, 1): 1, (1, 0): -1}, [{(0, 0): 1, (1,): -1}], 2, ORACLE_DEGREE)
    assert not oracle_member({(0, 1): 1, (1, 0): -1}, [{(0, 0): 1}], 2, ORACLE_DEGREE)
    assert oracle_member({(1, 0, 0): 2, (1, 1): -2}, [{(0, 0): 1, (1,): -1}], 2, ORACLE_DEGREE)
    assert not oracle_member({(1, 0, 0): 2}, [{(0, 0): 1, (1,): -1}], 2, ORACLE_DEGREE)
    assert membership_certificate(Polynomial.var(X, "x"), [Polynomial.var(X, "x") ** 2]) is None


@pytest.mark.criterion("AC5")
def test_ac5_never_proved_outside_the_ideal():
    """Random claims (mostly non-members): whenever a certificate comes back,
    the oracle must confirm membership at the certificate's degree, and every
    oracle non-member must come back unproved."""
    rng = random.Random(SEED + 7)
    cfg = GBConfig(max_degree=ORACLE_DEGREE, max_iterations=500)
    non_members = 0
    for _ in range(200):
        X, F, _ = random_instance(rng)
        f = random_poly(rng, X, 4, 3)
        if not f:
            continue
        gens = [dict(g.terms) for g in F]
        cert = membership_certificate(f, F, cfg)
        if cert is not None:
            assert cert.recombine(F) == f
            D = cert.max_degree(F)
            if D <= ORACLE_DEGREE:
                assert oracle_member(dict(f.terms), gens, len(X), D)
        elif not oracle_member(dict(f.terms), gens, len(X), ORACLE_DEGREE):
            non_members += 1
    assert non_members > 50


# --- AC6: property suites -----------------------------------------------------

def random_quiver(rng, X, max_vertices, max_edges):
    n = rng.randint(1, max_vertices)
    edges = tuple(Edge(rng.randrange(n), rng.randrange(n), rng.randrange(len(X))) for _ in range(rng.randint(0, max_edges)))
    return LabelledQuiver(X, tuple(f"q{i}" for i in range(n)), edges)


def random_poly(rng, X, max_terms=4, max_len=3):
    return Polynomial(X, {
        tuple(rng.randrange(len(X)) for _ in range(rng.randint(0, max_len))):
            Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        for _ in range(rng.randint(0, max_terms))
    })


def path_poly(rng, Q, labels, max_terms=3):
    """Random polynomial whose monomials are path labels sharing a signature
    with the first one, hence uniformly compatible (or zero)."""
    m = rng.choice(labels)
    sig = Q.signature_of_monomial(m)
    same = [u for u in labels if Q.signature_of_monomial(u) == sig]
    terms = {m: Fraction(rng.choice([-2, -1, 1, 2, 3]))}
    others = [u for u in same if u != m]
    for _ in range(rng.randint(0, max_terms - 1) if others else 0):
        terms[rng.choice(others)] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return Polynomial(Q.alphabet, terms)


XYZ = Alphabet(("x", "y", "z"))


@pytest.mark.criterion("AC6")
def test_ac6_signatures_agree_with_path_enumeration():
    rng = random.Random(SEED + 1)
    for _ in range(N_PROPERTY):
        Q = random_quiver(rng, XYZ, 6, 12)
        edges = [tuple(e) for e in Q.edges]
        m = tuple(rng.randrange(3) for _ in range(rng.randint(0, 5)))
        assert set(Q.signature_of_monomial(m).pairs()) == brute_signature(Q.n, edges, m)
        f = random_poly(rng, XYZ, max_len=4)
        assert set(Q.signature_of_poly(f).pairs()) == brute_poly_signature(Q.n, edges, f.support())


@pytest.mark.criterion("AC6")
def test_ac6_sum_product_and_rewriting_lemmas():
    rng = random.Random(SEED + 2)
    counts = {"sum": 0, "product": 0, "rewrite": 0}
    while min(counts.values()) < N_PROPERTY:
        Q = random_quiver(rng, XYZ, 3, 7)
        labels = sorted({Q.path_label(p) for p in Q.paths(3)})
        if not labels:
            continue
        f, g = path_poly(rng, Q, labels), path_poly(rng, Q, labels)
        sf, sg = Q.signature_of_poly(f), Q.signature_of_poly(g)
        # sum law
        if sf & sg:
            counts["sum"] += 1
            assert Q.signature_of_poly(f + g) >= sf & sg
            if sf == sg and f + g:
                assert Q.is_uniformly_compatible(f + g)
        # product law: g acts first
        counts["product"] += 1
        fg = f * g
        assert Q.signature_of_poly(fg) >= sg.then(sf)
        if fg and sg.then(sf):
            assert Q.signature_of_poly(fg) == sg.then(sf) and Q.is_uniformly_compatible(fg)
        # rewriting-step closure: h = f + lam*a*g*b with a*m*b in supp(f)
        t = rng.choice(labels)
        i = rng.randrange(len(t))
        j = rng.randint(i + 1, len(t))
        a, m, b = t[:i], t[i:j], t[j:]
        gm = path_poly(rng, Q, [m])
        sig_t = Q.signature_of_monomial(t)
        fm = Polynomial.monomial(XYZ, t, rng.choice([-2, 1, 3]))
        for u in rng.sample(labels, min(2, len(labels))):
            if Q.signature_of_monomial(u) & sig_t and u != t:
                fm = fm + Polynomial.monomial(XYZ, u, rng.randint(1, 3))
        if not Q.is_compatible(fm):
            continue
        counts["rewrite"] += 1
        lam = Fraction(rng.choice([-3, -1, 1, 2]), rng.randint(1, 3))
        h = rewrite_step(fm, gm, a, b, lam)
        agb = gm.sandwich(a, b)
        assert Q.is_compatible(h)
        for p in (Polynomial.monomial(XYZ, a), Polynomial.monomial(XYZ, b), agb):
            assert Q.is_uniformly_compatible(p)
        assert Q.signature_of_poly(h) >= Q.signature_of_poly(fm)
        assert Q.signature_of_poly(agb) >= Q.signature_of_poly(fm)
    assert min(counts.values()) >= N_PROPERTY


@pytest.mark.criterion("AC6")
def test_ac6_reduction_recombination_and_idempotence():
    rng = random.Random(SEED + 3)
    for _ in range(N_PROPERTY):
        G = [p for p in (random_poly(rng, XYZ, 3, 3) for _ in range(rng.randint(1, 3))) if p]
        if not G:
            G = [Polynomial.var(XYZ, "x")]
        f = random_poly(rng, XYZ, 6, 4)
        res = reduce(f, G)
        assert res.recombine(G) == f
        again = reduce(res.normal_form, G)
        assert again.normal_form == res.normal_form and not again.trace


def random_source_rule_rep(rng):
    X = Alphabet(("x", "y"))
    n = rng.randint(1, 3)
    edges = tuple(Edge(s, rng.randrange(n), lab) for s in range(n) for lab in range(2) if rng.random() < 0.7)
    Q = LabelledQuiver(X, tuple(f"q{i}" for i in range(n)), edges)
    dims = tuple(rng.randint(0, 3) for _ in range(n))
    mats = tuple(
        rational_matrix([[Fraction(rng.randint(-4, 4), rng.randint(1, 2)) for _ in range(dims[e.source])]
                         for _ in range(dims[e.target])], shape=(dims[e.target], dims[e.source]))
        for e in edges
    )
    return QuiverRepresentation(Q, dims, mats)


@pytest.mark.criterion("AC6")
def test_ac6_product_realization_law():
    rng = random.Random(SEED + 4)
    done = 0
    while done < N_PROPERTY:
        rep = random_source_rule_rep(rng)
        Q = rep.quiver
        labels = sorted({Q.path_label(p) for p in Q.paths(2)} | {()})
        f = Polynomial(Q.alphabet, {rng.choice(labels): Fraction(rng.randint(1, 4)) for _ in range(2)})
        g = Polynomial(Q.alphabet, {rng.choice(labels): Fraction(rng.randint(-3, 3) or 1) for _ in range(2)})
        options = [(u, v, w) for (v, w) in Q.signature_of_poly(f).pairs()
                   for (u, v2) in Q.signature_of_poly(g).pairs() if v2 == v]
        if not options:
            continue
        u, v, w = rng.choice(options)
        lhs = realize(rep, Q, f * g, (u, w))
        rhs = matmul(realize(rep, Q, f, (v, w)), realize(rep, Q, g, (u, v)))
        assert matrices_equal(lhs, rhs)
        done += 1


@pytest.mark.criterion("AC6")
def test_ac6_certificate_round_trip():
    rng = random.Random(SEED + 5)
    for n in range(N_PROPERTY):
        F = [p for p in (random_poly(rng, XYZ, 3, 3) for _ in range(rng.randint(1, 3))) if p]
        if not F:
            F = [Polynomial.var(XYZ, "y") - 1]
        terms = [(Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                  tuple(rng.randrange(3) for _ in range(rng.randint(0, 2))),
                  rng.randrange(len(F)),
                  tuple(rng.randrange(3) for _ in range(rng.randint(0, 2))))
                 for _ in range(rng.randint(0, 4))]
        probe = MembershipCertificate.from_terms(Polynomial.zero(XYZ), terms, F)
        f = probe.recombine(F)
        mc = MembershipCertificate.from_terms(f, terms, F)
        names = tuple(f"g{k}" for k in range(len(F)))
        if n % 2:
            Q = random_quiver(rng, XYZ, 3, 5)
            cert = ProofCertificate(XYZ, names, tuple(F), f, mc, Q, CompatibilityReport.compute(Q, F, f),
                                    Q.structural_consistency())
        else:
            cert = ProofCertificate(XYZ, names, tuple(F), f, mc)
        text = serialize_certificate(cert)
        back = parse_certificate(text)
        assert back == cert
        assert serialize_certificate(back) == text


# --- AC7: negative controls -----------------------------------------------------

@pytest.mark.criterion("AC7")
def test_ac7_perturbed_certificates_are_rejected():
    prob = load("woodbury.prob")
    att = prove_identity(prob.claim, prob.assumptions, prob.quiver, GBConfig(), prob.assumption_names)
    cert = att.certificate
    mc = cert.membership
    rng = random.Random(SEED + 6)
    perturbations = []
    for k, s in enumerate(mc.summands):
        swap = lambda new: mc.summands[:k] + (new,) + mc.summands[k + 1:]
        perturbations.append(swap(dataclasses.replace(s, coeff=s.coeff + Fraction(rng.randint(1, 5), 7))))
        perturbations.append(swap(dataclasses.replace(s, coeff=-s.coeff)))
        perturbations.append(mc.summands[:k] + mc.summands[k + 1:])
    for summands in perturbations:
        bad = dataclasses.replace(cert, membership=dataclasses.replace(mc, summands=summands))
        assert not check_certificate(bad).valid
    # fingerprints, claim, and a reversed edge are all caught
    assert not check_certificate(dataclasses.replace(
        cert, membership=dataclasses.replace(mc, fingerprints=tuple(reversed(mc.fingerprints))))).valid
    assert not check_certificate(dataclasses.replace(cert, claim=cert.claim + 1)).valid
    edges = list(prob.quiver.edges)
    edges[0] = Edge(edges[0].target, edges[0].source, edges[0].label)
    Q2 = LabelledQuiver(prob.alphabet, prob.quiver.vertices, tuple(edges))
    res = check_certificate(dataclasses.replace(cert, quiver=Q2))
    assert not res.valid and res.reason.startswith("compatibility")


@pytest.mark.criterion("AC7")
def test_ac7_incompatible_claim_fails(tmp_path):
    prob = load("inner_inverse.prob")
    f = parse_polynomial("a + 1", prob.alphabet)
    att = prove_identity(f, prob.assumptions, prob.quiver)
    assert att.status is ProofStatus.FAILED_COMPAT
    assert not att.report.claim_compatible
    text = (PROBLEMS / "inner_inverse.prob").read_text().replace("claim a*(ai + y - y*a*ai)*a - a", "claim a + 1")
    path = tmp_path / "bad.prob"
    path.write_text(text)
    assert cli_main(["prove", str(path)]) == 2


@pytest.mark.criterion("AC7")
def test_ac7_parallel_edges_inconsistency():
    X = Alphabet(("a",))
    Q = LabelledQuiver.build(X, ["v", "w"], [("v", "w", "a"), ("v", "w", "a")])
    rep = QuiverRepresentation(Q, (1, 1), (rational_matrix([[2]]), rational_matrix([[3]])))
    res = check_representation_consistency(rep, Q, max_len=1)
    assert res.kind is ConsistencyKind.INCONSISTENT
    assert res.witness == ((0,), (1,))
