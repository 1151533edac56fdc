"""Acceptance gate: every criterion runs at its stated tolerance and budget
and prints one PASS/FAIL line.  Run with `pytest tests/test_acceptance.py -s`
to see the lines as they complete."""

import random
import time
from fractions import Fraction

import mpmath

from ddepoly.dde import CoefficientPair, CoefficientRule, admits_dde, generate, sample_xy, step
from ddepoly.families import FamilySpec, coefficient_source, oracle_poly
from ddepoly.freud import freud_recurrence_coeffs, freud_sequence, p5_invariants
from ddepoly.kfactor import boundary_zeros, classify
from ddepoly.poly import NEG_INF, POS_INF, Poly
from ddepoly.roots import Interval, interlaces, isolate_roots, sturm_count
from ddepoly.verify import check_k_identity, verify_sequence

P = Poly.rational


def report(num, name, budget):
    start = time.perf_counter()

    def finish(ok, detail=""):
        elapsed = time.perf_counter() - start
        status = "PASS" if ok and elapsed < budget else "FAIL"
        extra = f" {detail}" if detail else ""
        print(f"[{status}] criterion {num}: {name} ({elapsed:.2f}s / budget {budget:.0f}s){extra}")
        assert ok, f"criterion {num} failed{extra}"
        assert elapsed < budget, f"criterion {num} overran its {budget}s budget ({elapsed:.2f}s)"

    return finish


def test_criterion_1_bell_equivalence():
    finish = report(1, "set-partition family matches Stirling construction, n <= 15", 1.0)
    seq = generate(coefficient_source(FamilySpec("bell")), 15)
    ok = all(seq[n] == oracle_poly("bell", n) for n in range(16))
    finish(ok)


def test_criterion_2_classical_equivalence():
    finish = report(2, "classical families match three-term recurrences, n <= 20", 5.0)
    ok = True
    for kind, params in (
        ("hermite", {}),
        ("laguerre", {"alpha": Fraction(1)}),
        ("jacobi", {"alpha": Fraction(1, 2), "beta": Fraction(1, 2)}),
    ):
        seq = generate(coefficient_source(FamilySpec(kind, params)), 20)
        ok = ok and all(seq[n] == oracle_poly(kind, n, **params) for n in range(21))
    finish(ok)


def test_criterion_3_hypergeometric():
    finish = report(3, "terminating-series family: oracle equality, case (a) on (0,1), interlacing", 5.0)
    params = {"b": Fraction(20), "c": Fraction(1)}
    spec = FamilySpec("hyp2f1", params)
    seq = generate(coefficient_source(spec), 10)
    ok = all(seq[n] == oracle_poly("hyp2f1", n, **params) for n in range(11))
    # damping factor is x^(n+1) (x-1)^(19-n) for these parameters
    for n in range(1, 11):
        k = classify(coefficient_source(spec).pair(n))
        ok = ok and k.exponent_at(Fraction(0)) == n + 1
        ok = ok and k.exponent_at(Fraction(1)) == 19 - n
    rep = verify_sequence(spec, 10)
    ok = ok and rep.decision.case == "a" and rep.agreement
    ok = ok and rep.decision.alphas[0] == 0 and rep.decision.betas[0] == 1
    ok = ok and all(r.containment == "ok" for r in rep.records)
    ok = ok and all(r.interlace_with_next == "strict" for r in rep.records[:-1])
    finish(ok)


def test_criterion_4_square_factor_family():
    finish = report(4, "quadratic-damping family: case (a) on (-1,1), strict interlacing, n <= 15", 5.0)
    rep = verify_sequence(FamilySpec("euler_frobenius", {"kappa": "1", "r": "n+1"}), 15)
    ok = rep.decision.case == "a" and rep.agreement
    ok = ok and rep.decision.alphas[0] == -1 and rep.decision.betas[0] == 1
    ok = ok and all(r.containment == "ok" and r.real_simple for r in rep.records)
    ok = ok and all(r.interlace_with_next == "strict" for r in rep.records[:-1])
    finish(ok)


def test_criterion_5_bell_zeros():
    finish = report(5, "set-partition zeros: case (c), real simple in (-inf, 0], n <= 12", 2.0)
    rep = verify_sequence(FamilySpec("bell"), 12)
    ok = rep.decision.case == "c" and rep.agreement
    ok = ok and rep.decision.containment[0] == (NEG_INF, Fraction(0), False, True)
    for r in rep.records:
        ok = ok and r.real_simple and r.containment == "ok"
        ok = ok and r.zeros[-1].is_point and r.zeros[-1].lo == 0  # closed endpoint accepted
    finish(ok)


def test_criterion_6_quartic_weight_negative_result():
    finish = report(6, "quartic weight at t=0: seed, residuals, quintic zeros, no pair at degree 5", 5.0)
    prec = 256
    data = freud_recurrence_coeffs(0, 6, prec)
    with mpmath.workprec(prec + 32):
        ref = mpmath.gamma(mpmath.mpf(3) / 4) / (2 ** mpmath.mpf("0.25") * mpmath.sqrt(mpmath.pi))
        ok = abs(data.a[1] - ref) / ref < mpmath.mpf(10) ** -60
    ok = ok and max(data.residuals) < 1e-30
    seq = freud_sequence(data, 6)
    _, _, zp, zm = p5_invariants(data)
    with mpmath.workprec(prec):
        mids = isolate_roots(seq[5], mpmath.mpf(2) ** -130).midpoints(prec)
        expect = sorted([-mpmath.sqrt(zp), -mpmath.sqrt(zm), mpmath.mpf(0), mpmath.sqrt(zm), mpmath.sqrt(zp)])
        zero_err = max(abs(m - e) / (1 + abs(e)) for m, e in zip(mids, expect))
    ok = ok and zero_err < 1e-30
    tol = 1e-12
    res = admits_dde(list(seq.polys), tolerance=tol)
    e5 = res.entry(5)
    ok = ok and e5.verdict == "fails" and e5.residual >= 1e6 * tol
    xy = sample_xy(seq[5], seq[6], mpmath.mpf(2) ** -130)
    with mpmath.workprec(prec):
        V = mpmath.matrix(5, 5)
        for i, (x, _) in enumerate(xy):
            for j in range(5):
                V[i, j] = x**j
        coef = mpmath.lu_solve(V, mpmath.matrix([y for _, y in xy]))
        interp_resid = max(abs(sum(coef[j] * x**j for j in range(5)) - y) for x, y in xy)
    ok = ok and interp_resid < 1e-25 and abs(coef[4]) > 1e-6
    finish(ok, f"quintic-zero mismatch {float(zero_err):.1e}, step-5 residual {e5.residual:.1e}")


def test_criterion_7_classification_soundness():
    finish = report(7, "500 random pairs: <= 2 vanishing points, log-derivative matches B/A", 10.0)
    rng = random.Random(20260810)
    halves = [Fraction(k, 2) for k in range(-10, 11)]
    nonzero = [Fraction(v) for v in (1, -1, 2, -2, 3, -3)] + [Fraction(1, 2), Fraction(-5, 2)]
    ok = True
    worst = 0.0
    for _ in range(500):
        shape = rng.randrange(6)
        if shape == 0:
            A = P([rng.choice(nonzero)])
        elif shape in (1, 2):
            A = P([-rng.choice(halves), 1]) * P([rng.choice(nonzero)])
        else:
            A = P([-rng.choice(halves), 1]) * P([-rng.choice(halves), 1]) * P([rng.choice(nonzero)])
        bshape = rng.randrange(5)
        if bshape == 0:
            B = Poly.zero()
        elif bshape == 1:
            B = P([rng.choice(nonzero)])
        else:
            B = P([-rng.choice(halves), 1]) * P([rng.choice(nonzero)])
        c = CoefficientPair(A, B)
        spec = boundary_zeros(classify(c))
        ok = ok and spec.k_zero_count <= 2
        err = check_k_identity(c, spec.classification, samples=5)
        worst = max(worst, err)
        ok = ok and err < 1e-5
    finish(ok, f"worst log-derivative error {worst:.2e}")


def test_criterion_8_root_isolation_oracle():
    finish = report(8, "200 planted-root polynomials: counts recovered exactly", 10.0)
    rng = random.Random(8128)
    ok = True
    for _ in range(200):
        deg = rng.randint(3, 12)
        numerators = rng.sample(range(-60, 61), deg)
        den = rng.choice([1, 1, 2, 4])
        roots = sorted(Fraction(v, den) for v in numerators)
        p = Poly.one()
        for r in roots:
            p = p * P([-r, 1])
        ok = ok and sturm_count(p, Interval(NEG_INF, POS_INF)) == deg
        rs = isolate_roots(p, Fraction(1, 1000))
        ok = ok and rs.count == deg and rs.squarefree
        ok = ok and all(ri.interval.contains(r) for ri, r in zip(rs.roots, roots))
    finish(ok)


def test_criterion_9_two_sided_growth_family():
    finish = report(9, "two-sided growth family: extreme zeros exact, full interlacing, n <= 10", 2.0)

    def pair(n):
        if n == 0:
            return CoefficientPair(P([1]), P([0, 1]))
        return CoefficientPair(P([-((n + 1) ** 2), 0, 1]), Poly.zero())

    src = CoefficientRule(pair, name="two-sided-growth")
    seq = generate(src, 11)
    ok = seq.collapsed == () and seq.truncated_at is None
    for n in range(1, 11):
        c = n + 1  # A_n = x^2 - (n+1)^2; extremes of the next member sit at +-(n+1)
        nxt = seq[n + 1]
        ok = ok and nxt(Fraction(c)) == 0 and nxt(Fraction(-c)) == 0
        ok = ok and sturm_count(nxt, Interval(Fraction(c), POS_INF)) == 0
        ok = ok and sturm_count(nxt, Interval(NEG_INF, Fraction(-c), hi_open=True)) == 0
    for n in range(1, 11):
        ok = ok and interlaces(seq[n], seq[n + 1]).verdict == "strict"
    rep = verify_sequence(src, 10)
    ok = ok and rep.decision.case == "d" and rep.agreement
    finish(ok)


def test_criterion_10_round_trip():
    finish = report(10, "generate -> recover round trip, unique for n >= 3, all rational families", 5.0)
    specs = [
        FamilySpec("hermite"),
        FamilySpec("laguerre", {"alpha": Fraction(1)}),
        FamilySpec("jacobi", {"alpha": Fraction(1, 2), "beta": Fraction(1, 2)}),
        FamilySpec("bell"),
        FamilySpec("euler_frobenius", {"kappa": "1", "r": "n+1"}),
        FamilySpec("hermite_like", {"kappa": "2"}),
        FamilySpec("vertgeim", {"a": "1", "b": "4", "alpha": "1"}),
        FamilySpec("hyp2f1", {"b": Fraction(20), "c": Fraction(1)}),
    ]
    ok = True
    for spec in specs:
        seq = generate(coefficient_source(spec), 10)
        res = admits_dde(list(seq.polys))
        ok = ok and res.all_admit and not res.numeric
        for e in res.entries:
            ok = ok and step(seq[e.n], e.pair) == seq[e.n + 1]
            if e.n >= 3:
                ok = ok and e.unique
    finish(ok)
