import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddepoly.poly import NEG_INF, POS_INF, Poly
from ddepoly.roots import (
    Interval,
    interlaces,
    is_real_simple,
    isolate_roots,
    sturm_count,
)

P = Poly.rational
WIDTH = Fraction(1, 10**6)


def poly_from_roots(roots):
    p = Poly.one()
    for r in roots:
        p = p * P([-Fraction(r), 1])
    return p


def test_sturm_sqrt2():
    assert sturm_count(P([-2, 0, 1]), Interval(Fraction(0), Fraction(2))) == 1


def test_sturm_no_real_roots():
    assert sturm_count(P([1, 0, 1]), Interval(NEG_INF, POS_INF)) == 0


def test_sturm_planted_eight():
    p = poly_from_roots(range(1, 9))
    assert sturm_count(p, Interval(NEG_INF, POS_INF)) == 8


def test_sturm_endpoint_openness():
    p = poly_from_roots([0, 1, 2])
    # (0, 2] holds 1 and 2; [0, 2) holds 0 and 1
    assert sturm_count(p, Interval(Fraction(0), Fraction(2), True, False)) == 2
    assert sturm_count(p, Interval(Fraction(0), Fraction(2), False, True)) == 2
    assert sturm_count(p, Interval(Fraction(0), Fraction(2), False, False)) == 3
    assert sturm_count(p, Interval(Fraction(0), Fraction(2), True, True)) == 1


def test_sturm_rejects_repeated_roots():
    with pytest.raises(ValueError):
        sturm_count(P([1, -2, 1]), Interval(NEG_INF, POS_INF))


def test_isolate_x2_minus_x():
    rs = isolate_roots(P([0, -1, 1]), WIDTH)
    assert rs.count == 2 and rs.squarefree
    assert [r.multiplicity for r in rs.roots] == [1, 1]
    mids = [float(m) for m in rs.midpoints()]
    assert abs(mids[0]) < 1e-6 and abs(mids[1] - 1) < 1e-6


def test_isolate_scaled_cubic():
    # 8x^3 - 12x factors as 4x(2x^2 - 3): roots 0 and +-sqrt(3/2)
    rs = isolate_roots(P([0, -12, 0, 8]), Fraction(1, 10**12))
    assert rs.count == 3
    mids = rs.midpoints(prec=80)
    assert abs(mids[1]) < 1e-12
    for m in (mids[0], mids[2]):
        assert abs(m * m - 1.5) < 1e-10


def test_isolate_double_root():
    rs = isolate_roots(P([1, -2, 1]), WIDTH)
    assert rs.count == 1 and not rs.squarefree
    assert rs.roots[0].multiplicity == 2
    assert rs.roots[0].interval.is_point and rs.roots[0].interval.lo == 1


def test_isolate_bad_width():
    with pytest.raises(ValueError):
        isolate_roots(P([0, 1]), Fraction(0))
    with pytest.raises(ValueError):
        isolate_roots(Poly.zero(), WIDTH)


def test_real_simple_examples():
    assert is_real_simple(P([-1, 0, 1])).ok
    chk = is_real_simple(P([1, 0, 1]))
    assert not chk.ok and "0 of 2" in chk.witness
    chk = is_real_simple(P([1, -2, 1]))
    assert not chk.ok and "repeated" in chk.witness


def test_interlaces_examples():
    assert interlaces(P([0, 2]), P([-1, 0, 4])).verdict == "strict"
    assert interlaces(P([0, 1]), P([-1, 0, 1])).verdict == "strict"
    rep = interlaces(P([-2, 1]), P([-1, 0, 1]))
    assert rep.verdict == "fail"
    assert rep.witness == "2 > 1"


def test_interlaces_weak_shared_endpoint():
    # consecutive set-partition generating polynomials share the root at 0
    b2 = P([0, 1, 1])
    b3 = P([0, 1, 3, 1])
    rep = interlaces(b2, b3)
    assert rep.verdict == "weak-shared-endpoint"


def test_interlaces_shared_interior_fails():
    p = poly_from_roots([0, 2])
    q = poly_from_roots([-1, 0, 3])  # shares 0, which is interior in q
    rep = interlaces(p, q)
    assert rep.verdict == "fail" and "interior" in rep.witness


def test_interlaces_degree_mismatch():
    with pytest.raises(ValueError):
        interlaces(P([0, 1]), P([0, 0, 0, 1]))


def test_interlaces_rejects_complex_roots():
    with pytest.raises(ValueError):
        interlaces(P([1, 0, 1]), P([0, 1, 0, 1]))


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(min_value=-12, max_value=12), min_size=2, max_size=6, unique=True),
    st.sampled_from([Fraction(1), Fraction(-2), Fraction(3, 7), Fraction(-11, 3)]),
    st.integers(min_value=-2, max_value=2),
)
def test_interlace_scaling_invariance(qroots_ints, scale, shift):
    qroots = sorted(Fraction(v) for v in qroots_ints)
    q = poly_from_roots(qroots)
    # p roots sit near (not on) the gaps of q; the verdict, whatever it is,
    # must not change under nonzero constant scaling of either side
    proots = [(a + b) / 2 + Fraction(shift, 3) for a, b in zip(qroots, qroots[1:])]
    p = poly_from_roots(proots)
    base = interlaces(p, q).verdict
    assert interlaces(p.scale(scale), q).verdict == base
    assert interlaces(p, q.scale(scale)).verdict == base


def test_gcd_constant_iff_all_multiplicities_one():
    rng = random.Random(7)
    for _ in range(25):
        roots = rng.sample(range(-8, 9), rng.randint(1, 4))
        mults = [rng.randint(1, 3) for _ in roots]
        p = Poly.one()
        for r, m in zip(roots, mults):
            p = p * P([-r, 1]) ** m
        rs = isolate_roots(p, WIDTH)
        gcd_const = p.gcd(p.derivative()).degree == 0
        assert gcd_const == all(ri.multiplicity == 1 for ri in rs.roots)
        assert sorted(ri.multiplicity for ri in rs.roots) == sorted(mults)


def test_float_rational_agreement():
    roots = [Fraction(-7, 2), Fraction(-1, 3), Fraction(0), Fraction(2), Fraction(19, 4)]
    p = poly_from_roots(roots)
    width = Fraction(1, 10**9)
    exact = isolate_roots(p, width)
    approx = isolate_roots(p.to_float(128), mpmath.mpf(1e-9))
    assert exact.count == approx.count == 5
    for em, am in zip(exact.midpoints(128), approx.midpoints(128)):
        assert abs(float(em) - float(am)) <= 2e-9


def test_float_isolation_newton_polish():
    p = Poly.floating([0, -12, 0, 8], prec=192)
    rs = isolate_roots(p, mpmath.mpf(10) ** -40)
    mids = rs.midpoints(192)
    with mpmath.workprec(192):
        target = mpmath.sqrt(mpmath.mpf(3) / 2)
        assert abs(mids[2] - target) < mpmath.mpf(10) ** -40


def test_float_isolation_reports_ill_conditioning():
    from ddepoly.roots import IllConditionedError

    p = Poly.floating([1, -2, 1], prec=192)  # (x-1)^2: Newton stalls at linear rate
    with pytest.raises(IllConditionedError):
        isolate_roots(p, mpmath.mpf(1e-20))
