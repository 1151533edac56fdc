"""Real-root location: Sturm counting, isolating intervals, interlacing.

Rational mode is exact.  A Sturm chain is kept as primitive integer
coefficient vectors (positive rescaling preserves sign variations), and
signs at rational points p/q are taken from the homogenized integer value
sum c_i p^i q^(d-i), so no Fraction arithmetic happens in the inner loop.

Counting convention: for a squarefree polynomial the variation difference
V(a) - V(b) equals the number of distinct real roots in the half-open
interval (a, b].  Open/closed endpoints are then settled by exact sign
checks at the endpoints themselves.

Float mode seeds roots from the companion matrix (LAPACK eigenvalues,
which balance internally) and polishes with Newton iterations at the
polynomial's working precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .poly import (
    FLOAT,
    NEG_INF,
    POS_INF,
    RATIONAL,
    KindMismatchError,
    Poly,
    _Infinity,
    format_scalar,
    is_finite,
    squarefree_decomposition,
    to_mpf,
)


class IllConditionedError(ArithmeticError):
    """Float-mode root polishing failed to converge or roots are unresolvable."""


@dataclass(frozen=True)
class Interval:
    """Extended-real interval with openness flags.

    Isolating intervals produced here are half-open (lo, hi] or exact
    points [r, r]; hi is finite for isolating intervals.
    """

    lo: object
    hi: object
    lo_open: bool = True
    hi_open: bool = False

    def __post_init__(self):
        if is_finite(self.lo) and is_finite(self.hi) and self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    @property
    def is_point(self):
        return is_finite(self.lo) and self.lo == self.hi

    def width(self):
        if not is_finite(self.lo) or not is_finite(self.hi):
            return POS_INF
        return self.hi - self.lo

    def midpoint(self):
        if not is_finite(self.lo) or not is_finite(self.hi):
            raise ValueError("midpoint of an unbounded interval")
        return (self.lo + self.hi) / 2

    def strictly_left_of(self, other):
        """True when every point of self is below every point of other."""
        if not is_finite(self.hi) or not is_finite(other.lo):
            return False
        if self.hi < other.lo:
            return True
        if self.hi == other.lo:
            return self.hi_open or other.lo_open
        return False

    def disjoint(self, other):
        return self.strictly_left_of(other) or other.strictly_left_of(self)

    def contains(self, x):
        if is_finite(self.lo):
            if x < self.lo or (x == self.lo and self.lo_open):
                return False
        if is_finite(self.hi):
            if x > self.hi or (x == self.hi and self.hi_open):
                return False
        return True

    def __repr__(self):
        lo = "(" if self.lo_open else "["
        hi = ")" if self.hi_open else "]"
        return f"{lo}{format_scalar(self.lo)}, {format_scalar(self.hi)}{hi}"


@dataclass(frozen=True)
class RootInterval:
    interval: Interval
    multiplicity: int


@dataclass(frozen=True)
class RootSet:
    """Sorted disjoint isolating intervals, one per distinct real root."""

    roots: tuple
    count: int
    squarefree: bool

    def midpoints(self, prec=53):
        out = []
        with mpmath.workprec(prec):
            for r in self.roots:
                iv = r.interval
                m = iv.lo if iv.is_point else iv.midpoint()
                out.append(to_mpf(m, prec) if isinstance(m, Fraction) else m)
        return out


def _sign_int_poly(coeffs, num, den):
    """Sign of sum_i c_i num^i den^(d-i)."""
    d = len(coeffs) - 1
    acc = coeffs[d]
    for i in range(d - 1, -1, -1):
        acc = acc * num + coeffs[i] * den ** (d - i)
    return (acc > 0) - (acc < 0)


def _variations(signs):
    changes = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            changes += 1
        prev = s
    return changes


class _Isolator:
    """Sturm-chain root isolation for one squarefree rational polynomial."""

    def __init__(self, f):
        if f.kind != RATIONAL:
            raise KindMismatchError("Sturm isolation requires rational coefficients")
        self.poly = f
        self.chain = self._build_chain(f)
        self.bound = self._cauchy_bound()

    @staticmethod
    def _build_chain(f):
        chain = [f.primitive_int_coeffs()]
        d = f.derivative()
        if d.is_zero:
            return chain
        chain.append(d.primitive_int_coeffs())
        a, b = f, d
        while True:
            r = -(a % b)
            if r.is_zero:
                break
            chain.append(r.primitive_int_coeffs())
            a, b = b, Poly.rational(chain[-1])
            if b.degree == 0:
                break
        return chain

    def _cauchy_bound(self):
        c = self.chain[0]
        lead = abs(c[-1])
        biggest = max((abs(v) for v in c[:-1]), default=0)
        return Fraction(biggest, lead) + 2

    def sign(self, x):
        return _sign_int_poly(self.chain[0], x.numerator, x.denominator)

    def variations(self, x):
        if isinstance(x, _Infinity):
            return self._variations_inf(x.sign)
        num, den = x.numerator, x.denominator
        return _variations([_sign_int_poly(c, num, den) for c in self.chain])

    def _variations_inf(self, sgn):
        signs = []
        for c in self.chain:
            d = len(c) - 1
            s = (c[-1] > 0) - (c[-1] < 0)
            if sgn < 0 and d % 2 == 1:
                s = -s
            signs.append(s)
        return _variations(signs)

    def count_half_open(self, lo, hi):
        """Distinct roots in (lo, hi]; lo/hi are Fractions or infinity tags."""
        return self.variations(lo) - self.variations(hi)

    def isolate(self):
        """Isolating intervals for all real roots.

        Returns (points, intervals): exact rational roots found during
        bisection come back in `points`; the rest are half-open (a, b]
        intervals each holding one root.  A rational root hit mid-bisection
        is deflated by the caller, so this routine reports it and stops.
        """
        f = self.poly
        if f.degree == 1:
            return [-f.coeffs[0] / f.coeffs[1]], [], None
        M = self.bound
        lo, hi = -M, M
        total = self.count_half_open(NEG_INF, POS_INF)
        if total == 0:
            return [], [], None
        stack = [(lo, hi, self.variations(lo), self.variations(hi))]
        singles = []
        while stack:
            a, b, va, vb = stack.pop()
            n = va - vb
            if n == 0:
                continue
            if n == 1:
                singles.append(Interval(a, b))
                continue
            m = (a + b) / 2
            if self.sign(m) == 0:
                return [], [], m
            vm = self.variations(m)
            stack.append((a, m, va, vm))
            stack.append((m, b, vm, vb))
        singles.sort(key=lambda iv: iv.lo)
        return [], singles, None

    def refine(self, iv, width):
        """Shrink an isolating interval below `width` by Sturm bisection."""
        if iv.is_point:
            return iv
        a, b = iv.lo, iv.hi
        while b - a > width:
            m = (a + b) / 2
            if self.sign(m) == 0:
                return Interval(m, m, False, False)
            if self.variations(a) - self.variations(m) == 1:
                b = m
            else:
                a = m
        return Interval(a, b)

    def refine_once(self, iv):
        if iv.is_point:
            return iv
        return self.refine(iv, iv.width() * Fraction(3, 4))


class _LocatedRoot:
    """One real algebraic number: an isolator plus a shrinking interval."""

    __slots__ = ("iso", "iv")

    def __init__(self, iso, iv):
        self.iso = iso
        self.iv = iv

    @classmethod
    def exact(cls, value):
        return cls(None, Interval(value, value, False, False))

    @property
    def is_exact(self):
        return self.iv.is_point

    def refine_once(self):
        if self.iso is not None:
            self.iv = self.iso.refine_once(self.iv)

    def refine_to(self, width):
        if self.iso is not None:
            self.iv = self.iso.refine(self.iv, width)

    def approx(self):
        m = self.iv.lo if self.iv.is_point else self.iv.midpoint()
        return m

    def __repr__(self):
        return f"root~{format_scalar(self.approx())}"


def separate(roots):
    """Refine located roots (of squarefree, pairwise-coprime sources) until
    all intervals are pairwise disjoint, so interval order is root order."""
    while True:
        clash = False
        ordered = sorted(roots, key=lambda r: (r.iv.lo, r.iv.hi))
        for a, b in zip(ordered, ordered[1:]):
            if not a.iv.disjoint(b.iv):
                if a.is_exact and b.is_exact:
                    raise ValueError(f"coincident roots at {format_scalar(a.iv.lo)}")
                a.refine_once()
                b.refine_once()
                clash = True
        if not clash:
            return sorted(roots, key=lambda r: (r.iv.lo, r.iv.hi))


def locate_real_roots(f):
    """All real roots of a squarefree rational polynomial as _LocatedRoots."""
    points = []
    work = f
    while work.degree >= 1:
        iso = _Isolator(work)
        exact, ivs, hit = iso.isolate()
        if hit is not None:
            points.append(hit)
            work = work.exact_div(Poly.rational([-hit, 1]))
            continue
        points.extend(exact)
        located = [_LocatedRoot(iso, iv) for iv in ivs]
        return separate([_LocatedRoot.exact(p) for p in points] + located)
    return separate([_LocatedRoot.exact(p) for p in points])


def sturm_count(p, iv):
    """Exact number of distinct real roots of a squarefree rational
    polynomial inside `iv`, honoring the interval's openness flags."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.kind != RATIONAL:
        raise KindMismatchError("sturm_count requires rational coefficients")
    if not p.is_squarefree():
        raise ValueError("sturm_count requires a squarefree polynomial; deflate via gcd(p, p') first")
    iso = _Isolator(p)
    n = iso.count_half_open(iv.lo, iv.hi)
    if is_finite(iv.hi) and iv.hi_open and iso.sign(iv.hi) == 0:
        n -= 1
    if is_finite(iv.lo) and not iv.lo_open and iso.sign(iv.lo) == 0:
        n += 1
    return n


def isolate_roots(p, width):
    """Disjoint sorted isolating intervals for the real roots of p.

    Rational mode: Sturm bisection, multiplicities from the squarefree
    (Yun) decomposition, intervals refined to <= width.  Float mode:
    companion-matrix seeds polished by Newton at the working precision;
    the input is assumed squarefree.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    if isinstance(width, _Infinity) or not width > 0:
        raise ValueError("width must be positive")
    if p.kind == FLOAT:
        return _isolate_float(p, width)
    width = Fraction(width) if not isinstance(width, Fraction) else width
    decomp = squarefree_decomposition(p)
    squarefree = all(m == 1 for _, m in decomp)
    entries = []
    for f, mult in decomp:
        for root in locate_real_roots(f):
            entries.append((root, mult))
    separate([r for r, _ in entries])
    for root, _ in entries:
        root.refine_to(width)
    entries.sort(key=lambda e: (e[0].iv.lo, e[0].iv.hi))
    roots = tuple(RootInterval(r.iv, m) for r, m in entries)
    return RootSet(roots=roots, count=len(roots), squarefree=squarefree)


def _isolate_float(p, width):
    prec = p.prec or 256
    with mpmath.workprec(prec + 64):
        scale = max(abs(c) for c in p.coeffs)
        cs = [c / scale for c in p.coeffs]
        seeds = np.roots([float(c) for c in reversed(cs)])
        fp = [c * i for i, c in enumerate(cs)][1:]

        def f(x):
            acc = mpmath.mpf(0)
            for c in reversed(cs):
                acc = acc * x + c
            return acc

        def fprime(x):
            acc = mpmath.mpf(0)
            for c in reversed(fp):
                acc = acc * x + c
            return acc

        tol = mpmath.mpf(2) ** (-prec + 8)
        roots = []
        for z in seeds:
            if abs(z.imag) > 1e-6 * (1 + abs(z.real)):
                continue
            x = mpmath.mpf(z.real)
            for it in range(100):
                d = fprime(x)
                if d == 0:
                    raise IllConditionedError(f"derivative vanished while polishing near {float(x)}")
                step = f(x) / d
                x -= step
                if abs(step) <= tol * (1 + abs(x)):
                    break
            else:
                raise IllConditionedError(f"no convergence in 100 Newton iterations near {float(x)}")
            roots.append(x)
        roots.sort()
        w = to_mpf(width, prec) if isinstance(width, Fraction) else mpmath.mpf(width)
        deduped = []
        for r in roots:
            if deduped and abs(r - deduped[-1]) <= tol * (1 + abs(r)):
                continue
            deduped.append(r)
        for a, b in zip(deduped, deduped[1:]):
            if b - a < w:
                raise IllConditionedError(
                    f"roots near {float(a)} and {float(b)} are closer than the requested width"
                )
        half = w / 2
        ivs = tuple(
            RootInterval(Interval(r - half, r + half, False, False), 1) for r in deduped
        )
        return RootSet(roots=ivs, count=len(ivs), squarefree=True)


@dataclass(frozen=True)
class RealSimpleCheck:
    ok: bool
    witness: str | None = None

    def __bool__(self):
        return self.ok


def is_real_simple(p):
    """True iff p is squarefree with as many real roots as its degree."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.kind != RATIONAL:
        raise KindMismatchError("is_real_simple requires rational coefficients")
    if p.degree == 0:
        return RealSimpleCheck(True)
    g = p.gcd(p.derivative()) if p.degree >= 1 else Poly.one()
    if g.degree > 0:
        return RealSimpleCheck(False, f"repeated factor of degree {g.degree}: gcd(p, p') is not constant")
    n = sturm_count(p, Interval(NEG_INF, POS_INF))
    if n != p.degree:
        return RealSimpleCheck(False, f"only {n} of {p.degree} roots are real")
    return RealSimpleCheck(True)


@dataclass(frozen=True)
class InterlaceReport:
    verdict: str  # "strict" | "weak-shared-endpoint" | "fail"
    witness: str | None
    resolution: object
    numeric: bool = False


def _cmp_roots(a, b):
    """-1/0/+1 ordering of two located roots; 0 only for the same object."""
    if a is b:
        return 0
    while not a.iv.disjoint(b.iv):
        a.refine_once()
        b.refine_once()
    return -1 if a.iv.strictly_left_of(b.iv) else 1


def interlaces(p, q):
    """Decide whether the real roots of p and q (deg q = deg p + 1) alternate.

    Verdict "strict": between consecutive roots of q lies exactly one root
    of p, no coincidences.  Shared roots are detected exactly via gcd and
    tolerated only at the extreme positions ("weak-shared-endpoint").
    Rational mode is exact; float mode compares at a relative tolerance of
    1e-9 and tags the report numeric.
    """
    if q.degree != p.degree + 1:
        raise ValueError(f"degree mismatch: deg q = {q.degree}, expected deg p + 1 = {p.degree + 1}")
    if p.kind == FLOAT or q.kind == FLOAT:
        return _interlaces_float(p, q)
    for name, poly in (("p", p), ("q", q)):
        chk = is_real_simple(poly)
        if not chk:
            raise ValueError(f"{name} is not real-simple: {chk.witness}")
    g = p.gcd(q)
    shared = locate_real_roots(g) if g.degree >= 1 else []
    pt = p.exact_div(g) if g.degree >= 1 else p
    qt = q.exact_div(g) if g.degree >= 1 else q
    p_only = locate_real_roots(pt.monic()) if pt.degree >= 1 else []
    q_only = locate_real_roots(qt.monic()) if qt.degree >= 1 else []
    everything = shared + p_only + q_only
    separate(everything)

    def key(r):
        return (r.iv.lo, r.iv.hi)

    ps = sorted(shared + p_only, key=key)
    qs = sorted(shared + q_only, key=key)
    n = len(ps)

    def fmt(r):
        if not r.is_exact:
            r.refine_to(Fraction(1, 10**9))
        v = r.approx()
        if isinstance(v, Fraction) and v.denominator == 1:
            return str(v.numerator)
        return "%.8g" % float(v)

    resolution = max((r.iv.width() for r in everything), default=Fraction(0))
    witness = None
    for r in shared:
        i = next(k for k, v in enumerate(ps) if v is r)
        j = next(k for k, v in enumerate(qs) if v is r)
        at_low = i == 0 and j == 0
        at_high = i == n - 1 and j == n
        if not (at_low or at_high):
            witness = f"shared root {fmt(r)} sits at an interior position"
            return InterlaceReport("fail", witness, resolution)
    for i in range(n):
        c1 = _cmp_roots(qs[i], ps[i])
        if not (c1 < 0 or (c1 == 0 and i == 0)):
            witness = f"{fmt(ps[i])} <= {fmt(qs[i])}"
            return InterlaceReport("fail", witness, resolution)
        c2 = _cmp_roots(ps[i], qs[i + 1])
        if not (c2 < 0 or (c2 == 0 and i == n - 1)):
            witness = f"{fmt(ps[i])} > {fmt(qs[i + 1])}" if c2 > 0 else f"{fmt(ps[i])} = {fmt(qs[i + 1])}"
            return InterlaceReport("fail", witness, resolution)
    verdict = "weak-shared-endpoint" if shared else "strict"
    resolution = max((r.iv.width() for r in everything), default=Fraction(0))
    return InterlaceReport(verdict, None, resolution)


def _interlaces_float(p, q, rel_tol=1e-9):
    prec = max(p.prec or 256, q.prec or 256)
    pf, qf = p.to_float(prec), q.to_float(prec)
    w = mpmath.mpf(2) ** (-prec // 2)
    ps = _isolate_float(pf, w).midpoints()
    qs = _isolate_float(qf, w).midpoints()
    if len(ps) != pf.degree or len(qs) != qf.degree:
        raise ValueError("float interlacing requires all roots real")
    tol = mpmath.mpf(rel_tol)

    def close(a, b):
        return abs(a - b) <= tol * (1 + max(abs(a), abs(b)))

    n = len(ps)
    shared = False
    for i in range(n):
        lo_ok = qs[i] < ps[i] or (i == 0 and close(qs[i], ps[i]))
        hi_ok = ps[i] < qs[i + 1] or (i == n - 1 and close(ps[i], qs[i + 1]))
        if close(qs[i], ps[i]) and i == 0:
            shared = True
        if close(ps[i], qs[i + 1]) and i == n - 1:
            shared = True
        if not (lo_ok and hi_ok):
            return InterlaceReport(
                "fail", f"{mpmath.nstr(ps[i], 8)} not between {mpmath.nstr(qs[i], 8)} and {mpmath.nstr(qs[i+1], 8)}",
                float(w), numeric=True,
            )
    return InterlaceReport("weak-shared-endpoint" if shared else "strict", None, float(w), numeric=True)
