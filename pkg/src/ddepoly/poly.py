"""Dense univariate polynomial arithmetic over exact rationals or big floats.

Two scalar kinds are supported and never mixed inside one polynomial:
exact `fractions.Fraction` coefficients ("rational" kind) and `mpmath.mpf`
coefficients carrying an explicit working precision in bits ("float" kind,
minimum 64 bits).  Rational arithmetic is exact; float arithmetic rounds to
the polynomial's precision.  All values are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

import mpmath
from mpmath import mpf

RATIONAL = "rational"
FLOAT = "float"

MIN_FLOAT_PREC = 64
DEFAULT_FLOAT_PREC = 256


class KindMismatchError(TypeError):
    """Raised when an operation mixes rational and float operands."""


class _Infinity:
    """Tagged signed infinity for extended-real endpoints.

    Compares with ints, Fractions and mpf values; never collapses to a
    float.  Use the module singletons NEG_INF and POS_INF.
    """

    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __gt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign > other.sign
        return self.sign > 0

    def __le__(self, other):
        return self == other or self < other

    def __ge__(self, other):
        return self == other or self > other

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __hash__(self):
        return hash(("inf", self.sign))

    def __neg__(self):
        return NEG_INF if self.sign > 0 else POS_INF

    def __repr__(self):
        return "+inf" if self.sign > 0 else "-inf"


NEG_INF = _Infinity(-1)
POS_INF = _Infinity(+1)


def is_finite(x):
    return not isinstance(x, _Infinity)


def to_mpf(x, prec=DEFAULT_FLOAT_PREC):
    """Convert int/Fraction/mpf/float to mpf at the given precision."""
    if isinstance(x, Fraction):
        with mpmath.workprec(prec):
            return mpmath.mpf(x.numerator) / x.denominator
    with mpmath.workprec(prec):
        return mpmath.mpf(x)


def mpf_to_fraction(x):
    """Exact Fraction equal to a finite mpf (mpf values are dyadic)."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        if exp != 0:
            raise ValueError(f"cannot convert non-finite value {x!r}")
        return Fraction(0)
    v = Fraction(man) * (Fraction(2) ** exp if exp >= 0 else Fraction(1, 2 ** -exp))
    return -v if sign else v


def _as_exact(x):
    return mpf_to_fraction(x) if isinstance(x, mpf) else Fraction(x)


def ext_lt(a, b):
    """a < b on the extended real line, exactly (mpf compared as dyadic)."""
    if isinstance(a, _Infinity):
        return a < b
    if isinstance(b, _Infinity):
        return b > a
    return _as_exact(a) < _as_exact(b)


def ext_le(a, b):
    return ext_eq(a, b) or ext_lt(a, b)


def ext_eq(a, b):
    if isinstance(a, _Infinity) or isinstance(b, _Infinity):
        return a == b
    return _as_exact(a) == _as_exact(b)


def as_fraction(x):
    """Coerce an int, Fraction or 'p/q' string to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def fraction_sqrt(f):
    """Exact square root of a nonnegative Fraction, or None if irrational."""
    if f < 0:
        return None
    n, d = f.numerator, f.denominator
    rn = _isqrt_exact(n)
    rd = _isqrt_exact(d)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _isqrt_exact(n):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def format_scalar(x, dps=17):
    """Render a scalar for reports: exact 'p/q' for rationals, decimal for floats."""
    if isinstance(x, _Infinity):
        return repr(x)
    if isinstance(x, (int,)):
        return str(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, mpmath.mpf):
        return mpmath.nstr(x, dps)
    return mpmath.nstr(mpmath.mpf(x), dps)


class Poly:
    """Immutable dense polynomial; coefficients indexed by power."""

    __slots__ = ("coeffs", "kind", "prec")

    def __init__(self, coeffs, kind, prec=None):
        n = len(coeffs)
        while n and not coeffs[n - 1]:
            n -= 1
        object.__setattr__(self, "coeffs", tuple(coeffs[:n]))
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    @classmethod
    def rational(cls, coeffs):
        """Exact polynomial from ints, Fractions or 'p/q' strings (low to high power)."""
        return cls([as_fraction(c) for c in coeffs], RATIONAL)

    @classmethod
    def floating(cls, coeffs, prec=DEFAULT_FLOAT_PREC):
        """Big-float polynomial at `prec` bits (>= 64)."""
        if prec < MIN_FLOAT_PREC:
            raise ValueError(f"float precision must be >= {MIN_FLOAT_PREC} bits, got {prec}")
        with mpmath.workprec(prec):
            cs = [mpmath.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else mpmath.mpf(c) for c in coeffs]
        return cls(cs, FLOAT, prec)

    @classmethod
    def zero(cls, kind=RATIONAL, prec=None):
        return cls([], kind, prec)

    @classmethod
    def one(cls, kind=RATIONAL, prec=None):
        if kind == RATIONAL:
            return cls([Fraction(1)], RATIONAL)
        return cls([mpf(1)], FLOAT, prec or DEFAULT_FLOAT_PREC)

    @classmethod
    def x(cls):
        return cls.rational([0, 1])

    @property
    def degree(self):
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def lead(self):
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i <= self.degree else self._zero_scalar()

    def _zero_scalar(self):
        return Fraction(0) if self.kind == RATIONAL else mpf(0)

    def _check_kind(self, other):
        if self.kind != other.kind:
            raise KindMismatchError(f"cannot combine {self.kind} and {other.kind} polynomials")
        if self.kind == FLOAT:
            return max(self.prec or DEFAULT_FLOAT_PREC, other.prec or DEFAULT_FLOAT_PREC)
        return None

    def _wrap(self, coeffs, prec=None):
        return Poly(coeffs, self.kind, prec if prec is not None else self.prec)

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        prec = self._check_kind(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._wrap(out, prec)

    def __neg__(self):
        return self._wrap([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            prec = self._check_kind(other)
            if self.is_zero or other.is_zero:
                return Poly.zero(self.kind, prec)
            out = [self._zero_scalar()] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return self._wrap(out, prec)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, s):
        if self.kind == RATIONAL:
            s = as_fraction(s)
        return self._wrap([c * s for c in self.coeffs])

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Poly.one(self.kind, self.prec)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, Poly) and self.kind == other.kind and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.kind, self.coeffs))

    def derivative(self):
        return self._wrap([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation.  Rational polynomials accept Fraction/int points
        (exact result) or mpf points (float result)."""
        if self.is_zero:
            return Fraction(0) if isinstance(x, (int, Fraction)) and self.kind == RATIONAL else mpf(0)
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else x * acc + c
        if isinstance(x, mpf) and isinstance(acc, Fraction):
            return to_mpf(acc, mpmath.mp.prec)
        return acc

    def divrem(self, divisor):
        """Quotient and remainder with deg(remainder) < deg(divisor).

        Exact in rational mode; float mode rounds at the working precision.
        """
        prec = self._check_kind(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < divisor.degree:
            return Poly.zero(self.kind, prec), self
        rem = list(self.coeffs)
        dn = divisor.degree
        lead = divisor.coeffs[-1]
        quo = [self._zero_scalar()] * (len(rem) - dn)
        for k in range(len(rem) - 1, dn - 1, -1):
            f = rem[k] / lead
            quo[k - dn] = f
            if f:
                for j in range(dn + 1):
                    rem[k - dn + j] -= f * divisor.coeffs[j]
            rem[k] = self._zero_scalar()
        return self._wrap(quo, prec), self._wrap(rem[:dn], prec)

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def exact_div(self, divisor):
        """Division known to be exact; raises if a nonzero remainder appears."""
        q, r = self.divrem(divisor)
        if self.kind == RATIONAL and not r.is_zero:
            raise ValueError("exact_div with nonzero remainder")
        return q

    def monic(self):
        if self.is_zero:
            raise ValueError("cannot normalize the zero polynomial")
        lc = self.lead
        if lc == 1:
            return self
        return self._wrap([c / lc for c in self.coeffs])

    def gcd(self, other):
        """Monic gcd over the rationals (Euclid)."""
        if self.kind != RATIONAL or other.kind != RATIONAL:
            raise KindMismatchError("gcd is defined for rational polynomials only")
        a, b = self, other
        if a.is_zero and b.is_zero:
            raise ValueError("gcd(0, 0) is undefined")
        while not b.is_zero:
            a, b = b, (a % b)
            if not b.is_zero:
                b = b.monic()
        return a.monic()

    def is_squarefree(self):
        if self.kind != RATIONAL:
            raise KindMismatchError("squarefree test requires rational coefficients")
        if self.degree <= 1:
            return not self.is_zero
        return self.gcd(self.derivative()).degree == 0

    def squarefree_part(self):
        g = self.gcd(self.derivative()) if self.degree >= 1 else Poly.one()
        if g.degree == 0:
            return self.monic()
        return self.exact_div(g).monic()

    def primitive_int_coeffs(self):
        """Integer coefficient vector with content 1, same sign pattern.

        The scaling factor is positive, so signs (hence Sturm variation
        counts) are preserved.
        """
        if self.kind != RATIONAL:
            raise KindMismatchError("integer normalization requires rational coefficients")
        if self.is_zero:
            return ()
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // int_gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = int_gcd(g, abs(v))
        return tuple(v // g for v in ints)

    def to_float(self, prec=DEFAULT_FLOAT_PREC):
        if self.kind == FLOAT:
            return self
        return Poly.floating(self.coeffs, prec)

    def __repr__(self):
        return f"Poly({format_poly(self)})"


def format_poly(p, var="x", dps=12):
    """Human-readable form, highest power first: '2x^3 - x + 5/4'."""
    if p.is_zero:
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        neg = c < 0
        mag = -c if neg else c
        if i == 0:
            body = format_scalar(mag, dps)
        else:
            xs = var if i == 1 else f"{var}^{i}"
            body = xs if mag == 1 else f"{format_scalar(mag, dps)}{xs}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def squarefree_decomposition(p):
    """Yun decomposition of a rational polynomial: [(f_i, i)] with p ~ prod f_i^i.

    Factors are monic, squarefree and pairwise coprime.
    """
    if p.kind != RATIONAL:
        raise KindMismatchError("squarefree decomposition requires rational coefficients")
    if p.is_zero:
        raise ValueError("zero polynomial")
    p = p.monic()
    if p.degree == 0:
        return []
    dp = p.derivative()
    g = p.gcd(dp)
    if g.degree == 0:
        return [(p, 1)]
    out = []
    w = p.exact_div(g)
    y = dp.exact_div(g)
    z = y - w.derivative()
    i = 1
    while w.degree > 0:
        gi = w.gcd(z) if not z.is_zero else w.monic()
        if gi.degree > 0:
            out.append((gi.monic(), i))
        w = w.exact_div(gi)
        y = z.exact_div(gi) if not z.is_zero else z
        z = y - w.derivative()
        i += 1
    return out
