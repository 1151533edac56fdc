"""Recurrence data for the quartic exponential weight and its orthonormal
polynomials.

The weight exp(-x^4 + 2tx^2 - t^2/4) (suitably normalized) produces a
three-term recurrence x P_n = a_{n+1} P_{n+1} + a_n P_{n-1} whose
coefficients obey the nonlinear string relation

    n = 4 a_n^2 (a_{n+1}^2 + a_n^2 + a_{n-1}^2 - t),   a_0 = 0.

Forward iteration of that relation is unstable (roughly one digit lost
per step), so everything here runs in mpmath at a caller-chosen precision
(>= 128 bits, default 256) with a residual monitor that aborts before
silent corruption.  The seed a_1 dominates the achievable accuracy: at
t = 0 it is Gamma(3/4) / (2^(1/4) sqrt(pi)), computed here by a Spouge
series so the gamma evaluation has an in-house route checked against an
independent one; for t != 0 it comes from a ratio of modified Bessel
functions evaluated by adaptive quadrature of the integral representation
K_nu(z) = int_0^inf exp(-z cosh u) cosh(nu u) du.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .dde import PolySequence
from .poly import Poly, to_mpf


class PrecisionError(ArithmeticError):
    """Iteration aborted: precision exhausted or data outside its domain."""


class QuadratureError(ArithmeticError):
    """Numerical integration failed to meet the requested accuracy."""


def gamma_positive(x, prec=256):
    """Gamma(x) for x > 0 via the Spouge series at `prec` bits.

    The term count is chosen so the series truncation error is below
    2^-prec; accuracy is limited only by the working precision.
    """
    if x <= 0:
        raise ValueError("gamma_positive requires x > 0")
    # error ~ a^(-1/2) (2 pi)^(-(a + 1/2)); a = ceil(0.39 * prec) keeps it under 2^-prec
    a = int(0.39 * prec) + 3
    with mpmath.workprec(prec + 64):
        z = to_mpf(x, prec + 64) if isinstance(x, Fraction) else mpmath.mpf(x)
        z -= 1
        acc = mpmath.sqrt(2 * mpmath.pi)
        for k in range(1, a):
            ck = mpmath.mpf(a - k) ** (k - mpmath.mpf(1) / 2) * mpmath.exp(a - k)
            ck /= mpmath.factorial(k - 1)
            if k % 2 == 0:
                ck = -ck
            acc += ck / (z + k)
        val = acc * (z + a) ** (z + mpmath.mpf(1) / 2) * mpmath.exp(-(z + a))
    return +val


def bessel_k(nu, z, rel_tol=1e-12):
    """Modified Bessel function of the second kind by adaptive quadrature.

    Integrates exp(-z cosh u) cosh(nu u) on [0, T] where T is chosen so
    the discarded tail is negligible at the working precision; z > 0.
    """
    if z <= 0:
        raise ValueError("bessel_k requires z > 0")
    dps = max(30, int(-mpmath.log10(rel_tol)) + 18)
    with mpmath.workdps(dps + 10):
        nu = to_mpf(nu, mpmath.mp.prec) if isinstance(nu, Fraction) else mpmath.mpf(nu)
        z = to_mpf(z, mpmath.mp.prec) if isinstance(z, Fraction) else mpmath.mpf(z)
        target = (dps + 15) * mpmath.log(10)
        T = mpmath.log(2 * (target + abs(nu) + 10) / z + 4) + 2
        val, err = mpmath.quad(lambda u: mpmath.exp(-z * mpmath.cosh(u)) * mpmath.cosh(nu * u), [0, T], error=True)
        if not mpmath.isfinite(val) or (val != 0 and abs(err / val) > rel_tol):
            raise QuadratureError(f"K_{float(nu)}({float(z)}) quadrature error estimate {float(err):.2e} too large")
        return +val


def recurrence_seed(t, prec=256):
    """a_1(t): squared first-moment ratio of the weight exp(-x^4 + 2tx^2).

    t = 0 uses the closed gamma form.  t < 0 uses the Bessel-ratio form
    a_1^2 = (|t|/2) (K_{3/4}(t^2/2)/K_{1/4}(t^2/2) - 1), which matches the
    moment integrals to working precision (the small-t limit agrees with
    the gamma form via the reflection identity).  t > 0 lies in the
    oscillatory-free regime where the K-ratio form does not hold, so the
    moment ratio is integrated directly.
    """
    with mpmath.workprec(prec):
        tv = to_mpf(t, prec) if isinstance(t, Fraction) else mpmath.mpf(t)
        if tv == 0:
            g = gamma_positive(Fraction(3, 4), prec)
            return g / (mpmath.mpf(2) ** mpmath.mpf("0.25") * mpmath.sqrt(mpmath.pi))
        if tv < 0:
            rel = float(max(mpmath.mpf(2) ** (-prec), mpmath.mpf(10) ** -60))
            z = tv * tv / 2
            ratio = bessel_k(Fraction(3, 4), z, rel_tol=rel) / bessel_k(Fraction(1, 4), z, rel_tol=rel)
            a1sq = (abs(tv) / 2) * (ratio - 1)
        else:
            a1sq = _moment_ratio(tv, prec)
        if a1sq <= 0:
            raise PrecisionError(f"a_1(t)^2 = {float(a1sq)} <= 0 at t = {float(tv)}")
        return mpmath.sqrt(a1sq)


def _moment_ratio(tv, prec):
    """int x^2 w / int w for w = exp(-x^4 + 2 t x^2), by adaptive quadrature."""
    dps = int(prec * 0.30103) + 15
    with mpmath.workdps(dps):
        # integrand is negligible once x^4 - 2tx^2 exceeds the precision budget
        budget = dps * mpmath.log(10) + 20
        U = mpmath.sqrt(abs(tv) + mpmath.sqrt(tv * tv + budget)) + 1

        def w(x):
            return mpmath.exp(-(x**4) + 2 * tv * x * x)

        m0 = mpmath.quad(w, [0, U])
        m2 = mpmath.quad(lambda x: x * x * w(x), [0, U])
        return m2 / m0


@dataclass(frozen=True)
class FreudData:
    """Recurrence coefficients a_0..a_N with their string-relation residuals."""

    t: object
    precision: int
    a: tuple
    residuals: tuple

    def __len__(self):
        return len(self.a)


def freud_recurrence_coeffs(t, N, precision=256):
    """a_0..a_N from the string relation, with residual monitoring.

    Forward iteration is unstable, so N is capped at 32 and the residual
    |n - 4 a_n^2 (a_{n+1}^2 + a_n^2 + a_{n-1}^2 - t)| must stay below
    2^(-precision/2) at every step.
    """
    if N > 32:
        raise ValueError("N > 32: forward iteration of the string relation is too unstable")
    if precision < 128:
        raise ValueError("precision must be >= 128 bits")
    with mpmath.workprec(precision):
        tv = to_mpf(t, precision) if isinstance(t, Fraction) else mpmath.mpf(t)
        a = [mpmath.mpf(0), recurrence_seed(t, precision)]
        residuals = []
        tol = mpmath.mpf(2) ** (-precision // 2)
        for n in range(1, max(N, 1)):
            an, am = a[n], a[n - 1]
            sq = mpmath.mpf(n) / (4 * an * an) - an * an - am * am + tv
            if sq <= 0:
                raise PrecisionError(
                    f"a_{n + 1}^2 = {float(sq)} <= 0: precision exhausted or instability at n = {n}"
                )
            a.append(mpmath.sqrt(sq))
            r = abs(mpmath.mpf(n) - 4 * an * an * (a[n + 1] ** 2 + an**2 + am**2 - tv))
            residuals.append(r)
            if r > tol:
                raise PrecisionError(f"string-relation residual {float(r):.2e} at n = {n} exceeds {float(tol):.2e}")
        return FreudData(tv, precision, tuple(a[: N + 1]), tuple(residuals[: max(N - 1, 0)]))


def freud_sequence(data, N):
    """P_0..P_N (unit-norm convention, P_1 = x/a_1) from the three-term recurrence.

    When N >= 5 the quintic member is validated against its closed
    coefficient form in the a_n (an exact algebraic identity, so any
    violation beyond roundoff flags corrupted data).
    """
    if len(data.a) < N + 1:
        raise ValueError(f"need a_0..a_{N}, have {len(data.a) - 1}")
    prec = data.precision
    with mpmath.workprec(prec):
        polys = [Poly.floating([1], prec), Poly.floating([0, 1 / data.a[1]], prec)]
        for n in range(1, N):
            xpn = Poly.floating([0] + list(polys[n].coeffs), prec)
            nxt = (xpn - data.a[n] * polys[n - 1]).scale(1 / data.a[n + 1])
            polys.append(nxt)
        seq = PolySequence(tuple(polys))
        if N >= 5:
            bad = _p5_coefficient_residual(data, seq)
            if bad > mpmath.mpf(2) ** (-prec // 2):
                raise PrecisionError(f"quintic closed-form residual {float(bad):.2e}; data corrupted")
        return seq


def p5_invariants(data):
    """alpha, beta and the squared positive zeros zeta+- of the quintic member."""
    a = data.a
    with mpmath.workprec(data.precision):
        alpha = a[1] ** 2 + a[2] ** 2 + a[3] ** 2 + a[4] ** 2
        beta = a[1] ** 2 * a[3] ** 2 + a[1] ** 2 * a[4] ** 2 + a[2] ** 2 * a[4] ** 2
        disc = mpmath.sqrt(alpha * alpha - 4 * beta)
        zp = (alpha + disc) / 2
        zm = (alpha - disc) / 2
        return alpha, beta, zp, zm


def _p5_coefficient_residual(data, seq):
    """Max relative mismatch between P_5's coefficients and the closed form
    (x^5 - alpha x^3 + beta x) / (a_1 a_2 a_3 a_4 a_5)."""
    alpha, beta, _, _ = p5_invariants(data)
    with mpmath.workprec(data.precision):
        prod = data.a[1] * data.a[2] * data.a[3] * data.a[4] * data.a[5]
        expect = [0, beta / prod, 0, -alpha / prod, 0, 1 / prod]
        got = seq[5].coeffs
        worst = mpmath.mpf(0)
        scale = max(abs(e) for e in expect if e)
        for i in range(6):
            g = got[i] if i < len(got) else mpmath.mpf(0)
            worst = max(worst, abs(g - expect[i]) / scale)
        return worst
