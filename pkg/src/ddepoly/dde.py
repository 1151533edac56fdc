"""The recurrence engine: P_{n+1} = A_n P_n' + B_n P_n with deg A <= 2, deg B <= 1.

`generate` runs the recurrence from P_0 = 1.  `admits_dde` goes the other
way: given an arbitrary polynomial table it decides, degree by degree,
whether coefficient pairs of the bounded degrees exist, recovering them
when they do.  The decision is exact linear algebra on remainder
coefficients: a quadratic A must satisfy P_{n+1} - A P_n' == 0 modulo P_n,
which is a linear system in A's three coefficients; B then falls out by
exact division.  This avoids any arithmetic with the roots of P_n while
being equivalent to interpolating A through (x_k, P_{n+1}(x_k)/P_n'(x_k))
at the simple zeros x_k of P_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .poly import DEFAULT_FLOAT_PREC, FLOAT, RATIONAL, KindMismatchError, Poly, format_poly, to_mpf
from .roots import isolate_roots


class NonSimpleZerosError(ValueError):
    """A polynomial required to have simple zeros has a repeated root."""


@dataclass(frozen=True)
class CoefficientPair:
    """One step's coefficients: A of degree <= 2, B of degree <= 1."""

    A: Poly
    B: Poly

    def __post_init__(self):
        if self.A.degree > 2:
            raise ValueError(f"deg A = {self.A.degree} exceeds 2")
        if self.B.degree > 1:
            raise ValueError(f"deg B = {self.B.degree} exceeds 1")
        if not self.A.is_zero and not self.B.is_zero and self.A.kind != self.B.kind:
            raise KindMismatchError("A and B must share a scalar kind")

    @property
    def kind(self):
        return self.A.kind if not self.A.is_zero else self.B.kind

    def __repr__(self):
        return f"(A={format_poly(self.A)}, B={format_poly(self.B)})"


class CoefficientTable:
    """Explicit coefficient source: pair(n) reads a prebuilt list."""

    def __init__(self, pairs):
        self.pairs = list(pairs)

    def pair(self, n):
        if not 0 <= n < len(self.pairs):
            raise IndexError(f"coefficient table covers 0..{len(self.pairs) - 1}, asked for {n}")
        return self.pairs[n]

    def __len__(self):
        return len(self.pairs)


class CoefficientRule:
    """Coefficient source from a callable n -> CoefficientPair."""

    def __init__(self, fn, name=""):
        self.fn = fn
        self.name = name

    def pair(self, n):
        return self.fn(n)


@dataclass(frozen=True)
class PolySequence:
    """P_0..P_N with P_0 = 1; degree anomalies are recorded, not fatal."""

    polys: tuple
    collapsed: tuple = ()  # indices m where deg P_m != m
    truncated_at: int | None = None
    diagnostic: str | None = None

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    @property
    def degrees(self):
        return tuple(p.degree for p in self.polys)


def step(P, c):
    """One recurrence application: A * P' + B * P."""
    if P.kind == FLOAT or c.kind == FLOAT:
        prec = max(P.prec or DEFAULT_FLOAT_PREC, c.A.prec or c.B.prec or DEFAULT_FLOAT_PREC)
        with mpmath.workprec(prec + 16):
            return c.A * P.derivative() + c.B * P
    return c.A * P.derivative() + c.B * P


def generate(src, N):
    """Run the recurrence from P_0 = 1 through P_N.

    Degree collapses (deg P_m != m) are flagged and generation continues;
    a zero polynomial truncates the sequence with a diagnostic.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    first = src.pair(0)
    kind = first.kind
    polys = [Poly.one(kind, first.A.prec if kind == FLOAT else None)]
    collapsed = []
    truncated_at = None
    diagnostic = None
    for n in range(N):
        nxt = step(polys[n], src.pair(n))
        if nxt.is_zero:
            truncated_at = n + 1
            diagnostic = f"P_{n + 1} is the zero polynomial; sequence truncated"
            break
        if nxt.degree != n + 1:
            collapsed.append(n + 1)
        polys.append(nxt)
    return PolySequence(tuple(polys), tuple(collapsed), truncated_at, diagnostic)


def _solve_exact(rows, rhs, unknowns):
    """Gauss-Jordan over Fraction.  Returns (solution | None, kernel_dim, witness).

    solution is a particular solution with free variables set to 0;
    witness describes the inconsistent pivot when no solution exists.
    """
    m = len(rows)
    aug = [list(rows[i]) + [rhs[i]] for i in range(m)]
    pivots = []
    r = 0
    for col in range(unknowns):
        sel = None
        for i in range(r, m):
            if aug[i][col]:
                sel = i
                break
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        pv = aug[r][col]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][unknowns]:
            return None, unknowns - len(pivots), f"inconsistent equation 0 = {aug[i][unknowns]}"
    sol = [Fraction(0)] * unknowns
    for i, col in enumerate(pivots):
        sol[col] = aug[i][unknowns]
    return sol, unknowns - len(pivots), None


@dataclass(frozen=True)
class AdmissibilityEntry:
    n: int
    verdict: str  # "admits" | "fails" | "skipped-degenerate"
    pair: CoefficientPair | None = None
    unique: bool | None = None
    residual: float | None = None
    witness: str | None = None


@dataclass(frozen=True)
class AdmissibilityResult:
    entries: tuple
    numeric: bool = False

    @property
    def all_admit(self):
        return all(e.verdict == "admits" for e in self.entries)

    def entry(self, n):
        for e in self.entries:
            if e.n == n:
                return e
        raise KeyError(n)


def admits_dde(seq, tolerance=1e-12):
    """Decide, for each n, whether seq continues by some A_n P_n' + B_n P_n.

    seq is a list of Poly with seq[0] == 1.  Entries n with deg seq[n] != n
    are skipped as degenerate, as are n >= 2 where seq[n] has repeated
    roots (the decision procedure needs simple zeros).  Rational input is
    decided exactly; float input is decided by least squares against
    `tolerance` (relative) and the result is tagged numeric.
    """
    polys = [p if isinstance(p, Poly) else Poly.rational(p) for p in seq]
    if len(polys) < 2:
        raise ValueError("need at least P_0 and P_1")
    if polys[0].degree != 0 or polys[0].coeffs[0] != 1:
        raise ValueError("seq[0] must be the constant polynomial 1")
    numeric = any(p.kind == FLOAT for p in polys)
    entries = []
    if numeric:
        prec = max((p.prec or DEFAULT_FLOAT_PREC) for p in polys if p.kind == FLOAT)
        with mpmath.workprec(prec + 32):
            for n in range(len(polys) - 1):
                entries.append(_admit_at(polys, n, numeric, tolerance))
    else:
        for n in range(len(polys) - 1):
            entries.append(_admit_at(polys, n, numeric, tolerance))
    return AdmissibilityResult(tuple(entries), numeric)


def _admit_at(polys, n, numeric, tolerance):
    Pn, Pn1 = polys[n], polys[n + 1]
    if Pn.degree != n:
        return AdmissibilityEntry(n, "skipped-degenerate", witness=f"deg P_{n} = {Pn.degree} != {n}")
    if n == 0:
        if Pn1.degree > 1:
            return AdmissibilityEntry(n, "skipped-degenerate", witness=f"deg P_1 = {Pn1.degree} > 1")
        zero = Poly.zero(Pn1.kind, Pn1.prec)
        return AdmissibilityEntry(n, "admits", CoefficientPair(zero, Pn1), unique=False, residual=0.0)
    if n == 1:
        if Pn1.degree > 2:
            return AdmissibilityEntry(n, "skipped-degenerate", witness=f"deg P_2 = {Pn1.degree} > 2")
        # B_1 is a free choice; take B_1 = 0, A_1 = P_2 / P_1'
        c = Pn.derivative().coeffs[0]
        A = Pn1.scale(Fraction(1, 1) / c if Pn.kind == RATIONAL else 1 / c)
        zero = Poly.zero(Pn.kind, Pn.prec)
        return AdmissibilityEntry(n, "admits", CoefficientPair(A, zero), unique=False, residual=0.0)
    if Pn.kind == RATIONAL and not Pn.is_squarefree():
        return AdmissibilityEntry(n, "skipped-degenerate", witness=f"P_{n} has repeated roots")
    dPn = Pn.derivative()
    cols = []
    for j in range(3):
        xj = Poly.rational([0] * j + [1]) if Pn.kind == RATIONAL else Poly.floating([0] * j + [1], Pn.prec or DEFAULT_FLOAT_PREC)
        cols.append((xj * dPn) % Pn)
    rhs_poly = Pn1 % Pn
    if Pn.kind == RATIONAL:
        rows = [[cols[j].coeff(i) for j in range(3)] for i in range(n)]
        rhs = [rhs_poly.coeff(i) for i in range(n)]
        sol, kdim, witness = _solve_exact(rows, rhs, 3)
        if sol is None:
            return AdmissibilityEntry(n, "fails", witness=witness)
        A = Poly.rational(sol)
        B = (Pn1 - A * dPn).exact_div(Pn)
        if B.degree > 1:
            return AdmissibilityEntry(n, "fails", witness=f"forced deg B = {B.degree} > 1")
        return AdmissibilityEntry(n, "admits", CoefficientPair(A, B), unique=(kdim == 0), residual=0.0)
    return _admit_at_float(Pn, Pn1, dPn, cols, rhs_poly, n, tolerance)


def _admit_at_float(Pn, Pn1, dPn, cols, rhs_poly, n, tolerance):
    prec = Pn.prec or DEFAULT_FLOAT_PREC
    unknowns = 2 if n == 2 else 3  # at n=2 a solution with zero x^2 term always exists
    M = mpmath.matrix(n, unknowns)
    for i in range(n):
        for j in range(unknowns):
            M[i, j] = cols[j].coeff(i)
    b = mpmath.matrix([rhs_poly.coeff(i) for i in range(n)])
    # normal equations: M has full column rank when P_n is squarefree, and
    # the squared conditioning is harmless at extended precision
    try:
        G = M.T * M
        sol = mpmath.lu_solve(G, M.T * b)
        resnorm = mpmath.norm(M * sol - b)
    except (ValueError, ZeroDivisionError) as exc:
        return AdmissibilityEntry(n, "fails", witness=f"least squares failed: {exc}")
    scale = max(mpmath.norm(b), mpmath.mpf(1))
    rel = float(resnorm / scale)
    if rel > tolerance:
        return AdmissibilityEntry(
            n, "fails", residual=rel,
            witness=f"least-squares relative residual {rel:.3e} exceeds tolerance {tolerance:.1e}",
        )
    A = Poly.floating([sol[j] for j in range(unknowns)], prec)
    B, _ = (Pn1 - A * dPn).divrem(Pn)
    if B.degree > 1:
        return AdmissibilityEntry(n, "fails", residual=rel, witness=f"forced deg B = {B.degree} > 1")
    return AdmissibilityEntry(n, "admits", CoefficientPair(A, B), unique=(n >= 3), residual=rel)


def sample_xy(Pn, Pn1, width):
    """Numeric samples (x_k, P_{n+1}(x_k)/P_n'(x_k)) at the zeros of P_n.

    Requires all zeros of P_n to be real and simple; the x_k are isolated
    to `width` and returned in increasing order as big floats.
    """
    prec = Pn.prec or DEFAULT_FLOAT_PREC
    if Pn.kind == RATIONAL:
        from .roots import is_real_simple

        chk = is_real_simple(Pn)
        if not chk:
            raise NonSimpleZerosError(f"P_n must have real simple zeros: {chk.witness}")
    rs = isolate_roots(Pn, width)
    if Pn.kind == FLOAT and rs.count != Pn.degree:
        raise NonSimpleZerosError(f"only {rs.count} of {Pn.degree} zeros are real")
    if any(r.multiplicity > 1 for r in rs.roots):
        raise NonSimpleZerosError("P_n has a repeated root")
    if rs.count == 0:
        return []
    dPn = Pn.derivative()
    out = []
    with mpmath.workprec(prec + 32):
        dscale = max(abs(to_mpf(c, prec)) for c in dPn.coeffs)
        for x in rs.midpoints(prec):
            d = to_mpf(dPn(x), prec)
            if abs(d) <= dscale * mpmath.mpf(2) ** (-prec // 2):
                raise NonSimpleZerosError(f"derivative vanishes at computed zero {mpmath.nstr(x, 12)}")
            y = to_mpf(Pn1(x), prec) / d
            out.append((x, y))
    return out
