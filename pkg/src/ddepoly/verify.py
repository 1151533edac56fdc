"""Cross-validation: do empirically computed zeros match what the endpoint
configuration predicts?

`verify_sequence` generates a family, classifies its damping factors,
decides which endpoint configuration applies, then independently computes
every member's zeros (exactly, in rational mode) and checks reality,
simplicity, containment (honoring closed endpoints) and interlacing.
Disagreement is reported, never patched over: the prediction side is a
proved statement, so any mismatch points at an implementation bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .dde import generate, step
from .families import FamilySpec, coefficient_source
from .kfactor import SingularPointError, boundary_zeros, classify, decide_case, log_k_eval
from .poly import (
    FLOAT,
    RATIONAL,
    Poly,
    ext_eq,
    ext_le,
    ext_lt,
    format_scalar,
    is_finite,
    to_mpf,
)
from .roots import _LocatedRoot, interlaces, is_real_simple, locate_real_roots


@dataclass(frozen=True)
class SequenceRecord:
    """Empirical findings for one member of the sequence."""

    n: int
    degree: int
    real_simple: bool
    real_simple_witness: str | None
    zeros: tuple  # refined isolating intervals
    containment: str  # "ok" | "fail" | "not-claimed" | "skipped"
    containment_witness: str | None
    interlace_with_next: str | None  # verdict vs P_{n+1}, None for the last member
    interlace_witness: str | None


@dataclass(frozen=True)
class VerificationReport:
    family: object
    N: int
    decision: object
    records: tuple
    agreement: bool
    failures: tuple
    numeric: bool = False
    collapsed: tuple = ()
    truncated_at: int | None = None


def _pin_endpoint(located, poly, pt):
    """If poly(pt) == 0 exactly, replace the located root equal to pt by an
    exact point so open/closed endpoint decisions terminate."""
    if not is_finite(pt) or not isinstance(pt, Fraction):
        return
    if poly(pt) != 0:
        return
    for i, r in enumerate(located):
        if not r.is_exact and r.iv.contains(pt):
            located[i] = _LocatedRoot.exact(pt)
            return


def _below(r, beta, closed):
    if not is_finite(beta):
        return True
    if r.is_exact:
        v = r.iv.lo
        return ext_lt(v, beta) or (closed and ext_eq(v, beta))
    if ext_le(r.iv.hi, beta):  # endpoint pinning guarantees root != beta here
        return True
    if ext_le(beta, r.iv.lo):
        return False
    return None


def _above(r, alpha, closed):
    if not is_finite(alpha):
        return True
    if r.is_exact:
        v = r.iv.lo
        return ext_lt(alpha, v) or (closed and ext_eq(v, alpha))
    if ext_le(alpha, r.iv.lo):
        return True
    if ext_le(r.iv.hi, alpha):
        return False
    return None


def _check_containment(poly, located, bounds):
    alpha, beta, lo_closed, hi_closed = bounds
    _pin_endpoint(located, poly, alpha)
    _pin_endpoint(located, poly, beta)
    for r in located:
        verdict = _below(r, beta, hi_closed)
        while verdict is None:
            r.refine_once()
            verdict = _below(r, beta, hi_closed)
        if not verdict:
            end = "]" if hi_closed else ")"
            return f"zero near {format_scalar(r.approx())} beyond right endpoint {format_scalar(beta)}{end}"
        verdict = _above(r, alpha, lo_closed)
        while verdict is None:
            r.refine_once()
            verdict = _above(r, alpha, lo_closed)
        if not verdict:
            end = "[" if lo_closed else "("
            return f"zero near {format_scalar(r.approx())} below left endpoint {end}{format_scalar(alpha)}"
    return None


def _first_root(p1):
    if p1.degree != 1:
        raise ValueError(f"P_1 must have degree 1 to locate its root, got degree {p1.degree}")
    if p1.kind == RATIONAL:
        return -p1.coeffs[0] / p1.coeffs[1]
    with mpmath.workprec(p1.prec or 256):
        return -p1.coeffs[0] / p1.coeffs[1]


def verify_sequence(spec, N, width=Fraction(1, 10**9), strict_extension=False):
    """Generate, predict, and empirically verify a sequence up to degree N.

    `spec` is a FamilySpec or any coefficient source exposing pair(n).
    Exact arithmetic throughout for rational input; the report carries a
    numeric flag when big-float data or irrational roots forced tolerance
    comparisons (relative 1e-9).
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    if isinstance(spec, FamilySpec):
        source = coefficient_source(spec)
        family = spec.describe()
    else:
        source = spec
        family = getattr(spec, "name", "custom")
    seq = generate(source, N)
    top = len(seq.polys) - 1
    failures = []
    if seq.truncated_at is not None:
        failures.append(seq.diagnostic)
    usable = top
    for m in seq.collapsed:
        usable = min(usable, m - 1)
        failures.append(f"degree collapse at P_{m}; verification truncated to n <= {usable}")
    if usable < 1:
        return VerificationReport(family, N, None, (), False, tuple(failures), False,
                                  seq.collapsed, seq.truncated_at)

    pairs = []
    for n in range(1, usable + 1):
        try:
            pairs.append(source.pair(n))
        except IndexError:
            break  # table sources may stop at the last generation step
    specs = [boundary_zeros(classify(c)) for c in pairs]
    numeric = any(s.classification.numeric for s in specs) or any(
        p.kind == FLOAT for p in seq.polys[: usable + 1]
    )
    gamma = _first_root(seq[1])  # deg P_1 == 1 here, else n=1 was a collapse
    decision = (
        decide_case(specs, gamma, n_start=1, strict_extension=strict_extension) if specs else None
    )
    if decision is None or not decision.ok:
        if decision is not None:
            for case, why in (decision.diagnosis or {}).items():
                failures.append(f"case ({case}) hypothesis fails: {why}")
        records = tuple(_empirical_record(seq, n, usable, None, width) for n in range(1, usable + 1))
        return VerificationReport(family, N, decision, records, False, tuple(failures), numeric,
                                  seq.collapsed, seq.truncated_at)

    records = []
    for n in range(1, usable + 1):
        bounds = None
        if decision.containment is not None and n - 1 < len(decision.containment):
            bounds = decision.containment[n - 1]
        rec = _empirical_record(seq, n, usable, bounds, width)
        records.append(rec)
        if not rec.real_simple:
            failures.append(f"P_{n} not real-simple: {rec.real_simple_witness}")
        if rec.containment == "fail":
            failures.append(f"P_{n} containment: {rec.containment_witness}")
        if decision.interlacing and rec.interlace_with_next == "fail":
            failures.append(f"P_{n} / P_{n + 1} interlacing: {rec.interlace_witness}")
    agreement = not failures
    return VerificationReport(family, N, decision, tuple(records), agreement, tuple(failures),
                              numeric, seq.collapsed, seq.truncated_at)


def _empirical_record(seq, n, usable, bounds, width):
    p = seq[n]
    chk = is_real_simple(p)
    zeros = ()
    containment = "skipped"
    containment_witness = None
    interlace = None
    interlace_witness = None
    if chk.ok:
        located = locate_real_roots(p.squarefree_part())
        if bounds is not None:
            containment_witness = _check_containment(p, located, bounds)
            containment = "fail" if containment_witness else "ok"
        else:
            containment = "not-claimed"
        for r in located:
            r.refine_to(width if isinstance(width, Fraction) else Fraction(width))
        zeros = tuple(r.iv for r in located)
        if n < usable:
            try:
                rep = interlaces(p, seq[n + 1])
                interlace = rep.verdict
                interlace_witness = rep.witness
            except ValueError as exc:  # the next member may fail the preconditions
                interlace = "fail"
                interlace_witness = str(exc)
    return SequenceRecord(n, p.degree, chk.ok, chk.witness, zeros, containment,
                          containment_witness, interlace, interlace_witness)


def check_k_identity(c, k=None, samples=50, fd_step=Fraction(1, 10**6)):
    """Validate the damping factor numerically and the step identity exactly.

    (i) at `samples` points per maximal smooth interval, a centered finite
    difference of log|K| must match B/A (relative error, with an absolute
    floor below magnitude 1); (ii) the recurrence step must equal
    A P' + B P coefficientwise on probe polynomials.  Returns the largest
    error seen; raises if every sample point lands on a singularity.
    """
    if k is None:
        k = classify(c)
    probes = (Poly.rational([1]), Poly.rational([1, 1]), Poly.rational([1, 1, 1]), Poly.rational([-2, 0, 1, 3]))
    for P in probes:
        if c.A.kind == RATIONAL:
            if step(P, c) != c.A * P.derivative() + c.B * P:
                raise AssertionError("step output differs from A P' + B P")
    cuts = sorted(
        {to_mpf(s, 64) for s, _ in k.a_roots} | {to_mpf(s, 64) for s, _ in k.form.log_terms} | {to_mpf(s, 64) for s, _ in k.form.poles},
        key=float,
    )
    if cuts:
        lo = min(cuts) - 4
        hi = max(cuts) + 4
        edges = [lo] + list(cuts) + [hi]
    else:
        edges = [mpmath.mpf(-4), mpmath.mpf(4)]
    worst = 0.0
    sampled = 0
    with mpmath.workdps(45):
        h = to_mpf(fd_step, mpmath.mp.prec)
        for a, b in zip(edges, edges[1:]):
            span = b - a
            if span <= 0:
                continue
            for j in range(samples):
                x = a + span * (j + 1) / (samples + 1)
                bx = _eval_num(c.B, x)
                ax = _eval_num(c.A, x)
                if ax == 0:
                    continue
                if bx == 0 and not c.B.is_zero:
                    x += span / (3 * (samples + 1))
                    bx = _eval_num(c.B, x)
                    ax = _eval_num(c.A, x)
                    if ax == 0:
                        continue
                try:
                    fd = (log_k_eval(k, x + h, 120) - log_k_eval(k, x - h, 120)) / (2 * h)
                except SingularPointError:
                    continue
                val = bx / ax
                err = float(abs(fd - val) / max(abs(val), mpmath.mpf(1)))
                worst = max(worst, err)
                sampled += 1
    if sampled == 0:
        raise ValueError("all sample points degenerate (landed on singularities)")
    return worst


def _eval_num(p, x):
    if p.is_zero:
        return mpmath.mpf(0)
    return p(x)
