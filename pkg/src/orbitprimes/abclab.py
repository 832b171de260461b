"""Empirical abc-triple quality and Roth-type radical scans.

Over Q the abc inequality is an assumption, so scans report empirical
constants and never pass or fail it.  Sample families are deterministic
enumerations, making every report reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd
from typing import Optional

from . import polys
from .ffplaces import FFElement
from .heights import HeightValue, multi_height
from .intplaces import DEFAULT_BUDGET, LogMass, factor, log_int, radical_logmass


@dataclass(frozen=True)
class AbcTriple:
    """a + b = c with its height, radical mass and quality.

    `quality` is height / rad_mass; when the radical mass is only a lower
    bound (factoring budget ran out), the quality is only an upper bound and
    `quality_is_upper_bound` says so.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    height: HeightValue
    rad_mass: LogMass
    quality: Optional[float]
    quality_is_upper_bound: bool = False


def abc_quality(a, b, budget: int = DEFAULT_BUDGET) -> AbcTriple:
    """Quality of the triple (a, b, a+b) for nonzero rationals with a+b != 0.

    The support set collects the primes where the three valuations are not
    all equal; on the coprime integer model (A, B, C) those are exactly the
    primes dividing A*B*C.
    """
    a = Fraction(a)
    b = Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("a and b must be nonzero")
    c = a + b
    if c == 0:
        raise ValueError("a + b must be nonzero")
    lcm = a.denominator * b.denominator // int_gcd(a.denominator, b.denominator)
    lcm = lcm * c.denominator // int_gcd(lcm, c.denominator)
    ints = [int(v * lcm) for v in (a, b, c)]
    g = 0
    for v in ints:
        g = int_gcd(g, abs(v))
    reduced = [v // g for v in ints]
    product = abs(reduced[0] * reduced[1] * reduced[2])
    height = multi_height((a, b, c))
    if product == 1:
        rad = LogMass(value=0.0, exact=True, radical=1)
        return AbcTriple(a=a, b=b, c=c, height=height, rad_mass=rad,
                         quality=None, quality_is_upper_bound=False)
    fac = factor(product, budget=budget)
    rad = radical_logmass(fac)
    quality = height.value / rad.value if rad.value > 0 else None
    return AbcTriple(
        a=a,
        b=b,
        c=c,
        height=height,
        rad_mass=rad,
        quality=quality,
        quality_is_upper_bound=not rad.exact,
    )


@dataclass(frozen=True)
class RothSample:
    z: object  # Fraction over Q, tuple of coefficients over Q(t)
    radsum: float
    height: float
    margin: float
    exact: bool


@dataclass(frozen=True)
class RothScanReport:
    field: str
    poly_str: str
    epsilon: float
    sample_description: str
    samples: tuple
    skipped: tuple  # roots of F encountered and excluded
    min_margin: Optional[float]
    argmin: object
    empirical_constant: Optional[float]  # -min margin
    inexact_count: int

    @property
    def sample_count(self) -> int:
        return len(self.samples)


def _require_scan_poly(F):
    F = polys.strip([Fraction(c) for c in F])
    if polys.degree(F) < 3:
        raise ValueError("F must have degree >= 3")
    g = polys.gcd(F, polys.derivative(F))
    if polys.degree(g) > 0:
        raise ValueError("F must be squarefree")
    return F


def roth_scan_q(F, epsilon: float, height_bound: int,
                budget: int = DEFAULT_BUDGET) -> RothScanReport:
    """Scan all reduced p/q with max(|p|, |q|) <= H against the radical bound.

    Per sample: radsum = sum of log p over primes dividing the numerator of
    F(z), margin = radsum - (deg F - 2 - epsilon) * h(z).  Roots of F are
    skipped and recorded.  The empirical constant is -min(margin).
    """
    F = _require_scan_poly(F)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if height_bound < 1:
        raise ValueError("height bound must be >= 1")
    coeff = polys.degree(F) - 2 - epsilon
    samples = []
    skipped = []
    inexact = 0
    for q in range(1, height_bound + 1):
        for p in range(-height_bound, height_bound + 1):
            if int_gcd(abs(p), q) != 1:
                continue
            z = Fraction(p, q)
            value = polys.evaluate(F, z)
            if value == 0:
                skipped.append(z)
                continue
            num = abs(value.numerator)
            if num == 1:
                radsum, exact = 0.0, True
            else:
                fac = factor(num, budget=budget)
                mass = radical_logmass(fac)
                radsum, exact = mass.value, mass.exact
            h = log_int(max(abs(p), q))
            margin = radsum - coeff * h
            if not exact:
                inexact += 1
            samples.append(RothSample(z=z, radsum=radsum, height=h,
                                      margin=margin, exact=exact))
    min_margin = min((s.margin for s in samples), default=None)
    argmin = None
    if min_margin is not None:
        argmin = next(s.z for s in samples if s.margin == min_margin)
    return RothScanReport(
        field="Q",
        poly_str=polys.to_string(F),
        epsilon=epsilon,
        sample_description=f"all reduced p/q with max(|p|,|q|) <= {height_bound}",
        samples=tuple(samples),
        skipped=tuple(skipped),
        min_margin=min_margin,
        argmin=argmin,
        empirical_constant=None if min_margin is None else -min_margin,
        inexact_count=inexact,
    )


def _ff_poly_samples(max_degree: int, coeff_bound: int):
    """Deterministic enumeration of polynomials in t: ascending by degree,
    then lexicographic in coefficients.  Constants come first."""
    for deg in range(0, max_degree + 1):
        span = range(-coeff_bound, coeff_bound + 1)
        lead_span = [c for c in span if c != 0]

        def rec(prefix, k):
            if k == deg:
                for lead in lead_span if deg > 0 else span:
                    yield prefix + [lead]
            else:
                for c in span:
                    yield from rec(prefix + [c], k + 1)

        for coeffs in rec([], 0):
            yield coeffs


def roth_scan_ff(F_coeffs, epsilon: float, max_degree: int = 2,
                 coeff_bound: int = 2, budget: int = DEFAULT_BUDGET) -> RothScanReport:
    """Function-field radical scan: z runs over polynomials in t of bounded
    degree and coefficient size (a documented deterministic family).

    radsum is the degree of the squarefree part of the numerator of F(z): the
    sum of deg(pi) over the distinct monic irreducibles dividing it, obtained
    without any factorization.  Unlike the Q scan this inequality is a
    theorem, so margins here are structural data, not conjecture probes.
    """
    F = [c if isinstance(c, FFElement) else FFElement.from_const(c) for c in F_coeffs]
    F = polys.strip(F)
    if polys.degree(F) < 3:
        raise ValueError("F must have degree >= 3")
    g = polys.gcd(F, polys.derivative(F))
    if polys.degree(g) > 0:
        raise ValueError("F must be squarefree")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    coeff = polys.degree(F) - 2 - epsilon
    samples = []
    skipped = []
    for z_coeffs in _ff_poly_samples(max_degree, coeff_bound):
        z = FFElement(z_coeffs)
        value = polys.evaluate(F, z)
        if not isinstance(value, FFElement):
            value = FFElement.from_const(value)
        if value.is_zero:
            skipped.append(tuple(z_coeffs))
            continue
        num = list(value.num)
        radsum = 0
        if polys.degree(num) >= 1:
            radsum = polys.degree(polys.squarefree_part(num))
        h = max(polys.degree(list(z.num)), 0)
        margin = radsum - coeff * h
        samples.append(RothSample(z=tuple(z_coeffs), radsum=float(radsum),
                                  height=float(h), margin=margin, exact=True))
    min_margin = min((s.margin for s in samples), default=None)
    argmin = None
    if min_margin is not None:
        argmin = next(s.z for s in samples if s.margin == min_margin)
    poly_str_parts = []
    for k in range(polys.degree(F), -1, -1):
        c = F[k]
        if isinstance(c, FFElement) and c.is_zero:
            continue
        xpow = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        poly_str_parts.append(f"({c})*{xpow}" if xpow else f"({c})")
    return RothScanReport(
        field="Q(t)",
        poly_str=" + ".join(poly_str_parts),
        epsilon=epsilon,
        sample_description=(
            f"polynomials in t of degree <= {max_degree} with integer "
            f"coefficients in [-{coeff_bound}, {coeff_bound}]"
        ),
        samples=tuple(samples),
        skipped=tuple(skipped),
        min_margin=min_margin,
        argmin=argmin,
        empirical_constant=None if min_margin is None else -min_margin,
        inexact_count=0,
    )
