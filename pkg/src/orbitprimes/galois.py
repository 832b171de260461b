"""Iterated quadratic towers: discriminant recursion and square-free
certificates for f_a = x^2 + a.

A certificate at level n is an odd prime with valuation exactly 1 in
f_a^(n+1)(0) and valuation 0 in every earlier f_a^m(0): it witnesses that the
critical value is not a square in the level-n splitting field, hence the
maximal index 2^(2^n) at that level.  Certificates are one-sided: absence of
a certificate concludes nothing.  For positive a congruent to 1 or 2 mod 4
the maximal index is known unconditionally at every level; the reports
annotate that guarantee separately from the prime search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import polys
from .errors import ResourceCapError
from .intplaces import DEFAULT_BUDGET, FactoredValue, factor

DEFAULT_LEVEL_CAP = 5


def discriminant(g) -> Fraction:
    """Discriminant via the resultant with the derivative."""
    g = polys.strip([Fraction(c) for c in g])
    return polys.discriminant(g)


def quadratic_iterate(a: int, m: int):
    """The m-th iterate of x^2 + a as an integer-coefficient polynomial."""
    if m < 0:
        raise ValueError("m must be >= 0")
    current = [0, 1]  # x
    f = [a, 0, 1]
    for _ in range(m):
        current = _compose(current, f)
    return current


def _compose(outer, inner):
    acc = []
    for c in reversed(outer):
        acc = polys.add(polys.mul(acc, inner), [c] if c else [])
    return acc


def critical_orbit(a: int, length: int):
    """f(0), f^2(0), ..., f^length(0) for f = x^2 + a."""
    values = []
    v = 0
    for _ in range(length):
        v = v * v + a
        values.append(v)
    return values


@dataclass(frozen=True)
class DiscRecursionCheck:
    """Both sides of the one-step discriminant identity for f = x^2 + a:

        Disc(f^m) = 2^(2^m) * Disc(f^(m-1))^2 * f^m(0)      (m >= 2)

    The left side comes from an independent resultant computation on the
    expanded iterate; the right side uses a directly computed
    Disc(f^(m-1)).  The m = 1 row is anchored at the direct Disc(f) = -4a
    (there is no meaningful recursion step below it)."""

    a: int
    m: int
    lhs: Fraction
    rhs: Fraction
    equal: bool


def disc_recursion_check(a: int, m: int, level_cap: int = DEFAULT_LEVEL_CAP) -> DiscRecursionCheck:
    if m < 1:
        raise ValueError("m must be >= 1")
    if m > level_cap:
        raise ResourceCapError(f"level {m} exceeds cap {level_cap}", cap=level_cap)
    if a == 0:
        raise ValueError("a must be nonzero")
    fm = quadratic_iterate(a, m)
    lhs = discriminant(fm)
    if m == 1:
        rhs = lhs
    else:
        prev = discriminant(quadratic_iterate(a, m - 1))
        fm0 = Fraction(critical_orbit(a, m)[-1])
        rhs = Fraction(2) ** (2**m) * prev * prev * fm0
    return DiscRecursionCheck(a=a, m=m, lhs=lhs, rhs=rhs, equal=lhs == rhs)


@dataclass(frozen=True)
class GaloisTowerRecord:
    """Level-n certificate search outcome for f_a = x^2 + a.

    status: "certified" | "no-certificate" | "unresolved".
    stoll_guarantee: the unconditional congruence guarantee (a positive and
    a = 1, 2 mod 4) applies at every level regardless of the search outcome.
    """

    a: int
    n: int
    critical_value: int
    certificate: Optional[int]
    status: str
    stoll_guarantee: bool
    factored: Optional[FactoredValue] = None

    @property
    def established(self) -> bool:
        """Maximal index at this level is established by either route."""
        return self.status == "certified" or self.stoll_guarantee


def _check_admissible(a: int, depth: int):
    if a == 0:
        raise ValueError("a must be nonzero")
    values = critical_orbit(a, depth)
    seen = {0}
    for v in values:
        if v in seen:
            raise ValueError(
                f"0 is preperiodic for x^2 + ({a}) within depth {depth}; "
                "the certificate search does not apply"
            )
        seen.add(v)
    return values


def stoll_certificate(a: int, n: int, budget: int = DEFAULT_BUDGET) -> GaloisTowerRecord:
    """Search f_a^(n+1)(0) for an odd prime with valuation 1 there and
    valuation 0 at every earlier critical value.

    Only the part of the critical value coprime to 2 and to the earlier
    values can contain a certificate, and gcd-stripping preserves the
    exponents of the surviving primes, so only that part is factored.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    values = _check_admissible(a, n + 1)
    critical = values[-1]
    earlier = [abs(v) for v in values[:-1]]
    part = abs(critical)
    while part % 2 == 0:
        part //= 2
    for e in earlier:
        g = _gcd(part, e)
        while g > 1:
            part //= g
            g = _gcd(part, e)
    guarantee = a > 0 and a % 4 in (1, 2)
    if part == 1:
        return GaloisTowerRecord(a=a, n=n, critical_value=critical, certificate=None,
                                 status="no-certificate", stoll_guarantee=guarantee)
    fac = factor(part, budget=budget)
    certificate = None
    for p, e in fac.prime_powers:
        if e == 1:
            certificate = p
            break
    if certificate is not None:
        _validate_certificate(certificate, values)
        return GaloisTowerRecord(a=a, n=n, critical_value=critical,
                                 certificate=certificate, status="certified",
                                 stoll_guarantee=guarantee, factored=fac)
    status = "unresolved" if not fac.is_complete else "no-certificate"
    return GaloisTowerRecord(a=a, n=n, critical_value=critical, certificate=None,
                             status=status, stoll_guarantee=guarantee, factored=fac)


def _validate_certificate(p: int, values):
    """Re-check the definitional valuation conditions for a certificate."""
    critical = values[-1]
    if p == 2:
        raise AssertionError("certificate must be odd")
    v = 0
    m = abs(critical)
    while m % p == 0:
        m //= p
        v += 1
    if v != 1:
        raise AssertionError("certificate exponent is not 1")
    for earlier in values[:-1]:
        if earlier % p == 0:
            raise AssertionError("certificate divides an earlier critical value")


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def tower_report(a: int, max_level: int, budget: int = DEFAULT_BUDGET):
    """Certificate search at every level n = 0..max_level."""
    return [stoll_certificate(a, n, budget=budget) for n in range(max_level + 1)]
