"""Orbits, primitive prime divisors, and the non-primitive-mass diagnostic.

The primitive-part detector never factors orbit numerators: a prime is
primitive at level n exactly when it survives gcd-stripping against all
earlier numerators, so existence reduces to "stripped part > 1".  Orbit
numerators grow like d^n digits, which makes this the only workable route at
depth; factoring only ever touches the (much smaller) primitive parts, and
only for square-free verdicts.

The same generic code path drives K = Q (integer numerators) and K = Q(t)
(polynomial numerators): both are gcd domains with units, nothing else is
assumed.  Over Q(t) the square-free verdict is factorization-free as well,
via the multiplicity-1 component of a square-free decomposition.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as int_gcd
from typing import Optional

from . import polys
from .errors import ResourceCapError
from .ffplaces import FFElement
from .heights import PointClassification, classify_point, height_float
from .intplaces import DEFAULT_BUDGET, FactoredValue, LogMass, factor, log_int
from .maps import INFINITY, RamificationVerdict, RationalMap, RationalMapFF, as_point

DEFAULT_PRIMITIVE_DEPTH = 12
DEFAULT_SQUAREFREE_DEPTH = 7


# ---------------------------------------------------------------------------
# Value domains: integers for Q, polynomials over Q for Q(t)
# ---------------------------------------------------------------------------

class _IntValues:
    """Numerator domain for K = Q."""

    field = "Q"

    @staticmethod
    def numerator(value):
        if value is INFINITY:
            return 1  # a pole carries no positive valuation
        return abs(Fraction(value).numerator)

    @staticmethod
    def gcd(a, b):
        return int_gcd(a, b)

    @staticmethod
    def div(a, b):
        return a // b

    @staticmethod
    def is_unit(a):
        return a == 1

    @staticmethod
    def is_zero(a):
        return a == 0


class _PolyValues:
    """Numerator domain for K = Q(t): monic polynomials, constants are units."""

    field = "Q(t)"

    @staticmethod
    def numerator(value):
        if value is INFINITY:
            return (Fraction(1),)
        if not isinstance(value, FFElement):
            value = FFElement.from_const(value)
        if value.is_zero:
            return ()
        return tuple(polys.monic(list(value.num)))

    @staticmethod
    def gcd(a, b):
        return tuple(polys.gcd(list(a), list(b)))

    @staticmethod
    def div(a, b):
        return tuple(polys.exact_div(list(a), list(b)))

    @staticmethod
    def is_unit(a):
        return len(a) == 1

    @staticmethod
    def is_zero(a):
        return len(a) == 0


def _domain_for(rmap):
    return _PolyValues if isinstance(rmap, RationalMapFF) else _IntValues


# ---------------------------------------------------------------------------
# Orbits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Termination:
    kind: str  # "reached-n" | "hit-zero" | "preperiodic" | "resource-cap"
    zero_index: Optional[int] = None
    tail: Optional[int] = None
    period: Optional[int] = None


@dataclass
class OrbitRecord:
    """One orbit entry with its primitivity data."""

    n: int
    value: object
    numer: object = None
    primitive_part: object = None
    has_primitive: Optional[bool] = None
    primitive_primes: Optional[tuple] = None
    primes_unresolved: bool = False
    squarefree_witness: object = None
    has_squarefree_primitive: Optional[bool] = None
    squarefree_unresolved: bool = False
    factored: Optional[FactoredValue] = None


def _is_zero_value(value):
    if value is INFINITY:
        return False
    if isinstance(value, FFElement):
        return value.is_zero
    return value == 0


def orbit(rmap, alpha, depth: int, seed_values=None):
    """Values phi(alpha) .. phi^depth(alpha), with early-stop bookkeeping.

    A repeated value closes a cycle: the remaining entries are filled from
    the cycle (no further arithmetic) and the orbit is flagged preperiodic.
    Hitting 0 on a so-far injective orbit records the unique zero index and
    stops; the size cap stops with whatever was computed.

    `seed_values` replays already-known values phi^1.. without recomputing
    them (cache resume); all bookkeeping still runs over the seeds.
    """
    if isinstance(rmap, RationalMapFF):
        if alpha is not INFINITY and not isinstance(alpha, FFElement):
            alpha = FFElement.from_const(alpha)
    else:
        alpha = as_point(alpha)
    seeds = list(seed_values or [])
    values = [alpha]
    seen = {_key(alpha): 0}
    termination = Termination(kind="reached-n")
    n = 0
    while n < depth:
        try:
            if n < len(seeds):
                nxt = seeds[n]
            else:
                nxt = rmap.evaluate(values[-1])
        except ResourceCapError:
            termination = Termination(kind="resource-cap")
            break
        n += 1
        key = _key(nxt)
        if key in seen:
            tail = seen[key]
            period = n - tail
            while len(values) - 1 < depth:
                k = len(values)
                values.append(values[tail + ((k - tail) % period)])
            termination = Termination(kind="preperiodic", tail=tail, period=period)
            break
        values.append(nxt)
        seen[key] = n
        if _is_zero_value(nxt):
            termination = Termination(kind="hit-zero", zero_index=n)
            break
    records = [OrbitRecord(n=k, value=values[k]) for k in range(1, len(values))]
    return records, termination


def _key(value):
    if value is INFINITY:
        return "inf"
    if isinstance(value, FFElement):
        return (value.num, value.den)
    return value


# ---------------------------------------------------------------------------
# Primitive parts and primes
# ---------------------------------------------------------------------------

def primitive_part(records, n: int, domain=_IntValues):
    """Numerator of the n-th value with every prime shared with an earlier
    numerator stripped by repeated gcd division.  A primitive prime factor
    exists iff the result is not a unit; no factorization is involved."""
    rec = records[n - 1]
    if rec.n != n:
        raise ValueError("records must be contiguous from n = 1")
    if rec.value is INFINITY or _is_zero_value(rec.value):
        raise ValueError(f"orbit value at n = {n} is 0 or infinity")
    part = domain.numerator(rec.value)
    for m in range(1, n):
        earlier = domain.numerator(records[m - 1].value)
        if domain.is_zero(earlier):
            # an exact zero upstream absorbs every prime
            return _unit_of(domain)
        g = domain.gcd(part, earlier)
        while not domain.is_unit(g):
            part = domain.div(part, g)
            g = domain.gcd(part, earlier)
    return part


def _unit_of(domain):
    return 1 if domain is _IntValues else (Fraction(1),)


def primitive_prime_factors(records, n: int, budget: int = DEFAULT_BUDGET):
    """Primes of the primitive part (K = Q), each re-verified against the
    definition: positive valuation at n, non-positive at every earlier level.
    Returns (primes, unresolved); unresolved means the part did not factor
    completely, so the list may be missing primes (never wrong ones)."""
    part = primitive_part(records, n)
    if part == 1:
        return (), False
    fac = factor(part, budget=budget)
    verified = []
    for p in fac.primes():
        numer_n = _IntValues.numerator(records[n - 1].value)
        if numer_n % p != 0:
            raise AssertionError("primitive part prime does not divide the numerator")
        if any(_IntValues.numerator(records[m - 1].value) % p == 0 for m in range(1, n)):
            raise AssertionError("primitive part prime divides an earlier numerator")
        verified.append(p)
    return tuple(verified), not fac.is_complete


def squarefree_primitive_prime(records, n: int, budget: int = DEFAULT_BUDGET,
                               precomputed: Optional[FactoredValue] = None):
    """A primitive prime with exponent exactly 1 in the n-th numerator, or
    None, or unresolved when the primitive part resists the factoring budget.

    Gcd-stripping removes shared primes wholesale, so the exponents of the
    surviving primes inside the primitive part equal their exponents in the
    full numerator; only the primitive part ever needs factoring.

    `precomputed` (from a cache) is used only if it reconstructs the current
    primitive part exactly; anything else is silently refactored.
    """
    part = primitive_part(records, n)
    if part == 1:
        return None, False, None
    if precomputed is not None and precomputed.reconstruct() == part:
        fac = precomputed
    else:
        fac = factor(part, budget=budget)
    for p, e in fac.prime_powers:
        if e == 1:
            return p, False, fac
    if not fac.is_complete:
        return None, True, fac
    return None, False, fac


def squarefree_primitive_witness_ff(records, n: int):
    """Over Q(t): the product of the multiplicity-1 irreducibles of the
    primitive part (monic).  Nontrivial iff a square-free primitive prime
    exists; no irreducible factorization is needed."""
    part = primitive_part(records, n, domain=_PolyValues)
    if _PolyValues.is_unit(part):
        return None
    decomposition = polys.squarefree_decomposition(list(part))
    witness = decomposition.get(1)
    if witness is None or polys.degree(witness) < 1:
        return None
    return tuple(witness)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HypothesisNotes:
    """Which theorem hypotheses the scanned pair satisfies, for report readers."""

    power_map: bool
    zero_in_orbit: Optional[int]
    classification: Optional[PointClassification]
    ramification: Optional[RamificationVerdict]


@dataclass
class ZsigmondyReport:
    map_str: str
    alpha_str: str
    field: str
    depth: int
    squarefree_depth: int
    records: list
    zsigmondy_set: tuple
    squarefree_zsigmondy_set: tuple
    squarefree_unresolved: tuple
    termination: Termination
    notes: Optional[HypothesisNotes]


def zsigmondy_report(
    rmap,
    alpha,
    depth: int = DEFAULT_PRIMITIVE_DEPTH,
    budget: int = DEFAULT_BUDGET,
    squarefree_depth: int = DEFAULT_SQUAREFREE_DEPTH,
    workers: int = 1,
    ramification_depth: int = 3,
    seed_values=None,
    factor_cache=None,
) -> ZsigmondyReport:
    """Scan an orbit for primitive and square-free primitive prime divisors.

    The report also states which theorem hypotheses hold (power map, zero in
    the orbit, wandering vs preperiodic, the ramification verdict) so a
    reader can see whether an observed exception is explained.

    `seed_values` and `factor_cache` come from the orbit cache: known values
    and primitive-part factorizations are reused instead of recomputed.
    """
    domain = _domain_for(rmap)
    factor_cache = factor_cache or {}
    records, termination = orbit(rmap, alpha, depth, seed_values=seed_values)
    analyzable = []
    for rec in records:
        if rec.value is INFINITY or _is_zero_value(rec.value):
            continue
        rec.numer = domain.numerator(rec.value)
        analyzable.append(rec)
    for rec in analyzable:
        rec.primitive_part = primitive_part(records, rec.n, domain=domain)
        rec.has_primitive = not domain.is_unit(rec.primitive_part)

    sf_records = [rec for rec in analyzable if rec.n <= squarefree_depth]
    if domain is _IntValues:
        def sf_task(rec):
            return squarefree_primitive_prime(
                records, rec.n, budget=budget, precomputed=factor_cache.get(rec.n)
            )

        if workers > 1 and len(sf_records) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(sf_task, sf_records))
        else:
            results = [sf_task(rec) for rec in sf_records]
        for rec, (prime, unresolved, fac) in zip(sf_records, results):
            rec.squarefree_witness = prime
            rec.squarefree_unresolved = unresolved
            rec.has_squarefree_primitive = None if unresolved else prime is not None
            rec.factored = fac
    else:
        for rec in sf_records:
            witness = squarefree_primitive_witness_ff(records, rec.n)
            rec.squarefree_witness = witness
            rec.has_squarefree_primitive = witness is not None

    zsig = tuple(rec.n for rec in analyzable if rec.has_primitive is False)
    sf_set = tuple(
        rec.n for rec in sf_records if rec.has_squarefree_primitive is False
    )
    sf_unresolved = tuple(rec.n for rec in sf_records if rec.squarefree_unresolved)

    zero_in_orbit = termination.zero_index
    if domain is _IntValues:
        classification = classify_point(rmap, alpha)
        try:
            ramification = rmap.dynamical_ramification_verdict(ramification_depth)
        except ResourceCapError:
            ramification = None
        alpha_str = str(Fraction(alpha)) if alpha is not INFINITY else "inf"
    else:
        classification = None
        ramification = None
        alpha_str = str(alpha)
    notes = HypothesisNotes(
        power_map=rmap.is_power_map(),
        zero_in_orbit=zero_in_orbit,
        classification=classification,
        ramification=ramification,
    )
    return ZsigmondyReport(
        map_str=rmap.to_string(),
        alpha_str=alpha_str,
        field=domain.field,
        depth=depth,
        squarefree_depth=squarefree_depth,
        records=records,
        zsigmondy_set=zsig,
        squarefree_zsigmondy_set=sf_set,
        squarefree_unresolved=sf_unresolved,
        termination=termination,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# Non-primitive mass diagnostic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PropOldRow:
    n: int
    mass: LogMass
    height: float
    delta_height: float
    margin: float  # mass - delta * height
    ratio: Optional[float]
    note: str = ""


@dataclass(frozen=True)
class PropOldReport:
    map_str: str
    alpha_str: str
    factor_poly: tuple
    level: int
    delta: float
    rows: list
    empirical_constant: float
    hypothesis_ok: bool
    hypothesis_notes: tuple
    screen_is_heuristic: bool = True


def prop_old_diagnostic(
    rmap: RationalMap,
    alpha,
    factor_poly,
    level: int,
    depth: int,
    delta: float,
    budget: int = DEFAULT_BUDGET,
    period_screen_bound: int = 6,
) -> PropOldReport:
    """Mass of primes shared between F(phi^(n-i)(alpha)) and earlier orbit
    numerators, against delta * h(phi^n(alpha)), per scanned level n.

    F must divide the numerator of the i-th iterate exactly.  The hypothesis
    screen (roots of F non-periodic, not mapping to 0 too early) is gcd-based
    and sound but incomplete; it is reported, not enforced.
    """
    F = polys.strip([Fraction(c) for c in factor_poly])
    if polys.degree(F) < 1:
        raise ValueError("F must be non-constant")
    if level < 1:
        raise ValueError("level must be >= 1")
    i = level
    rep = rmap.iterate(i)
    p_i = [Fraction(c) for c in rep.numerator_poly]
    quo, rem = polys.divmod_poly(p_i, F)
    if not polys.is_zero(rem):
        raise ValueError("F does not divide the numerator of the i-th iterate")

    notes = []
    ok = True
    # roots of F must not map to 0 at levels 0..i-1 (level 0 means F(0) != 0)
    for ell in range(0, i):
        if ell == 0:
            target = [Fraction(0), Fraction(1)]  # phi^0 numerator: x
        else:
            target = [Fraction(c) for c in rmap.iterate(ell).numerator_poly]
        g = polys.gcd(F, target)
        if polys.degree(g) > 0:
            ok = False
            notes.append(f"a root of F hits 0 at level {ell}")
    # periodicity screen up to a bound (heuristic: periods beyond it unseen)
    for k in range(1, period_screen_bound + 1):
        rk = rmap.iterate(k)
        fixed = polys.sub(
            [Fraction(c) for c in rk.numerator_poly],
            polys.mul([Fraction(0), Fraction(1)], [Fraction(c) for c in rk.denominator_poly]),
        )
        g = polys.gcd(F, fixed)
        if polys.degree(g) > 0:
            ok = False
            notes.append(f"a root of F is periodic with period dividing {k}")

    records, _ = orbit(rmap, alpha, depth)
    numerators = {}
    for rec in records:
        if rec.value is INFINITY:
            continue
        numerators[rec.n] = abs(Fraction(rec.value).numerator)

    alpha_pt = as_point(alpha)
    rows = []
    best = float("-inf")
    for n in range(max(1, i), len(records) + 1):
        value_n = records[n - 1].value
        if value_n is INFINITY or _is_zero_value(value_n):
            rows.append(
                PropOldRow(n=n, mass=LogMass(0.0, True, 1), height=0.0,
                           delta_height=0.0, margin=0.0, ratio=None,
                           note="orbit value is 0 or infinity; row skipped")
            )
            continue
        base = alpha_pt if n == i else records[n - i - 1].value
        if base is INFINITY:
            rows.append(
                PropOldRow(n=n, mass=LogMass(0.0, True, 1), height=0.0,
                           delta_height=0.0, margin=0.0, ratio=None,
                           note="phi^(n-i) is infinite; row skipped")
            )
            continue
        w = polys.evaluate(F, Fraction(base))
        if w == 0:
            rows.append(
                PropOldRow(n=n, mass=LogMass(0.0, True, 1), height=0.0,
                           delta_height=0.0, margin=0.0, ratio=None,
                           note="F vanishes on the orbit; row skipped")
            )
            continue
        w_num = abs(w.numerator)
        shared_primes = set()
        exact = True
        for m in range(1, n):
            nm = numerators.get(m)
            if nm is None or nm == 0:
                continue
            g = int_gcd(w_num, nm)
            if g > 1:
                fac = factor(g, budget=budget)
                shared_primes.update(fac.primes())
                exact = exact and fac.is_complete
        radical = 1
        for p in sorted(shared_primes):
            radical *= p
        mass_value = sum(log_int(p) for p in shared_primes)
        mass = LogMass(value=mass_value, exact=exact, radical=radical)
        h = height_float(value_n)
        margin = mass_value - delta * h
        best = max(best, margin)
        rows.append(
            PropOldRow(
                n=n,
                mass=mass,
                height=h,
                delta_height=delta * h,
                margin=margin,
                ratio=(mass_value / h) if h > 0 else None,
            )
        )
    alpha_str = str(Fraction(alpha)) if alpha is not INFINITY else "inf"
    return PropOldReport(
        map_str=rmap.to_string(),
        alpha_str=alpha_str,
        factor_poly=tuple(F),
        level=i,
        delta=delta,
        rows=rows,
        empirical_constant=best if rows else 0.0,
        hypothesis_ok=ok,
        hypothesis_notes=tuple(notes),
    )
