"""Dense univariate polynomial arithmetic over an exact field.

Polynomials are lists of coefficients in ascending degree order with no
trailing zeros ([] is the zero polynomial).  All routines are generic over
the coefficient field: they only use +, -, *, /, == and bool(), so they work
for fractions.Fraction and for rational-function coefficients alike.

Everything here is exact; nothing ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd


def strip(coeffs):
    """Drop trailing zero coefficients."""
    c = list(coeffs)
    while c and not c[-1]:
        c.pop()
    return c


def degree(p):
    """Degree of p, with deg 0 = -1 by convention."""
    return len(p) - 1


def is_zero(p):
    return len(p) == 0


def leading(p):
    return p[-1]


def constant(p, zero=Fraction(0)):
    return p[0] if p else zero


def add(p, q):
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        a = p[i] if i < len(p) else 0
        b = q[i] if i < len(q) else 0
        out.append(a + b)
    return strip(out)


def neg(p):
    return [-a for a in p]


def sub(p, q):
    return add(p, neg(q))


def mul(p, q):
    if not p or not q:
        return []
    out = [p[0] * q[0] * 0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return strip(out)


def scale(p, c):
    if not c:
        return []
    return strip([a * c for a in p])


def evaluate(p, x):
    """Horner evaluation; x may live in any extension of the coefficient field."""
    acc = 0
    for a in reversed(p):
        acc = acc * x + a
    return acc


def divmod_poly(p, q):
    """Quotient and remainder of p by q over a field.  q must be nonzero."""
    if is_zero(q):
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [q[0] * 0] * max(0, len(p) - len(q) + 1)
    dq = degree(q)
    lc = leading(q)
    while len(rem) - 1 >= dq and rem:
        c = rem[-1] / lc
        k = len(rem) - 1 - dq
        quo[k] = c
        for i, b in enumerate(q):
            rem[k + i] = rem[k + i] - c * b
        rem = strip(rem)
    return strip(quo), rem


def mod(p, q):
    return divmod_poly(p, q)[1]


def exact_div(p, q):
    quo, rem = divmod_poly(p, q)
    if not is_zero(rem):
        raise ValueError("exact_div: division left a remainder")
    return quo


def monic(p):
    if is_zero(p):
        return []
    lc = leading(p)
    return [a / lc for a in p]


def gcd(p, q):
    """Monic gcd.  Rational coefficients go through a primitive
    pseudo-remainder sequence over the integers (naive fraction Euclid blows
    up exponentially in coefficient size); other coefficient fields use the
    plain Euclidean algorithm."""
    a, b = strip(p), strip(q)
    if is_zero(a):
        return monic(b)
    if is_zero(b):
        return monic(a)
    if _rational_coeffs(a) and _rational_coeffs(b):
        return _gcd_primitive_prs(a, b)
    while not is_zero(b):
        a, b = b, mod(a, b)
    return monic(a)


def _rational_coeffs(p):
    return all(isinstance(c, (int, Fraction)) for c in p)


def _int_pseudo_rem(a, b):
    """a reduced mod b up to a power of lc(b), all in integers.

    The result is a nonzero rational multiple of the true remainder, which is
    all a primitive remainder sequence needs (content is stripped anyway).
    """
    db = degree(b)
    lc = b[-1]
    rem = list(a)
    while rem and degree(rem) >= db:
        dr = degree(rem)
        coeff = rem[-1]
        rem = [lc * c for c in rem]
        for i in range(db + 1):
            rem[dr - db + i] -= coeff * b[i]
        rem = strip(rem)
    return rem


def _primitive(p):
    c = content(p)
    out = [v // c for v in p]
    if out[-1] < 0:
        out = [-v for v in out]
    return out


def _gcd_primitive_prs(p, q):
    a = to_integer(p)
    b = to_integer(q)
    if degree(a) < degree(b):
        a, b = b, a
    while b:
        if degree(b) == 0:
            return [Fraction(1)]
        r = _int_pseudo_rem(a, b)
        if not r:
            break
        a, b = b, _primitive(r)
    return monic([Fraction(c) for c in b or a])


def derivative(p):
    return strip([p[i] * i for i in range(1, len(p))])


def squarefree_part(p):
    """p / gcd(p, p'), made monic.  Same irreducible factors, all to power 1."""
    if is_zero(p):
        raise ValueError("squarefree_part of the zero polynomial")
    if degree(p) == 0:
        return [p[0] / p[0]]
    g = gcd(p, derivative(p))
    return monic(exact_div(monic(p), g))


def squarefree_decomposition(p):
    """Yun's algorithm: return {i: A_i} with p ~ prod A_i^i, each A_i monic squarefree.

    Only multiplicities with deg A_i > 0 are reported.  Characteristic-0 only.
    """
    if is_zero(p):
        raise ValueError("squarefree decomposition of the zero polynomial")
    p = monic(p)
    if degree(p) == 0:
        return {}
    parts = {}
    g = gcd(p, derivative(p))
    w = exact_div(p, g)
    i = 1
    while degree(w) > 0:
        y = gcd(w, g)
        z = exact_div(w, y)
        if degree(z) > 0:
            parts[i] = monic(z)
        g = exact_div(g, y)
        w = y
        i += 1
    return parts


def resultant(p, q):
    """Resultant of two univariate polynomials over a field (Euclidean PRS)."""
    a, b = strip(p), strip(q)
    if is_zero(a) or is_zero(b):
        return Fraction(0)
    res = 1
    while degree(b) > 0:
        r = mod(a, b)
        if is_zero(r):
            return a[0] * 0
        da, db, dr = degree(a), degree(b), degree(r)
        piece = leading(b) ** (da - dr)
        if (da * db) % 2 == 1:
            piece = -piece
        res = res * piece
        a, b = b, r
    return res * (b[0] ** degree(a))


def discriminant(p):
    """(-1)^(d(d-1)/2) * Res(p, p') / lc(p); deg p must be >= 1."""
    d = degree(p)
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if d == 1:
        return p[-1] / p[-1]
    r = resultant(p, derivative(p))
    sign = -1 if (d * (d - 1) // 2) % 2 == 1 else 1
    return sign * r / leading(p)


# ---------------------------------------------------------------------------
# Integer polynomials and binary forms
# ---------------------------------------------------------------------------

def content(p):
    """Gcd of the integer coefficients (p must have int entries)."""
    g = 0
    for a in p:
        g = int_gcd(g, abs(a))
    return g


def to_integer(p):
    """Clear denominators of a Fraction polynomial and divide out the content.

    Returns an int-coefficient list with content 1 (sign untouched).
    """
    if is_zero(p):
        return []
    lcm = 1
    for a in p:
        d = Fraction(a).denominator
        lcm = lcm * d // int_gcd(lcm, d)
    ints = [int(a * lcm) for a in p]
    c = content(ints)
    return [a // c for a in ints]


def int_poly_gcd(p, q):
    """Gcd in Z[x]: primitive gcd with positive leading coefficient."""
    if is_zero(p) and is_zero(q):
        return []
    g = gcd([Fraction(a) for a in p], [Fraction(a) for a in q])
    out = to_integer(g)
    if out and out[-1] < 0:
        out = [-a for a in out]
    return out


def bareiss_determinant(matrix):
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def form_sylvester(pc, qc, d):
    """Sylvester matrix of two degree-d binary forms given by full coefficient
    vectors of length d+1 (index k = coefficient of x^k y^(d-k)).

    Vanishing top coefficients are kept: the form resultant sees the root at
    infinity, unlike the resultant of the dehomogenized polynomials.
    """
    if len(pc) != d + 1 or len(qc) != d + 1:
        raise ValueError("coefficient vectors must have length d+1")
    size = 2 * d
    rows = []
    pdesc = list(reversed(pc))
    qdesc = list(reversed(qc))
    for shift in range(d):
        rows.append([0] * shift + pdesc + [0] * (size - d - 1 - shift))
    for shift in range(d):
        rows.append([0] * shift + qdesc + [0] * (size - d - 1 - shift))
    return rows


def form_resultant(pc, qc, d):
    """Resultant of two degree-d integer binary forms (Sylvester determinant)."""
    return bareiss_determinant(form_sylvester(pc, qc, d))


def solve_exact(matrix, rhs):
    """Solve M x = rhs exactly over Fraction; M must be square and invertible."""
    n = len(matrix)
    m = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [v / pv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _coeff_str(c):
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def to_string(p, var="x"):
    """Canonical descending-degree rendering, round-trippable by the parser."""
    if is_zero(p):
        return "0"
    terms = []
    for k in range(degree(p), -1, -1):
        c = Fraction(p[k])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = _coeff_str(mag)
        else:
            xpow = var if k == 1 else f"{var}^{k}"
            if mag == 1:
                body = xpow
            elif mag.denominator == 1:
                body = f"{mag.numerator}*{xpow}"
            else:
                body = f"({_coeff_str(mag)})*{xpow}"
        terms.append((sign, body))
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
