"""Integer polynomial machinery backing the algebraic-number kernel.

Polynomials are tuples of Python ints in ascending degree with a nonzero
leading coefficient; the zero polynomial is the empty tuple.  Heavy
operations (factorisation over Q, resultants) are delegated to sympy;
everything sign-related (Sturm chains, root counting, isolation) is done
here directly with exact rational arithmetic.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

import sympy

from .errors import ZeroPolynomialError

_x, _y = sympy.symbols("rotagraph_x rotagraph_y")


def normalize(coeffs):
    """Strip trailing zero coefficients; return an ascending tuple."""
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(int(v) for v in c)


def degree(c):
    return len(c) - 1


def evaluate(c, t):
    """Horner evaluation at a Fraction (or int)."""
    acc = Fraction(0)
    for coef in reversed(c):
        acc = acc * t + coef
    return acc


def derivative(c):
    return tuple(i * c[i] for i in range(1, len(c)))


def content(c):
    g = 0
    for v in c:
        g = gcd(g, abs(v))
    return g


def primitive(c):
    """Divide out the content and make the leading coefficient positive."""
    c = normalize(c)
    if not c:
        return c
    g = content(c)
    if c[-1] < 0:
        g = -g
    return tuple(v // g for v in c)


def mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return normalize(out)


def add(a, b):
    out = [0] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] += v
    return normalize(out)


class IntPoly:
    """Integer-coefficient polynomial, coefficients ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        if isinstance(coeffs, IntPoly):
            coeffs = coeffs.coeffs
        self.coeffs = normalize(coeffs)

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        return degree(self.coeffs)

    def __call__(self, t):
        return evaluate(self.coeffs, t)

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"


def as_coeff_tuple(p):
    """Accept an IntPoly or any coefficient sequence; reject the zero poly."""
    coeffs = p.coeffs if isinstance(p, IntPoly) else normalize(p)
    if not coeffs:
        raise ZeroPolynomialError("the zero polynomial is not a valid input")
    return coeffs


# -- sympy bridge -----------------------------------------------------------

def _to_sympy(c):
    return sympy.Poly(list(reversed(c)), _x, domain="ZZ")


def _from_sympy(p):
    return normalize(list(reversed([int(v) for v in p.all_coeffs()])))


@lru_cache(maxsize=None)
def factor_int(c):
    """Distinct irreducible factors over Q, each primitive with positive lead."""
    _, factors = _to_sympy(c).factor_list()
    return tuple(sorted(primitive(_from_sympy(f)) for f, _m in factors))


@lru_cache(maxsize=None)
def squarefree_part(c):
    g = _to_sympy(c).gcd(_to_sympy(derivative(c)))
    q, r = _to_sympy(c).div(g)
    assert r.is_zero
    return primitive(_from_sympy(q))


def divide_exact(a, b):
    """Return a // b if b divides a exactly over Q, else None."""
    q, r = _to_sympy(a).div(_to_sympy(b))
    if not r.is_zero:
        return None
    return primitive(_from_sympy(sympy.Poly(q, _x)))


@lru_cache(maxsize=None)
def cand_sum(pa, pb):
    """Integer polynomial vanishing at every a + b with pa(a) = pb(b) = 0."""
    p = sympy.Poly(list(reversed(pa)), _y).as_expr(_y)
    q = evaluate_sym(pb, _x - _y)
    return primitive(_from_sympy(sympy.Poly(sympy.resultant(p, q, _y), _x)))


@lru_cache(maxsize=None)
def cand_prod(pa, pb):
    """Integer polynomial vanishing at every a * b (0 not a root of pa)."""
    p = sympy.Poly(list(reversed(pa)), _y).as_expr(_y)
    n = degree(pb)
    q = sum(pb[i] * _x ** i * _y ** (n - i) for i in range(len(pb)))
    return primitive(_from_sympy(sympy.Poly(sympy.resultant(p, q, _y), _x)))


def evaluate_sym(c, expr):
    acc = sympy.Integer(0)
    for coef in reversed(c):
        acc = acc * expr + coef
    return sympy.expand(acc)


def cand_sqrt(c):
    """p(x^2): vanishes at +-sqrt(r) for every root r of p."""
    out = [0] * (2 * len(c) - 1)
    for i, v in enumerate(c):
        out[2 * i] = v
    return primitive(out)


def compose_neg(c):
    """Minimal-polynomial transform for x -> -x (primitive, lead > 0)."""
    return primitive(tuple(v if i % 2 == 0 else -v for i, v in enumerate(c)))


def compose_invert(c):
    """Transform for x -> 1/x (0 must not be a root)."""
    return primitive(tuple(reversed(c)))


def compose_shift(c, r):
    """Minimal-polynomial transform for the value a + r, r = s/t rational.

    Returns t^n * p(x - s/t) = sum_i c_i * t^(n-i) * (t*x - s)^i, computed
    by Horner over the integers.
    """
    s, t = r.numerator, r.denominator
    u = (-s, t)
    acc = (c[-1],)
    tpow = 1
    for coef in reversed(c[:-1]):
        tpow *= t
        acc = add(mul(acc, u), (coef * tpow,))
    return primitive(acc)


def compose_scale(c, r):
    """Transform for x -> x / r, r = s/t nonzero rational."""
    s, t = r.numerator, r.denominator
    n = degree(c)
    return primitive(tuple(c[i] * t ** i * s ** (n - i) for i in range(len(c))))


# -- Sturm machinery --------------------------------------------------------

@lru_cache(maxsize=None)
def _scale_by_content(c):
    """Divide out the (positive) content, keeping the sign of the row.
    Sturm chains need this: flipping a row's sign breaks the count."""
    c = normalize(c)
    if not c:
        return c
    g = content(c)
    return tuple(v // g for v in c)


def sturm_chain(c):
    """Sturm chain of a squarefree polynomial, primitive integer rows."""
    chain = [primitive(c), primitive(derivative(c))]
    while chain[-1] and degree(chain[-1]) > 0:
        rem = _poly_rem_neg(chain[-2], chain[-1])
        if not rem:
            break
        chain.append(_scale_by_content(rem))
    return tuple(chain)


def _poly_rem_neg(a, b):
    """-(a mod b) over Q, returned as a Fraction tuple normalised later."""
    a = [Fraction(v) for v in a]
    db = degree(b)
    lb = Fraction(b[-1])
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        k = len(a) - 1 - db
        f = a[-1] / lb
        for i in range(len(b)):
            a[k + i] -= f * b[i]
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    if not a:
        return ()
    # clear denominators, flip sign
    den = 1
    for v in a:
        den = den * v.denominator // gcd(den, v.denominator)
    return tuple(int(-v * den) for v in a)


def _variations(chain, t):
    signs = []
    for row in chain:
        v = evaluate(row, t)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for i in range(len(signs) - 1) if signs[i] != signs[i + 1])


def count_roots_halfopen(c, lo, hi):
    """Number of distinct real roots of squarefree c in (lo, hi]."""
    if lo >= hi:
        return 0
    chain = sturm_chain(c)
    return _variations(chain, lo) - _variations(chain, hi)


def count_roots_closed(c, lo, hi):
    """Number of distinct real roots of squarefree c in [lo, hi]."""
    if lo > hi:
        return 0
    n = 1 if evaluate(c, lo) == 0 else 0
    if lo == hi:
        return n
    return n + count_roots_halfopen(c, lo, hi)


def root_bound(c):
    """Cauchy bound: every real root lies strictly inside (-B, B)."""
    lead = abs(c[-1])
    m = max(abs(v) for v in c[:-1]) if len(c) > 1 else 0
    return Fraction(m, lead) + 1


def isolate_roots(c):
    """Isolating intervals for all real roots of squarefree c.

    Returns ascending disjoint (lo, hi) pairs with nonzero endpoint values,
    one root per interval.  Rational roots are returned as [r, r].
    """
    c = primitive(c)
    if degree(c) == 0:
        return []
    out = []
    B = root_bound(c)
    stack = [(-B, B, count_roots_halfopen(c, -B, B))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1 and evaluate(c, hi) != 0:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if evaluate(c, mid) == 0:
            out.append((mid, mid))
            # exclude an interval around the exact root from both halves
            w = (hi - lo) / 4
            while count_roots_halfopen(c, mid - w, mid + w) > 1 or \
                    evaluate(c, mid - w) == 0 or evaluate(c, mid + w) == 0:
                w /= 2
            stack.append((lo, mid - w, count_roots_halfopen(c, lo, mid - w)))
            stack.append((mid + w, hi, count_roots_halfopen(c, mid + w, hi)))
        else:
            stack.append((lo, mid, count_roots_halfopen(c, lo, mid)))
            stack.append((mid, hi, n - count_roots_halfopen(c, lo, mid)))
    out.sort(key=lambda iv: iv[0])
    return out


@lru_cache(maxsize=None)
def cyclotomic(m):
    return _from_sympy(sympy.Poly(sympy.cyclotomic_poly(m, _x), _x))


@lru_cache(maxsize=None)
def cos_rational_angle_resultant(m):
    """R_m(x) = Res_z(Phi_m(z), z^2 - 2xz + 1).

    R_m(c) = 0 exactly when c is the cosine of a primitive m-th root of
    unity's argument, i.e. c = cos(2*pi*k/m) with gcd(k, m) = 1.
    """
    z = sympy.Symbol("rotagraph_z")
    phi = sympy.Poly(list(reversed(cyclotomic(m))), z).as_expr(z)
    r = sympy.resultant(phi, z ** 2 - 2 * _x * z + 1, z)
    p = sympy.Poly(r, _x)
    if p.is_zero:  # m in {1, 2}: Phi_m shares the root z = +-1 structure
        return ()
    return primitive(_from_sympy(p))


def divides(small, big):
    """True if `small` divides `big` over Q."""
    return divide_exact(big, small) is not None
