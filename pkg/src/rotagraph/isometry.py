"""Isometries of the elliptic plane as exact 3x3 orthogonal matrices.

A linear map acts on projective points through its action on lifts; the
sign ambiguity of the lift is absorbed by the canonical form, so O(3) and
its quotient by {+-I} act the same way here.
"""

from fractions import Fraction
import random

from . import polys
from .algebraic import (
    AlgReal, EQUAL, add, as_algreal, compare, div, mul, neg, real_roots, sub,
)
from .elliptic import ProjPoint, _canonical_sign, _dot, dist_cos, make_point
from .errors import (
    InternalConsistencyError,
    PreconditionError,
    ZeroVectorError,
)

_ZERO = AlgReal(0)
_ONE = AlgReal(1)


class LinearMap:
    """A 3x3 matrix over the field, stored row-major as exact entries."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(as_algreal(v) for v in r) for r in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise PreconditionError("a linear map needs a 3x3 matrix")
        self.rows = rows

    def __matmul__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        out = []
        for i in range(3):
            row = []
            for j in range(3):
                s = _ZERO
                for k in range(3):
                    s = add(s, mul(self.rows[i][k], other.rows[k][j]))
                row.append(s)
            out.append(row)
        return LinearMap(out)

    def transpose(self):
        return LinearMap(tuple(zip(*self.rows)))

    def det(self):
        r = self.rows
        return add(
            sub(
                mul(r[0][0], sub(mul(r[1][1], r[2][2]), mul(r[1][2], r[2][1]))),
                mul(r[0][1], sub(mul(r[1][0], r[2][2]), mul(r[1][2], r[2][0]))),
            ),
            mul(r[0][2], sub(mul(r[1][0], r[2][1]), mul(r[1][1], r[2][0]))),
        )

    def trace(self):
        return add(add(self.rows[0][0], self.rows[1][1]), self.rows[2][2])

    def apply_lift(self, v):
        return tuple(_dot(row, v) for row in self.rows)

    def __repr__(self):
        return "LinearMap(%s)" % "; ".join(
            " ".join("%.4g" % float(v) for v in r) for r in self.rows)


def identity():
    return LinearMap(((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def apply(m, p):
    """Image of the projective point p under the map m.  Works on whatever
    lift is at hand; the image normalises lazily like any other point."""
    return make_point(*m.apply_lift(p.raw_lift))


def is_orthogonal(m):
    """Exact test: m^T m = I."""
    g = m.transpose() @ m
    for i in range(3):
        for j in range(3):
            want = _ONE if i == j else _ZERO
            if compare(g.rows[i][j], want) != EQUAL:
                return False
    return True


def _minor2_sum(m):
    """Sum of the principal 2x2 minors (second char poly coefficient)."""
    r = m.rows
    total = _ZERO
    for i, j in ((0, 1), (0, 2), (1, 2)):
        total = add(total, sub(mul(r[i][i], r[j][j]), mul(r[i][j], r[j][i])))
    return total


def _exact_kernel_vector(rows):
    """A nonzero kernel vector of a singular exact 3x3 matrix, by full-pivot
    Gaussian elimination; None when the matrix is invertible.  Ties in pivot
    choice break toward the lowest index, so the result is deterministic."""
    a = [list(r) for r in rows]
    col_perm = [0, 1, 2]
    rank = 0
    for step in range(3):
        pivot = None
        for i in range(step, 3):
            for j in range(step, 3):
                if a[i][j].sign() != 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pi, pj = pivot
        a[step], a[pi] = a[pi], a[step]
        for row in a:
            row[step], row[pj] = row[pj], row[step]
        col_perm[step], col_perm[pj] = col_perm[pj], col_perm[step]
        for i in range(step + 1, 3):
            f = div(a[i][step], a[step][step])
            for j in range(step, 3):
                a[i][j] = sub(a[i][j], mul(f, a[step][j]))
        rank += 1
    if rank == 3:
        return None
    # back-substitute with the first free variable set to 1
    x = [_ZERO, _ZERO, _ZERO]
    x[rank] = _ONE
    for i in range(rank - 1, -1, -1):
        s = _ZERO
        for j in range(i + 1, 3):
            s = add(s, mul(a[i][j], x[j]))
        x[i] = div(neg(s), a[i][i])
    out = [_ZERO, _ZERO, _ZERO]
    for k in range(3):
        out[col_perm[k]] = x[k]
    return tuple(out)


def _shifted(m, lam):
    return tuple(
        tuple(sub(m.rows[i][j], lam) if i == j else m.rows[i][j]
              for j in range(3))
        for i in range(3))


def _char_coeffs(m):
    """Exact (trace, second symmetric function, determinant) of m, so the
    characteristic polynomial is x^3 - tr x^2 + s2 x - det."""
    return m.trace(), _minor2_sum(m), m.det()


def _integer_char_poly(tr, s2, det):
    """Integer characteristic polynomial when the three coefficients are
    all rational, else None."""
    if not (tr.is_rational and s2.is_rational and det.is_rational):
        return None
    tr, s2, det = tr.as_rational(), s2.as_rational(), det.as_rational()
    from math import gcd
    den = 1
    for c in (tr, s2, det):
        den = den * c.denominator // gcd(den, c.denominator)
    coeffs = (int(-det * den), int(s2 * den), int(-tr * den), den)
    return polys.primitive(coeffs)


def _real_eigenvalues(m):
    """Real eigenvalues of m in increasing order, exactly.

    Rational characteristic coefficients go through the integer cubic; for
    irrational coefficients only the orthogonal candidates +-1 are tried
    (the real spectrum of an orthogonal map is contained in {+-1})."""
    ip = _integer_char_poly(*_char_coeffs(m))
    if ip is not None:
        return real_roots(ip)
    out = []
    for lam in (AlgReal(-1), _ONE):
        if LinearMap(_shifted(m, lam)).det().sign() == 0:
            out.append(lam)
    if out:
        return out
    raise InternalConsistencyError(
        "real eigenvalue extraction needs rational characteristic "
        "coefficients or an orthogonal map")


def fixed_point(m):
    """A projective fixed point of m: an eigenvector for a real eigenvalue,
    which the odd-degree characteristic polynomial guarantees.

    Special orthogonal maps take the eigenvalue-1 shortcut (the rotation
    axis); otherwise the smallest real eigenvalue is used.  Deterministic:
    kernel extraction breaks ties by lowest index.
    """
    if m.det().sign() == 0:
        raise PreconditionError("fixed points are computed for invertible maps")
    shifted_one = _shifted(m, _ONE)
    if LinearMap(shifted_one).det().sign() == 0 and is_orthogonal(m):
        v = _exact_kernel_vector(shifted_one)
        if v is not None:
            return make_point(*v)
    for lam in _real_eigenvalues(m):
        v = _exact_kernel_vector(_shifted(m, lam))
        if v is not None:
            return make_point(*v)
    raise InternalConsistencyError("invertible map without a real eigenvector")


def preserves_edges_on_sample(m, cos_l, pairs):
    """Sampled l-isometry check: for each pair, being at distance l and the
    image being at distance l must agree (both ways, exactly)."""
    from .elliptic import as_dist_cos
    cos_l = as_dist_cos(cos_l)
    for p, q in pairs:
        before = dist_cos(p, q) == cos_l
        after = dist_cos(apply(m, p), apply(m, q)) == cos_l
        if before != after:
            return False
    return True


def _pythagorean_pairs(bound=40):
    out = []
    for a in range(1, bound):
        for b in range(a, bound):
            h2 = a * a + b * b
            h = __import__("math").isqrt(h2)
            if h * h == h2:
                out.append((Fraction(a, h), Fraction(b, h)))
    return out


_AXIS_ROT = {
    0: lambda c, s: ((1, 0, 0), (0, c, -s), (0, s, c)),
    1: lambda c, s: ((c, 0, s), (0, 1, 0), (-s, 0, c)),
    2: lambda c, s: ((c, -s, 0), (s, c, 0), (0, 0, 1)),
}


def random_rational_orthogonal(seed):
    """A pseudo-random rotation with rational entries: a composition of
    coordinate-axis rotations whose cosines come from Pythagorean triples."""
    rng = random.Random(seed)
    pairs = _pythagorean_pairs()
    m = identity()
    for axis in rng.sample((0, 1, 2), 3):
        c, s = rng.choice(pairs)
        if rng.random() < 0.5:
            s = -s
        m = LinearMap(_AXIS_ROT[axis](c, s)) @ m
    return m


def orthogonal_sending(p, q):
    """An orthogonal map carrying the projective point p to q.

    Uses the Householder reflection through the bisecting hyperplane of the
    two unit lifts (or the identity when they already agree).
    """
    x, y = p.lift, q.lift
    s = _dot(x, y)
    if s.sign() < 0:
        y = tuple(neg(c) for c in y)
        s = neg(s)
    w = tuple(sub(a, b) for a, b in zip(x, y))
    n2 = _dot(w, w)
    if n2.sign() == 0:
        return identity()
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            v = neg(div(mul(mul(2, w[i]), w[j]), n2))
            if i == j:
                v = add(v, _ONE)
            row.append(v)
        rows.append(row)
    m = LinearMap(rows)
    if apply(m, p) != q:
        raise InternalConsistencyError("reflection missed its target")
    return m


def matrix_to_json(m):
    from . import expr
    return [[expr.to_expr(v) for v in row] for row in m.rows]


def matrix_from_json(rows):
    from . import expr
    return LinearMap([[expr.parse(v) for v in row] for row in rows])
