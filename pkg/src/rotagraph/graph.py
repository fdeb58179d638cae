"""The unit-distance graph on the elliptic plane with edge length l.

Vertices are all projective points; p ~ q iff d(p, q) = l exactly.  For
l < pi/4 (equivalently cos^2 l > 1/2) the graph metric has the closed form
d_G(p, q) = ceil(d(p, q) / l) away from the trivial cases, certified here
by Chebyshev comparisons on cosines, never by floating arccos.
"""

from fractions import Fraction

from .algebraic import (
    AlgReal, EQUAL, GREATER, LESS,
    as_algreal, chebyshev_T, compare, div, is_rational_angle, mul,
)
from .elliptic import (
    DistCos, as_dist_cos, dist_cos, equidistant_point, geodesic_step,
)
from .errors import (
    OutOfRangeError,
    PreconditionError,
    SearchExhaustedError,
)

_ONE = AlgReal(1)
_HALF = AlgReal(Fraction(1, 2))


class GraphSpec:
    """Parameters of the unit-distance graph: the edge-length cosine and a
    flag recording whether the strict regime l < pi/4 holds (needed for the
    ceiling formula and the witness-path construction)."""

    __slots__ = ("cos_l", "strict")

    def __init__(self, cos_l):
        cos_l = as_dist_cos(cos_l)
        c = cos_l.value
        if c.sign() <= 0 or compare(c, _ONE) != LESS:
            raise OutOfRangeError("edge cosine must lie strictly in (0, 1)")
        self.cos_l = cos_l
        # cos^2 l > 1/2  <=>  l < pi/4
        self.strict = compare(mul(c, c), _HALF) == GREATER

    def __repr__(self):
        return f"GraphSpec(cos_l~{float(self.cos_l.value):.6g}, strict={self.strict})"


class Path:
    """A vertex sequence whose consecutive distances are all the edge length."""

    __slots__ = ("points",)

    def __init__(self, points):
        self.points = tuple(points)

    def __len__(self):
        return len(self.points) - 1


def is_edge(spec, p, q):
    return dist_cos(p, q) == spec.cos_l


def graph_distance(spec, p, q, max_steps=64):
    """Exact graph distance with a certificate.

    Returns (k, certificate) where the certificate records the comparisons
    that pin down k: cos d(p, q) against T_{k-1}(cos l) and T_k(cos l).
    Distance k >= 2 is certified by T_{k-1}(cos l) > cos d (too far for
    k - 1 steps) together with reachability in k steps, which in the strict
    regime is cos d >= T_k(cos l) or T_k(cos l) <= 0 (the k-ball already
    covers the whole plane).
    """
    c = spec.cos_l.value
    d = dist_cos(p, q).value
    if compare(d, _ONE) == EQUAL:
        return 0, {"k": 0, "reason": "identical points"}
    if compare(d, c) == EQUAL:
        return 1, {"k": 1, "reason": "exact edge"}
    if not spec.strict:
        raise PreconditionError(
            "graph distance formula requires the strict regime l < pi/4")
    k = 2
    while k <= max_steps:
        tk = chebyshev_T(k, c)
        if tk.sign() <= 0 or compare(d, tk) != LESS:
            upper = ("T_%d(cos l) <= 0" % k) if tk.sign() <= 0 \
                else ("cos d(p, q) >= T_%d(cos l)" % k)
            if k == 2:
                # any distinct non-adjacent pair needs at least two steps,
                # including pairs strictly closer than one edge length
                lower = "p != q and d(p, q) != l"
            else:
                tk1 = chebyshev_T(k - 1, c)
                if compare(tk1, d) != GREATER:
                    raise PreconditionError(
                        "distance already reachable in fewer steps")
                lower = f"T_{k-1}(cos l) > cos d(p, q)"
            return k, {"k": k, "lower": lower, "upper": upper}
        k += 1
    raise SearchExhaustedError("graph distance exceeds the step bound")


def witness_path(spec, p, q):
    """A geodesic-based path realising the graph distance.

    Walks unit steps along the geodesic from p toward q while the remaining
    distance exceeds 2l, then closes with a two-step detour through an
    equidistant point (remaining distance in (l, 2l] guarantees one exists).
    """
    k, _ = graph_distance(spec, p, q)
    c = spec.cos_l.value
    if k == 0:
        return Path([p])
    if k == 1:
        return Path([p, q])
    pts = [p]
    cur = p
    steps_left = k
    while steps_left > 2:
        cur = geodesic_step(cur, q, spec.cos_l)
        pts.append(cur)
        steps_left -= 1
    mid = equidistant_point(cur, q, spec.cos_l)
    pts.extend([mid, q])
    path = Path(pts)
    if not verify_path(spec, path, p, q, k):
        raise PreconditionError("constructed path failed verification")
    return path


def verify_path(spec, path, p, q, k=None):
    """Exact check: endpoints match, every consecutive pair is an edge, and
    (when k is given) the length equals k."""
    pts = path.points
    if pts[0] != p or pts[-1] != q:
        return False
    if k is not None and len(path) != k:
        return False
    for a, b in zip(pts, pts[1:]):
        if not is_edge(spec, a, b):
            return False
    return True


def diameter(spec, max_steps=64):
    """The graph diameter: the least k with T_k(cos l) <= 0, i.e. the least
    k with k*l >= pi/2, since the farthest elliptic distance is pi/2.
    Requires the strict regime (diameter >= 3 there)."""
    if not spec.strict:
        raise PreconditionError("diameter formula requires l < pi/4")
    c = spec.cos_l.value
    for k in range(1, max_steps + 1):
        if chebyshev_T(k, c).sign() <= 0:
            return k, {
                "k": k,
                "upper": f"T_{k}(cos l) <= 0",
                "lower": f"T_{k-1}(cos l) > 0",
            }
    raise SearchExhaustedError("diameter exceeds the step bound")


def validate_spec(spec):
    """Structural report on the edge length: regime flags and whether the
    apex angle of the equilateral triangle is a rational multiple of pi
    (irrational apex is what drives the ladder distances to be dense)."""
    from .elliptic import apex_angle_cos
    c = spec.cos_l.value
    apex = apex_angle_cos(spec.cos_l)
    return {
        "strict": spec.strict,
        "edge_angle_rational": is_rational_angle(c),
        "apex_angle_rational": is_rational_angle(apex),
    }


def choose_ell_for_diameter(k, should_stop=None):
    """A rational cosine giving graph diameter exactly k (k >= 3), with the
    apex angle an irrational multiple of pi.

    Enumerates rationals p/q by increasing denominator and tests the exact
    sandwich T_k(c) <= 0 < T_{k-1}(c); k >= 3 puts any such c in the strict
    regime automatically.  `should_stop`, when given, is polled between
    candidates and aborts the search by returning True.
    """
    if k < 3:
        raise OutOfRangeError("diameter targets below 3 are not in the strict regime")
    for qden in range(2, 4000):
        for pnum in range(1, qden):
            if should_stop is not None and should_stop():
                raise SearchExhaustedError("search cancelled")
            frac = Fraction(pnum, qden)
            if frac.denominator != qden:
                continue
            c = AlgReal(frac)
            if chebyshev_T(k, c).sign() > 0:
                continue
            if chebyshev_T(k - 1, c).sign() <= 0:
                continue
            apex = div(c, c + _ONE)
            if is_rational_angle(apex):
                continue
            spec = GraphSpec(c)
            if not spec.strict:
                continue
            return spec
    raise SearchExhaustedError("no rational edge cosine found for this diameter")
