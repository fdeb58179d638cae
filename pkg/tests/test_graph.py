import math
import random
from fractions import Fraction

import pytest

from rotagraph import elliptic as ep
from rotagraph import graph as gr
from rotagraph.algebraic import chebyshev_T
from rotagraph.errors import OutOfRangeError, PreconditionError

E1 = ep.make_point(1, 0, 0)
E2 = ep.make_point(0, 1, 0)
SPEC45 = gr.GraphSpec(Fraction(4, 5))    # l = arccos(4/5) < pi/4
SPEC78 = gr.GraphSpec(Fraction(7, 8))


def test_spec_regime_flags():
    assert SPEC45.strict and SPEC78.strict
    assert not gr.GraphSpec(Fraction(1, 2)).strict   # l = pi/3 > pi/4
    with pytest.raises(OutOfRangeError):
        gr.GraphSpec(1)
    with pytest.raises(OutOfRangeError):
        gr.GraphSpec(0)


def test_is_edge():
    q = ep.make_point(Fraction(4, 5), Fraction(3, 5), 0)
    assert gr.is_edge(SPEC45, E1, q)
    assert not gr.is_edge(SPEC45, E1, E2)
    assert not gr.is_edge(SPEC45, E1, E1)


def test_diameter_examples():
    k, cert = gr.diameter(SPEC45)
    assert k == 3 and cert["upper"] == "T_3(cos l) <= 0"
    assert gr.diameter(SPEC78)[0] == 4
    with pytest.raises(PreconditionError):
        gr.diameter(gr.GraphSpec(Fraction(1, 2)))


def test_diameter_matches_ceiling_formula():
    for c in (Fraction(4, 5), Fraction(7, 8), Fraction(9, 10), Fraction(13, 14)):
        k, _ = gr.diameter(gr.GraphSpec(c))
        assert k == math.ceil((math.pi / 2) / math.acos(c))


def test_graph_distance_small_cases():
    assert gr.graph_distance(SPEC45, E1, E1)[0] == 0
    q = ep.make_point(Fraction(4, 5), Fraction(3, 5), 0)
    assert gr.graph_distance(SPEC45, E1, q)[0] == 1
    # closer than one edge: two steps out and back
    near = ep.make_point(Fraction(9, 11), Fraction(6, 11), Fraction(2, 11))
    k, cert = gr.graph_distance(SPEC45, E1, near)
    assert k == 2 and cert["lower"] == "p != q and d(p, q) != l"


def test_graph_distance_against_float_oracle():
    rng = random.Random(17)
    l = math.acos(0.8)
    for _ in range(12):
        p, q = ep.random_rational_point(rng), ep.random_rational_point(rng)
        k, _ = gr.graph_distance(SPEC45, p, q)
        d = math.acos(min(1.0, float(ep.dist_cos(p, q).value)))
        if d == 0:
            want = 0
        elif abs(d - l) < 1e-12:
            want = 1
        else:
            want = max(2, math.ceil(d / l))
        assert k == want


def test_witness_path_realizes_distance():
    rng = random.Random(6)
    for _ in range(5):
        p, q = ep.random_rational_point(rng), ep.random_rational_point(rng)
        k, _ = gr.graph_distance(SPEC45, p, q)
        path = gr.witness_path(SPEC45, p, q)
        assert len(path) == k
        assert gr.verify_path(SPEC45, path, p, q, k)


def test_witness_path_between_basis_points():
    for spec in (SPEC45, SPEC78):
        k, _ = gr.graph_distance(spec, E1, E2)
        assert k == gr.diameter(spec)[0]   # e1, e2 are at maximal distance
        path = gr.witness_path(spec, E1, E2)
        assert len(path) == k
        for a, b in zip(path.points, path.points[1:]):
            assert gr.is_edge(spec, a, b)


def test_verify_path_rejects_bad_paths():
    path = gr.witness_path(SPEC45, E1, E2)
    assert not gr.verify_path(SPEC45, path, E2, E1)          # endpoints swapped
    assert not gr.verify_path(SPEC45, gr.Path([E1, E2]), E1, E2)  # non-edge hop


def test_distance_requires_strict_regime():
    loose = gr.GraphSpec(Fraction(1, 2))
    with pytest.raises(PreconditionError):
        gr.graph_distance(loose, E1, E2)


def test_validate_spec():
    rep = gr.validate_spec(SPEC45)
    assert rep == {"strict": True, "edge_angle_rational": False,
                   "apex_angle_rational": False}
    # l = pi/3: rational edge angle, apex cos = 1/3 irrational angle
    rep = gr.validate_spec(gr.GraphSpec(Fraction(1, 2)))
    assert rep["edge_angle_rational"] and not rep["apex_angle_rational"]


def test_choose_ell_for_diameter():
    for k in (3, 4, 5):
        spec = gr.choose_ell_for_diameter(k)
        assert spec.cos_l.value.is_rational
        assert gr.diameter(spec)[0] == k
        c = spec.cos_l.value
        assert chebyshev_T(k, c).sign() <= 0 < chebyshev_T(k - 1, c).sign()
        assert not gr.validate_spec(spec)["apex_angle_rational"]
    with pytest.raises(OutOfRangeError):
        gr.choose_ell_for_diameter(2)


def test_choose_ell_cancellation():
    from rotagraph.errors import SearchExhaustedError
    with pytest.raises(SearchExhaustedError):
        gr.choose_ell_for_diameter(5, should_stop=lambda: True)
