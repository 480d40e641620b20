"""Tests for exact fiberwise polynomial arithmetic and the Euler grading."""

import random
from fractions import Fraction

import pytest

from eulerops import BundleModel, ModelMismatchError, Point, euler_field
from eulerops.suites import random_fraction, random_homogeneous_poly, random_point, random_poly

M11 = BundleModel(1, 1)
M12 = BundleModel(1, 2)
M22 = BundleModel(2, 2)


# ---------------------------------------------------------------------------
# independent oracles


def convolve_terms(a: dict, b: dict) -> dict:
    """Naive dict convolution of term maps, independent of FiberPoly.__mul__."""
    out = {}
    for (b1, f1), c1 in a.items():
        for (b2, f2), c2 in b.items():
            key = (tuple(x + y for x, y in zip(b1, b2)), tuple(x + y for x, y in zip(f1, f2)))
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    return {k: c for k, c in out.items() if c}


def lagrange_derivative_weights(nodes: list[int]) -> list[Fraction]:
    """Exact weights w_k with g'(0) = sum w_k g(nodes[k]) for deg(g) <= len(nodes)-1."""
    weights = []
    for k, xk in enumerate(nodes):
        denom = 1
        for j, xj in enumerate(nodes):
            if j != k:
                denom *= xk - xj
        num = Fraction(0)
        for i in range(len(nodes)):
            if i == k:
                continue
            prod = Fraction(1)
            for j, xj in enumerate(nodes):
                if j not in (i, k):
                    prod *= -xj
            num += prod
        weights.append(Fraction(num, denom))
    return weights


def derivative_at_point(u, point: Point, family: str, index: int) -> Fraction:
    """Finite-difference derivative through evaluations only."""
    degree = u.total_degree() or 0
    nodes = list(range(degree + 1))
    weights = lagrange_derivative_weights(nodes)
    total = Fraction(0)
    for node, w in zip(nodes, weights):
        if family == "x":
            base = tuple(c + node if i == index else c for i, c in enumerate(point.base))
            shifted = Point(base, point.fiber)
        else:
            fiber = tuple(c + node if j == index else c for j, c in enumerate(point.fiber))
            shifted = Point(point.base, fiber)
        total += w * u.evaluate(shifted)
    return total


# ---------------------------------------------------------------------------
# multiplication


def test_unit_law():
    u = M22.x(0) ** 2 + 3 * M22.xi(1)
    assert M22.one() * u == u
    assert u * M22.one() == u


def test_monomial_product():
    xi1 = M11.xi(0)
    assert xi1 * xi1 == xi1**2


def test_difference_of_squares_against_convolution_oracle():
    x1, xi1 = M12.x(0), M12.xi(0)
    product = (x1 + xi1) * (x1 - xi1)
    expected_terms = convolve_terms(dict((x1 + xi1).terms), dict((x1 - xi1).terms))
    assert dict(product.terms) == expected_terms
    assert product == x1**2 - xi1**2


def test_product_ring_axioms_random():
    rng = random.Random(2001)
    for _ in range(50):
        u = random_poly(rng, M22)
        v = random_poly(rng, M22)
        w = random_poly(rng, M22)
        assert u * v == v * u
        assert (u * v) * w == u * (v * w)
        assert u * (v + w) == u * v + u * w


def test_product_weight_additivity():
    rng = random.Random(2002)
    for _ in range(100):
        wu, wv = rng.randint(0, 3), rng.randint(0, 3)
        u = random_homogeneous_poly(rng, M22, wu)
        v = random_homogeneous_poly(rng, M22, wv)
        product = u * v
        if product:
            assert set(product.weight_split()) == {wu + wv}


def test_model_mismatch_rejected():
    with pytest.raises(ModelMismatchError):
        M11.x(0) * M22.x(0)
    with pytest.raises(ModelMismatchError):
        M11.x(0) + M12.x(0)


# ---------------------------------------------------------------------------
# differentiation


def test_power_rule():
    xi1 = M11.xi(0)
    assert (xi1**2).diff_xi(0) == 2 * xi1


def test_independent_variables():
    assert M12.xi(1).diff_x(0) == M12.zero()


def test_partial_matches_finite_difference_oracle():
    x1, xi1, xi2 = M12.x(0), M12.xi(0), M12.xi(1)
    u = x1 * xi2**3 + xi1
    expected = 3 * x1 * xi2**2
    assert u.diff_xi(1) == expected
    rng = random.Random(2003)
    for _ in range(20):
        point = random_point(rng, M12)
        assert u.diff_xi(1).evaluate(point) == derivative_at_point(u, point, "xi", 1)


def test_random_partials_match_finite_differences():
    rng = random.Random(2004)
    for _ in range(25):
        u = random_poly(rng, M22)
        point = random_point(rng, M22)
        i = rng.randrange(M22.m)
        j = rng.randrange(M22.n)
        assert u.diff_x(i).evaluate(point) == derivative_at_point(u, point, "x", i)
        assert u.diff_xi(j).evaluate(point) == derivative_at_point(u, point, "xi", j)


def test_leibniz_rule_random():
    rng = random.Random(2005)
    for _ in range(200):
        u = random_poly(rng, M22, terms=2)
        v = random_poly(rng, M22, terms=2)
        for op in (lambda w: w.diff_x(0), lambda w: w.diff_xi(1)):
            assert op(u * v) == op(u) * v + u * op(v)


def test_fiber_partial_lowers_weight_by_one():
    rng = random.Random(2006)
    for _ in range(50):
        u = random_homogeneous_poly(rng, M22, rng.randint(1, 3))
        d = u.diff_xi(rng.randrange(M22.n))
        if d:
            assert d.homogeneous_weight() == u.homogeneous_weight() - 1


def test_partial_index_out_of_range():
    with pytest.raises(IndexError):
        M11.x(0).diff_x(1)
    with pytest.raises(IndexError):
        M11.x(0).diff_xi(5)


# ---------------------------------------------------------------------------
# evaluation


def test_evaluate_unit():
    point = Point.of([2], [3])
    assert M11.one().evaluate(point) == 1


def test_evaluate_linear():
    u = M11.x(0) + M11.xi(0)
    assert u.evaluate(Point.of([2], [3])) == 5


def test_evaluate_substitute_and_reduce():
    u = M12.x(0) ** 2 * M12.xi(1)
    assert u.evaluate(Point.of([Fraction(1, 2)], [0, 4])) == 1


def test_evaluate_is_ring_homomorphism():
    rng = random.Random(2007)
    for _ in range(50):
        u = random_poly(rng, M22)
        v = random_poly(rng, M22)
        point = random_point(rng, M22)
        assert (u * v).evaluate(point) == u.evaluate(point) * v.evaluate(point)
        assert (u + v).evaluate(point) == u.evaluate(point) + v.evaluate(point)


def test_evaluate_dimension_mismatch():
    with pytest.raises(ModelMismatchError):
        M22.x(0).evaluate(Point.of([1], [1]))


# ---------------------------------------------------------------------------
# weight splitting


def test_weight_split_by_fiber_degree():
    u = M22.xi(0) * M22.xi(1) + M22.x(0)
    parts = u.weight_split()
    assert set(parts) == {0, 2}
    assert parts[2] == M22.xi(0) * M22.xi(1)
    assert parts[0] == M22.x(0)


def test_weight_split_of_zero_is_empty():
    assert M22.zero().weight_split() == {}


def test_weight_split_components_are_euler_eigenvectors():
    u = (M12.x(0) + M12.xi(0)) ** 3
    euler = euler_field(M12)
    parts = u.weight_split()
    assert set(parts) == {0, 1, 2, 3}
    for weight, part in parts.items():
        assert euler.apply(part) == part * weight


def test_weight_split_reconstructs_input():
    rng = random.Random(2008)
    for _ in range(50):
        u = random_poly(rng, M22, terms=4)
        total = M22.zero()
        for part in u.weight_split().values():
            total = total + part
        assert total == u


# ---------------------------------------------------------------------------
# rendering and misc


def test_canonical_rendering():
    u = Fraction(3, 2) * M12.x(0) ** 2 * M12.xi(0)
    assert str(u) == "3/2*x1^2*xi1"
    assert str(M12.zero()) == "0"
    assert str(M12.const(-1)) == "-1"
    assert str(M12.x(0) ** 2 - M12.xi(1)) == "x1^2 - xi2"


def test_rendering_orders_terms_by_graded_lex():
    u = M22.x(0) + M22.xi(0) ** 2 + 1
    assert str(u) == "xi1^2 + x1 + 1"


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        M11.const(0.5)


def test_antiderivative_inverts_partial():
    rng = random.Random(2009)
    for _ in range(30):
        u = random_poly(rng, M22)
        assert u.antiderivative_x(0).diff_x(0) == u


def test_shift_round_trip():
    rng = random.Random(2010)
    for _ in range(20):
        u = random_poly(rng, M22)
        point = random_point(rng, M22)
        assert u.shift(point).shift(-point) == u
