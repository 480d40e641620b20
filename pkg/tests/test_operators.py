"""Tests for normal-ordered operators: action, composition, bracket, grading."""

import random
from fractions import Fraction

import pytest

from eulerops import (
    BundleModel,
    DiffOp,
    ModelMismatchError,
    bracket,
    euler_field,
    lie_derivative,
    multiplication_operator,
)
from eulerops.poly import FiberPoly, monomial_keys_up_to_degree
from eulerops.suites import (
    random_homogeneous_operator,
    random_homogeneous_poly,
    random_nonzero_operator,
    random_operator,
    random_poly,
)

M11 = BundleModel(1, 1)
M12 = BundleModel(1, 2)
M22 = BundleModel(2, 2)


def monomials(model, max_degree):
    return [FiberPoly.monomial(model, b, f) for b, f in monomial_keys_up_to_degree(model, max_degree)]


# ---------------------------------------------------------------------------
# application


def test_apply_single_derivative():
    assert DiffOp.d_xi(M11, 0).apply(M11.xi(0) ** 2) == 2 * M11.xi(0)


def test_euler_field_acts_by_weight():
    rng = random.Random(3001)
    euler = euler_field(M22)
    for _ in range(50):
        w = rng.randint(0, 4)
        u = random_homogeneous_poly(rng, M22, w)
        assert euler.apply(u) == u * w


def test_apply_mixed_operator_against_partial_composition():
    x1, xi1, xi2 = M12.x(0), M12.xi(0), M12.xi(1)
    op = multiplication_operator(x1).compose(DiffOp.d_x(M12, 0)).compose(DiffOp.d_xi(M12, 0))
    u = x1 * xi1**2 + xi2
    # oracle: x1 * d/dx1(d/dxi1(u)) through polynomial partials alone
    expected = x1 * u.diff_xi(0).diff_x(0)
    assert op.apply(u) == expected
    assert expected == 2 * x1 * xi1


def test_apply_is_linear():
    rng = random.Random(3002)
    for _ in range(30):
        op = random_operator(rng, M22)
        u = random_poly(rng, M22)
        v = random_poly(rng, M22)
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        assert op.apply(u + v) == op.apply(u) + op.apply(v)
        assert op.apply(u * c) == op.apply(u) * c


def test_multiplication_operator_action():
    rng = random.Random(3003)
    for _ in range(30):
        u = random_poly(rng, M22)
        v = random_poly(rng, M22)
        assert multiplication_operator(u).apply(v) == u * v


def test_homogeneous_action_shifts_weight():
    rng = random.Random(3004)
    for _ in range(50):
        op, mu = random_homogeneous_operator(rng, M22)
        lam = rng.randint(0, 3)
        u = random_homogeneous_poly(rng, M22, lam)
        image = op.apply(u)
        if image:
            assert set(image.weight_split()) == {lam + mu}


def test_apply_model_mismatch():
    with pytest.raises(ModelMismatchError):
        euler_field(M11).apply(M22.x(0))


# ---------------------------------------------------------------------------
# composition


def test_compose_leibniz_single_variable():
    d1 = DiffOp.d_x(M11, 0)
    gamma = multiplication_operator(M11.x(0))
    assert d1.compose(gamma) == gamma.compose(d1) + DiffOp.identity(M11)


def test_compose_multiplication_operators():
    rng = random.Random(3005)
    for _ in range(30):
        u = random_poly(rng, M22)
        v = random_poly(rng, M22)
        assert multiplication_operator(u).compose(multiplication_operator(v)) == multiplication_operator(u * v)


def test_compose_euler_term_squared():
    ed = multiplication_operator(M11.xi(0)).compose(DiffOp.d_xi(M11, 0))
    composed = ed.compose(ed)
    expected = DiffOp(
        M11,
        {
            ((0,), (2,)): M11.xi(0) ** 2,
            ((0,), (1,)): M11.xi(0),
        },
    )
    # oracle: agreement on every monomial of total degree <= 4
    for u in monomials(M11, 4):
        assert composed.apply(u) == ed.apply(ed.apply(u))
        assert expected.apply(u) == ed.apply(ed.apply(u))
    assert composed == expected


def test_compose_agrees_with_double_application():
    rng = random.Random(3006)
    basis = monomials(M22, 5)
    for _ in range(25):
        d = random_operator(rng, M22)
        t = random_operator(rng, M22)
        composed = d.compose(t)
        for u in basis:
            assert composed.apply(u) == d.apply(t.apply(u))


def test_composition_order_adds():
    rng = random.Random(3007)
    for _ in range(100):
        d = random_nonzero_operator(rng, M22)
        t = random_nonzero_operator(rng, M22)
        assert d.compose(t).order() == d.order() + t.order()


# ---------------------------------------------------------------------------
# bracket


def test_bracket_antisymmetry_on_self():
    rng = random.Random(3008)
    for _ in range(20):
        t = random_operator(rng, M22)
        assert not t.bracket(t)


def test_canonical_commutation():
    d1 = DiffOp.d_x(M11, 0)
    gamma = multiplication_operator(M11.x(0))
    assert d1.bracket(gamma) == DiffOp.identity(M11)


def test_euler_bracket_with_itself_vanishes():
    euler = euler_field(M22)
    assert not euler.bracket(euler)


def test_bracket_order_drops():
    rng = random.Random(3009)
    for _ in range(100):
        d = random_nonzero_operator(rng, M22)
        t = random_nonzero_operator(rng, M22)
        br = d.bracket(t)
        order = br.order()
        assert order is None or order <= d.order() + t.order() - 1


def test_bracket_of_homogeneous_is_homogeneous():
    rng = random.Random(3010)
    for _ in range(100):
        t1, w1 = random_homogeneous_operator(rng, M22)
        t2, w2 = random_homogeneous_operator(rng, M22)
        br = t1.bracket(t2)
        assert (not br) or br.homogeneous_weight() == w1 + w2


def test_jacobi_identity():
    rng = random.Random(3011)
    for _ in range(30):
        a = random_operator(rng, M22, max_order=2)
        b = random_operator(rng, M22, max_order=2)
        c = random_operator(rng, M22, max_order=2)
        total = (
            a.bracket(b.bracket(c)) + b.bracket(c.bracket(a)) + c.bracket(a.bracket(b))
        )
        assert not total


# ---------------------------------------------------------------------------
# Euler field and Lie derivative


def test_euler_field_rank_one():
    expected = multiplication_operator(M11.xi(0)).compose(DiffOp.d_xi(M11, 0))
    assert euler_field(M11) == expected
    assert str(euler_field(M11)) == "xi1*d/dxi1"


def test_euler_annihilates_constants():
    assert not euler_field(M22).apply(M22.one())


def test_euler_on_weight_two_monomial():
    u = M22.xi(0) * M22.xi(1)
    assert euler_field(M22).apply(u) == 2 * u


def test_lie_derivative_of_fiber_derivative():
    d = DiffOp.d_xi(M22, 0)
    assert lie_derivative(d) == d.scale(-1)


def test_lie_derivative_of_fiber_derivative_block():
    # iterated fiber derivatives scale by minus the block size
    op = DiffOp(M22, {((0, 0), (2, 1)): M22.one()})
    assert lie_derivative(op) == op.scale(-3)


def test_lie_derivative_of_multiplication_by_homogeneous():
    rng = random.Random(3012)
    basis = monomials(M22, 4)
    for _ in range(20):
        w = rng.randint(0, 3)
        u = random_homogeneous_poly(rng, M22, w)
        derived = lie_derivative(multiplication_operator(u))
        expected = multiplication_operator(u).scale(w)
        for v in basis:
            assert derived.apply(v) == expected.apply(v)
        assert derived == expected


# ---------------------------------------------------------------------------
# weight decomposition, order, homogeneity


def test_weight_decompose_euler():
    euler = euler_field(M22)
    assert euler.weight_decompose() == {0: euler}


def test_weight_decompose_fiber_derivative():
    d = DiffOp.d_xi(M22, 0)
    assert d.weight_decompose() == {-1: d}


def test_weight_decompose_three_parts():
    x1, xi1 = M22.x(0), M22.xi(0)
    op = (
        multiplication_operator(x1).compose(DiffOp.d_x(M22, 0))
        + multiplication_operator(xi1**2).compose(DiffOp.d_xi(M22, 1))
        + DiffOp.d_xi(M22, 0)
    )
    parts = op.weight_decompose()
    assert set(parts) == {-1, 0, 1}
    assert parts[0] == multiplication_operator(x1).compose(DiffOp.d_x(M22, 0))
    assert parts[1] == multiplication_operator(xi1**2).compose(DiffOp.d_xi(M22, 1))
    assert parts[-1] == DiffOp.d_xi(M22, 0)
    euler = euler_field(M22)
    for w, part in parts.items():
        assert euler.bracket(part) == part.scale(w)


def test_weight_decompose_eigen_consistency_random():
    rng = random.Random(3013)
    euler = euler_field(M22)
    for _ in range(50):
        t = random_operator(rng, M22)
        parts = t.weight_decompose()
        total = DiffOp.zero(M22)
        for w, part in parts.items():
            assert euler.bracket(part) == part.scale(w)
            total = total + part
        assert total == t


def test_homogeneous_coefficient_weight_law():
    rng = random.Random(3014)
    for _ in range(50):
        t, w = random_homogeneous_operator(rng, M22)
        assert t.homogeneous_weight() == w
        for (alpha, beta), coeff in t.terms.items():
            assert coeff.homogeneous_weight() == w + sum(beta)


def test_order_values():
    assert multiplication_operator(M22.x(0)).order() == 0
    assert euler_field(M22).order() == 1
    mixed = multiplication_operator(M22.x(0)).compose(DiffOp.d_x(M22, 0)).compose(
        DiffOp.d_xi(M22, 1)
    ) + DiffOp.d_x(M22, 0)
    assert mixed.order() == 2
    assert DiffOp.zero(M22).order() is None


def test_homogeneous_weight_examples():
    assert euler_field(M22).homogeneous_weight() == 0
    op = multiplication_operator(M22.xi(0)).compose(DiffOp.d_x(M22, 0))
    assert op.homogeneous_weight() == 1
    euler = euler_field(M22)
    assert euler.bracket(op) == op  # eigenvector check, eigenvalue 1
    mixed = DiffOp.d_x(M22, 0) + DiffOp.d_xi(M22, 0)
    assert mixed.homogeneous_weight() is None
    assert DiffOp.zero(M22).homogeneous_weight() is None


def test_multiplication_operators_commute():
    rng = random.Random(3015)
    for _ in range(20):
        u = random_poly(rng, M22)
        v = random_poly(rng, M22)
        assert not multiplication_operator(u).bracket(multiplication_operator(v))


def test_operator_rendering_round_flavor():
    op = multiplication_operator(M11.x(0)).compose(DiffOp.d_x(M11, 0)) + DiffOp.identity(M11)
    assert str(op) == "x1*d/dx1 + 1"
    assert str(DiffOp.zero(M11)) == "0"
    assert str(DiffOp.d_xi(M11, 0).scale(-1)) == "-1*d/dxi1"
