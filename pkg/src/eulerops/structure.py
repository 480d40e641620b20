"""Structural checks: jets, derivations, commutator certificates, morphisms.

This module packages the constructive content behind the algebra's
structure theory as executable witnesses:

* jet vanishing and the factorization of a function with vanishing l-jet
  into sums of (l+1)-fold products vanishing at the point;
* extension of a derivation (given on generators) to a unique first-order
  operator with no order-0 part;
* infinitesimal-automorphism detection for derivations (commuting with the
  Euler field);
* certificates expressing any fiberwise polynomial as a sum of commutators
  of first-order operators with multiplication operators;
* substitution morphisms of the function algebra with filtration and
  graded-part analysis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import JetNotZeroError, ModelMismatchError, NotFilteredError
from .operators import DiffOp, euler_field
from .poly import (
    BundleModel,
    FiberPoly,
    Point,
    term_order_key,
    weight_monomials,
)

# ---------------------------------------------------------------------------
# jets


@dataclass(frozen=True)
class JetSpec:
    """A point of the total space together with a jet order."""

    point: Point
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("jet order must be a natural number")


def jet_is_zero(u: FiberPoly, spec: JetSpec) -> bool:
    """True iff all partials of total order <= spec.order vanish at the point.

    Equivalently: the Taylor expansion of u at the point has no terms of
    total degree <= spec.order.
    """
    spec.point.check(u.model)
    shifted = u.shift(spec.point)
    return all(sum(base) + sum(fiber) > spec.order for base, fiber in shifted.terms)


def jet_factorize(u: FiberPoly, spec: JetSpec) -> list[tuple[FiberPoly, ...]]:
    """Write u as a sum of (order+1)-fold products of functions vanishing at the point.

    Taylor-shift to the point, split each surviving monomial (all of degree
    >= order+1) greedily left-to-right into order+1 shifted-variable
    factors, carry the coefficient on the first factor, and shift back.
    """
    if not jet_is_zero(u, spec):
        raise JetNotZeroError(f"jet of order {spec.order} does not vanish for {u}")
    model = u.model
    shifted = u.shift(spec.point)
    back = -spec.point
    generators = [model.x(i) for i in range(model.m)] + [model.xi(j) for j in range(model.n)]
    tuples = []
    for (base, fiber), coeff in sorted(
        shifted.terms.items(), key=lambda kv: term_order_key(kv[0]), reverse=True
    ):
        variables = []
        for idx, e in enumerate(base + fiber):
            variables.extend([generators[idx]] * e)
        parts = spec.order + 1
        factors = list(variables[: parts - 1])
        rest = model.one()
        for v in variables[parts - 1:]:
            rest = rest * v
        factors.append(rest)
        factors[0] = factors[0] * coeff
        tuples.append(tuple(f.shift(back) for f in factors))
    return tuples


# ---------------------------------------------------------------------------
# derivations


class Derivation:
    """A derivation of the function algebra, given by its generator images."""

    __slots__ = ("model", "base_images", "fiber_images")

    def __init__(self, model: BundleModel, base_images, fiber_images):
        base_images = tuple(base_images)
        fiber_images = tuple(fiber_images)
        if len(base_images) != model.m or len(fiber_images) != model.n:
            raise ModelMismatchError(
                f"{len(base_images)} base and {len(fiber_images)} fiber images given, "
                f"model needs {model.m} and {model.n}"
            )
        for img in base_images + fiber_images:
            if img.model != model:
                raise ModelMismatchError("generator image over a different model")
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "base_images", base_images)
        object.__setattr__(self, "fiber_images", fiber_images)

    def __setattr__(self, name, value):
        raise AttributeError("Derivation is immutable")

    @classmethod
    def zero(cls, model: BundleModel) -> "Derivation":
        return cls(model, [model.zero()] * model.m, [model.zero()] * model.n)

    def extend(self) -> DiffOp:
        """The unique first-order operator with no order-0 part agreeing on generators."""
        model = self.model
        terms = {}
        for i, img in enumerate(self.base_images):
            if img:
                alpha = tuple(1 if k == i else 0 for k in range(model.m))
                terms[(alpha, (0,) * model.n)] = img
        for j, img in enumerate(self.fiber_images):
            if img:
                beta = tuple(1 if k == j else 0 for k in range(model.n))
                terms[((0,) * model.m, beta)] = img
        return DiffOp(model, terms)

    def weight_zero_images(self) -> bool:
        """Generator-level weight condition: D(x_i) in weight 0, D(xi_j) in weight 1."""
        for img in self.base_images:
            if img and set(img.weight_split()) != {0}:
                return False
        for img in self.fiber_images:
            if img and set(img.weight_split()) != {1}:
                return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return (
            self.model == other.model
            and self.base_images == other.base_images
            and self.fiber_images == other.fiber_images
        )

    __hash__ = None

    def __repr__(self) -> str:
        images = [f"x{i+1} -> {img}" for i, img in enumerate(self.base_images)]
        images += [f"xi{j+1} -> {img}" for j, img in enumerate(self.fiber_images)]
        return "Derivation(" + "; ".join(images) + ")"


def extend_derivation(d: Derivation) -> DiffOp:
    return d.extend()


def is_infinitesimal_automorphism(d: Derivation) -> bool:
    """True iff the extended operator commutes with the Euler field."""
    extended = d.extend()
    return not euler_field(d.model).bracket(extended)


# ---------------------------------------------------------------------------
# non-singularity certificates


@dataclass(frozen=True)
class NonSingularityCertificate:
    """Pairs (D_i, v_i) with sum_i [D_i, mult(v_i)] equal to mult(target)."""

    target: FiberPoly
    pairs: tuple[tuple[DiffOp, FiberPoly], ...]

    def verify(self) -> bool:
        """Exact operator identity check."""
        model = self.target.model
        total = DiffOp.zero(model)
        for op, v in self.pairs:
            total = total + op.bracket(DiffOp.multiplication(v))
        return total == DiffOp.multiplication(self.target)

    def first_order(self) -> bool:
        """Every certificate operator lies in the first-order subalgebra."""
        return all((op.order() or 0) <= 1 for op, _ in self.pairs)


def non_singularity_witness(u: FiberPoly) -> NonSingularityCertificate:
    """Express u as a sum of commutators of first-order operators with multiplications.

    The weight-0 part (a polynomial in x alone) pairs the x1-derivative
    with an x1-antiderivative; each weight-k part with k >= 1 pairs the
    Euler field scaled by 1/k with the part itself.
    """
    model = u.model
    parts = u.weight_split()
    pairs = []
    if 0 in parts:
        pairs.append((DiffOp.d_x(model, 0), parts[0].antiderivative_x(0)))
    euler = euler_field(model)
    for weight, part in parts.items():
        if weight >= 1:
            pairs.append((euler.scale(Fraction(1, weight)), part))
    return NonSingularityCertificate(u, tuple(pairs))


# ---------------------------------------------------------------------------
# substitution morphisms


class AlgebraMorphism:
    """Unital algebra endomorphism given by generator images.

    The polynomial model of the function algebra is free on its generators,
    so any choice of images determines a homomorphism by substitution.
    When an inverse is supplied it is validated exactly: round trips on
    every generator must return that generator.
    """

    __slots__ = ("model", "base_images", "fiber_images", "inverse")

    def __init__(self, model: BundleModel, base_images, fiber_images, inverse=None):
        base_images = tuple(base_images)
        fiber_images = tuple(fiber_images)
        if len(base_images) != model.m or len(fiber_images) != model.n:
            raise ModelMismatchError(
                f"{len(base_images)} base and {len(fiber_images)} fiber images given, "
                f"model needs {model.m} and {model.n}"
            )
        for img in base_images + fiber_images:
            if img.model != model:
                raise ModelMismatchError("generator image over a different model")
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "base_images", base_images)
        object.__setattr__(self, "fiber_images", fiber_images)
        object.__setattr__(self, "inverse", inverse)
        if inverse is not None:
            generators = [model.x(i) for i in range(model.m)]
            generators += [model.xi(j) for j in range(model.n)]
            for g in generators:
                if inverse.apply(self.apply(g)) != g or self.apply(inverse.apply(g)) != g:
                    raise ValueError(f"supplied inverse does not invert on generator {g}")

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraMorphism is immutable")

    @classmethod
    def identity(cls, model: BundleModel) -> "AlgebraMorphism":
        base = [model.x(i) for i in range(model.m)]
        fiber = [model.xi(j) for j in range(model.n)]
        ident = cls(model, base, fiber)
        return cls(model, base, fiber, inverse=ident)

    def apply(self, u: FiberPoly) -> FiberPoly:
        if u.model != self.model:
            raise ModelMismatchError("argument over a different model")
        return u.substitute(list(self.base_images), list(self.fiber_images))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraMorphism):
            return NotImplemented
        return (
            self.model == other.model
            and self.base_images == other.base_images
            and self.fiber_images == other.fiber_images
        )

    __hash__ = None

    def __repr__(self) -> str:
        images = [f"x{i+1} -> {img}" for i, img in enumerate(self.base_images)]
        images += [f"xi{j+1} -> {img}" for j, img in enumerate(self.fiber_images)]
        return "AlgebraMorphism(" + "; ".join(images) + ")"


def morphism_apply(psi: AlgebraMorphism, u: FiberPoly) -> FiberPoly:
    return psi.apply(u)


def is_filtered(psi: AlgebraMorphism, kmax: int, x_degree_bound: int = 4) -> bool:
    """Images of weight-k basis monomials stay at xi-degree <= k, for all k <= kmax."""
    for k in range(kmax + 1):
        for mono in weight_monomials(psi.model, k, x_degree_bound):
            image = psi.apply(mono)
            degree = image.fiber_degree()
            if degree is not None and degree > k:
                return False
    return True


def preserves_degree_zero(psi: AlgebraMorphism, degree_bound: int = 4) -> bool:
    """Images of weight-0 basis monomials (x-degree <= bound) stay at weight 0."""
    for mono in weight_monomials(psi.model, 0, degree_bound):
        image = psi.apply(mono)
        degree = image.fiber_degree()
        if degree is not None and degree > 0:
            return False
    return True


def graded_part(psi: AlgebraMorphism, x_degree_bound: int = 4) -> AlgebraMorphism:
    """Weight-preserving part of a filtered invertible morphism.

    Generator images are the weight-0 projections of the base images and
    the weight-1 projections of the fiber images; on any homogeneous input
    of weight k the result agrees with the weight-k projection of the
    original image.  The inverse is the graded part of the inverse.
    """
    if psi.inverse is None:
        raise ValueError("graded part needs a morphism with a supplied inverse")
    if not is_filtered(psi, 1, x_degree_bound):
        raise NotFilteredError("morphism is not filtered; graded part undefined")
    inv = psi.inverse
    inv_graded = AlgebraMorphism(
        psi.model,
        [img.weight_part(0) for img in inv.base_images],
        [img.weight_part(1) for img in inv.fiber_images],
    )
    return AlgebraMorphism(
        psi.model,
        [img.weight_part(0) for img in psi.base_images],
        [img.weight_part(1) for img in psi.fiber_images],
        inverse=inv_graded,
    )
