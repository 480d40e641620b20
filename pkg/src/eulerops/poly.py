"""Fiberwise polynomial functions on a trivial vector bundle.

The bundle is R^m x R^n -> R^m in a single chart, with base coordinates
x1..xm and fiber coordinates xi1..xin.  A :class:`FiberPoly` is a sparse
polynomial in all m+n variables with exact rational coefficients, graded
by total fiber degree (the Euler weight): the weight-k part collects the
terms of xi-degree exactly k.

All values are immutable; every operation returns a new object.  There is
no floating point anywhere in this module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import perm

from ._render import join_terms, monomial_factors, term_body
from .errors import ModelMismatchError

Exponents = tuple[int, ...]
TermKey = tuple[Exponents, Exponents]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    """Coerce int/Fraction/'p/q' string to Fraction; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"exact rational expected, got {type(value).__name__}")


@dataclass(frozen=True)
class BundleModel:
    """Dimensions of the trivial bundle: base dimension m, fiber rank n.

    The rank-sensitive structural statements elsewhere in the package are
    only claimed for n > 1; n = 1 models are still valid values here.
    """

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"base dimension and fiber rank must be >= 1, got {self.m}, {self.n}")

    def x(self, i: int) -> "FiberPoly":
        """Base coordinate function x{i+1} (indices are 0-based)."""
        if not 0 <= i < self.m:
            raise IndexError(f"base index {i} out of range for m={self.m}")
        exps = tuple(1 if k == i else 0 for k in range(self.m))
        return FiberPoly(self, {(exps, (0,) * self.n): ONE})

    def xi(self, j: int) -> "FiberPoly":
        """Fiber coordinate function xi{j+1} (indices are 0-based)."""
        if not 0 <= j < self.n:
            raise IndexError(f"fiber index {j} out of range for n={self.n}")
        exps = tuple(1 if k == j else 0 for k in range(self.n))
        return FiberPoly(self, {((0,) * self.m, exps): ONE})

    def const(self, value) -> "FiberPoly":
        return FiberPoly(self, {((0,) * self.m, (0,) * self.n): as_fraction(value)})

    def zero(self) -> "FiberPoly":
        return FiberPoly(self, {})

    def one(self) -> "FiberPoly":
        return self.const(1)

    def base_names(self) -> list[str]:
        return [f"x{i + 1}" for i in range(self.m)]

    def fiber_names(self) -> list[str]:
        return [f"xi{j + 1}" for j in range(self.n)]


@dataclass(frozen=True)
class Point:
    """A point of the total space with exact rational coordinates."""

    base: tuple[Fraction, ...]
    fiber: tuple[Fraction, ...]

    @classmethod
    def of(cls, base=(), fiber=()) -> "Point":
        return cls(tuple(as_fraction(c) for c in base), tuple(as_fraction(c) for c in fiber))

    @classmethod
    def origin(cls, model: BundleModel) -> "Point":
        return cls((ZERO,) * model.m, (ZERO,) * model.n)

    def check(self, model: BundleModel) -> None:
        if len(self.base) != model.m or len(self.fiber) != model.n:
            raise ModelMismatchError(
                f"point has dimensions ({len(self.base)}, {len(self.fiber)}), "
                f"model is ({model.m}, {model.n})"
            )

    def __neg__(self) -> "Point":
        return Point(tuple(-c for c in self.base), tuple(-c for c in self.fiber))


def term_order_key(key: TermKey):
    """Canonical order: graded-lex on the concatenated exponent vector."""
    cat = key[0] + key[1]
    return (sum(cat), cat)


def _check_same_model(a, b) -> None:
    if a.model != b.model:
        raise ModelMismatchError(f"operands over different models {a.model} and {b.model}")


class FiberPoly:
    """Sparse exact polynomial in base and fiber variables.

    Terms map (base exponents, fiber exponents) to nonzero Fractions.
    Equality is structural; the canonical iteration order (descending
    graded-lex on the concatenated exponents) fixes rendering and
    serialization.
    """

    __slots__ = ("model", "terms")

    def __init__(self, model: BundleModel, terms: dict[TermKey, Fraction] | None = None):
        clean: dict[TermKey, Fraction] = {}
        if terms:
            for (base, fiber), coeff in terms.items():
                if len(base) != model.m or len(fiber) != model.n:
                    raise ModelMismatchError(
                        f"term exponents ({len(base)}, {len(fiber)}) do not match model "
                        f"({model.m}, {model.n})"
                    )
                c = as_fraction(coeff)
                if c:
                    clean[(tuple(base), tuple(fiber))] = c
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("FiberPoly is immutable")

    @classmethod
    def monomial(cls, model: BundleModel, base: Exponents, fiber: Exponents, coeff=1) -> "FiberPoly":
        return cls(model, {(tuple(base), tuple(fiber)): as_fraction(coeff)})

    # -- ring structure ------------------------------------------------

    def _coerce(self, other) -> "FiberPoly":
        if isinstance(other, FiberPoly):
            _check_same_model(self, other)
            return other
        return self.model.const(other)

    def __add__(self, other) -> "FiberPoly":
        other = self._coerce(other)
        res = dict(self.terms)
        for key, c in other.terms.items():
            s = res.get(key, ZERO) + c
            if s:
                res[key] = s
            else:
                res.pop(key, None)
        return FiberPoly(self.model, res)

    __radd__ = __add__

    def __neg__(self) -> "FiberPoly":
        return FiberPoly(self.model, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "FiberPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "FiberPoly":
        return (-self) + other

    def __mul__(self, other) -> "FiberPoly":
        if not isinstance(other, FiberPoly):
            c = as_fraction(other)
            return FiberPoly(self.model, {k: c * v for k, v in self.terms.items()})
        _check_same_model(self, other)
        res: dict[TermKey, Fraction] = {}
        for (b1, f1), c1 in self.terms.items():
            for (b2, f2), c2 in other.terms.items():
                key = (
                    tuple(a + b for a, b in zip(b1, b2)),
                    tuple(a + b for a, b in zip(f1, f2)),
                )
                s = res.get(key, ZERO) + c1 * c2
                if s:
                    res[key] = s
                else:
                    res.pop(key, None)
        return FiberPoly(self.model, res)

    def __rmul__(self, other) -> "FiberPoly":
        return self * other

    def __truediv__(self, other) -> "FiberPoly":
        c = as_fraction(other)
        return self * (ONE / c)

    def __pow__(self, k: int) -> "FiberPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a natural number")
        out = self.model.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiberPoly):
            if isinstance(other, (int, Fraction)):
                return self == self.model.const(other)
            return NotImplemented
        return self.model == other.model and self.terms == other.terms

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- calculus ------------------------------------------------------

    def diff_x(self, i: int) -> "FiberPoly":
        """Partial derivative in the base variable x{i+1}."""
        if not 0 <= i < self.model.m:
            raise IndexError(f"base index {i} out of range for m={self.model.m}")
        res: dict[TermKey, Fraction] = {}
        for (base, fiber), c in self.terms.items():
            e = base[i]
            if e:
                key = (base[:i] + (e - 1,) + base[i + 1:], fiber)
                res[key] = res.get(key, ZERO) + c * e
        return FiberPoly(self.model, res)

    def diff_xi(self, j: int) -> "FiberPoly":
        """Partial derivative in the fiber variable xi{j+1}; drops weight by 1."""
        if not 0 <= j < self.model.n:
            raise IndexError(f"fiber index {j} out of range for n={self.model.n}")
        res: dict[TermKey, Fraction] = {}
        for (base, fiber), c in self.terms.items():
            e = fiber[j]
            if e:
                key = (base, fiber[:j] + (e - 1,) + fiber[j + 1:])
                res[key] = res.get(key, ZERO) + c * e
        return FiberPoly(self.model, res)

    def deriv(self, alpha: Exponents, beta: Exponents) -> "FiberPoly":
        """Iterated partial d^alpha/dx d^beta/dxi, computed term by term."""
        res: dict[TermKey, Fraction] = {}
        for (base, fiber), c in self.terms.items():
            if any(b < a for b, a in zip(base, alpha)) or any(f < b for f, b in zip(fiber, beta)):
                continue
            factor = 1
            for e, a in zip(base, alpha):
                factor *= perm(e, a)
            for e, b in zip(fiber, beta):
                factor *= perm(e, b)
            key = (
                tuple(e - a for e, a in zip(base, alpha)),
                tuple(e - b for e, b in zip(fiber, beta)),
            )
            s = res.get(key, ZERO) + c * factor
            if s:
                res[key] = s
            else:
                res.pop(key, None)
        return FiberPoly(self.model, res)

    def antiderivative_x(self, i: int) -> "FiberPoly":
        """x{i+1}-antiderivative with zero integration constant."""
        if not 0 <= i < self.model.m:
            raise IndexError(f"base index {i} out of range for m={self.model.m}")
        res = {}
        for (base, fiber), c in self.terms.items():
            e = base[i]
            res[(base[:i] + (e + 1,) + base[i + 1:], fiber)] = c / (e + 1)
        return FiberPoly(self.model, res)

    # -- evaluation and substitution ------------------------------------

    def evaluate(self, point: Point) -> Fraction:
        point.check(self.model)
        total = ZERO
        for (base, fiber), c in self.terms.items():
            v = c
            for coord, e in zip(point.base, base):
                if e:
                    v *= coord**e
            for coord, e in zip(point.fiber, fiber):
                if e:
                    v *= coord**e
            total += v
        return total

    def substitute(self, base_images: list["FiberPoly"], fiber_images: list["FiberPoly"]) -> "FiberPoly":
        """Image under the algebra endomorphism x_i -> base_images[i], xi_j -> fiber_images[j].

        Images may live over a different model; all of them must share one.
        """
        if len(base_images) != self.model.m or len(fiber_images) != self.model.n:
            raise ModelMismatchError(
                f"{len(base_images)} base and {len(fiber_images)} fiber images given, "
                f"model needs {self.model.m} and {self.model.n}"
            )
        images = list(base_images) + list(fiber_images)
        if not images:
            raise ModelMismatchError("empty image list")
        target = images[0].model
        for img in images:
            if img.model != target:
                raise ModelMismatchError("generator images over inconsistent models")
        # power tables, filled lazily up to the largest exponent used
        powers: list[list[FiberPoly]] = [[target.one()] for _ in images]

        def image_power(idx: int, e: int) -> FiberPoly:
            table = powers[idx]
            while len(table) <= e:
                table.append(table[-1] * images[idx])
            return table[e]

        out = target.zero()
        for (base, fiber), c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(base):
                if e:
                    term = term * image_power(i, e)
            for j, e in enumerate(fiber):
                if e:
                    term = term * image_power(self.model.m + j, e)
            out = out + term
        return out

    def shift(self, point: Point) -> "FiberPoly":
        """Substitute x -> x + point.base, xi -> xi + point.fiber."""
        point.check(self.model)
        base_images = [self.model.x(i) + point.base[i] for i in range(self.model.m)]
        fiber_images = [self.model.xi(j) + point.fiber[j] for j in range(self.model.n)]
        return self.substitute(base_images, fiber_images)

    # -- grading ---------------------------------------------------------

    def weight_split(self) -> dict[int, "FiberPoly"]:
        """Decompose into Euler-weight homogeneous parts; {} for the zero polynomial."""
        buckets: dict[int, dict[TermKey, Fraction]] = {}
        for key, c in self.terms.items():
            buckets.setdefault(sum(key[1]), {})[key] = c
        return {w: FiberPoly(self.model, t) for w, t in sorted(buckets.items())}

    def weight_part(self, weight: int) -> "FiberPoly":
        return FiberPoly(
            self.model, {k: c for k, c in self.terms.items() if sum(k[1]) == weight}
        )

    def homogeneous_weight(self) -> int | None:
        """The single Euler weight, or None if zero or mixed."""
        weights = {sum(k[1]) for k in self.terms}
        if len(weights) == 1:
            return weights.pop()
        return None

    def fiber_degree(self) -> int | None:
        """Max xi-degree over terms; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(k[1]) for k in self.terms)

    def base_degree(self) -> int | None:
        if not self.terms:
            return None
        return max(sum(k[0]) for k in self.terms)

    def total_degree(self) -> int | None:
        if not self.terms:
            return None
        return max(sum(k[0]) + sum(k[1]) for k in self.terms)

    def constant_coefficient(self) -> Fraction:
        return self.terms.get(((0,) * self.model.m, (0,) * self.model.n), ZERO)

    # -- presentation ----------------------------------------------------

    def sorted_terms(self) -> list[tuple[TermKey, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: term_order_key(kv[0]), reverse=True)

    def __str__(self) -> str:
        names_x = self.model.base_names()
        names_xi = self.model.fiber_names()
        rendered = []
        for (base, fiber), c in self.sorted_terms():
            factors = monomial_factors(names_x, base) + monomial_factors(names_xi, fiber)
            rendered.append((c < 0, term_body(abs(c), factors)))
        return join_terms(rendered)

    def __repr__(self) -> str:
        return f"FiberPoly({self.model.m},{self.model.n}: {self})"

    def to_records(self) -> list[dict]:
        """Term records in canonical order, coefficients as fraction strings."""
        return [
            {"x": list(base), "xi": list(fiber), "coeff": str(c)}
            for (base, fiber), c in self.sorted_terms()
        ]


def exponent_vectors(length: int, total: int):
    """All exponent tuples of given length summing to exactly `total`."""
    if length == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in exponent_vectors(length - 1, total - head):
            yield (head,) + rest


def weight_monomials(model: BundleModel, weight: int, max_base_degree: int):
    """Monomial basis of the weight-`weight` part with x-degree <= bound."""
    for d in range(max_base_degree + 1):
        for base in exponent_vectors(model.m, d):
            for fiber in exponent_vectors(model.n, weight):
                yield FiberPoly.monomial(model, base, fiber)


def monomial_keys_up_to_degree(model: BundleModel, max_total: int):
    """All term keys with total degree <= bound, in canonical order."""
    keys = []
    for total in range(max_total + 1):
        for cat in exponent_vectors(model.m + model.n, total):
            keys.append((cat[: model.m], cat[model.m:]))
    keys.sort(key=term_order_key)
    return keys
