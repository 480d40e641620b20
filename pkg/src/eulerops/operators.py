"""Normal-ordered differential operators acting on fiberwise polynomials.

An operator is a sparse sum of terms  f * d^alpha/dx * d^beta/dxi  with all
polynomial coefficients standing to the left of all derivatives.  The one
nontrivial algorithm is composition: commuting a derivative block past a
coefficient expands by the generalized Leibniz rule

    d_alpha o (f .) = sum over alpha' <= alpha of binom(alpha, alpha')
                      (d_alpha' f) d_{alpha - alpha'}

componentwise in x, and likewise in xi.  Everything is exact; operator
equality is structural equality of normal forms.

The Euler weight of a single normal-form term with a xi-homogeneous
coefficient of degree d and fiber-derivative multi-index beta is d - |beta|;
an operator is homogeneous when all its terms share one weight, and then
its commutator with the Euler field reproduces it scaled by that weight.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from ._render import join_terms, monomial_factors, power_factor, term_body
from .errors import ModelMismatchError
from .poly import (
    ONE,
    ZERO,
    BundleModel,
    Exponents,
    FiberPoly,
    as_fraction,
    term_order_key,
)

OpKey = tuple[Exponents, Exponents]


def _check_same_model(a, b) -> None:
    if a.model != b.model:
        raise ModelMismatchError(f"operands over different models {a.model} and {b.model}")


def _subindices(alpha: Exponents):
    """All multi-indices alpha' <= alpha, with the product of binomials."""
    for sub in itertools.product(*(range(a + 1) for a in alpha)):
        weight = 1
        for a, s in zip(alpha, sub):
            weight *= comb(a, s)
        yield sub, weight


class DiffOp:
    """Differential operator in normal form over a fixed bundle model.

    ``terms`` maps (alpha, beta) derivative multi-indices to nonzero
    FiberPoly coefficients.
    """

    __slots__ = ("model", "terms")

    def __init__(self, model: BundleModel, terms: dict[OpKey, FiberPoly] | None = None):
        clean: dict[OpKey, FiberPoly] = {}
        if terms:
            for (alpha, beta), coeff in terms.items():
                if len(alpha) != model.m or len(beta) != model.n:
                    raise ModelMismatchError(
                        f"derivative multi-indices ({len(alpha)}, {len(beta)}) do not match "
                        f"model ({model.m}, {model.n})"
                    )
                if coeff.model != model:
                    raise ModelMismatchError("coefficient over a different model")
                if coeff:
                    clean[(tuple(alpha), tuple(beta))] = coeff
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("DiffOp is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, model: BundleModel) -> "DiffOp":
        return cls(model, {})

    @classmethod
    def identity(cls, model: BundleModel) -> "DiffOp":
        return cls.multiplication(model.one())

    @classmethod
    def multiplication(cls, u: FiberPoly) -> "DiffOp":
        """The multiplication operator v -> u*v (order 0, or zero)."""
        model = u.model
        return cls(model, {((0,) * model.m, (0,) * model.n): u})

    @classmethod
    def d_x(cls, model: BundleModel, i: int) -> "DiffOp":
        if not 0 <= i < model.m:
            raise IndexError(f"base index {i} out of range for m={model.m}")
        alpha = tuple(1 if k == i else 0 for k in range(model.m))
        return cls(model, {(alpha, (0,) * model.n): model.one()})

    @classmethod
    def d_xi(cls, model: BundleModel, j: int) -> "DiffOp":
        if not 0 <= j < model.n:
            raise IndexError(f"fiber index {j} out of range for n={model.n}")
        beta = tuple(1 if k == j else 0 for k in range(model.n))
        return cls(model, {((0,) * model.m, beta): model.one()})

    # -- linear structure -------------------------------------------------

    def __add__(self, other: "DiffOp") -> "DiffOp":
        _check_same_model(self, other)
        res = dict(self.terms)
        for key, c in other.terms.items():
            s = res.get(key)
            s = c if s is None else s + c
            if s:
                res[key] = s
            else:
                res.pop(key, None)
        return DiffOp(self.model, res)

    def __neg__(self) -> "DiffOp":
        return DiffOp(self.model, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def scale(self, value) -> "DiffOp":
        c = as_fraction(value)
        return DiffOp(self.model, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        """Operator composition; scalars scale."""
        if isinstance(other, DiffOp):
            return self.compose(other)
        return self.scale(other)

    def __rmul__(self, other) -> "DiffOp":
        return self.scale(other)

    def __pow__(self, k: int) -> "DiffOp":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a natural number")
        out = DiffOp.identity(self.model)
        for _ in range(k):
            out = out.compose(self)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.model == other.model and self.terms == other.terms

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- action and composition -------------------------------------------

    def apply(self, u: FiberPoly) -> FiberPoly:
        """Act on a fiberwise polynomial."""
        _check_same_model(self, u)
        out = self.model.zero()
        for (alpha, beta), coeff in self.terms.items():
            out = out + coeff * u.deriv(alpha, beta)
        return out

    def compose(self, other: "DiffOp") -> "DiffOp":
        """Normal-ordered product: apply(self.compose(other), u) == self(other(u))."""
        _check_same_model(self, other)
        res: dict[OpKey, FiberPoly] = {}
        for (a1, b1), f1 in self.terms.items():
            for (a2, b2), f2 in other.terms.items():
                for asub, abin in _subindices(a1):
                    for bsub, bbin in _subindices(b1):
                        df2 = f2.deriv(asub, bsub)
                        if not df2:
                            continue
                        coeff = f1 * df2
                        if abin * bbin != 1:
                            coeff = coeff * (abin * bbin)
                        key = (
                            tuple(a - s + t for a, s, t in zip(a1, asub, a2)),
                            tuple(b - s + t for b, s, t in zip(b1, bsub, b2)),
                        )
                        prev = res.get(key)
                        total = coeff if prev is None else prev + coeff
                        if total:
                            res[key] = total
                        else:
                            res.pop(key, None)
        return DiffOp(self.model, res)

    def bracket(self, other: "DiffOp") -> "DiffOp":
        """Commutator [self, other] = self o other - other o self."""
        return self.compose(other) - other.compose(self)

    # -- grading and filtration ---------------------------------------------

    def order(self) -> int | None:
        """Max |alpha| + |beta| over stored terms; None for the zero operator."""
        if not self.terms:
            return None
        return max(sum(a) + sum(b) for a, b in self.terms)

    def weight_decompose(self) -> dict[int, "DiffOp"]:
        """Split into Euler-weight eigenparts.

        Each normal-form term contributes its coefficient's weight parts at
        weight (xi-degree of the coefficient part) - |beta|.
        """
        buckets: dict[int, dict[OpKey, FiberPoly]] = {}
        for (alpha, beta), coeff in self.terms.items():
            for d, part in coeff.weight_split().items():
                buckets.setdefault(d - sum(beta), {})[(alpha, beta)] = part
        return {
            w: DiffOp(self.model, terms) for w, terms in sorted(buckets.items())
        }

    def homogeneous_weight(self) -> int | None:
        """The Euler weight if homogeneous; None for zero or mixed operators."""
        parts = self.weight_decompose()
        if len(parts) == 1:
            return next(iter(parts))
        return None

    # -- presentation ---------------------------------------------------------

    def sorted_terms(self) -> list[tuple[OpKey, FiberPoly]]:
        return sorted(self.terms.items(), key=lambda kv: term_order_key(kv[0]), reverse=True)

    def __str__(self) -> str:
        names_x = self.model.base_names()
        names_xi = self.model.fiber_names()
        dx = [f"d/dx{i + 1}" for i in range(self.model.m)]
        dxi = [f"d/dxi{j + 1}" for j in range(self.model.n)]
        rendered = []
        for (alpha, beta), coeff in self.sorted_terms():
            derivs = [power_factor(dx[i], e) for i, e in enumerate(alpha) if e > 0]
            derivs += [power_factor(dxi[j], e) for j, e in enumerate(beta) if e > 0]
            for (base, fiber), c in coeff.sorted_terms():
                factors = monomial_factors(names_x, base) + monomial_factors(names_xi, fiber)
                rendered.append((c < 0, term_body(abs(c), factors, derivs)))
        return join_terms(rendered)

    def __repr__(self) -> str:
        return f"DiffOp({self.model.m},{self.model.n}: {self})"

    def to_records(self) -> list[dict]:
        """Term records {alpha, beta, coeff-rendering} in canonical order."""
        return [
            {"alpha": list(alpha), "beta": list(beta), "coeff": str(coeff)}
            for (alpha, beta), coeff in self.sorted_terms()
        ]


def euler_field(model: BundleModel) -> DiffOp:
    """The generator of fiber scalings: sum_j xi_j d/dxi_j (weight 0, order 1)."""
    op = DiffOp.zero(model)
    for j in range(model.n):
        op = op + DiffOp.multiplication(model.xi(j)).compose(DiffOp.d_xi(model, j))
    return op


def lie_derivative(op: DiffOp) -> DiffOp:
    """Commutator with the Euler field; eigenvalue = Euler weight."""
    return euler_field(op.model).bracket(op)


def compose(d: DiffOp, t: DiffOp) -> DiffOp:
    return d.compose(t)


def bracket(d: DiffOp, t: DiffOp) -> DiffOp:
    return d.bracket(t)


def multiplication_operator(u: FiberPoly) -> DiffOp:
    return DiffOp.multiplication(u)
