"""Principal symbols and the canonical Poisson bracket.

The classical limit of the operator algebra is realized concretely as
polynomials on the cotangent space of the total space: alongside x and xi
there are momenta p1..pm (dual to x) and th1..thn (dual to xi).  The
principal symbol keeps the top-order derivative terms of an operator and
replaces d/dx^alpha d/dxi^beta by p^alpha th^beta.

Sign convention, fixed once: {p_i, x_i} = 1 and {th_j, xi_j} = 1, i.e.

    {P,Q} = sum_i (dP/dp_i dQ/dx_i - dP/dx_i dQ/dp_i)
          + sum_j (dP/dth_j dQ/dxi_j - dP/dxi_j dQ/dth_j)

With this choice sigma([D,T]) = {sigma(D), sigma(T)} whenever the
commutator drops exactly one order.
"""

from __future__ import annotations

from fractions import Fraction

from ._render import join_terms, monomial_factors, term_body
from .errors import ModelMismatchError, NotAFunctionError, UndefinedSymbolError
from .operators import DiffOp
from .poly import ONE, ZERO, BundleModel, Exponents, FiberPoly, as_fraction

SymbolKey = tuple[Exponents, Exponents, Exponents, Exponents]


def _check_same_model(a, b) -> None:
    if a.model != b.model:
        raise ModelMismatchError(f"operands over different models {a.model} and {b.model}")


def _symbol_order_key(key: SymbolKey):
    cat = key[0] + key[1] + key[2] + key[3]
    return (sum(cat), cat)


class SymbolPoly:
    """Sparse exact polynomial in (x, xi, p, th) over a bundle model.

    The symbol degree of a term is |p exponents| + |th exponents|; the
    momentum-free symbols are exactly the fiberwise polynomials.
    """

    __slots__ = ("model", "terms")

    def __init__(self, model: BundleModel, terms: dict[SymbolKey, Fraction] | None = None):
        clean: dict[SymbolKey, Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                x, xi, p, th = key
                if len(x) != model.m or len(xi) != model.n or len(p) != model.m or len(th) != model.n:
                    raise ModelMismatchError("symbol exponents do not match model")
                c = as_fraction(coeff)
                if c:
                    clean[(tuple(x), tuple(xi), tuple(p), tuple(th))] = c
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SymbolPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, model: BundleModel) -> "SymbolPoly":
        return cls(model, {})

    @classmethod
    def const(cls, model: BundleModel, value) -> "SymbolPoly":
        key = ((0,) * model.m, (0,) * model.n, (0,) * model.m, (0,) * model.n)
        return cls(model, {key: as_fraction(value)})

    @classmethod
    def one(cls, model: BundleModel) -> "SymbolPoly":
        return cls.const(model, 1)

    @classmethod
    def from_fiber(cls, u: FiberPoly) -> "SymbolPoly":
        """Embed a fiberwise polynomial as a momentum-free symbol."""
        m, n = u.model.m, u.model.n
        return cls(
            u.model,
            {(base, fiber, (0,) * m, (0,) * n): c for (base, fiber), c in u.terms.items()},
        )

    @classmethod
    def p(cls, model: BundleModel, i: int) -> "SymbolPoly":
        if not 0 <= i < model.m:
            raise IndexError(f"base index {i} out of range for m={model.m}")
        exps = tuple(1 if k == i else 0 for k in range(model.m))
        return cls(model, {((0,) * model.m, (0,) * model.n, exps, (0,) * model.n): ONE})

    @classmethod
    def th(cls, model: BundleModel, j: int) -> "SymbolPoly":
        if not 0 <= j < model.n:
            raise IndexError(f"fiber index {j} out of range for n={model.n}")
        exps = tuple(1 if k == j else 0 for k in range(model.n))
        return cls(model, {((0,) * model.m, (0,) * model.n, (0,) * model.m, exps): ONE})

    # -- ring structure -------------------------------------------------------

    def _coerce(self, other) -> "SymbolPoly":
        if isinstance(other, SymbolPoly):
            _check_same_model(self, other)
            return other
        if isinstance(other, FiberPoly):
            _check_same_model(self, other)
            return SymbolPoly.from_fiber(other)
        return SymbolPoly.const(self.model, other)

    def __add__(self, other) -> "SymbolPoly":
        other = self._coerce(other)
        res = dict(self.terms)
        for key, c in other.terms.items():
            s = res.get(key, ZERO) + c
            if s:
                res[key] = s
            else:
                res.pop(key, None)
        return SymbolPoly(self.model, res)

    __radd__ = __add__

    def __neg__(self) -> "SymbolPoly":
        return SymbolPoly(self.model, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "SymbolPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "SymbolPoly":
        return (-self) + other

    def __mul__(self, other) -> "SymbolPoly":
        if not isinstance(other, (SymbolPoly, FiberPoly)):
            c = as_fraction(other)
            return SymbolPoly(self.model, {k: c * v for k, v in self.terms.items()})
        other = self._coerce(other)
        res: dict[SymbolKey, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(
                    tuple(a + b for a, b in zip(g1, g2)) for g1, g2 in zip(k1, k2)
                )
                s = res.get(key, ZERO) + c1 * c2
                if s:
                    res[key] = s
                else:
                    res.pop(key, None)
        return SymbolPoly(self.model, res)

    def __rmul__(self, other) -> "SymbolPoly":
        return self * other

    def __pow__(self, k: int) -> "SymbolPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a natural number")
        out = SymbolPoly.one(self.model)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolPoly):
            if isinstance(other, (int, Fraction)):
                return self == SymbolPoly.const(self.model, other)
            return NotImplemented
        return self.model == other.model and self.terms == other.terms

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- derivatives --------------------------------------------------------

    def _diff(self, group: int, index: int) -> "SymbolPoly":
        res: dict[SymbolKey, Fraction] = {}
        for key, c in self.terms.items():
            e = key[group][index]
            if e:
                g = key[group]
                new_group = g[:index] + (e - 1,) + g[index + 1:]
                new_key = key[:group] + (new_group,) + key[group + 1:]
                res[new_key] = res.get(new_key, ZERO) + c * e
        return SymbolPoly(self.model, res)

    def diff_x(self, i: int) -> "SymbolPoly":
        return self._diff(0, i)

    def diff_xi(self, j: int) -> "SymbolPoly":
        return self._diff(1, j)

    def diff_p(self, i: int) -> "SymbolPoly":
        return self._diff(2, i)

    def diff_th(self, j: int) -> "SymbolPoly":
        return self._diff(3, j)

    # -- momentum structure ---------------------------------------------------

    def has_momenta(self) -> bool:
        return any(any(k[2]) or any(k[3]) for k in self.terms)

    def symbol_degree(self) -> int | None:
        """Max momentum degree |p| + |th| over terms; None for zero."""
        if not self.terms:
            return None
        return max(sum(k[2]) + sum(k[3]) for k in self.terms)

    def to_fiber(self) -> FiberPoly:
        """Extract the underlying fiberwise polynomial; requires no momenta."""
        if self.has_momenta():
            raise NotAFunctionError(f"symbol contains momentum variables: {self}")
        return FiberPoly(self.model, {(k[0], k[1]): c for k, c in self.terms.items()})

    # -- presentation -----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[SymbolKey, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _symbol_order_key(kv[0]), reverse=True)

    def __str__(self) -> str:
        names = (
            self.model.base_names(),
            self.model.fiber_names(),
            [f"p{i + 1}" for i in range(self.model.m)],
            [f"th{j + 1}" for j in range(self.model.n)],
        )
        rendered = []
        for key, c in self.sorted_terms():
            factors = []
            for group, group_names in zip(key, names):
                factors.extend(monomial_factors(group_names, group))
            rendered.append((c < 0, term_body(abs(c), factors)))
        return join_terms(rendered)

    def __repr__(self) -> str:
        return f"SymbolPoly({self.model.m},{self.model.n}: {self})"

    def to_records(self) -> list[dict]:
        return [
            {"x": list(k[0]), "xi": list(k[1]), "p": list(k[2]), "th": list(k[3]), "coeff": str(c)}
            for k, c in self.sorted_terms()
        ]


def principal_symbol(op: DiffOp) -> SymbolPoly:
    """Top-order part of a nonzero operator as a momentum polynomial."""
    order = op.order()
    if order is None:
        raise UndefinedSymbolError("the zero operator has no principal symbol")
    res: dict[SymbolKey, Fraction] = {}
    for (alpha, beta), coeff in op.terms.items():
        if sum(alpha) + sum(beta) != order:
            continue
        for (base, fiber), c in coeff.terms.items():
            res[(base, fiber, alpha, beta)] = c
    return SymbolPoly(op.model, res)


def poisson_bracket(p: SymbolPoly, q: SymbolPoly) -> SymbolPoly:
    """Canonical bracket with {p_i, x_i} = {th_j, xi_j} = 1."""
    _check_same_model(p, q)
    out = SymbolPoly.zero(p.model)
    for i in range(p.model.m):
        out = out + p.diff_p(i) * q.diff_x(i) - p.diff_x(i) * q.diff_p(i)
    for j in range(p.model.n):
        out = out + p.diff_th(j) * q.diff_xi(j) - p.diff_xi(j) * q.diff_th(j)
    return out


def hamiltonian_action(p: SymbolPoly, u: FiberPoly, iterations: int) -> FiberPoly:
    """Iterate {p, .} on a fiberwise polynomial, staying momentum-free.

    Raises NotAFunctionError as soon as an intermediate bracket leaves the
    momentum-free subalgebra (cannot happen when p is linear in momenta).
    """
    if iterations < 0:
        raise ValueError("iteration count must be a natural number")
    current = SymbolPoly.from_fiber(u)
    for _ in range(iterations):
        current = poisson_bracket(p, current)
        if current.has_momenta():
            raise NotAFunctionError(
                f"iterated bracket left the function algebra: {current}"
            )
    return current.to_fiber()


def distinguishing_witness(p: SymbolPoly) -> FiberPoly | None:
    """A coordinate generator u with {p, u} != 0, or None if p is momentum-free.

    Existence is guaranteed for symbols with momenta: some dp/dp_i or
    dp/dth_j is a nonzero polynomial, and {p, x_i} = dp/dp_i,
    {p, xi_j} = dp/dth_j.
    """
    if not p.has_momenta():
        return None
    model = p.model
    for i in range(model.m):
        if poisson_bracket(p, SymbolPoly.from_fiber(model.x(i))):
            return model.x(i)
    for j in range(model.n):
        if poisson_bracket(p, SymbolPoly.from_fiber(model.xi(j))):
            return model.xi(j)
    raise AssertionError(f"momentum symbol with no generator witness: {p}")


def symbol_mul(p: SymbolPoly, q: SymbolPoly) -> SymbolPoly:
    return p * q
