"""Named verification suites behind the ``check`` command.

Every suite draws its cases from a seeded RNG, checks exact rational
identities (zero tolerance everywhere), and reports one
:class:`SuiteReport`.  Suite names describe the property they exercise:

* ``grading``                 bracket weight additivity and order filtration
* ``weight-decomposition``    eigen-decomposition and the coefficient weight law
* ``composition``             normal-ordered product against double application
* ``nonsingularity``          commutator certificates for every function
* ``classical-limit``         symbol multiplicativity and Poisson compatibility
* ``distinguishing``          generator witnesses and the nilpotent counterexample
* ``jet-factorization``       vanishing-jet factorization reconstructs exactly
* ``derivation-extension``    first-order extension: agreement, Leibniz, uniqueness
* ``morphisms``               substitution morphisms: filtration and graded parts
* ``weight-zero-derivations`` three characterizations of weight-0 derivations
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .operators import DiffOp, euler_field
from .poly import BundleModel, FiberPoly, Point, exponent_vectors, monomial_keys_up_to_degree
from .structure import (
    AlgebraMorphism,
    Derivation,
    JetSpec,
    extend_derivation,
    graded_part,
    is_filtered,
    is_infinitesimal_automorphism,
    jet_factorize,
    jet_is_zero,
    non_singularity_witness,
    preserves_degree_zero,
)
from .symbols import (
    SymbolPoly,
    distinguishing_witness,
    hamiltonian_action,
    poisson_bracket,
    principal_symbol,
)


@dataclass
class SuiteFailure:
    case: str
    expected: str
    actual: str


@dataclass
class SuiteReport:
    name: str
    cases: int = 0
    failures: list[SuiteFailure] = field(default_factory=list)
    wall_time_s: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, case: str, expected: str, actual: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(SuiteFailure(case, expected, actual))


# ---------------------------------------------------------------------------
# random generators (all exact, all driven by one rng)


def random_fraction(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        c = Fraction(rng.randint(-4, 4), rng.choice((1, 1, 2, 3)))
        if c or not nonzero:
            return c


def random_poly(
    rng: random.Random,
    model: BundleModel,
    max_x_degree: int = 3,
    max_xi_degree: int = 3,
    terms: int = 3,
) -> FiberPoly:
    chosen = {}
    for _ in range(terms):
        base = tuple(rng.randint(0, max_x_degree) for _ in range(model.m))
        while sum(base) > max_x_degree:
            base = tuple(rng.randint(0, max_x_degree) for _ in range(model.m))
        fiber = tuple(rng.randint(0, max_xi_degree) for _ in range(model.n))
        while sum(fiber) > max_xi_degree:
            fiber = tuple(rng.randint(0, max_xi_degree) for _ in range(model.n))
        chosen[(base, fiber)] = random_fraction(rng, nonzero=True)
    return FiberPoly(model, chosen)


def random_nonzero_poly(rng, model, **kwargs) -> FiberPoly:
    while True:
        u = random_poly(rng, model, **kwargs)
        if u:
            return u


def random_homogeneous_poly(
    rng: random.Random,
    model: BundleModel,
    weight: int,
    max_x_degree: int = 3,
    terms: int = 2,
) -> FiberPoly:
    """Nonzero polynomial with every term of the given xi-degree."""
    chosen = {}
    for _ in range(terms):
        base = tuple(rng.randint(0, max_x_degree) for _ in range(model.m))
        while sum(base) > max_x_degree:
            base = tuple(rng.randint(0, max_x_degree) for _ in range(model.m))
        fiber = rng.choice(list(exponent_vectors(model.n, weight)))
        chosen[(base, fiber)] = random_fraction(rng, nonzero=True)
    return FiberPoly(model, chosen)


def random_operator(
    rng: random.Random,
    model: BundleModel,
    max_order: int = 3,
    terms: int = 2,
    coeff_terms: int = 2,
) -> DiffOp:
    chosen = {}
    for _ in range(terms):
        order = rng.randint(0, max_order)
        split = rng.randint(0, order)
        alpha = rng.choice(list(exponent_vectors(model.m, split)))
        beta = rng.choice(list(exponent_vectors(model.n, order - split)))
        coeff = random_poly(rng, model, terms=coeff_terms)
        if coeff:
            chosen[(alpha, beta)] = coeff
    return DiffOp(model, chosen)


def random_nonzero_operator(rng, model, **kwargs) -> DiffOp:
    while True:
        op = random_operator(rng, model, **kwargs)
        if op:
            return op


def random_homogeneous_operator(
    rng: random.Random,
    model: BundleModel,
    max_order: int = 3,
    terms: int = 2,
) -> tuple[DiffOp, int]:
    """A nonzero Euler-homogeneous operator together with its weight."""
    while True:
        weight = rng.randint(-2, 3)
        chosen = {}
        for _ in range(terms):
            b = rng.randint(max(0, -weight), max_order)
            beta = rng.choice(list(exponent_vectors(model.n, b)))
            alpha_order = rng.randint(0, max_order - b)
            alpha = rng.choice(list(exponent_vectors(model.m, alpha_order)))
            base = tuple(rng.randint(0, 2) for _ in range(model.m))
            while sum(base) > 2:
                base = tuple(rng.randint(0, 2) for _ in range(model.m))
            fiber = rng.choice(list(exponent_vectors(model.n, weight + b)))
            coeff = FiberPoly.monomial(model, base, fiber, random_fraction(rng, nonzero=True))
            prev = chosen.get((alpha, beta))
            chosen[(alpha, beta)] = coeff if prev is None else prev + coeff
        op = DiffOp(model, {k: v for k, v in chosen.items() if v})
        if op:
            return op, weight


def random_symbol(
    rng: random.Random,
    model: BundleModel,
    max_momentum_degree: int = 2,
    terms: int = 3,
) -> SymbolPoly:
    chosen = {}
    for _ in range(terms):
        x = rng.choice(list(exponent_vectors(model.m, rng.randint(0, 2))))
        xi = rng.choice(list(exponent_vectors(model.n, rng.randint(0, 2))))
        md = rng.randint(0, max_momentum_degree)
        split = rng.randint(0, md)
        p = rng.choice(list(exponent_vectors(model.m, split)))
        th = rng.choice(list(exponent_vectors(model.n, md - split)))
        chosen[(x, xi, p, th)] = random_fraction(rng, nonzero=True)
    return SymbolPoly(model, chosen)


def random_momentum_symbol(rng, model, **kwargs) -> SymbolPoly:
    while True:
        s = random_symbol(rng, model, **kwargs)
        if s.has_momenta():
            return s


def random_point(rng: random.Random, model: BundleModel) -> Point:
    return Point.of(
        [random_fraction(rng) for _ in range(model.m)],
        [random_fraction(rng) for _ in range(model.n)],
    )


def random_derivation(rng: random.Random, model: BundleModel) -> Derivation:
    return Derivation(
        model,
        [random_poly(rng, model, terms=2) for _ in range(model.m)],
        [random_poly(rng, model, terms=2) for _ in range(model.n)],
    )


def random_weight_zero_derivation(rng: random.Random, model: BundleModel) -> Derivation:
    """Base vector field plus a fiber-linear (matrix) action."""
    base = [random_poly(rng, model, max_xi_degree=0, terms=2) for _ in range(model.m)]
    fiber = []
    for _ in range(model.n):
        img = model.zero()
        for k in range(model.n):
            img = img + random_poly(rng, model, max_xi_degree=0, terms=1) * model.xi(k)
        fiber.append(img)
    return Derivation(model, base, fiber)


# ---------------------------------------------------------------------------
# suites


def _suite_grading(report: SuiteReport, model: BundleModel, rng: random.Random, bound: int):
    for i in range(200):
        t1, w1 = random_homogeneous_operator(rng, model)
        t2, w2 = random_homogeneous_operator(rng, model)
        br = t1.bracket(t2)
        ok = (not br) or br.homogeneous_weight() == w1 + w2
        report.check(
            ok,
            f"bracket weight #{i}: [{t1}, {t2}]",
            f"zero or homogeneous of weight {w1 + w2}",
            f"weight {br.homogeneous_weight()!r}" if br else "zero",
        )
    for i in range(200):
        d = random_nonzero_operator(rng, model)
        t = random_nonzero_operator(rng, model)
        k, l = d.order(), t.order()
        prod_order = d.compose(t).order()
        report.check(
            prod_order == k + l,
            f"composition order #{i}: ({d}) o ({t})",
            f"order {k + l}",
            f"order {prod_order!r}",
        )
        br = d.bracket(t)
        br_order = br.order()
        ok = br_order is None or br_order <= k + l - 1
        report.check(
            ok,
            f"bracket order #{i}: [{d}, {t}]",
            f"order <= {k + l - 1} or zero",
            f"order {br_order!r}",
        )


def _suite_weight_decomposition(report: SuiteReport, model, rng, bound):
    euler = euler_field(model)
    for i in range(200):
        t = random_nonzero_operator(rng, model)
        parts = t.weight_decompose()
        total = DiffOp.zero(model)
        for part in parts.values():
            total = total + part
        report.check(
            total == t,
            f"decomposition sum #{i}: {t}",
            "parts sum to the operator",
            f"sum = {total}",
        )
        for w, part in parts.items():
            eigen = euler.bracket(part)
            report.check(
                eigen == part.scale(w),
                f"eigenvector #{i} weight {w}: {part}",
                f"[euler, part] = {w} * part",
                str(eigen),
            )
            # coefficient weight law: xi-degree of each coefficient = weight + |beta|
            law = all(
                coeff.homogeneous_weight() == w + sum(beta)
                for (alpha, beta), coeff in part.terms.items()
            )
            report.check(
                law,
                f"coefficient law #{i} weight {w}: {part}",
                "each coefficient xi-homogeneous of degree weight + |beta|",
                "violated" if not law else "holds",
            )


def _suite_composition(report: SuiteReport, model, rng, bound):
    keys = monomial_keys_up_to_degree(model, 5)
    for i in range(100):
        d = random_nonzero_operator(rng, model)
        t = random_nonzero_operator(rng, model)
        composed = d.compose(t)
        bad = None
        for base, fiber in keys:
            u = FiberPoly.monomial(model, base, fiber)
            left = composed.apply(u)
            right = d.apply(t.apply(u))
            if left != right:
                bad = (u, left, right)
                break
        report.check(
            bad is None,
            f"composition oracle #{i}: ({d}) o ({t})",
            "(D o T)(u) = D(T(u)) for all monomials of degree <= 5",
            "holds" if bad is None else f"differs on {bad[0]}: {bad[1]} vs {bad[2]}",
        )


def _suite_nonsingularity(report: SuiteReport, model, rng, bound):
    inputs = []
    for _ in range(40):
        inputs.append(random_poly(rng, model))
    for _ in range(20):
        inputs.append(random_poly(rng, model, max_xi_degree=0))
    inputs.append(model.zero())
    inputs.append(model.one())
    for _ in range(8):
        inputs.append(model.const(random_fraction(rng, nonzero=True)))
    for _ in range(30):
        inputs.append(random_homogeneous_poly(rng, model, rng.randint(1, 3)))
    for i, u in enumerate(inputs):
        cert = non_singularity_witness(u)
        report.check(
            cert.verify() and cert.first_order(),
            f"certificate #{i}: u = {u}",
            "sum of commutators equals multiplication by u, all operators of order <= 1",
            f"verify={cert.verify()}, first_order={cert.first_order()}",
        )


def _suite_classical_limit(report: SuiteReport, model, rng, bound):
    for i in range(200):
        d = random_nonzero_operator(rng, model)
        t = random_nonzero_operator(rng, model)
        sd, st = principal_symbol(d), principal_symbol(t)
        report.check(
            principal_symbol(d.compose(t)) == sd * st,
            f"symbol multiplicativity #{i}: ({d}) o ({t})",
            "sigma(DT) = sigma(D) sigma(T)",
            "differs",
        )
        br = d.bracket(t)
        pb = poisson_bracket(sd, st)
        drop_one = br and br.order() == d.order() + t.order() - 1
        if drop_one:
            ok = principal_symbol(br) == pb
            expected = "sigma([D,T]) = {sigma(D), sigma(T)}"
        else:
            ok = not pb
            expected = "{sigma(D), sigma(T)} = 0 when the bracket drops further"
        report.check(ok, f"limit compatibility #{i}: [{d}, {t}]", expected, "differs" if not ok else "holds")
    for i in range(100):
        p = random_symbol(rng, model)
        q = random_symbol(rng, model)
        r = random_symbol(rng, model)
        anti = poisson_bracket(p, q) == -poisson_bracket(q, p)
        leibniz = poisson_bracket(p, q * r) == poisson_bracket(p, q) * r + q * poisson_bracket(p, r)
        jacobi = (
            poisson_bracket(p, poisson_bracket(q, r))
            + poisson_bracket(q, poisson_bracket(r, p))
            + poisson_bracket(r, poisson_bracket(p, q))
            == SymbolPoly.zero(model)
        )
        report.check(
            anti and leibniz and jacobi,
            f"poisson axioms #{i}",
            "antisymmetry, Leibniz, Jacobi",
            f"anti={anti}, leibniz={leibniz}, jacobi={jacobi}",
        )


def _suite_distinguishing(report: SuiteReport, model, rng, bound):
    for i in range(100):
        p = random_momentum_symbol(rng, model)
        witness = distinguishing_witness(p)
        ok = witness is not None and bool(poisson_bracket(p, SymbolPoly.from_fiber(witness)))
        report.check(
            ok,
            f"witness #{i}: P = {p}",
            "a coordinate generator with nonzero bracket",
            f"witness = {witness}",
        )
    # the counterexample lives on the line bundle over the line
    line = BundleModel(1, 1)
    theta = SymbolPoly.th(line, 0)
    report.check(
        theta.has_momenta(),
        "counterexample membership: P = th1",
        "P outside the function algebra",
        f"has_momenta = {theta.has_momenta()}",
    )
    for i in range(50):
        u = random_poly(rng, line, max_x_degree=3, max_xi_degree=4)
        degree = u.fiber_degree() or 0
        result = hamiltonian_action(theta, u, degree + 1)
        report.check(
            not result,
            f"nilpotent action #{i}: u = {u}",
            f"{degree + 1}-fold bracket with th1 is 0",
            str(result),
        )


def _suite_jet_factorization(report: SuiteReport, model, rng, bound):
    for i in range(100):
        raw = random_poly(rng, model, max_x_degree=3, max_xi_degree=2, terms=4)
        point = random_point(rng, model)
        order = rng.randint(0, 2)
        spec = JetSpec(point, order)
        # force the jet to vanish by removing the low-degree Taylor part
        shifted = raw.shift(point)
        high = FiberPoly(
            model,
            {k: c for k, c in shifted.terms.items() if sum(k[0]) + sum(k[1]) > order},
        )
        u = high.shift(-point)
        report.check(
            jet_is_zero(u, spec),
            f"forced jet #{i}: u = {u}",
            f"jet of order {order} vanishes at {point}",
            "nonzero jet",
        )
        factors = jet_factorize(u, spec)
        lengths = all(len(t) == order + 1 for t in factors)
        vanish = all(f.evaluate(point) == 0 for t in factors for f in t)
        total = model.zero()
        for t in factors:
            prod = model.one()
            for f in t:
                prod = prod * f
            total = total + prod
        report.check(
            lengths and vanish and total == u,
            f"factorization #{i}: u = {u}, order {order}",
            "tuples of length order+1, all factors vanish at the point, products sum to u",
            f"lengths={lengths}, vanish={vanish}, sum={total}",
        )


def _suite_derivation_extension(report: SuiteReport, model, rng, bound):
    for i in range(100):
        d = random_derivation(rng, model)
        ext = extend_derivation(d)
        agrees = all(
            ext.apply(model.x(k)) == d.base_images[k] for k in range(model.m)
        ) and all(ext.apply(model.xi(k)) == d.fiber_images[k] for k in range(model.n))
        report.check(
            agrees,
            f"generator agreement #{i}",
            "extension matches the derivation on all generators",
            "differs" if not agrees else "holds",
        )
        u = random_poly(rng, model, terms=2)
        v = random_poly(rng, model, terms=2)
        leibniz = ext.apply(u * v) == ext.apply(u) * v + u * ext.apply(v)
        report.check(
            leibniz,
            f"Leibniz #{i}: u = {u}, v = {v}",
            "D(uv) = D(u)v + uD(v)",
            "differs" if not leibniz else "holds",
        )
        # uniqueness: assemble an agreeing first-order operator along a
        # different route and compare normal forms
        rebuilt = DiffOp.zero(model)
        for k in range(model.m):
            if d.base_images[k]:
                rebuilt = rebuilt + DiffOp.multiplication(d.base_images[k]).compose(
                    DiffOp.d_x(model, k)
                )
        for k in range(model.n):
            if d.fiber_images[k]:
                rebuilt = rebuilt + DiffOp.multiplication(d.fiber_images[k]).compose(
                    DiffOp.d_xi(model, k)
                )
        report.check(
            rebuilt == ext,
            f"uniqueness #{i}",
            "independently assembled extension is structurally identical",
            "differs" if rebuilt != ext else "holds",
        )


def morphism_corpus(model: BundleModel) -> list[tuple[str, AlgebraMorphism]]:
    """At least ten invertible substitution morphisms for any model."""

    def base():
        return [model.x(i) for i in range(model.m)]

    def fiber():
        return [model.xi(j) for j in range(model.n)]

    def morph(name, base_images, fiber_images, inv_base, inv_fiber):
        inverse = AlgebraMorphism(model, inv_base, inv_fiber)
        return (name, AlgebraMorphism(model, base_images, fiber_images, inverse=inverse))

    x1, xi1 = model.x(0), model.xi(0)
    out = [("identity", AlgebraMorphism.identity(model))]
    # fiber shift by a base polynomial: xi1 -> xi1 + x1^2
    f = fiber()
    g = fiber()
    f[0] = xi1 + x1**2
    g[0] = xi1 - x1**2
    out.append(morph("fiber-shift-x1^2", base(), f, base(), g))
    # base translation
    b = base()
    c = base()
    b[0] = x1 + 1
    c[0] = x1 - 1
    out.append(morph("base-translation", b, fiber(), c, fiber()))
    # base scaling
    b = base()
    c = base()
    b[0] = 2 * x1
    c[0] = x1 / 2
    out.append(morph("base-scaling", b, fiber(), c, fiber()))
    # fiber scaling
    f = fiber()
    g = fiber()
    f[0] = 3 * xi1
    g[0] = xi1 / 3
    out.append(morph("fiber-scaling", base(), f, base(), g))
    # triangular base substitution
    b = base()
    c = base()
    if model.m >= 2:
        b[0] = x1 + model.x(1) ** 3
        c[0] = x1 - model.x(1) ** 3
    else:
        b[0] = x1 - 2
        c[0] = x1 + 2
    out.append(morph("base-triangular", b, fiber(), c, fiber()))
    if model.n >= 2:
        # fiber swap
        f = fiber()
        f[0], f[1] = f[1], f[0]
        out.append(morph("fiber-swap", base(), f, base(), list(f)))
        # constant fiber shear
        f = fiber()
        g = fiber()
        f[0] = xi1 + model.xi(1)
        g[0] = xi1 - model.xi(1)
        out.append(morph("fiber-shear", base(), f, base(), g))
        # base-dependent fiber shear
        f = fiber()
        g = fiber()
        f[1] = model.xi(1) + x1 * xi1
        g[1] = model.xi(1) - x1 * xi1
        out.append(morph("fiber-shear-x1", base(), f, base(), g))
        # affine fiber image
        f = fiber()
        g = fiber()
        f[0] = xi1 + x1
        g[0] = xi1 - x1
        out.append(morph("fiber-affine", base(), f, base(), g))
        # combined base translation and fiber mixing
        b = base()
        b[0] = x1 + 1
        f = fiber()
        f[0] = 2 * model.xi(1) + x1
        f[1] = xi1
        c = base()
        c[0] = x1 - 1
        g = fiber()
        g[0] = model.xi(1)
        g[1] = (xi1 - x1 + 1) / 2
        out.append(morph("combined", b, f, c, g))
    else:
        f = fiber()
        g = fiber()
        f[0] = xi1 + x1
        g[0] = xi1 - x1
        out.append(morph("fiber-affine", base(), f, base(), g))
        f = fiber()
        g = fiber()
        f[0] = 2 * xi1 + x1**3
        g[0] = (xi1 - x1**3) / 2
        out.append(morph("fiber-affine-scaled", base(), f, base(), g))
        f = fiber()
        g = fiber()
        f[0] = xi1 + 5
        g[0] = xi1 - 5
        out.append(morph("fiber-translation", base(), f, base(), g))
        b = base()
        c = base()
        b[0] = 3 * x1 - 1
        c[0] = (x1 + 1) / 3
        out.append(morph("base-affine", b, fiber(), c, fiber()))
    while len(out) < 10:
        k = len(out)
        f = fiber()
        g = fiber()
        f[0] = (k + 1) * xi1
        g[0] = xi1 / (k + 1)
        out.append(morph(f"fiber-scaling-{k + 1}", base(), f, base(), g))
    return out


def degree_violating_corpus(model: BundleModel) -> list[tuple[str, AlgebraMorphism, str]]:
    """Substitutions breaking the filtration, tagged with the check they fail."""

    def base():
        return [model.x(i) for i in range(model.m)]

    def fiber():
        return [model.xi(j) for j in range(model.n)]

    x1, xi1 = model.x(0), model.xi(0)
    out = []
    b = base()
    b[0] = xi1
    out.append(("base-to-fiber", AlgebraMorphism(model, b, fiber()), "degree-zero"))
    b = base()
    b[0] = x1 + xi1
    out.append(("base-plus-fiber", AlgebraMorphism(model, b, fiber()), "degree-zero"))
    f = fiber()
    f[0] = xi1**2
    out.append(("fiber-square", AlgebraMorphism(model, base(), f), "filtered"))
    f = fiber()
    f[0] = xi1 + x1 * xi1**2
    out.append(("fiber-quadratic-shift", AlgebraMorphism(model, base(), f), "filtered"))
    b = base()
    b[0] = xi1**2 if model.n == 1 else model.xi(1) ** 2
    out.append(("base-to-fiber-square", AlgebraMorphism(model, b, fiber()), "degree-zero"))
    f = fiber()
    f[0] = xi1 + (xi1 * model.xi(1) if model.n >= 2 else xi1**3)
    out.append(("fiber-mixed", AlgebraMorphism(model, base(), f), "filtered"))
    return out


def _suite_morphisms(report: SuiteReport, model, rng, bound):
    corpus = morphism_corpus(model)
    pair_budget = max(1, -(-100 // len(corpus)))
    for name, psi in corpus:
        report.check(
            is_filtered(psi, bound, bound),
            f"filtration: {name}",
            "images of weight-k monomials stay at xi-degree <= k",
            "violated",
        )
        report.check(
            preserves_degree_zero(psi, bound),
            f"degree zero: {name}",
            "weight-0 monomials map to weight 0",
            "violated",
        )
        tilde = graded_part(psi, bound)
        graded_ok = all(
            (not img) or set(img.weight_split()) == {0} for img in tilde.base_images
        ) and all((not img) or set(img.weight_split()) == {1} for img in tilde.fiber_images)
        report.check(
            graded_ok,
            f"graded images: {name}",
            "graded part is weight-preserving on generators",
            "violated",
        )
        generators = [model.x(i) for i in range(model.m)] + [model.xi(j) for j in range(model.n)]
        invert_ok = all(
            tilde.inverse.apply(tilde.apply(g)) == g and tilde.apply(tilde.inverse.apply(g)) == g
            for g in generators
        )
        report.check(
            invert_ok,
            f"graded inverse: {name}",
            "graded part of the inverse inverts the graded part",
            "violated",
        )
        for k in range(pair_budget):
            u = random_homogeneous_poly(rng, model, rng.randint(0, 3))
            v = random_homogeneous_poly(rng, model, rng.randint(0, 3))
            multiplicative = tilde.apply(u * v) == tilde.apply(u) * tilde.apply(v)
            wu = u.homogeneous_weight()
            projection = tilde.apply(u) == psi.apply(u).weight_part(wu)
            report.check(
                multiplicative and projection,
                f"graded morphism #{k}: {name}, u = {u}, v = {v}",
                "graded part multiplicative and equal to the weight projection",
                f"multiplicative={multiplicative}, projection={projection}",
            )
    for name, psi, failing in degree_violating_corpus(model):
        if failing == "degree-zero":
            ok = not preserves_degree_zero(psi, bound)
            expected = "degree-zero preservation fails"
        else:
            ok = not is_filtered(psi, bound, bound)
            expected = "filtration fails"
        report.check(ok, f"violating substitution: {name}", expected, "check passed unexpectedly")


def _suite_weight_zero_derivations(report: SuiteReport, model, rng, bound):
    euler = euler_field(model)
    sample = [model.x(i) for i in range(model.m)] + [model.xi(j) for j in range(model.n)]
    while len(sample) < 100:
        sample.append(random_homogeneous_poly(rng, model, rng.randint(0, 3)))
    derivations = [random_weight_zero_derivation(rng, model) for _ in range(20)]
    derivations += [random_derivation(rng, model) for _ in range(80)]
    for i, d in enumerate(derivations):
        generator_condition = d.weight_zero_images()
        ext = d.extend()
        bracket_condition = not euler.bracket(ext)
        action_condition = True
        for u in sample:
            w = u.homogeneous_weight()
            image = ext.apply(u)
            if image and set(image.weight_split()) != {w}:
                action_condition = False
                break
        report.check(
            generator_condition == bracket_condition == action_condition,
            f"three-way equivalence #{i}: {d}",
            "generator weights <=> commuting with the Euler field <=> weight-preserving action",
            f"generators={generator_condition}, bracket={bracket_condition}, action={action_condition}",
        )


SUITES = {
    "grading": _suite_grading,
    "weight-decomposition": _suite_weight_decomposition,
    "composition": _suite_composition,
    "nonsingularity": _suite_nonsingularity,
    "classical-limit": _suite_classical_limit,
    "distinguishing": _suite_distinguishing,
    "jet-factorization": _suite_jet_factorization,
    "derivation-extension": _suite_derivation_extension,
    "morphisms": _suite_morphisms,
    "weight-zero-derivations": _suite_weight_zero_derivations,
}


def run_suite(
    name: str, model: BundleModel, seed: int = 0, degree_bound: int = 4
) -> SuiteReport:
    """Run one named suite with a per-suite deterministic RNG."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; available: {', '.join(SUITES)}")
    report = SuiteReport(name)
    rng = random.Random(f"{seed}:{name}")
    start = time.perf_counter()
    SUITES[name](report, model, rng, degree_bound)
    report.wall_time_s = time.perf_counter() - start
    return report


def run_all(model: BundleModel, seed: int = 0, degree_bound: int = 4) -> list[SuiteReport]:
    return [run_suite(name, model, seed, degree_bound) for name in SUITES]
