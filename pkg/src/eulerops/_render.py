"""Canonical text rendering shared by polynomials, operators and symbols.

Every renderer in the package reduces its value to a list of flat terms
(sign, body) and joins them here, so that all renderings agree on one
normative format: terms in canonical order, reduced fractions, ``*``
between factors, ``^`` for powers.  The output always parses back under
the expression grammar in :mod:`eulerops.parsing`.
"""

from __future__ import annotations

from fractions import Fraction


def power_factor(name: str, exponent: int) -> str:
    return name if exponent == 1 else f"{name}^{exponent}"


def monomial_factors(names: list[str], exponents: tuple[int, ...]) -> list[str]:
    """Factor strings for one exponent vector, zero powers skipped."""
    return [power_factor(names[i], e) for i, e in enumerate(exponents) if e > 0]


def term_body(coeff_abs: Fraction, var_factors: list[str], deriv_factors: list[str] = []) -> str:
    """One term without its sign.

    The numeric coefficient is omitted only when it is 1 and at least one
    variable factor is present; a bare derivative keeps its ``1*`` so the
    coefficient slot is always visible on pure-derivative terms.
    """
    parts = []
    if coeff_abs != 1 or not var_factors:
        parts.append(str(coeff_abs))
    parts.extend(var_factors)
    parts.extend(deriv_factors)
    return "*".join(parts)


def join_terms(signed_bodies: list[tuple[bool, str]]) -> str:
    """Join (is_negative, body) pairs with sign-aware separators."""
    if not signed_bodies:
        return "0"
    out = []
    for i, (negative, body) in enumerate(signed_bodies):
        if i == 0:
            out.append("-" + body if negative else body)
        else:
            out.append((" - " if negative else " + ") + body)
    return "".join(out)
