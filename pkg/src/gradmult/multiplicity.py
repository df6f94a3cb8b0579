"""Mixed multiplicities of fixed monomial ideals.

Classical tables come from the multigraded Hilbert-Samuel function
m -> lambda(M / I_1^{m_1} ... I_s^{m_s} M) with M = R/Q.  General tables
come from (n0, n) -> lambda(I^{n0} J^n / I^{n0+1} J^n) for an m-primary I
and arbitrary nonzero J_1..J_r.  Both are recovered exactly by interpolation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Sequence

from .length import InfiniteLengthError, default_certificate, module_colength, relative_length
from .monomial import (
    MonomialIdeal,
    ideal_sum,
    is_m_primary,
    krull_dimension,
    power,
    product,
)
from .polyfit import compositions, evaluate, fit_numerical_function

CLASSICAL = "classical"
GENERAL = "general"


@dataclass
class MultiplicityTable:
    """Exact e-values indexed by type vectors.

    For classical tables the keys are d = (d_1..d_s) with |d| = degree; for
    general tables they are (d_0, d_1..d_r) with d_0 + |d| = degree = dim R - 1.
    """

    kind: str
    degree: int
    arity: int
    entries: dict[tuple[int, ...], Fraction]
    exact: bool = True
    notes: list[str] = field(default_factory=list)

    def __getitem__(self, key) -> Fraction:
        return self.entries[tuple(key)]

    def types(self) -> list[tuple[int, ...]]:
        return list(compositions(self.degree, self.arity))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries.values())

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.entries.values())

    def is_integral(self) -> bool:
        return all(Fraction(v).denominator == 1 for v in self.entries.values())

    def coefficients(self) -> dict[tuple[int, ...], Fraction]:
        """Monomial coefficients of the G-polynomial."""
        out = {}
        for key, e in self.entries.items():
            if self.kind == CLASSICAL:
                out[key] = Fraction(e) / prod(factorial(k) for k in key)
            else:
                d0, rest = key[0], key[1:]
                out[(d0 + 1,) + rest] = Fraction(e) / (factorial(d0 + 1) * prod(factorial(k) for k in rest))
        return out

    def to_json(self):
        from .report import to_jsonable

        return {
            "kind": self.kind,
            "degree": self.degree,
            "arity": self.arity,
            "exact": self.exact,
            "entries": to_jsonable(self.entries),
            "notes": list(self.notes),
        }


def zero_table(kind: str, degree: int, arity: int) -> MultiplicityTable:
    return MultiplicityTable(kind, degree, arity, {k: Fraction(0) for k in compositions(degree, arity)})


def table_from_coefficients(kind: str, degree: int, arity: int, coeffs, exact=True) -> MultiplicityTable:
    """Inverse of ``MultiplicityTable.coefficients``."""
    entries = {}
    for key in compositions(degree, arity):
        if kind == CLASSICAL:
            mono, scale = key, prod(factorial(k) for k in key)
        else:
            mono = (key[0] + 1,) + key[1:]
            scale = factorial(key[0] + 1) * prod(factorial(k) for k in key[1:])
        entries[key] = Fraction(coeffs.get(mono, 0)) * scale
    return MultiplicityTable(kind, degree, arity, entries, exact=exact)


def evaluate_G(table: MultiplicityTable, point: Sequence) -> Fraction:
    """Value of the G-polynomial attached to ``table`` at ``point``."""
    if len(point) != table.arity:
        raise ValueError(f"point has arity {len(point)}, table expects {table.arity}")
    return evaluate(table.coefficients(), point)


@lru_cache(maxsize=65536)
def powers_product(ideals: tuple[MonomialIdeal, ...], exponents: tuple[int, ...]) -> MonomialIdeal:
    """prod_j ideals[j]^exponents[j]."""
    if not ideals:
        raise ValueError("empty ideal list")
    out = ideals[0].ring.unit_ideal()
    for I, m in zip(ideals, exponents):
        out = product(out, power(I, m))
    return out


def _same_ring(ideals):
    ring = ideals[0].ring
    for I in ideals[1:]:
        if I.ring != ring:
            raise ValueError("ideals live in different rings")
    return ring


def mixed_multiplicities(
    Q: MonomialIdeal | None,
    ideals: Sequence[MonomialIdeal],
    degree: int | None = None,
    start: Sequence[int] | None = None,
    cap: int = 64,
) -> MultiplicityTable:
    """Classical mixed multiplicities e_d(R/Q; I_1..I_s).

    ``degree`` defaults to dim R; pass dim R/Q to get the multiplicities of a
    lower-dimensional module (the degree-d part vanishes then).
    """
    ideals = tuple(ideals)
    if not ideals:
        raise ValueError("need at least one ideal")
    ring = _same_ring(ideals)
    d = ring.dimension
    degree = d if degree is None else degree
    s = len(ideals)
    for I in ideals:
        total = I if Q is None else ideal_sum(Q, I)
        if not is_m_primary(total):
            raise InfiniteLengthError(f"{I.to_string()} is not m-primary on the module")
    if Q is not None and Q.is_unit():
        return zero_table(CLASSICAL, degree, s)
    module_dim = d if Q is None else krull_dimension(Q)
    if degree > module_dim:
        return zero_table(CLASSICAL, degree, s)

    def f(m):
        return module_colength(Q, powers_product(ideals, m))

    fit = fit_numerical_function(f, s, module_dim, start=start or (d + 1,) * s, cap=cap)
    return table_from_coefficients(CLASSICAL, degree, s, fit.homogeneous_part(degree))


def multiplicity(I: MonomialIdeal, Q: MonomialIdeal | None = None, degree: int | None = None) -> Fraction:
    """e(I) on R/Q, the single-ideal case."""
    table = mixed_multiplicities(Q, [I], degree=degree)
    return next(iter(table.entries.values()))


def general_mixed_multiplicities(
    I: MonomialIdeal,
    Js: Sequence[MonomialIdeal],
    start: Sequence[int] | None = None,
    cap: int = 64,
    certificate_c: int | None = None,
) -> MultiplicityTable:
    """e_{(d0, d)}(I | J_1..J_r) for m-primary I and nonzero J's (r may be 0)."""
    Js = tuple(Js)
    ring = _same_ring((I,) + Js)
    d = ring.dimension
    if d < 1:
        raise ValueError("ring must have positive dimension")
    if not is_m_primary(I):
        raise InfiniteLengthError(f"{I.to_string()} is not m-primary")
    for J in Js:
        if J.is_zero():
            raise ValueError("every J must be nonzero")
    c = default_certificate(I) if certificate_c is None else certificate_c
    r = len(Js)

    def f(point):
        n0, ns = point[0], point[1:]
        base = power(I, n0)
        if Js:
            base = product(base, powers_product(Js, tuple(ns)))
        return relative_length(base, I, c)

    fit = fit_numerical_function(f, r + 1, d - 1, start=start or (d + 1,) * (r + 1), cap=cap)
    part = fit.homogeneous_part(d - 1)
    entries = {}
    for key in compositions(d - 1, r + 1):
        entries[key] = part.get(key, Fraction(0)) * prod(factorial(k) for k in key)
    return MultiplicityTable(GENERAL, d - 1, r + 1, entries)
