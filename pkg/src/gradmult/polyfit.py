"""Exact polynomial recovery from integer-valued grid functions.

Two tools live here: tensor-grid Newton interpolation with a shifted-window
stabilization test (for functions that are only eventually polynomial), and
solving for a homogeneous polynomial from its values on a simplex grid.
Everything is done over ``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterator, Sequence

import numpy as np
import sympy

Coefficients = dict[tuple[int, ...], Fraction]


class FitError(RuntimeError):
    """The sampled function did not look polynomial before the cap."""

    def __init__(self, message, fits=()):
        super().__init__(message)
        self.fits = list(fits)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` naturals summing to ``total``, lexicographically descending."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def simplex_grid(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """The points 1 + k with |k| = degree; unisolvent for degree-``degree`` forms."""
    return [tuple(1 + k for k in c) for c in compositions(degree, nvars)]


def monomial_value(point: Sequence, exps: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for x, e in zip(point, exps):
        out *= Fraction(x) ** e
    return out


def evaluate(coeffs: Coefficients, point: Sequence) -> Fraction:
    return sum((c * monomial_value(point, e) for e, c in coeffs.items()), Fraction(0))


def homogeneous_part(coeffs: Coefficients, degree: int) -> Coefficients:
    return {e: c for e, c in coeffs.items() if sum(e) == degree}


def total_degree(coeffs: Coefficients) -> int:
    return max((sum(e) for e, c in coeffs.items() if c), default=-1)


def _shifted_binomial_powers(x0: int, D: int) -> list[list[Fraction]]:
    """Row k holds the power-basis coefficients of binom(t - x0, k)."""
    rows = []
    poly = [Fraction(1)]
    for k in range(D + 1):
        rows.append([poly[p] / factorial(k) if p < len(poly) else Fraction(0) for p in range(D + 1)])
        # multiply by (t - x0 - k)
        shift = -(x0 + k)
        nxt = [Fraction(0)] * (len(poly) + 1)
        for p, c in enumerate(poly):
            nxt[p] += c * shift
            nxt[p + 1] += c
        poly = nxt
    return rows


def _axis_transform(x0: int, D: int) -> np.ndarray:
    """Matrix sending samples f(x0), ..., f(x0 + D) to power-basis coefficients."""
    P = _shifted_binomial_powers(x0, D)
    M = np.empty((D + 1, D + 1), dtype=object)
    for p in range(D + 1):
        for j in range(D + 1):
            # forward difference of order k at x0 is sum_j (-1)^{k-j} C(k, j) f(x0 + j)
            M[p, j] = sum(
                (P[k][p] * ((-1) ** (k - j)) * comb(k, j) for k in range(j, D + 1)),
                Fraction(0),
            )
    return M


def newton_coefficients(values: np.ndarray, offset: Sequence[int]) -> Coefficients:
    """Power-basis coefficients of the tensor interpolant of ``values``.

    ``values[j_1, ..., j_s]`` is the sample at offset + j; every axis has the
    same length D + 1.
    """
    D = values.shape[0] - 1
    C = values.astype(object)
    for axis, x0 in enumerate(offset):
        M = _axis_transform(int(x0), D)
        C = np.moveaxis(np.tensordot(M, C, axes=([1], [axis])), 0, axis)
    out = {}
    for idx in np.ndindex(*C.shape):
        c = Fraction(C[idx])
        if c:
            out[tuple(int(i) for i in idx)] = c
    return out


@dataclass
class PolynomialFit:
    offset: tuple[int, ...]
    edge: int
    coefficients: Coefficients
    windows: list[tuple[int, ...]] = field(default_factory=list)
    agreed: bool = True

    @property
    def total_degree(self) -> int:
        return total_degree(self.coefficients)

    def homogeneous_part(self, degree: int) -> Coefficients:
        return homogeneous_part(self.coefficients, degree)

    def __call__(self, point) -> Fraction:
        return evaluate(self.coefficients, point)

    def to_json(self):
        from .report import to_jsonable

        return {
            "offset": list(self.offset),
            "edge": self.edge,
            "coefficients": to_jsonable(self.coefficients),
            "windows": [list(w) for w in self.windows],
            "agreed": self.agreed,
        }


def fit_numerical_function(
    f: Callable[[tuple[int, ...]], int],
    nvars: int,
    degree_bound: int,
    start: Sequence[int] | None = None,
    cap: int = 64,
) -> PolynomialFit:
    """Recover the polynomial that ``f`` eventually agrees with.

    Samples the box start + [0..D]^s and the box shifted by one in every
    coordinate.  The two interpolants must coincide and have total degree at
    most D; otherwise the start is doubled, up to ``cap`` in each coordinate.
    Agreement of two windows is evidence, not proof, of polynomiality.
    """
    D = degree_bound
    if D < 0:
        raise ValueError("degree bound must be non-negative")
    start = tuple(start) if start is not None else (D + 1,) * nvars
    if len(start) != nvars:
        raise ValueError("start point has the wrong arity")
    cache: dict[tuple[int, ...], int] = {}

    def sample(p):
        if p not in cache:
            cache[p] = f(p)
        return cache[p]

    def window(offset):
        vals = np.empty((D + 1,) * nvars, dtype=object)
        for j in np.ndindex(*vals.shape):
            vals[j] = sample(tuple(o + k for o, k in zip(offset, j)))
        return newton_coefficients(vals, offset)

    offset = start
    tried = []
    while True:
        shifted = tuple(o + 1 for o in offset)
        first, second = window(offset), window(shifted)
        tried.extend([offset, shifted])
        if first == second and total_degree(first) <= D:
            return PolynomialFit(offset=offset, edge=D + 1, coefficients=first, windows=tried)
        nxt = tuple(max(1, 2 * o) for o in offset)
        if any(o > cap for o in nxt):
            raise FitError(
                f"not yet polynomial at cap {cap} (last windows at {offset} and {shifted})",
                fits=[
                    PolynomialFit(offset, D + 1, first, list(tried), False),
                    PolynomialFit(shifted, D + 1, second, list(tried), False),
                ],
            )
        offset = nxt


def solve_exact(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve a square rational system exactly."""
    A = sympy.Matrix([[sympy.Rational(Fraction(v).numerator, Fraction(v).denominator) for v in row] for row in matrix])
    b = sympy.Matrix([sympy.Rational(Fraction(v).numerator, Fraction(v).denominator) for v in rhs])
    if A.shape[0] != A.shape[1] or A.det() == 0:
        raise np.linalg.LinAlgError("singular interpolation system")
    x = A.LUsolve(b)
    return [Fraction(int(v.p), int(v.q)) for v in x]


def solve_homogeneous(points: Sequence[Sequence[int]], values: Sequence, degree: int) -> Coefficients:
    """Coefficients of the degree-``degree`` form taking ``values`` at ``points``."""
    nvars = len(points[0])
    basis = list(compositions(degree, nvars))
    if len(points) != len(basis):
        raise ValueError(f"need {len(basis)} points, got {len(points)}")
    matrix = [[monomial_value(p, e) for e in basis] for p in points]
    sol = solve_exact(matrix, values)
    return {e: c for e, c in zip(basis, sol)}
