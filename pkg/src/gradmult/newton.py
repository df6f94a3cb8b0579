"""Newton polyhedra of monomial ideals, in exact arithmetic.

NP(I) is conv(generators) + the nonnegative orthant.  Its facets are found by
trying every hyperplane spanned by d affinely independent elements among the
generators and the coordinate rays, and keeping those that support the whole
polyhedron.  Covolumes (d <= 3) are summed over the compact facets as cones
from the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Sequence

import numpy as np
import sympy

from .monomial import MonomialIdeal, is_m_primary, minimal_points
from .polyfit import simplex_grid, solve_homogeneous
from .multiplicity import CLASSICAL, MultiplicityTable, powers_product, table_from_coefficients


class UnsupportedDimensionError(ValueError):
    pass


def _primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for v in vec:
        g = gcd(g, int(v))
    if g == 0:
        return tuple(int(v) for v in vec)
    return tuple(int(v) // g for v in vec)


def _normal(directions: Sequence[Sequence[int]], d: int) -> tuple[int, ...] | None:
    """An integer vector orthogonal to the d-1 given directions, or None."""
    if d == 1:
        return (1,)
    if d == 2:
        (u,) = directions
        n = (-u[1], u[0])
    elif d == 3:
        u, v = directions
        n = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
    else:
        space = sympy.Matrix(directions).nullspace()
        if len(space) != 1:
            return None
        vec = space[0]
        den = sympy.ilcm(*[sympy.fraction(x)[1] for x in vec])
        n = tuple(int(x * den) for x in vec)
    if not any(n):
        return None
    return _primitive(n)


@dataclass(frozen=True)
class Facet:
    """The inequality normal . x >= offset."""

    normal: tuple[int, ...]
    offset: int

    @property
    def compact(self) -> bool:
        return all(w > 0 for w in self.normal)


class NewtonPolyhedron:
    def __init__(self, ideal: MonomialIdeal):
        if ideal.is_zero():
            raise ValueError("the zero ideal has an empty Newton polyhedron")
        self.ideal = ideal
        self.generators = ideal.gens
        self._facets: tuple[Facet, ...] | None = None

    @property
    def dimension(self) -> int:
        return self.ideal.dimension

    @property
    def half_spaces(self) -> tuple[Facet, ...]:
        if self._facets is None:
            self._facets = newton_facets(self.ideal)
        return self._facets

    def contains(self, point: Sequence, scale: int = 1) -> bool:
        """True iff point lies in scale * NP(I)."""
        return all(
            sum(w * Fraction(p) for w, p in zip(f.normal, point)) >= scale * f.offset for f in self.half_spaces
        )

    def compact_facets(self) -> list[Facet]:
        return [f for f in self.half_spaces if f.compact]

    def facet_points(self, facet: Facet) -> list[tuple[int, ...]]:
        return [g for g in self.generators if sum(w * x for w, x in zip(facet.normal, g)) == facet.offset]


@lru_cache(maxsize=4096)
def newton_facets(I: MonomialIdeal) -> tuple[Facet, ...]:
    d = I.dimension
    pts = np.array(I.gens, dtype=np.int64)
    rays = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    elements = [("point", g) for g in I.gens] + [("ray", r) for r in rays]
    found: set[Facet] = set()
    for subset in combinations(range(len(elements)), d):
        points = [elements[i][1] for i in subset if elements[i][0] == "point"]
        if not points:
            continue
        base = points[0]
        dirs = [tuple(p - b for p, b in zip(q, base)) for q in points[1:]]
        dirs += [elements[i][1] for i in subset if elements[i][0] == "ray"]
        n = _normal(dirs, d)
        if n is None:
            continue
        for w in (n, tuple(-x for x in n)):
            if any(x < 0 for x in w):
                continue
            b = sum(x * y for x, y in zip(w, base))
            if (pts @ np.array(w, dtype=np.int64) >= b).all():
                found.add(Facet(w, b))
    return tuple(sorted(found, key=lambda f: (f.normal, f.offset)))


# ---------------------------------------------------------------------------
# membership by Fourier-Motzkin elimination


def fourier_motzkin_feasible(rows: list[tuple[list[Fraction], Fraction]]) -> bool:
    """Decide whether {x : A x <= b} is nonempty, exactly.

    Each row is (coefficients, bound).  Variables are eliminated one at a
    time; Chernikov's rule drops combined rows whose ancestry exceeds the
    number of eliminated variables plus one, which never changes feasibility.
    """
    if not rows:
        return True
    nvars = len(rows[0][0])
    system = [(list(a), Fraction(b), frozenset([i])) for i, (a, b) in enumerate(rows)]
    for k in range(nvars):
        pos, neg, rest = [], [], []
        for row in system:
            c = row[0][k]
            (pos if c > 0 else neg if c < 0 else rest).append(row)
        combined = list(rest)
        seen = set()
        for ap, bp, hp in pos:
            for an, bn, hn in neg:
                hist = hp | hn
                if len(hist) > k + 2:
                    continue
                cp, cn = ap[k], -an[k]
                a = [cn * x + cp * y for x, y in zip(ap, an)]
                b = cn * bp + cp * bn
                key = (tuple(a), b)
                if key in seen:
                    continue
                seen.add(key)
                combined.append((a, b, hist))
        system = combined
        if any(b < 0 and not any(a) for a, b, _ in system):
            return False
    return all(b >= 0 for _, b, _ in system)


def np_membership(I: MonomialIdeal, n: int, a: Sequence[int]) -> bool:
    """True iff a lies in n * NP(I), by exact feasibility of a convex combination."""
    if len(a) != I.dimension:
        raise ValueError("dimension mismatch")
    if I.is_zero():
        raise ValueError("zero ideal has no Newton polyhedron")
    if n < 1:
        raise ValueError("scale must be at least 1")
    gens = I.gens
    if any(all(n * g <= x for g, x in zip(gen, a)) for gen in gens):
        return True
    k = len(gens)
    rows: list[tuple[list[Fraction], Fraction]] = []
    for j in range(k):
        rows.append(([Fraction(-(i == j)) for i in range(k)], Fraction(0)))
    for coord in range(I.dimension):
        rows.append(([Fraction(g[coord]) for g in gens], Fraction(a[coord])))
    rows.append(([Fraction(1)] * k, Fraction(n)))
    rows.append(([Fraction(-1)] * k, Fraction(-n)))
    return fourier_motzkin_feasible(rows)


# ---------------------------------------------------------------------------


def integral_closure_power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    """The integral closure of I^n: minimal lattice points of n * NP(I)."""
    if I.is_zero():
        raise ValueError("integral closure of the zero ideal")
    if n == 0 or I.is_unit():
        return I.ring.unit_ideal()
    facets = newton_facets(I)
    top = n * I.array.max(axis=0)
    grids = np.indices(tuple(int(t) + 1 for t in top)).reshape(I.dimension, -1).T
    W = np.array([f.normal for f in facets], dtype=np.int64)
    b = np.array([f.offset for f in facets], dtype=np.int64)
    inside = (grids @ W.T >= n * b).all(axis=1)
    mask = inside.reshape(tuple(int(t) + 1 for t in top))
    # a member point is minimal iff no unit step down stays in the set
    minimal = mask.copy()
    for axis in range(I.dimension):
        lower = np.zeros_like(mask)
        src = [slice(None)] * I.dimension
        dst = [slice(None)] * I.dimension
        src[axis] = slice(0, -1)
        dst[axis] = slice(1, None)
        lower[tuple(dst)] = mask[tuple(src)]
        minimal &= ~lower
    pts = np.argwhere(minimal)
    return MonomialIdeal(I.ring, minimal_points(pts))


def _hull_2d(points: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """Convex hull in counterclockwise order (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _facet_polygon(points: list[tuple[int, ...]], normal: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Vertices of a planar facet of a 3-dimensional polyhedron, in cyclic order."""
    drop = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(3) if i != drop]
    lookup = {(p[keep[0]], p[keep[1]]): p for p in points}
    return [lookup[q] for q in _hull_2d(list(lookup))]


def _det3(a, b, c) -> int:
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def _check_covolume_input(I: MonomialIdeal):
    if I.dimension > 3:
        raise UnsupportedDimensionError("unsupported dimension for exact covolume (d > 3)")
    if not is_m_primary(I):
        raise ValueError(f"{I.to_string()} is not m-primary")


def covolume(I: MonomialIdeal) -> Fraction:
    """Volume of the nonnegative orthant minus NP(I), for m-primary I and d <= 3."""
    _check_covolume_input(I)
    if I.is_unit():
        return Fraction(0)
    d = I.dimension
    if d == 1:
        return Fraction(I.gens[0][0])
    poly = NewtonPolyhedron(I)
    total = Fraction(0)
    for facet in poly.compact_facets():
        pts = poly.facet_points(facet)
        if d == 2:
            p, q = min(pts), max(pts)
            total += Fraction(abs(p[0] * q[1] - p[1] * q[0]), 2)
        else:
            ring = _facet_polygon(pts, facet.normal)
            for i in range(1, len(ring) - 1):
                total += Fraction(abs(_det3(ring[0], ring[i], ring[i + 1])), 6)
    return total


def mixed_covolume_table(ideals: Sequence[MonomialIdeal]) -> MultiplicityTable:
    """Mixed multiplicities read off the covolume polynomial m -> covol(prod I_j^{m_j})."""
    ideals = tuple(ideals)
    if not ideals:
        raise ValueError("need at least one ideal")
    for I in ideals:
        _check_covolume_input(I)
    d = ideals[0].dimension
    grid = simplex_grid(len(ideals), d)
    values = [covolume(powers_product(ideals, g)) for g in grid]
    coeffs = solve_homogeneous(grid, values, d)
    # covolume is the degree-d part of the colength polynomial, i.e. sum e_d m^d / d!
    return table_from_coefficients(CLASSICAL, d, len(ideals), coeffs)


def _newton_vertices(I: MonomialIdeal) -> list[tuple[int, ...]]:
    poly = NewtonPolyhedron(I)
    verts = set()
    for facet in poly.compact_facets():
        pts = poly.facet_points(facet)
        if I.dimension == 2:
            verts.update([min(pts), max(pts)])
        else:
            verts.update(_facet_polygon(pts, facet.normal))
    if not verts:
        # a single compact vertex, e.g. a principal power in d = 1
        verts.update(I.gens)
    return sorted(verts)


def scaled_staircase_body(family, n: int) -> list[tuple[Fraction, ...]]:
    """Vertices of (1/n) * (orthant minus NP(I_n)).

    In d = 2 the polygon is listed counterclockwise from the origin; in
    d = 3 the vertex set is returned sorted.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    I = family.term(n)
    _check_covolume_input(I)
    d = I.dimension
    origin = (Fraction(0),) * d
    if I.is_unit():
        return [origin]
    scale = Fraction(1, n)
    if d == 1:
        return [origin, (Fraction(I.gens[0][0]) * scale,)]
    verts = _newton_vertices(I)
    scaled = [tuple(Fraction(v) * scale for v in p) for p in verts]
    if d == 2:
        # NP vertices sorted by x descending run from the x-axis to the y-axis
        return [origin] + sorted(scaled, key=lambda p: -p[0])
    return [origin] + sorted(scaled)
