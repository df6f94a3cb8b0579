"""Brute-force reference implementations used only by the tests.

Nothing here shares code with the package: points are plain tuples, ideals
are plain lists of generators, and every question is answered by scanning a
box or enumerating subsets.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import comb, factorial


def member(gens, a):
    return any(all(g <= x for g, x in zip(gen, a)) for gen in gens)


def minimal(points):
    pts = set(map(tuple, points))
    return sorted(p for p in pts if not any(q != p and all(u <= v for u, v in zip(q, p)) for q in pts))


def naive_product(A, B):
    return minimal(tuple(a + b for a, b in zip(g, h)) for g in A for h in B)


def naive_power(A, n, d):
    out = [(0,) * d]
    for _ in range(n):
        out = naive_product(out, A)
    return out


def naive_intersection(A, B):
    return minimal(tuple(max(a, b) for a, b in zip(g, h)) for g in A for h in B)


def box_scan_colength(gens, d, bound=None):
    """Count points outside the ideal in a box that is surely large enough."""
    if bound is None:
        bound = max(max(g) for g in gens) + 1
    return sum(1 for a in product(range(bound), repeat=d) if not member(gens, a))


def box_scan_relative(J, I, d):
    """lambda(J / IJ) by scanning a box twice as large as needed."""
    IJ = naive_product(I, J)
    bound = max(max(g) for g in J) + sum(max(g) for g in I) + 2
    return sum(1 for a in product(range(bound), repeat=d) if member(J, a) and not member(IJ, a))


def brute_minimal_primes(gens, d):
    covers = []
    for k in range(d + 1):
        for S in combinations(range(d), k):
            S = frozenset(S)
            if all(any(g[i] > 0 for i in S) for g in gens):
                if not any(C <= S for C in covers):
                    covers.append(S)
    return sorted(covers, key=lambda s: (len(s), sorted(s)))


def difference_multiplicity(gens, d, start=None):
    """e(I) as the d-th forward difference of n -> lambda(R/I^n).

    The Hilbert-Samuel function of an m-primary monomial ideal is a
    polynomial of degree d from some point on, and its d-th difference is
    then the constant e(I).  Two consecutive starting points must agree.
    """
    start = start or d + 2

    def diff_at(n0):
        vals = [box_scan_colength(naive_power(gens, n, d), d) for n in range(n0, n0 + d + 1)]
        return sum((-1) ** (d - j) * comb(d, j) * vals[j] for j in range(d + 1))

    a, b = diff_at(start), diff_at(start + 1)
    assert a == b, "Hilbert-Samuel function not yet polynomial"
    return a


def shoelace_covolume_2d(gens):
    """Area under the lower convex hull of the generators in the plane."""
    pts = sorted(set(map(tuple, gens)))
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    # keep the decreasing part that runs from the y-axis to the x-axis
    chain = [hull[0]]
    for p in hull[1:]:
        if p[1] < chain[-1][1]:
            chain.append(p)
    poly = [(0, 0), (chain[-1][0], 0)] + chain[::-1] + [(0, chain[0][1])]
    area = 0
    for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]):
        area += x1 * y2 - x2 * y1
    return Fraction(abs(area), 2)


def multinomial(d, parts):
    out = factorial(d)
    for p in parts:
        out //= factorial(p)
    return out
