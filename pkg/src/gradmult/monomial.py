"""Monomial ideals in k[x_1, ..., x_d] localized at m = (x_1, ..., x_d).

An ideal is stored as the antichain of its minimal generator exponents.  The
empty antichain is the zero ideal and ``{(0, ..., 0)}`` is the unit ideal.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

Exponent = tuple[int, ...]
VariableSet = frozenset[int]


class DimensionError(ValueError):
    pass


def default_variable_names(d: int) -> tuple[str, ...]:
    if d <= 3:
        return ("x", "y", "z")[:d]
    return tuple(f"x{i}" for i in range(1, d + 1))


@dataclass(frozen=True)
class AmbientRing:
    """Polynomial ring in ``variables``, optionally modulo a monomial ideal."""

    variables: tuple[str, ...]
    quotient: "MonomialIdeal | None" = None

    def __post_init__(self):
        if len(self.variables) < 1:
            raise ValueError("ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"variable names must be distinct: {self.variables}")
        if self.quotient is not None and self.quotient.is_unit():
            raise ValueError("quotient ideal must be proper")

    @classmethod
    def of_dimension(cls, d: int) -> "AmbientRing":
        return cls(default_variable_names(d))

    @property
    def dimension(self) -> int:
        return len(self.variables)

    def base(self) -> "AmbientRing":
        """The polynomial ring without the quotient."""
        return self if self.quotient is None else AmbientRing(self.variables)

    def subring(self, keep: Iterable[int]) -> "AmbientRing":
        keep = sorted(keep)
        if not keep:
            raise ValueError("cannot form a ring with no variables")
        return AmbientRing(tuple(self.variables[i] for i in keep))

    def maximal_ideal(self) -> "MonomialIdeal":
        d = self.dimension
        return MonomialIdeal(self.base(), tuple(_unit_vector(d, i) for i in range(d)[::-1]))

    def unit_ideal(self) -> "MonomialIdeal":
        return MonomialIdeal(self.base(), ((0,) * self.dimension,))

    def zero_ideal(self) -> "MonomialIdeal":
        return MonomialIdeal(self.base(), ())

    def ideal(self, points: Iterable[Sequence[int]]) -> "MonomialIdeal":
        return normalize(self, points)

    def variable_set(self, names: Iterable[str]) -> VariableSet:
        index = {v: i for i, v in enumerate(self.variables)}
        try:
            return frozenset(index[n] for n in names)
        except KeyError as exc:
            raise ValueError(f"unknown variable {exc.args[0]!r}") from None

    def variable_names(self, subset: Iterable[int]) -> list[str]:
        return [self.variables[i] for i in sorted(subset)]

    def __eq__(self, other):
        # Ideals only care about the polynomial ring they live in.
        return isinstance(other, AmbientRing) and self.variables == other.variables

    def __hash__(self):
        return hash(self.variables)


def _unit_vector(d: int, i: int) -> Exponent:
    return tuple(1 if j == i else 0 for j in range(d))


class MonomialIdeal:
    """Immutable monomial ideal given by a sorted antichain of exponents.

    Build instances with :func:`normalize` (or ``ring.ideal``); the
    constructor trusts that ``gens`` is already a sorted antichain.
    """

    __slots__ = ("ring", "gens", "_hash", "_array")

    def __init__(self, ring: AmbientRing, gens: tuple[Exponent, ...]):
        object.__setattr__(self, "ring", ring.base() if ring.quotient is not None else ring)
        object.__setattr__(self, "gens", tuple(sorted(gens)))
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_array", None)

    def __setattr__(self, name, value):
        raise AttributeError("MonomialIdeal is immutable")

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.ring == other.ring and self.gens == other.gens

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.ring.variables, self.gens)))
        return self._hash

    def __repr__(self):
        return f"MonomialIdeal({self.to_string()})"

    @property
    def dimension(self) -> int:
        return self.ring.dimension

    @property
    def array(self) -> np.ndarray:
        if self._array is None:
            arr = np.array(self.gens, dtype=np.int64).reshape(len(self.gens), self.dimension)
            arr.setflags(write=False)
            object.__setattr__(self, "_array", arr)
        return self._array

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    def to_string(self) -> str:
        if self.is_zero():
            return "0"
        if self.is_unit():
            return "R"
        return "(" + ", ".join(monomial_string(g, self.ring.variables) for g in self.gens) + ")"

    # operator sugar
    def __contains__(self, a):
        return contains(self, a)

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return product(self, other)

    def __pow__(self, n):
        return power(self, n)

    def __and__(self, other):
        return intersect(self, other)

    def issubset(self, other: "MonomialIdeal") -> bool:
        return is_subideal(self, other)


def monomial_string(a: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for e, v in zip(a, names):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# minimal elements


def _minimal_d2(pts: np.ndarray) -> np.ndarray:
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]
    prev_min = np.minimum.accumulate(pts[:, 1])
    keep = np.empty(len(pts), dtype=bool)
    keep[0] = True
    keep[1:] = pts[1:, 1] < prev_min[:-1]
    return pts[keep]


def _minimal_d3(pts: np.ndarray) -> list[Exponent]:
    order = np.lexsort((pts[:, 2], pts[:, 1], pts[:, 0]))
    ys: list[int] = []
    zs: list[int] = []
    out = []
    # ys strictly increasing, zs strictly decreasing: a 2-d staircase of (y, z)
    # projections of everything seen so far (all with smaller or equal x).
    for x, y, z in pts[order].tolist():
        i = bisect_right(ys, y) - 1
        if i >= 0 and zs[i] <= z:
            continue
        out.append((x, y, z))
        lo = bisect_left(ys, y)
        hi = lo
        while hi < len(ys) and zs[hi] >= z:
            hi += 1
        ys[lo:hi] = [y]
        zs[lo:hi] = [z]
    return out


def _minimal_generic(pts: np.ndarray) -> list[Exponent]:
    order = np.argsort(pts.sum(axis=1), kind="stable")
    kept: list[np.ndarray] = []
    block = np.empty((0, pts.shape[1]), dtype=pts.dtype)
    for p in pts[order]:
        if len(kept) and np.any(np.all(block <= p, axis=1)):
            continue
        kept.append(p)
        block = np.array(kept)
    return [tuple(int(v) for v in p) for p in kept]


def minimal_points(pts: np.ndarray) -> tuple[Exponent, ...]:
    """Sorted antichain of the componentwise-minimal rows of ``pts``."""
    if len(pts) == 0:
        return ()
    pts = np.unique(pts, axis=0)
    d = pts.shape[1]
    if d == 1:
        return ((int(pts[:, 0].min()),),)
    if d == 2:
        res = [tuple(p) for p in _minimal_d2(pts).tolist()]
    elif d == 3:
        res = _minimal_d3(pts)
    else:
        res = _minimal_generic(pts)
    return tuple(sorted(res))


def _as_array(points, d: int) -> np.ndarray:
    if isinstance(points, np.ndarray):
        arr = points.astype(np.int64, copy=False)
    else:
        rows = [tuple(p) for p in points]
        for p in rows:
            if len(p) != d:
                raise DimensionError(f"exponent {p} does not have length {d}")
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), d)
    if arr.ndim != 2 or arr.shape[1] != d:
        raise DimensionError(f"exponents must have length {d}")
    if arr.size and arr.min() < 0:
        raise ValueError("exponents must be non-negative")
    return arr


def normalize(ring: AmbientRing, points: Iterable[Sequence[int]] | np.ndarray) -> MonomialIdeal:
    """Ideal generated by ``points``, reduced to its minimal generators."""
    arr = _as_array(points, ring.dimension)
    return MonomialIdeal(ring, minimal_points(arr))


# ---------------------------------------------------------------------------
# membership and containment


def _check_same_ring(I: MonomialIdeal, J: MonomialIdeal):
    if I.ring != J.ring:
        raise DimensionError(f"ideals live in different rings: {I.ring.variables} vs {J.ring.variables}")


def contains(I: MonomialIdeal, a: Sequence[int]) -> bool:
    if len(a) != I.dimension:
        raise DimensionError(f"exponent {tuple(a)} does not have length {I.dimension}")
    return any(all(gi <= ai for gi, ai in zip(g, a)) for g in I.gens)


def contains_many(I: MonomialIdeal, pts: np.ndarray) -> np.ndarray:
    """Vectorized membership for the rows of ``pts``."""
    pts = np.asarray(pts, dtype=np.int64).reshape(-1, I.dimension)
    out = np.zeros(len(pts), dtype=bool)
    for g in I.array:
        out |= np.all(pts >= g, axis=1)
    return out


def is_subideal(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """True iff I is contained in J."""
    _check_same_ring(I, J)
    if I.is_zero():
        return True
    return bool(contains_many(J, I.array).all())


# ---------------------------------------------------------------------------
# arithmetic


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same_ring(I, J)
    return normalize(I.ring, np.vstack([I.array, J.array]))


@lru_cache(maxsize=8192)
def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return I.ring.zero_ideal()
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    sums = (I.array[:, None, :] + J.array[None, :, :]).reshape(-1, I.dimension)
    return normalize(I.ring, sums)


def product_all(ideals: Sequence[MonomialIdeal], ring: AmbientRing | None = None) -> MonomialIdeal:
    if not ideals:
        if ring is None:
            raise ValueError("empty product needs a ring")
        return ring.unit_ideal()
    out = ideals[0]
    for J in ideals[1:]:
        out = product(out, J)
    return out


@lru_cache(maxsize=8192)
def power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    """I^n by iterated multiplication, normalizing after every step."""
    if n < 0:
        raise ValueError("power must be non-negative")
    if n == 0:
        return I.ring.unit_ideal()
    if n == 1:
        return I
    return product(power(I, n - 1), I)


def maximal_power(ring: AmbientRing, n: int) -> MonomialIdeal:
    """m^n listed directly as all exponents of total degree n."""
    d = ring.dimension
    pts = []
    for bars in combinations(range(n + d - 1), d - 1):
        prev = -1
        e = []
        for b in bars:
            e.append(b - prev - 1)
            prev = b
        e.append(n + d - 1 - prev - 1)
        pts.append(tuple(e))
    return MonomialIdeal(ring.base(), tuple(pts))


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return I.ring.zero_ideal()
    lcms = np.maximum(I.array[:, None, :], J.array[None, :, :]).reshape(-1, I.dimension)
    return normalize(I.ring, lcms)


def intersect_all(ideals: Sequence[MonomialIdeal]) -> MonomialIdeal:
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J)
    return out


def colon_monomial(I: MonomialIdeal, g: Sequence[int]) -> MonomialIdeal:
    """(I : x^g)."""
    if I.is_zero():
        return I
    shifted = np.maximum(I.array - np.asarray(g, dtype=np.int64), 0)
    return normalize(I.ring, shifted)


def colon(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """(I : J), the intersection of (I : x^g) over generators g of J."""
    _check_same_ring(I, J)
    if J.is_zero():
        raise ValueError("colon by zero ideal")
    return intersect_all([colon_monomial(I, g) for g in J.gens])


def saturate(I: MonomialIdeal) -> MonomialIdeal:
    """(I : m^infinity).

    Each pass I <- (I : m) yields an ideal containing the previous one; by
    Noetherianity the chain stops, and we stop at the first repeat.
    """
    m = I.ring.maximal_ideal()
    current = I
    while True:
        nxt = colon(current, m)
        if nxt == current:
            return current
        current = nxt


def radical(I: MonomialIdeal) -> MonomialIdeal:
    if I.is_zero():
        return I
    return normalize(I.ring, np.minimum(I.array, 1))


def support(a: Sequence[int]) -> VariableSet:
    return frozenset(i for i, e in enumerate(a) if e > 0)


def _vertex_covers(edges: tuple[VariableSet, ...]) -> set[VariableSet]:
    if not edges:
        return {frozenset()}
    # branch on the smallest uncovered edge
    edge = min(edges, key=lambda e: (len(e), sorted(e)))
    out = set()
    for v in edge:
        rest = tuple(e for e in edges if v not in e)
        for cover in _vertex_covers(rest):
            out.add(cover | {v})
    return out


def minimal_primes(I: MonomialIdeal) -> list[VariableSet]:
    """Minimal primes of I as sets of variable indices (P = (x_i : i in S))."""
    if I.is_zero():
        raise ValueError("minimal primes of the zero ideal: the ring itself is a domain")
    if I.is_unit():
        raise ValueError("the unit ideal has no minimal primes")
    edges = tuple(sorted({support(g) for g in I.gens}, key=sorted))
    covers = _vertex_covers(edges)
    minimal = [c for c in covers if not any(o < c for o in covers)]
    return sorted(minimal, key=lambda s: (len(s), sorted(s)))


def krull_dimension(I: MonomialIdeal) -> int:
    """dim R/I; -1 for the unit ideal (the zero ring)."""
    if I.is_unit():
        return -1
    if I.is_zero():
        return I.dimension
    return I.dimension - min(len(P) for P in minimal_primes(I))


def is_m_primary(I: MonomialIdeal) -> bool:
    """True iff every variable has a pure power in I.

    The unit ideal counts as m-primary (its colength is 0).
    """
    if I.is_zero():
        return False
    if I.is_unit():
        return True
    found = [False] * I.dimension
    for g in I.gens:
        s = support(g)
        if len(s) == 1:
            found[next(iter(s))] = True
    return all(found)


def pure_power_exponents(I: MonomialIdeal) -> tuple[int, ...]:
    """Smallest b_i with x_i^{b_i} in I, for each i (requires m-primary)."""
    if I.is_unit():
        return (0,) * I.dimension
    best = [None] * I.dimension
    for g in I.gens:
        s = support(g)
        if len(s) == 1:
            i = next(iter(s))
            if best[i] is None or g[i] < best[i]:
                best[i] = g[i]
    if any(b is None for b in best):
        raise ValueError(f"{I.to_string()} is not m-primary")
    return tuple(best)


def is_squarefree(I: MonomialIdeal) -> bool:
    return all(e <= 1 for g in I.gens for e in g)


def kill_variables(I: MonomialIdeal, S: Iterable[int]) -> MonomialIdeal:
    """Image of I in R/(x_i : i in S), a polynomial ring in the other variables.

    Generators involving a variable of S map to zero and are dropped.
    """
    S = frozenset(S)
    keep = [i for i in range(I.dimension) if i not in S]
    ring = I.ring.subring(keep)
    pts = [tuple(g[i] for i in keep) for g in I.gens if not any(g[i] for i in S)]
    return normalize(ring, pts) if pts else ring.zero_ideal()


def localize_at_prime(I: MonomialIdeal, P: Iterable[int]) -> MonomialIdeal:
    """Image of I after inverting every variable outside P."""
    P = frozenset(P)
    keep = sorted(P)
    ring = I.ring.subring(keep)
    if I.is_zero():
        return ring.zero_ideal()
    return normalize(ring, I.array[:, keep])
