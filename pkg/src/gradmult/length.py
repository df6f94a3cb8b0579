"""Lengths of monomial quotients as lattice-point counts.

Every length here is the number of exponent vectors in a finite region, so
all results are exact Python integers.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .monomial import (
    MonomialIdeal,
    ideal_sum,
    is_m_primary,
    localize_at_prime,
    minimal_primes,
    product,
    pure_power_exponents,
)


class InfiniteLengthError(ValueError):
    pass


def _staircase_heights(I: MonomialIdeal, box: Sequence[int]) -> np.ndarray:
    """For each point p of the box over the first d-1 coordinates, the number
    of last coordinates t < box[-1] with (p, t) outside I."""
    box = tuple(int(b) for b in box)
    heights = np.full(box[:-1], box[-1], dtype=np.int64)
    for g in I.gens:
        if any(gi >= bi for gi, bi in zip(g[:-1], box[:-1])):
            continue
        region = tuple(slice(gi, None) for gi in g[:-1])
        np.minimum(heights[region], g[-1], out=heights[region])
    return heights


def count_outside(I: MonomialIdeal, box: Sequence[int]) -> int:
    """Number of exponents a with 0 <= a_i < box[i] that are not in I."""
    if len(box) != I.dimension:
        raise ValueError("box dimension mismatch")
    if any(b <= 0 for b in box):
        return 0
    if I.dimension == 1:
        low = min((g[0] for g in I.gens), default=box[0])
        return min(low, box[0])
    return int(_staircase_heights(I, box).sum())


@lru_cache(maxsize=16384)
def colength(I: MonomialIdeal) -> int:
    """lambda(R/I), the number of standard monomials of I.

    Every standard monomial a satisfies a_i < b_i where x_i^{b_i} is the
    pure power of x_i in I, so the box prod [0, b_i) holds all of them.
    """
    if not is_m_primary(I):
        raise InfiniteLengthError(f"infinite colength: {I.to_string()} is not m-primary")
    return count_outside(I, pure_power_exponents(I))


def socle_degree(I: MonomialIdeal) -> int:
    """Largest total degree of a standard monomial of an m-primary I (-1 for R)."""
    if not is_m_primary(I):
        raise InfiniteLengthError(f"{I.to_string()} is not m-primary")
    if I.is_unit():
        return -1
    b = pure_power_exponents(I)
    if I.dimension == 1:
        return b[0] - 1
    heights = _staircase_heights(I, b)
    grid = np.indices(heights.shape).sum(axis=0)
    top = np.where(heights > 0, grid + heights - 1, -1)
    return int(top.max())


def contains_maximal_power(I: MonomialIdeal, c: int) -> bool:
    """True iff m^c is contained in I."""
    return is_m_primary(I) and socle_degree(I) < c


def default_certificate(I: MonomialIdeal) -> int:
    """Sum of the pure-power exponents of I; m^c is in I for this c."""
    return sum(pure_power_exponents(I))


def module_colength(Q: MonomialIdeal | None, I: MonomialIdeal) -> int:
    """lambda(M/IM) for the cyclic module M = R/Q."""
    if Q is None or Q.is_zero():
        return colength(I)
    total = ideal_sum(Q, I)
    if not is_m_primary(total):
        raise InfiniteLengthError(f"infinite colength: Q + I = {total.to_string()} is not m-primary")
    return colength(total)


def relative_length(J: MonomialIdeal, I: MonomialIdeal, certificate_c: int | None = None) -> int:
    """lambda(J / IJ) for m-primary I.

    If a in J \\ IJ and g <= a is a generator of J, then |a - g| < c (otherwise
    x^{a-g} lies in m^c, hence in I).  So a_i < max_g g_i + c, and the count
    only needs the box prod [0, max_g g_i + c).
    """
    if not is_m_primary(I):
        raise InfiniteLengthError(f"{I.to_string()} is not m-primary")
    if certificate_c is None:
        c = default_certificate(I)
    else:
        c = int(certificate_c)
        if not contains_maximal_power(I, c):
            raise ValueError(f"certificate c={c} fails: m^{c} is not contained in {I.to_string()}")
    if J.is_zero():
        return 0
    if I.is_unit():
        return 0
    box = tuple(int(v) for v in J.array.max(axis=0) + c)
    return _relative_length_box(J, I, box)


@lru_cache(maxsize=16384)
def _relative_length_box(J: MonomialIdeal, I: MonomialIdeal, box: tuple[int, ...]) -> int:
    return count_outside(product(I, J), box) - count_outside(J, box)


def localized_length(Q: MonomialIdeal, P: Iterable[int]) -> int:
    """lambda_{R_P}((R/Q)_P) for a minimal prime P of Q."""
    P = frozenset(P)
    if P not in minimal_primes(Q):
        raise ValueError(f"{sorted(P)} is not a minimal prime of {Q.to_string()}")
    return colength(localize_at_prime(Q, P))
