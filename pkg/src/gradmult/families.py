"""Graded families of monomial ideals.

A family is a sequence n -> I_n with I_0 = R and I_n I_m inside I_{n+m}.
Terms are computed lazily and memoized; all the checks here are finite and
only ever give evidence up to a horizon N.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, gcd
from typing import Iterable, Sequence

import numpy as np

from .monomial import (
    AmbientRing,
    MonomialIdeal,
    contains_many,
    ideal_sum,
    intersect_all,
    is_m_primary,
    is_squarefree,
    is_subideal,
    kill_variables,
    maximal_power,
    minimal_primes,
    power,
    product,
    saturate,
)
from .report import FAIL, PASS, CheckReport


class GradedFamily:
    """Base class: subclasses implement ``_compute(n)`` for n >= 1."""

    kind = "family"

    def __init__(self, ring: AmbientRing):
        self.ring = ring.base()
        self._memo: dict[int, MonomialIdeal] = {0: self.ring.unit_ideal()}
        self._lock = threading.RLock()

    def term(self, n: int) -> MonomialIdeal:
        if n < 0:
            raise ValueError("family index must be non-negative")
        with self._lock:
            cached = self._memo.get(n)
            if cached is None:
                cached = self._compute(n)
                self._memo[n] = cached
            return cached

    def terms(self, N: int) -> list[MonomialIdeal]:
        return [self.term(n) for n in range(N + 1)]

    def _compute(self, n: int) -> MonomialIdeal:
        raise NotImplementedError

    def describe(self) -> str:
        return self.kind

    def __repr__(self):
        return f"<{type(self).__name__} {self.describe()}>"

    def is_m_primary(self, N: int) -> bool:
        return all(is_m_primary(self.term(n)) for n in range(1, N + 1))


class Powers(GradedFamily):
    kind = "powers"

    def __init__(self, ideal: MonomialIdeal):
        super().__init__(ideal.ring)
        self.ideal = ideal

    def _compute(self, n):
        return power(self.ideal, n)

    def describe(self):
        return f"powers{self.ideal.to_string()}"


class Scaled(GradedFamily):
    """n -> I^{ceil(n / alpha)}."""

    kind = "scaled"

    def __init__(self, ideal: MonomialIdeal, alpha):
        super().__init__(ideal.ring)
        self.alpha = Fraction(alpha)
        if self.alpha <= 0:
            raise ValueError("scaling factor must be positive")
        self.ideal = ideal

    def _compute(self, n):
        return power(self.ideal, ceil(Fraction(n) / self.alpha))

    def describe(self):
        return f"scaled({self.ideal.to_string()}, {self.alpha})"


class Truncated(GradedFamily):
    """The Noetherian family generated by the first ``a`` terms of ``base``.

    Beyond a, J_{a,n} is the ideal generated by all products of base terms
    whose indices (each at most a) sum to n.  Peeling off one factor gives the
    recursion J_{a,n} = sum_{i=1}^{a} J_i J_{a,n-i}.
    """

    kind = "truncated"

    def __init__(self, base: GradedFamily, a: int):
        if a < 1:
            raise ValueError("truncation level must be at least 1")
        super().__init__(base.ring)
        self.base = base
        self.a = a

    def base_term(self, i: int) -> MonomialIdeal:
        return self.base.term(i)

    def _compute(self, n):
        if n <= self.a:
            return self.base_term(n)
        # fill the memo bottom-up to keep recursion shallow
        for k in range(self.a + 1, n):
            self.term(k)
        out = self.ring.zero_ideal()
        for i in range(1, self.a + 1):
            out = ideal_sum(out, product(self.base_term(i), self.term(n - i)))
        return out

    def describe(self):
        return f"truncated({self.base.describe()}, {self.a})"


class Table(Truncated):
    """Explicit terms I_1..I_k, extended beyond k as a Noetherian family."""

    kind = "table"

    def __init__(self, ring: AmbientRing, prefix: Sequence[MonomialIdeal]):
        if not prefix:
            raise ValueError("table family needs at least one term")
        GradedFamily.__init__(self, ring)
        self.prefix = list(prefix)
        self.a = len(self.prefix)
        self.base = self

    def base_term(self, i):
        return self.prefix[i - 1]

    def describe(self):
        return "table[" + "; ".join(I.to_string() for I in self.prefix) + "]"


class Saturation(GradedFamily):
    kind = "saturation"

    def __init__(self, base: GradedFamily):
        super().__init__(base.ring)
        self.base = base

    def _compute(self, n):
        return saturate(self.base.term(n))

    def describe(self):
        return f"saturation({self.base.describe()})"


class SymbolicPowers(GradedFamily):
    """Q^{(n)} for squarefree Q: the intersection of P^n over minimal primes P."""

    kind = "symbolic"

    def __init__(self, ideal: MonomialIdeal):
        if not is_squarefree(ideal):
            raise ValueError(f"symbolic powers need a squarefree ideal, got {ideal.to_string()}")
        super().__init__(ideal.ring)
        self.ideal = ideal
        self.primes = minimal_primes(ideal)

    def _prime_power(self, P, n) -> MonomialIdeal:
        sub = maximal_power(self.ring.subring(P), n)
        keep = sorted(P)
        pts = np.zeros((len(sub.gens), self.ring.dimension), dtype=np.int64)
        pts[:, keep] = sub.array
        return MonomialIdeal(self.ring, tuple(tuple(int(v) for v in p) for p in pts))

    def _compute(self, n):
        return intersect_all([self._prime_power(P, n) for P in self.primes])

    def describe(self):
        return f"symbolic{self.ideal.to_string()}"


class IntegralClosurePowers(GradedFamily):
    kind = "integral-closure"

    def __init__(self, ideal: MonomialIdeal):
        if ideal.is_zero():
            raise ValueError("integral closure family of the zero ideal")
        super().__init__(ideal.ring)
        self.ideal = ideal

    def _compute(self, n):
        from .newton import integral_closure_power

        return integral_closure_power(self.ideal, n)

    def describe(self):
        return f"closure-powers{self.ideal.to_string()}"


class Product(GradedFamily):
    """n -> F1_n * F2_n * ..."""

    kind = "product"

    def __init__(self, *factors: GradedFamily):
        if not factors:
            raise ValueError("product family needs at least one factor")
        super().__init__(factors[0].ring)
        for F in factors:
            if F.ring != self.ring:
                raise ValueError("product family factors live in different rings")
        self.factors = factors

    def _compute(self, n):
        out = self.factors[0].term(n)
        for F in self.factors[1:]:
            out = product(out, F.term(n))
        return out

    def describe(self):
        return "product(" + ", ".join(F.describe() for F in self.factors) + ")"


class Stretched(GradedFamily):
    """n -> F_{k n}."""

    kind = "stretched"

    def __init__(self, base: GradedFamily, k: int):
        if k < 0:
            raise ValueError("stretch factor must be non-negative")
        super().__init__(base.ring)
        self.base = base
        self.k = k

    def _compute(self, n):
        return self.base.term(self.k * n)

    def describe(self):
        return f"stretched({self.base.describe()}, {self.k})"


class Image(GradedFamily):
    """Term-wise image in R/(x_i : i in S)."""

    kind = "image"

    def __init__(self, base: GradedFamily, killed: Iterable[int]):
        self.killed = frozenset(killed)
        keep = [i for i in range(base.ring.dimension) if i not in self.killed]
        super().__init__(base.ring.subring(keep))
        self.base = base

    def _compute(self, n):
        return kill_variables(self.base.term(n), self.killed)

    def describe(self):
        names = ",".join(self.base.ring.variable_names(self.killed))
        return f"image({self.base.describe()} mod {names})"


def unit_family(ring: AmbientRing) -> GradedFamily:
    return Powers(ring.unit_ideal())


def product_of_stretched(families: Sequence[GradedFamily], weights: Sequence[int]) -> GradedFamily:
    """n -> prod_i F(i)_{w_i n}."""
    return Product(*(Stretched(F, w) for F, w in zip(families, weights)))


# ---------------------------------------------------------------------------
# checks


def verify_graded(F: GradedFamily, N: int) -> CheckReport:
    """Check I_0 = R and I_n I_m inside I_{n+m} for all n + m <= N."""
    if N < 1:
        raise ValueError("horizon must be at least 1")
    violations = []
    if not F.term(0).is_unit():
        violations.append((0, 0))
    for n in range(1, N + 1):
        for m in range(n, N - n + 1):
            if not is_subideal(product(F.term(n), F.term(m)), F.term(n + m)):
                violations.append((n, m))
    return CheckReport(
        name="graded",
        instance=F.describe(),
        verdict=FAIL if violations else PASS,
        witnesses=violations,
        notes=[f"evidence at horizon N={N}"],
        details={"horizon": N},
    )


def verify_filtration(F: GradedFamily, N: int) -> CheckReport:
    """Check I_{n+1} inside I_n for n < N."""
    if N < 1:
        raise ValueError("horizon must be at least 1")
    violations = [n for n in range(N) if not is_subideal(F.term(n + 1), F.term(n))]
    return CheckReport(
        name="filtration",
        instance=F.describe(),
        verdict=FAIL if violations else PASS,
        witnesses=violations,
        notes=[f"evidence at horizon N={N}"],
        details={"horizon": N},
    )


@dataclass(frozen=True)
class LinearGrowthWitness:
    c: int
    horizon: int
    verified: tuple[bool, ...]

    def to_json(self):
        return {
            "c": self.c,
            "horizon": self.horizon,
            "verified": list(self.verified),
            "note": f"evidence at horizon N={self.horizon}, not a proof for all n",
        }


def _degree_shifts(d: int, t: int) -> np.ndarray:
    if t <= 0:
        return np.zeros((1, d), dtype=np.int64)
    return maximal_power(AmbientRing.of_dimension(d), t).array


def growth_holds(J: MonomialIdeal, I: MonomialIdeal, bound: int) -> bool:
    """True iff J and m^bound meet in the same ideal as I and m^bound, given I inside J.

    The ideal J ∩ m^bound is generated by the points g + e with g a generator
    of J and |e| = max(0, bound - |g|); all of them must lie in I.
    """
    d = J.dimension
    for g in J.gens:
        t = bound - sum(g)
        pts = np.asarray(g, dtype=np.int64) + _degree_shifts(d, t)
        if not contains_many(I, pts).all():
            return False
    return True


def linear_growth_search(J: GradedFamily, I: GradedFamily, c_max: int, N: int) -> LinearGrowthWitness | None:
    """Smallest c <= c_max with J_n ∩ m^{cn} = I_n ∩ m^{cn} for all 1 <= n <= N."""
    for n in range(1, N + 1):
        if not is_subideal(I.term(n), J.term(n)):
            raise ValueError(f"containment precondition fails: I_{n} is not inside J_{n}")
    for c in range(c_max + 1):
        verified = []
        for n in range(1, N + 1):
            ok = growth_holds(J.term(n), I.term(n), c * n)
            verified.append(ok)
            if not ok:
                break
        if all(verified) and len(verified) == N:
            return LinearGrowthWitness(c=c, horizon=N, verified=tuple(verified))
    return None


def noetherian_period(F: GradedFamily, q_max: int, N: int) -> int | None:
    """Smallest q <= q_max with I_q^n = I_{nq} for every n with nq <= N.

    Periods q > N/2 would be checked vacuously, so they are never reported.
    """
    for q in range(1, q_max + 1):
        if 2 * q > N:
            break
        base = F.term(q)
        if all(power(base, n) == F.term(n * q) for n in range(2, N // q + 1)):
            return q
    return None


def common_period(families: Sequence[GradedFamily], q_max: int, N: int) -> int | None:
    """lcm of the per-family periods, or None when one is missing or above q_max."""
    q = 1
    for F in families:
        p = noetherian_period(F, q_max, N)
        if p is None:
            return None
        q = q * p // gcd(q, p)
    if q > q_max:
        return None
    return q
