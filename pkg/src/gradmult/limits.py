"""Limit polynomials and mixed multiplicities of graded families.

Two strategies are offered.  In exact mode a common Noetherian period q is
found for all families; along the subsequence m = kq every term is a power of
the period term, so the limit equals the fixed-ideal polynomial of the period
terms divided by q^d.  In sequence mode the normalized lengths are sampled up
to a horizon and the last sample is reported together with diagnostics; it is
never presented as a certified value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .families import (
    GradedFamily,
    Product,
    Stretched,
    common_period,
    linear_growth_search,
    unit_family,
)
from .length import module_colength, relative_length
from .monomial import MonomialIdeal, krull_dimension, power, product_all
from .multiplicity import (
    CLASSICAL,
    GENERAL,
    MultiplicityTable,
    evaluate_G,
    general_mixed_multiplicities,
    mixed_multiplicities,
    table_from_coefficients,
)
from .polyfit import compositions, simplex_grid, solve_homogeneous
from .report import EVIDENCE, FAIL, PASS, CheckReport, combine_verdicts

EXACT = "exact-noetherian"
SEQUENCE = "sequence"
DEFAULT_Q_MAX = 12
DEFAULT_TOLERANCE = Fraction(1, 20)


class StructuralError(AssertionError):
    """A general table carries a term without t0, which the theory forbids."""


def default_horizon(d: int) -> int:
    return {1: 48, 2: 24, 3: 12}.get(d, 8)


def _approx(x) -> str:
    return f"{float(x):.6g}"


@dataclass
class LimitEstimate:
    value: Fraction
    mode: str
    samples: list[tuple[int, Fraction]] = field(default_factory=list)
    period: int | None = None
    diagnostics: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.mode == EXACT

    def to_json(self):
        from .report import to_jsonable

        return {
            "value": to_jsonable(self.value),
            "mode": self.mode,
            "period": self.period,
            "samples": [[m, to_jsonable(r)] for m, r in self.samples],
            "approx": {"value": _approx(self.value), "samples": [_approx(r) for _, r in self.samples]},
            "diagnostics": to_jsonable(self.diagnostics),
            "warnings": list(self.warnings),
        }


def sequence_diagnostics(samples: Sequence[tuple[int, Fraction]], k: int = 4) -> dict:
    ratios = [r for _, r in samples]
    changes = []
    for a, b in zip(ratios[-k - 1 : -1], ratios[-k:]):
        changes.append(abs(b - a) / abs(b) if b else abs(b - a))
    steps = [b - a for a, b in zip(ratios, ratios[1:])]
    if all(s <= 0 for s in steps):
        trend = "nonincreasing"
    elif all(s >= 0 for s in steps):
        trend = "nondecreasing"
    else:
        trend = "mixed"
    return {
        "trend": trend,
        "approx": {"last_relative_changes": [_approx(c) for c in changes]},
    }


def _check_families(families: Sequence[GradedFamily]):
    if not families:
        raise ValueError("need at least one family")
    ring = families[0].ring
    for F in families:
        if F.ring != ring:
            raise ValueError("families live in different rings")
    return ring


def _module_degree(Q: MonomialIdeal | None, d: int, degree: int | None) -> int:
    if degree is not None:
        return degree
    return d


def _resolve_period(families, strategy, q_max, horizon, warnings):
    if strategy == SEQUENCE:
        return None
    if strategy != EXACT and strategy != "exact":
        raise ValueError(f"unknown strategy {strategy!r}")
    q = common_period(families, q_max, horizon)
    if q is None:
        warnings.append(f"no common period up to q_max={q_max} at horizon {horizon}; fell back to sequence mode")
    return q


@lru_cache(maxsize=1024)
def _period_table(Q, families: tuple, q: int, degree: int) -> MultiplicityTable:
    return mixed_multiplicities(Q, [F.term(q) for F in families], degree=degree)


@lru_cache(maxsize=1024)
def _general_period_table(I: GradedFamily, Js: tuple, q: int) -> MultiplicityTable:
    return general_mixed_multiplicities(I.term(q), [J.term(q) for J in Js])


# ---------------------------------------------------------------------------
# m-primary families


def family_G_value(
    Q: MonomialIdeal | None,
    families: Sequence[GradedFamily],
    point: Sequence[int],
    strategy: str = EXACT,
    horizon: int | None = None,
    q_max: int = DEFAULT_Q_MAX,
    degree: int | None = None,
) -> LimitEstimate:
    """lim_m lambda(M / prod_i I(i)_{m m_i} M) / m^degree, with M = R/Q."""
    families = tuple(families)
    ring = _check_families(families)
    if len(point) != len(families):
        raise ValueError("point arity does not match the number of families")
    d = ring.dimension
    degree = _module_degree(Q, d, degree)
    horizon = horizon or default_horizon(d)
    warnings: list[str] = []
    q = _resolve_period(families, strategy, q_max, horizon, warnings)
    if q is not None:
        table = _period_table(Q, families, q, degree)
        value = evaluate_G(table, point) / Fraction(q) ** degree
        return LimitEstimate(value, EXACT, period=q, warnings=warnings)
    samples = []
    for m in range(1, horizon + 1):
        ideal = product_all([F.term(m * k) for F, k in zip(families, point)], ring=ring)
        samples.append((m, Fraction(module_colength(Q, ideal), m**degree)))
    return LimitEstimate(samples[-1][1], SEQUENCE, samples=samples, diagnostics=sequence_diagnostics(samples), warnings=warnings)


def family_mixed_multiplicities(
    Q: MonomialIdeal | None,
    families: Sequence[GradedFamily],
    strategy: str = EXACT,
    horizon: int | None = None,
    q_max: int = DEFAULT_Q_MAX,
    degree: int | None = None,
) -> MultiplicityTable:
    """e_d(R/Q; I(1)..I(s)) for m-primary graded families.

    The limit polynomial is homogeneous, so it is recovered from its values on
    the grid 1 + k with |k| = degree.
    """
    families = tuple(families)
    ring = _check_families(families)
    d = ring.dimension
    degree = _module_degree(Q, d, degree)
    s = len(families)
    if Q is not None and Q.is_unit():
        return table_from_coefficients(CLASSICAL, degree, s, {})
    if Q is not None and degree > krull_dimension(Q):
        return table_from_coefficients(CLASSICAL, degree, s, {})
    grid = simplex_grid(s, degree)
    estimates = [family_G_value(Q, families, g, strategy, horizon, q_max, degree) for g in grid]
    exact = all(e.exact for e in estimates)
    coeffs = solve_homogeneous(grid, [e.value for e in estimates], degree)
    table = table_from_coefficients(CLASSICAL, degree, s, coeffs, exact=exact)
    if exact:
        table.notes.append(f"exact via common period {estimates[0].period}")
    else:
        table.notes.append("sequence mode: coefficients are approximate")
    for e in estimates:
        for w in e.warnings:
            if w not in table.notes:
                table.notes.append(w)
    return table


def _within(lhs, rhs, tolerance) -> bool:
    return abs(Fraction(lhs) - Fraction(rhs)) <= Fraction(tolerance) * max(1, abs(Fraction(rhs)))


def volume_equals_multiplicity(
    Q: MonomialIdeal | None,
    families: Sequence[GradedFamily],
    type_vector: Sequence[int],
    p_list: Sequence[int],
    strategy: str = EXACT,
    horizon: int | None = None,
    q_max: int = DEFAULT_Q_MAX,
    tolerance=DEFAULT_TOLERANCE,
) -> CheckReport:
    """Compare e_d(M; I(1)_p..I(s)_p) / p^d with the family mixed multiplicity."""
    families = tuple(families)
    ring = _check_families(families)
    d = ring.dimension
    type_vector = tuple(type_vector)
    if sum(type_vector) != d or len(type_vector) != len(families):
        raise ValueError(f"type vector must have {len(families)} entries summing to {d}")
    if not p_list:
        raise ValueError("need at least one p")
    horizon = horizon or default_horizon(d)
    table = family_mixed_multiplicities(Q, families, strategy, horizon, q_max)
    target = table[type_vector]
    q = common_period(families, q_max, horizon) if table.exact else None
    ratios = []
    for p in p_list:
        fixed = mixed_multiplicities(Q, [F.term(p) for F in families])
        ratios.append((p, fixed[type_vector] / Fraction(p) ** d))
    witnesses = []
    if table.exact:
        for p, r in ratios:
            if p % q == 0 and r != target:
                witnesses.append({"p": p, "ratio": r})
        final_ok = _within(ratios[-1][1], target, tolerance)
        verdict = PASS if final_ok and not witnesses else FAIL
    else:
        verdict = EVIDENCE if _within(ratios[-1][1], target, tolerance) else FAIL
    if verdict == FAIL and not witnesses:
        witnesses.append({"p": ratios[-1][0], "ratio": ratios[-1][1]})
    return CheckReport(
        name="volume-multiplicity",
        instance=", ".join(F.describe() for F in families) + f" type {type_vector}",
        verdict=verdict,
        lhs=ratios[-1][1],
        rhs=target,
        mode=EXACT if table.exact else SEQUENCE,
        witnesses=witnesses,
        notes=list(table.notes),
        details={"ratios": [[p, r] for p, r in ratios], "period": q, "limit": target, "tolerance": Fraction(tolerance)},
    )


# ---------------------------------------------------------------------------
# general families: I m-primary, J's arbitrary nonzero


def _j_product(Js: Sequence[GradedFamily], ns: Sequence[int], m: int, ring) -> MonomialIdeal:
    return product_all([J.term(m * n) for J, n in zip(Js, ns)], ring=ring)


def general_family_G_value(
    I: GradedFamily,
    Js: Sequence[GradedFamily],
    point: Sequence[int],
    strategy: str = EXACT,
    horizon: int | None = None,
    q_max: int = DEFAULT_Q_MAX,
) -> LimitEstimate:
    """lim_m lambda(J_{m n} / I_{m n0} J_{m n}) / m^d at point = (n0, n)."""
    Js = tuple(Js)
    ring = _check_families((I,) + Js)
    if len(point) != len(Js) + 1:
        raise ValueError("point must be (n0, n_1..n_r)")
    d = ring.dimension
    horizon = horizon or default_horizon(d)
    warnings: list[str] = []
    q = _resolve_period((I,) + Js, strategy, q_max, horizon, warnings)
    if q is not None:
        table = _general_period_table(I, Js, q)
        value = evaluate_G(table, point) / Fraction(q) ** d
        return LimitEstimate(value, EXACT, period=q, warnings=warnings)
    n0, ns = point[0], point[1:]
    samples = []
    for m in range(1, horizon + 1):
        J = _j_product(Js, ns, m, ring)
        samples.append((m, Fraction(relative_length(J, I.term(m * n0)), m**d)))
    return LimitEstimate(samples[-1][1], SEQUENCE, samples=samples, diagnostics=sequence_diagnostics(samples), warnings=warnings)


def linear_growth_evidence(
    I: GradedFamily,
    Js: Sequence[GradedFamily],
    point: Sequence[int],
    c_max: int = 16,
    horizon: int = 4,
):
    """Search c for the pair ({J_{m n}}, {I_{m n0} J_{m n}}) up to a small horizon."""
    ring = I.ring
    n0, ns = point[0], tuple(point[1:])
    J = Product(*(Stretched(F, n) for F, n in zip(Js, ns))) if Js else unit_family(ring)
    H = Product(Stretched(I, n0), J)
    return linear_growth_search(J, H, c_max, horizon)


def _structural_check(coeffs, exact: bool, tolerance) -> None:
    scale = max((abs(c) for c in coeffs.values()), default=Fraction(0))
    for mono, c in coeffs.items():
        if mono[0] != 0 or c == 0:
            continue
        if exact or abs(c) > Fraction(tolerance) * max(1, scale):
            raise StructuralError(f"limit polynomial has a term without t0: {mono} -> {c}")


def general_family_mixed_multiplicities(
    I: GradedFamily,
    Js: Sequence[GradedFamily],
    strategy: str = EXACT,
    horizon: int | None = None,
    q_max: int = DEFAULT_Q_MAX,
    tolerance=DEFAULT_TOLERANCE,
    growth_horizon: int | None = None,
) -> MultiplicityTable:
    """e_{(d0, d)}(I | J(1)..J(r)) for an m-primary family I and nonzero families J.

    The limit polynomial is homogeneous of degree d in r + 1 variables and
    must vanish on t0 = 0; that structural fact is asserted on every table.
    """
    Js = tuple(Js)
    ring = _check_families((I,) + Js)
    d = ring.dimension
    if d < 1:
        raise ValueError("ring must have positive dimension")
    r = len(Js)
    grid = simplex_grid(r + 1, d)
    estimates = [general_family_G_value(I, Js, g, strategy, horizon, q_max) for g in grid]
    exact = all(e.exact for e in estimates)
    coeffs = solve_homogeneous(grid, [e.value for e in estimates], d)
    _structural_check(coeffs, exact, tolerance)
    table = table_from_coefficients(GENERAL, d - 1, r + 1, coeffs, exact=exact)
    table.notes.append("no term free of t0: verified")
    table.notes.append(f"exact via common period {estimates[0].period}" if exact else "sequence mode: coefficients are approximate")
    for e in estimates:
        for w in e.warnings:
            if w not in table.notes:
                table.notes.append(w)
    if growth_horizon:
        for g in grid:
            witness = linear_growth_evidence(I, Js, g, horizon=growth_horizon)
            table.notes.append(
                f"linear growth at {g}: "
                + (f"c={witness.c} (evidence at horizon N={growth_horizon})" if witness else "no c found")
            )
    return table


# ---------------------------------------------------------------------------
# comparisons


def comparison_check(
    I: GradedFamily,
    Js: Sequence[GradedFamily],
    strategy: str = EXACT,
    horizon: int | None = None,
    q_max: int = DEFAULT_Q_MAX,
    tolerance=DEFAULT_TOLERANCE,
) -> CheckReport:
    """Relate e_{(d0, d)}(R; I, J(1)..J(r)) to lower tables.

    When d0 = 0 it must equal e_d(R; J(1)..J(r)); when d0 > 0 it must equal
    e_{(d0 - 1, d)}(I | J(1)..J(r)).
    """
    Js = tuple(Js)
    ring = _check_families((I,) + Js)
    d = ring.dimension
    horizon = horizon or default_horizon(d)
    for F in (I,) + Js:
        if not F.is_m_primary(min(horizon, 4)):
            raise ValueError(f"{F.describe()} is not m-primary")
    full = family_mixed_multiplicities(None, (I,) + Js, strategy, horizon, q_max)
    general = general_family_mixed_multiplicities(I, Js, strategy, horizon, q_max, tolerance)
    lower = family_mixed_multiplicities(None, Js, strategy, horizon, q_max) if Js else None
    exact = full.exact and general.exact and (lower is None or lower.exact)
    lhs, rhs, witnesses, verdicts = {}, {}, [], []
    for key in compositions(d, len(Js) + 1):
        d0, rest = key[0], key[1:]
        left = full[key]
        if d0 == 0:
            right = lower[rest]
        else:
            right = general[(d0 - 1,) + rest]
        lhs[key], rhs[key] = left, right
        if exact:
            ok = left == right
            verdicts.append(PASS if ok else FAIL)
        else:
            ok = _within(left, right, tolerance)
            verdicts.append(EVIDENCE if ok else FAIL)
        if not ok:
            witnesses.append({"type": key, "lhs": left, "rhs": right})
    return CheckReport(
        name="comparison",
        instance=f"{I.describe()} | " + ", ".join(J.describe() for J in Js),
        verdict=combine_verdicts(verdicts),
        lhs=lhs,
        rhs=rhs,
        mode=EXACT if exact else SEQUENCE,
        witnesses=witnesses,
    )


def double_limit_check(
    Is: Sequence[GradedFamily],
    Js: Sequence[GradedFamily],
    m_point: Sequence[int],
    n_point: Sequence[int],
    p_factor: int = 8,
    m_value: int = 8,
    q_max: int = DEFAULT_Q_MAX,
    horizon: int | None = None,
    tolerance=DEFAULT_TOLERANCE,
) -> CheckReport:
    """Inner/outer double limit against the single limit.

    At p a multiple of the common period the fixed ideals are
    I' = prod_i I(i)_p^{m_i} and J(j)_p.  Three numbers are compared: the
    single limit for the families n -> prod_i I(i)_{n m_i}; the exact inner
    limit G_{(I'; J_p)}(1, n) / p^d; and the truncated value
    lambda(J_p^{m n} / I'^m J_p^{m n}) / (p m)^d.
    """
    Is, Js = tuple(Is), tuple(Js)
    ring = _check_families(Is + Js)
    d = ring.dimension
    horizon = horizon or default_horizon(d)
    combined = Product(*(Stretched(F, k) for F, k in zip(Is, m_point)))
    point = (1,) + tuple(n_point)
    single = general_family_G_value(combined, Js, point, EXACT, horizon, q_max)
    q = common_period(Is + Js, q_max, horizon) or 1
    p = p_factor * q
    I_fixed = product_all([power(F.term(p), k) for F, k in zip(Is, m_point)], ring=ring)
    J_fixed = [J.term(p) for J in Js]
    inner_table = general_mixed_multiplicities(I_fixed, J_fixed)
    inner = evaluate_G(inner_table, point) / Fraction(p) ** d
    J_big = product_all([power(J, m_value * n) for J, n in zip(J_fixed, n_point)], ring=ring)
    truncated = Fraction(relative_length(J_big, power(I_fixed, m_value)), (p * m_value) ** d)
    witnesses = []
    verdicts = []
    if single.exact:
        verdicts.append(PASS if inner == single.value else FAIL)
        if inner != single.value:
            witnesses.append({"inner": inner, "single": single.value})
    close = _within(truncated, single.value, tolerance)
    verdicts.append((PASS if single.exact else EVIDENCE) if close else FAIL)
    if not close:
        witnesses.append({"truncated": truncated, "single": single.value})
    return CheckReport(
        name="double-limit",
        instance=", ".join(F.describe() for F in Is) + " | " + ", ".join(J.describe() for J in Js),
        verdict=combine_verdicts(verdicts),
        lhs=truncated,
        rhs=single.value,
        mode=single.mode,
        witnesses=witnesses,
        notes=[f"truncated value at p={p}, m={m_value} within tolerance {tolerance} counts as agreement"],
        details={
            "p": p,
            "m": m_value,
            "period": q,
            "inner_limit": inner,
            "approx": {"truncated": _approx(truncated), "single": _approx(single.value)},
        },
    )
