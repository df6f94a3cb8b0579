"""Executable structural checks for mixed multiplicities of graded families.

Every check returns a ``CheckReport``.  Exact-mode verdicts are exact rational
(in)equalities; whenever a sequence-mode value enters, a pass is downgraded to
"evidence-only".
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import integer_nthroot

from .families import GradedFamily, Image, Product, common_period
from .length import localized_length
from .limits import (
    DEFAULT_Q_MAX,
    DEFAULT_TOLERANCE,
    EXACT,
    SEQUENCE,
    default_horizon,
    family_mixed_multiplicities,
)
from .monomial import (
    MonomialIdeal,
    colon,
    colon_monomial,
    ideal_sum,
    krull_dimension,
    minimal_primes,
    radical,
)
from .multiplicity import MultiplicityTable
from .report import EVIDENCE, FAIL, PASS, REFUSED, SKIPPED, CheckReport, combine_verdicts


def _module(Q: MonomialIdeal | None) -> MonomialIdeal | None:
    return None if Q is None or Q.is_zero() else Q


def _module_dimension(Q: MonomialIdeal | None, d: int) -> int:
    return d if Q is None or Q.is_zero() else krull_dimension(Q)


def nilradical_hypothesis(Q: MonomialIdeal) -> CheckReport:
    """dim of the nilradical of R/Q must be smaller than dim R/Q.

    The nilradical is rad(Q)/Q, whose annihilator is Q : rad(Q); so its
    dimension is dim R/(Q : rad(Q)).
    """
    if Q.is_unit():
        raise ValueError("the unit ideal has no quotient ring")
    dbar = _module_dimension(Q, Q.dimension)
    rad = radical(Q)
    if rad == Q:
        return CheckReport(
            name="nilradical",
            instance=Q.to_string(),
            verdict=PASS,
            lhs=-1,
            rhs=dbar,
            notes=["reduced quotient: the nilradical is zero"],
        )
    dim_n = krull_dimension(colon(Q, rad))
    return CheckReport(
        name="nilradical",
        instance=Q.to_string(),
        verdict=PASS if dim_n < dbar else FAIL,
        lhs=dim_n,
        rhs=dbar,
        details={"radical": rad.to_string(), "annihilator": colon(Q, rad).to_string()},
    )


def _compare_tables(lhs: MultiplicityTable, rhs_entries: dict, exact: bool, tolerance):
    verdicts, witnesses = [], []
    for key, left in lhs.entries.items():
        right = rhs_entries[key]
        if exact:
            ok = left == right
        else:
            ok = abs(left - right) <= Fraction(tolerance) * max(1, abs(right))
        verdicts.append((PASS if exact else EVIDENCE) if ok else FAIL)
        if not ok:
            witnesses.append({"type": key, "lhs": left, "rhs": right})
    return combine_verdicts(verdicts), witnesses


def _sum_entries(tables_with_weights, keys) -> dict:
    out = {k: Fraction(0) for k in keys}
    for w, table in tables_with_weights:
        for k in keys:
            out[k] += w * table[k]
    return out


def additivity_check(
    Q: MonomialIdeal | None,
    f: Sequence[int],
    families: Sequence[GradedFamily],
    strategy: str = EXACT,
    horizon: int | None = None,
    q_max: int = DEFAULT_Q_MAX,
    tolerance=DEFAULT_TOLERANCE,
) -> CheckReport:
    """Additivity along 0 -> R/(Q:f) -> R/Q -> R/(Q + (f)) -> 0.

    The first map is multiplication by x^f.  Tables are taken in degree
    dim R/Q; the outer modules have at most that dimension.
    """
    families = tuple(families)
    ring = families[0].ring
    d = ring.dimension
    if len(f) != d:
        raise ValueError("monomial f has the wrong arity")
    Qz = ring.zero_ideal() if Q is None else Q
    sub = colon_monomial(Qz, f)
    quo = ideal_sum(Qz, ring.ideal([tuple(f)]))
    dbar = _module_dimension(Qz, d)
    if Qz.is_unit():
        raise ValueError("R/Q is the zero module")
    kw = dict(strategy=strategy, horizon=horizon, q_max=q_max, degree=dbar)
    middle = family_mixed_multiplicities(_module(Qz), families, **kw)
    left = family_mixed_multiplicities(_module(sub), families, **kw)
    right = family_mixed_multiplicities(_module(quo), families, **kw)
    exact = middle.exact and left.exact and right.exact
    rhs = _sum_entries([(1, left), (1, right)], middle.entries)
    verdict, witnesses = _compare_tables(middle, rhs, exact, tolerance)
    return CheckReport(
        name="additivity",
        instance=f"Q={Qz.to_string()}, f={tuple(f)}, families " + ", ".join(F.describe() for F in families),
        verdict=verdict,
        lhs=middle.entries,
        rhs=rhs,
        mode=EXACT if exact else SEQUENCE,
        witnesses=witnesses,
        details={
            "degree": dbar,
            "submodule": sub.to_string(),
            "quotient": quo.to_string(),
            "submodule_table": left.entries,
            "quotient_table": right.entries,
        },
    )


def associativity_check(
    Q: MonomialIdeal,
    families: Sequence[GradedFamily],
    strategy: str = EXACT,
    horizon: int | None = None,
    q_max: int = DEFAULT_Q_MAX,
    tolerance=DEFAULT_TOLERANCE,
) -> CheckReport:
    """Mixed multiplicities of R/Q against the sum over top-dimensional minimal primes.

    Each prime P contributes lambda((R/Q)_P) times the table of R/P, where
    the families are pushed into R/P by killing the variables of P.
    """
    families = tuple(families)
    ring = families[0].ring
    d = ring.dimension
    instance = f"Q={Q.to_string()}, families " + ", ".join(F.describe() for F in families)
    if Q.is_unit():
        raise ValueError("R/Q is the zero module")
    if Q.is_zero():
        return CheckReport("associativity", instance, SKIPPED, notes=["Q = 0: R is a domain, nothing to decompose"])
    dbar = krull_dimension(Q)
    if dbar == 0:
        return CheckReport("associativity", instance, SKIPPED, notes=["dim R/Q = 0: degenerate, skipped"])
    notes = []
    hyp = nilradical_hypothesis(Q)
    if not hyp.passed:
        horizon_ = horizon or default_horizon(d)
        periodic = strategy != SEQUENCE and common_period(families, q_max, horizon_) is not None
        if not periodic:
            return CheckReport(
                "associativity",
                instance,
                REFUSED,
                notes=["nilradical hypothesis fails and the families need sequence mode"],
                details={"hypothesis": hyp.to_json()},
            )
        notes.append(
            "nilradical hypothesis fails; computed anyway because all families are Noetherian, "
            "where the fixed-ideal formula needs no such hypothesis"
        )
    lhs = family_mixed_multiplicities(Q, families, strategy, horizon, q_max, degree=dbar)
    parts = []
    exact = lhs.exact
    contributions = []
    for P in minimal_primes(Q):
        if d - len(P) != dbar:
            continue
        weight = localized_length(Q, P)
        image = [Image(F, P) for F in families]
        table = family_mixed_multiplicities(None, image, strategy, horizon, q_max)
        exact = exact and table.exact
        parts.append((weight, table))
        contributions.append(
            {"prime": ring.variable_names(P), "length": weight, "table": table.entries}
        )
    rhs = _sum_entries(parts, lhs.entries)
    verdict, witnesses = _compare_tables(lhs, rhs, exact, tolerance)
    return CheckReport(
        "associativity",
        instance,
        verdict,
        lhs=lhs.entries,
        rhs=rhs,
        mode=EXACT if exact else SEQUENCE,
        witnesses=witnesses,
        notes=notes,
        details={"degree": dbar, "contributions": contributions, "hypothesis": hyp.verdict},
    )


# ---------------------------------------------------------------------------
# Minkowski inequalities


def _root_bracket(x: Fraction, d: int, digits: int) -> tuple[Fraction, Fraction, bool]:
    """Rational lo <= x^(1/d) <= hi with hi - lo <= 10^-digits; flag if exact."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    p, exact_p = integer_nthroot(x.numerator, d)
    q, exact_q = integer_nthroot(x.denominator, d)
    if exact_p and exact_q:
        r = Fraction(p, q)
        return r, r, True
    scale = 10**digits
    # floor((x * scale^d)^(1/d)) / scale, rounded outward
    num = x.numerator * scale**d
    root, exact = integer_nthroot(num // x.denominator, d)
    lo = Fraction(root, scale)
    hi = Fraction(root + 1, scale)
    return lo, hi, False


def _rational_root(x: Fraction, d: int) -> Fraction | None:
    lo, hi, exact = _root_bracket(x, d, 0)
    return lo if exact else None


def root_sum_inequality(e12, e1, e2, d: int, max_digits: int = 200) -> tuple[str, str]:
    """Decide e12^(1/d) <= e1^(1/d) + e2^(1/d) exactly.

    Returns (verdict, method).  When e2/e1 is a d-th power rho^d the
    comparison is e12/e1 <= (1 + rho)^d.  Otherwise outward-rounded rational
    brackets are refined until they separate the two sides.
    """
    e12, e1, e2 = Fraction(e12), Fraction(e1), Fraction(e2)
    if e1 == 0 or e2 == 0:
        return (PASS if e12 <= e1 + e2 else FAIL), "exact"
    rho = _rational_root(e2 / e1, d)
    if rho is not None:
        return (PASS if e12 / e1 <= (1 + rho) ** d else FAIL), "exact"
    digits = 9
    while digits <= max_digits:
        l_lo, l_hi, _ = _root_bracket(e12, d, digits)
        a_lo, a_hi, _ = _root_bracket(e1, d, digits)
        b_lo, b_hi, _ = _root_bracket(e2, d, digits)
        if l_hi <= a_lo + b_lo:
            return PASS, "certified bracket"
        if l_lo > a_hi + b_hi:
            return FAIL, "certified bracket"
        digits *= 2
    return EVIDENCE, "bracket undecided"


def _inequality(lhs, rhs, exact: bool, tolerance) -> str:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    if exact:
        return PASS if lhs <= rhs else FAIL
    return EVIDENCE if lhs <= rhs + Fraction(tolerance) * max(1, abs(rhs)) else FAIL


def minkowski_check(
    first: GradedFamily,
    second: GradedFamily,
    Q: MonomialIdeal | None = None,
    strategy: str = EXACT,
    horizon: int | None = None,
    q_max: int = DEFAULT_Q_MAX,
    tolerance=DEFAULT_TOLERANCE,
) -> CheckReport:
    """Log-concavity and root-subadditivity of the two-family table.

    With t_i = e_{(i, d-i)}(M; F1, F2) and e1, e2, e12 the multiplicities of
    F1, F2 and F1 F2:
      (i)   t_i^2 <= t_{i+1} t_{i-1}            for 1 <= i <= d-1
      (ii)  t_i t_{d-i} <= e1 e2                for 0 <= i <= d
      (iii) t_i^d <= e1^i e2^(d-i)              for 0 <= i <= d
      (iv)  e12^(1/d) <= e1^(1/d) + e2^(1/d)
    """
    ring = first.ring
    d = _module_dimension(Q, ring.dimension)
    if d < 1:
        raise ValueError("Minkowski inequalities need positive dimension")
    Qm = _module(Q)
    kw = dict(strategy=strategy, horizon=horizon, q_max=q_max, degree=d)
    table = family_mixed_multiplicities(Qm, (first, second), **kw)
    e1 = family_mixed_multiplicities(Qm, (first,), **kw)[(d,)]
    e2 = family_mixed_multiplicities(Qm, (second,), **kw)[(d,)]
    prod_table = family_mixed_multiplicities(Qm, (Product(first, second),), **kw)
    e12 = prod_table[(d,)]
    exact = table.exact and prod_table.exact
    t = [table[(i, d - i)] for i in range(d + 1)]
    items = []

    def record(label, lhs, rhs, verdict, method="exact" if exact else "tolerance"):
        items.append({"item": label, "lhs": lhs, "rhs": rhs, "verdict": verdict, "method": method})

    for i in range(1, d):
        lhs, rhs = t[i] ** 2, t[i + 1] * t[i - 1]
        record(f"(i) i={i}", lhs, rhs, _inequality(lhs, rhs, exact, tolerance))
    for i in range(d + 1):
        lhs, rhs = t[i] * t[d - i], e1 * e2
        record(f"(ii) i={i}", lhs, rhs, _inequality(lhs, rhs, exact, tolerance))
    for i in range(d + 1):
        lhs, rhs = t[i] ** d, e1**i * e2 ** (d - i)
        record(f"(iii) i={i}", lhs, rhs, _inequality(lhs, rhs, exact, tolerance))
    if exact:
        verdict, method = root_sum_inequality(e12, e1, e2, d)
    else:
        lo, hi, _ = _root_bracket(e1, d, 12)
        lo2, hi2, _ = _root_bracket(e2, d, 12)
        verdict, method = _inequality(e12, (hi + hi2) ** d, False, tolerance), "tolerance"
    record("(iv)", e12, {"e1": e1, "e2": e2, "d": d}, verdict, method)
    verdicts = [it["verdict"] for it in items]
    overall = combine_verdicts(verdicts)
    notes = []
    if method == "certified bracket" and overall == PASS:
        notes.append("pass (certified bracket) for (iv)")
    return CheckReport(
        name="minkowski",
        instance=f"{first.describe()}, {second.describe()}" + (f" on R/{Q.to_string()}" if Qm else ""),
        verdict=overall,
        lhs=t,
        rhs={"e1": e1, "e2": e2, "e12": e12},
        mode=EXACT if exact else SEQUENCE,
        witnesses=[it for it in items if it["verdict"] == FAIL],
        notes=notes,
        details={"items": items, "degree": d},
    )
