"""Grid runners behind ``indepbound verify``.

Each runner returns a list of check dicts ``{"check", "params", "pass", ...}``;
:func:`build_report` wraps them with pass/fail totals.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .combinatorics import (
    frac_binom,
    general_binom,
    star_count_lhs,
    star_count_lhs_k3,
    verify_alternating_reciprocal,
    verify_at_least_sum,
    verify_mpie,
    verify_mpie_unit_sum,
    verify_star_count_identity,
    verify_telescoped_sum,
)
from .permutation import (
    StarConfig,
    cumulative,
    enumerate_star_distribution,
    p_at_most,
    p_zero,
    q_at_least,
)

SCHEMA = "indepbound/1"


def _check(name: str, params: dict, ok: bool, **extra) -> dict:
    return {"check": name, "params": params, "pass": bool(ok), **extra}


def identity_checks(
    recip_d: int = 12,
    recip_t: int = 5,
    mpie_ab: int = 10,
    at_least_d: int = 10,
    at_least_t: int = 4,
    star_d: int = 10,
    general_d: int = 6,
    general_t: tuple[int, ...] = (2, 3),
) -> list[dict]:
    out = []
    for d in range(recip_d + 1):
        for t in range(1, recip_t + 1):
            out.append(
                _check("alternating_reciprocal", {"d": d, "t": t}, verify_alternating_reciprocal(d, t).equal)
            )
    for a in range(mpie_ab + 1):
        for b in range(mpie_ab + 1):
            out.append(_check("mpie_unit_sum", {"a": a, "b": b}, verify_mpie_unit_sum(a, b).equal_one))
    for d in range(at_least_d + 1):
        for A in range(d + 1):
            for t in range(1, at_least_t + 1):
                params = {"d": d, "A": A, "t": t}
                out.append(_check("at_least_sum", params, verify_at_least_sum(d, A, t).equal))
                if A >= 1:
                    out.append(_check("telescoped_sum", params, verify_telescoped_sum(d, A, t).equal))
    for d in range(star_d + 1):
        for which in (2, 3):
            out.append(
                _check(f"star_count_identity_{which}", {"d": d}, verify_star_count_identity(which, d).equal)
            )
        for A in range(d + 1):
            out.append(
                _check("star_count_identity_1", {"d": d, "A": A}, verify_star_count_identity(1, d, A).equal)
            )
        two = verify_star_count_identity(2, d).lhs
        three = verify_star_count_identity(3, d).lhs
        out.append(
            _check(
                "star_count_3_from_2",
                {"d": d},
                three == two / (math.factorial(d) ** 2 * 2**d),
            )
        )
    for t in general_t:
        for d in range(1, general_d + 1):
            for A in range(d):
                params = {"d": d, "A": A, "t": t}
                out.append(
                    _check("star_count_identity_4", params, verify_star_count_identity(4, d, A, t).equal)
                )
    return out


def fractional_binomial_checks(max_d: int = 10, max_t: int = 5) -> list[dict]:
    out = []
    for d in range(max_d + 1):
        for t in range(1, max_t + 1):
            ok = all(
                frac_binom(d, t, a) == general_binom(d + Fraction(1, t), a) for a in range(d + 1)
            )
            out.append(_check("frac_binom_vs_general", {"d": d, "t": t}, ok))
    for d in range(12):
        ok = all(frac_binom(d, 1, a) == math.comb(d + 1, a) for a in range(d + 2))
        out.append(_check("frac_binom_t1", {"d": d}, ok))
    return out


def star_count_threshold_checks(max_size: int = 11) -> list[dict]:
    """Match each star-count left side, divided by (td+1)!, against enumeration.

    Reports whether it equals P(at most A backward) or P(at most A - 1).
    """
    out = []
    for t in (2, 3):
        for d in range(1, (max_size - 1) // t + 1):
            dist = enumerate_star_distribution(StarConfig(d, t), max_td=max_size)
            for A in range(d + 1):
                if t == 2:
                    lhs = star_count_lhs_k3(d, A)
                    name = "star_count_1_vs_enumeration"
                else:
                    lhs = star_count_lhs(d, A, t)
                    name = "star_count_4_vs_enumeration"
                value = Fraction(lhs, math.factorial(t * d + 1))
                at_most_A = cumulative(dist, A)
                below_A = cumulative(dist, A - 1)
                if value == at_most_A:
                    match = "at_most_A"
                elif value == below_A:
                    match = "at_most_A_minus_1"
                else:
                    match = "neither"
                out.append(
                    _check(name, {"d": d, "A": A, "t": t}, match == "at_most_A", matches=match)
                )
    return out


def probability_checks(max_td: int = 11) -> list[dict]:
    """Closed-form probabilities against full ordering enumeration."""
    out = []
    for t in range(1, max_td):
        for d in range(1, (max_td - 1) // t + 1):
            dist = enumerate_star_distribution(StarConfig(d, t), max_td=max_td)
            total_ok = sum(dist.values()) == 1
            for A in range(1, d + 2):
                ok = total_ok and cumulative(dist, A - 1) == p_at_most(d, t, A - 1)
                out.append(_check("p_at_most_vs_enumeration", {"d": d, "t": t, "A": A}, ok))
    for d in range(1, 13):
        for t in range(1, 6):
            out.append(_check("p_zero_consistency", {"d": d, "t": t}, p_zero(d, t) == p_at_most(d, t, 0)))
    for d in range(11):
        for t in range(1, 5):
            for A in range(d + 1):
                try:
                    q_at_least(d, t, A)
                    ok = True
                except ArithmeticError:
                    ok = False
                out.append(_check("q_at_least_two_forms", {"d": d, "t": t, "A": A}, ok))
    return out


def random_set_system(rng: random.Random, max_sets: int = 6, max_universe: int = 12):
    size = rng.randint(1, max_universe)
    universe = list(range(size))
    count = rng.randint(1, max_sets)
    sets = [[x for x in universe if rng.random() < 0.5] for _ in range(count)]
    return sets, universe


def mpie_checks(count: int = 1000, seed: int = 7) -> list[dict]:
    """Inclusion-exclusion formula against direct counting on random set systems."""
    rng = random.Random(seed)
    out = []
    for idx in range(count):
        sets, universe = random_set_system(rng)
        ok = all(verify_mpie(sets, a, universe).equal for a in range(len(sets) + 1))
        out.append(_check("mpie_random", {"index": idx, "sets": len(sets), "universe": len(universe)}, ok))
    return out


SUITES = ("identities", "probability", "mpie", "all")


def run_suite(suite: str, *, max_td: int = 11, count: int = 1000, seed: int = 7) -> list[dict]:
    if suite == "identities":
        return identity_checks() + fractional_binomial_checks() + star_count_threshold_checks(max_td)
    if suite == "probability":
        return probability_checks(max_td)
    if suite == "mpie":
        return mpie_checks(count, seed)
    if suite == "all":
        return (
            run_suite("identities", max_td=max_td)
            + run_suite("probability", max_td=max_td)
            + run_suite("mpie", count=count, seed=seed)
        )
    raise ValueError(f"unknown suite {suite!r}")


def build_report(suite: str, checks: list[dict], **settings) -> dict:
    failed = [c for c in checks if not c["pass"]]
    return {
        "schema": SCHEMA,
        "suite": suite,
        "settings": settings,
        "total": len(checks),
        "passed": len(checks) - len(failed),
        "failed": len(failed),
        "all_pass": not failed,
        "checks": checks,
    }
