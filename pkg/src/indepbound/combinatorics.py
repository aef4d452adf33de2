"""Exact binomial arithmetic and the identity verifiers.

Every value here is a :class:`fractions.Fraction` or an ``int``; no floating
point is used anywhere in this module.

Conventions
-----------
``binom(n, r)`` is 0 for ``r < 0``, 1 for ``r == 0`` (even when ``n`` is
negative, so ``binom(-1, 0) == 1``), and 0 whenever ``n < 0`` or ``r > n``
otherwise.  With this rule ``binom(a + i - 1, i)`` at ``a = 0`` is 1 for
``i = 0`` and 0 for ``i >= 1``, which turns the "at least a" inclusion-
exclusion formula into ordinary inclusion-exclusion at ``a = 0``.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Iterator, Sequence
from fractions import Fraction
from typing import NamedTuple

from .errors import InputError


class IdentityCheck(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    equal: bool


class UnitCheck(NamedTuple):
    value: Fraction
    equal_one: bool


class MpieCheck(NamedTuple):
    direct: int
    formula: Fraction
    equal: bool


def binom(n: int, r: int) -> int:
    """Integer binomial coefficient with the zero-outside-range convention."""
    if r < 0:
        return 0
    if r == 0:
        return 1
    if n < 0 or r > n:
        return 0
    return math.comb(n, r)


def multinomial(total: int, parts: Sequence[int]) -> int:
    if any(p < 0 for p in parts) or sum(parts) != total:
        return 0
    out = 1
    remaining = total
    for p in parts:
        out *= math.comb(remaining, p)
        remaining -= p
    return out


def _check_nonneg(**kwargs: int) -> None:
    for name, value in kwargs.items():
        if value < 0:
            raise InputError(f"{name} must be non-negative, got {value}")


def frac_binom(d: int, t: int, a: int) -> Fraction:
    """Fractional binomial C(d + 1/t, a).

    Product of (t(d - j) + 1) for j < a, divided by a! * t**a.
    """
    _check_nonneg(d=d, a=a)
    if t < 1:
        raise InputError(f"t must be >= 1, got {t}")
    num = 1
    for j in range(a):
        num *= t * (d - j) + 1
    return Fraction(num, math.factorial(a) * t**a)


def general_binom(x: Fraction | int, a: int) -> Fraction:
    """Generalised binomial x(x-1)...(x-a+1)/a! for rational x."""
    _check_nonneg(a=a)
    x = Fraction(x)
    num = Fraction(1)
    for j in range(a):
        num *= x - j
    return num / math.factorial(a)


def verify_alternating_reciprocal(d: int, t: int) -> IdentityCheck:
    """sum_r (-1)^r C(d, r)/(tr + 1)  ==  1 / C(d + 1/t, d)."""
    _check_nonneg(d=d)
    if t < 1:
        raise InputError(f"t must be >= 1, got {t}")
    lhs = sum(
        (Fraction((-1) ** r * math.comb(d, r), t * r + 1) for r in range(d + 1)),
        Fraction(0),
    )
    rhs = 1 / frac_binom(d, t, d)
    return IdentityCheck(lhs, rhs, lhs == rhs)


def verify_mpie_unit_sum(a: int, b: int) -> UnitCheck:
    """sum_i (-1)^i C(a + b, a + i) C(a + i - 1, i)  ==  1."""
    _check_nonneg(a=a, b=b)
    value = Fraction(
        sum((-1) ** i * binom(a + b, a + i) * binom(a + i - 1, i) for i in range(b + 1))
    )
    return UnitCheck(value, value == 1)


def at_least_closed_form(d: int, A: int, t: int) -> Fraction:
    """1 - (tA/(tA + 1)) C(d, A) / C(d + 1/t, d - A), for d >= A."""
    return 1 - Fraction(t * A, t * A + 1) * math.comb(d, A) / frac_binom(d, t, d - A)


def _check_dAt(d: int, A: int, t: int) -> None:
    _check_nonneg(d=d, A=A)
    if A > d:
        raise InputError(f"need d >= A, got d={d}, A={A}")
    if t < 1:
        raise InputError(f"t must be >= 1, got {t}")


def at_least_alternating_sum(d: int, A: int, t: int) -> Fraction:
    """sum_r (-1)^r C(d, r + A) C(A + r - 1, r) / (t(r + A) + 1)."""
    _check_dAt(d, A, t)
    return sum(
        (
            Fraction((-1) ** r * binom(d, r + A) * binom(A + r - 1, r), t * (r + A) + 1)
            for r in range(d - A + 1)
        ),
        Fraction(0),
    )


def verify_at_least_sum(d: int, A: int, t: int) -> IdentityCheck:
    lhs = at_least_alternating_sum(d, A, t)
    rhs = at_least_closed_form(d, A, t)
    return IdentityCheck(lhs, rhs, lhs == rhs)


def verify_telescoped_sum(d: int, A: int, t: int) -> IdentityCheck:
    """(1/(tA+1)) sum_r C(A-1+r, A-1) / C(A + 1/t + r, r) against the closed form.

    Requires A >= 1.
    """
    _check_dAt(d, A, t)
    if A < 1:
        raise InputError("the telescoped sum needs A >= 1")
    inv_t = Fraction(1, t)
    total = sum(
        (binom(A - 1 + r, A - 1) / general_binom(A + inv_t + r, r) for r in range(d - A + 1)),
        Fraction(0),
    )
    lhs = total / (t * A + 1)
    rhs = at_least_closed_form(d, A, t)
    return IdentityCheck(lhs, rhs, lhs == rhs)


def verify_mpie(
    sets: Sequence[Iterable], a: int, universe: Iterable | None = None
) -> MpieCheck:
    """Count elements lying in at least ``a`` of ``sets`` two ways.

    ``direct`` counts membership element by element; ``formula`` is the
    alternating sum over N_j = sum over j-subsets M of |intersection of M|.
    ``universe`` defaults to the union of the sets.
    """
    family = [frozenset(s) for s in sets]
    world = frozenset(universe) if universe is not None else frozenset().union(*family)
    if not all(s <= world for s in family):
        raise InputError("every set must be a subset of the universe")
    d = len(family)
    if not 0 <= a <= d:
        raise InputError(f"need 0 <= a <= {d}, got {a}")

    direct = sum(1 for x in world if sum(x in s for s in family) >= a)

    def n_j(j: int) -> int:
        total = 0
        for combo in itertools.combinations(family, j):
            inter = world.intersection(*combo) if combo else world
            total += len(inter)
        return total

    formula = Fraction(
        sum((-1) ** i * binom(a + i - 1, i) * n_j(i + a) for i in range(d - a + 1))
    )
    return MpieCheck(direct, formula, formula == direct)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` non-negative integers."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first, *rest)


def star_count_lhs_k3(d: int, A: int) -> int:
    return sum(
        math.comb(d, a + i)
        * math.comb(a + i, i)
        * 2**i
        * math.factorial(2 * d - 2 * a - i)
        * math.factorial(2 * a + i)
        for a in range(A + 1)
        for i in range(d - a + 1)
    )


def star_count_lhs(d: int, A: int, t: int) -> int:
    """Ordered-count form: orderings of the t*d + 1 star with <= A backward edges."""
    total = 0
    for a in range(A + 1):
        for i in range(d - a + 1):
            for comp in compositions(i, t - 1):
                before = t * a + sum(j * c for j, c in enumerate(comp, start=1))
                weight = 1
                for j, c in enumerate(comp, start=1):
                    weight *= math.comb(t, j) ** c
                total += (
                    math.comb(d, a + i)
                    * multinomial(a + i, (a, *comp))
                    * weight
                    * math.factorial(before)
                    * math.factorial(t * d - before)
                )
    return total


def verify_star_count_identity(which: int, d: int, A: int = 0, t: int = 2) -> IdentityCheck:
    """Check one of the four star-count binomial identities exactly.

    which=1  double sum over (a, i), k = 3 star counts, needs d >= A >= 0
    which=2  sum_i C(d, i) 2^i (2d - i)! i! = (d! 2^d)^2
    which=3  sum_i C(d + i, d) 2^-i = 2^d
    which=4  general-t triple sum, needs d >= A + 1 and t >= 2
    """
    _check_nonneg(d=d, A=A)
    if which == 1:
        if A > d:
            raise InputError(f"identity 1 needs d >= A, got d={d}, A={A}")
        lhs = Fraction(star_count_lhs_k3(d, A))
        rhs = Fraction(
            math.factorial(d) ** 2 * 4 ** (d - A) * (A + 1) * math.comb(2 * A + 1, A)
        )
    elif which == 2:
        lhs = Fraction(
            sum(
                math.comb(d, i) * 2**i * math.factorial(2 * d - i) * math.factorial(i)
                for i in range(d + 1)
            )
        )
        rhs = Fraction((math.factorial(d) * 2**d) ** 2)
    elif which == 3:
        lhs = sum((Fraction(math.comb(d + i, d), 2**i) for i in range(d + 1)), Fraction(0))
        rhs = Fraction(2**d)
    elif which == 4:
        if t < 2:
            raise InputError(f"identity 4 needs t >= 2, got {t}")
        if d < A + 1:
            raise InputError(f"identity 4 needs d >= A + 1, got d={d}, A={A}")
        lhs = Fraction(star_count_lhs(d, A, t))
        threshold = A + 1
        rhs = (
            math.factorial(t * d + 1)
            * Fraction(t * threshold, t * threshold + 1)
            * math.comb(d, threshold)
            / frac_binom(d, t, d - threshold)
        )
    else:
        raise InputError(f"which must be 1, 2, 3 or 4, got {which}")
    return IdentityCheck(lhs, rhs, lhs == rhs)
