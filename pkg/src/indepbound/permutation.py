"""Random-order backward-edge process and its exact probabilities.

Under a total order of the vertices, an edge is *backward* for v when v is
its last vertex.  Keeping the vertices with at most A - 1 backward edges
gives a set whose induced sub-hypergraph has at most (A - 1)|I| edges; for
A = 1 the set is independent.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import mpmath
import numpy as np

from .caps import cap
from .combinatorics import at_least_alternating_sum, frac_binom
from .errors import CapacityError, InputError
from .hypergraph import Hypergraph, is_independent, is_linear

ASYMPTOTIC_DPS = 40


@dataclass(frozen=True)
class StarConfig:
    """Vertex 0 with d edges; edge j is {0} plus the t vertices 1 + j*t .. (j+1)*t.

    This is the neighbourhood of a degree-d vertex in a linear (t+1)-uniform
    hypergraph: the edge remainders are pairwise disjoint.
    """

    d: int
    t: int

    def __post_init__(self) -> None:
        if self.d < 1 or self.t < 1:
            raise InputError(f"star needs d >= 1 and t >= 1, got d={self.d}, t={self.t}")

    @property
    def size(self) -> int:
        return self.t * self.d + 1

    @property
    def layout(self) -> tuple[tuple[int, ...], ...]:
        t = self.t
        return tuple(tuple(range(1 + j * t, 1 + (j + 1) * t)) for j in range(self.d))

    def hypergraph(self) -> Hypergraph:
        return Hypergraph(self.t + 1, self.size, tuple((0, *rest) for rest in self.layout))


# -- exact probabilities -------------------------------------------------------


def p_at_most(d: int, t: int, Aminus1: int) -> Fraction:
    """Probability that a degree-d vertex of a linear hypergraph has <= A-1 backward edges."""
    if d < 0 or t < 1 or Aminus1 < 0:
        raise InputError(f"need d >= 0, t >= 1, A-1 >= 0; got {d}, {t}, {Aminus1}")
    A = Aminus1 + 1
    if d <= Aminus1:
        return Fraction(1)
    return Fraction(t * A, t * A + 1) * math.comb(d, A) / frac_binom(d, t, d - A)


def p_zero(d: int, t: int) -> Fraction:
    """Probability of no backward edge: 1 / C(d + 1/t, d)."""
    if d < 0 or t < 1:
        raise InputError(f"need d >= 0 and t >= 1, got {d}, {t}")
    return 1 / frac_binom(d, t, d)


def q_at_least_mpie(d: int, t: int, A: int) -> Fraction:
    """At-least-A probability as the generalised inclusion-exclusion sum."""
    return at_least_alternating_sum(d, A, t)


def q_at_least(d: int, t: int, A: int) -> Fraction:
    """Probability of at least A backward edges.

    Computed from the closed form and from the alternating sum; the two must
    agree exactly or ArithmeticError is raised.
    """
    if not 0 <= A <= d:
        raise InputError(f"need 0 <= A <= d, got A={A}, d={d}")
    if A == 0:
        closed = Fraction(1)
    else:
        closed = 1 - p_at_most(d, t, A - 1)
    alternating = q_at_least_mpie(d, t, A)
    if closed != alternating:
        raise ArithmeticError(f"closed form {closed} != alternating sum {alternating}")
    return closed


def asymptotic_ratio(d: int, t: int, A: int) -> mpmath.mpf:
    """p_at_most(d, t, A-1) over (1/(1 + 1/(tA))) * (A/d)^(1/t), at 40 digits."""
    if not 1 <= A <= d or t < 1:
        raise InputError(f"need d >= A >= 1 and t >= 1, got d={d}, A={A}, t={t}")
    exact = p_at_most(d, t, A - 1)
    with mpmath.workdps(ASYMPTOTIC_DPS):
        approx = (1 / (1 + mpmath.mpf(1) / (t * A))) * mpmath.root(mpmath.mpf(A) / d, t)
        return (mpmath.mpf(exact.numerator) / exact.denominator) / approx


def asymptotic_ratio_limit(t: int, A: int) -> mpmath.mpf:
    """Limit of :func:`asymptotic_ratio` as d grows with t and A fixed.

    Equals Gamma(A + 1 + 1/t) / (Gamma(A + 1) * A^(1/t)); it tends to 1 only
    as A grows.
    """
    with mpmath.workdps(ASYMPTOTIC_DPS):
        inv_t = mpmath.mpf(1) / t
        return mpmath.gamma(A + 1 + inv_t) / (mpmath.gamma(A + 1) * mpmath.power(A, inv_t))


# -- brute-force oracles --------------------------------------------------------


def _check_star_cap(cfg: StarConfig, max_td: int | None) -> None:
    limit = cap("max_td") if max_td is None else max_td
    if cfg.size > limit:
        raise CapacityError(f"t*d + 1 = {cfg.size} exceeds the enumeration cap {limit}")


def enumerate_star_distribution(cfg: StarConfig, max_td: int | None = None) -> dict[int, Fraction]:
    """Exact backward-count distribution over all (td+1)! orderings of the star.

    The count depends only on which neighbours precede the centre, so the
    orderings are visited grouped by that predecessor set S; each group holds
    |S|! (td - |S|)! orderings.
    """
    _check_star_cap(cfg, max_td)
    td = cfg.size - 1
    groups = [sum(1 << (v - 1) for v in rest) for rest in cfg.layout]
    fact = [math.factorial(i) for i in range(td + 1)]
    tally = [0] * (cfg.d + 1)
    for before in range(1 << td):
        back = sum(1 for g in groups if before & g == g)
        s = before.bit_count()
        tally[back] += fact[s] * fact[td - s]
    total = math.factorial(td + 1)
    return {b: Fraction(c, total) for b, c in enumerate(tally) if c}


def star_distribution_by_permutations(
    cfg: StarConfig, max_size: int = 9
) -> dict[int, Fraction]:
    """Same distribution, by literally walking every permutation (small stars only)."""
    if cfg.size > max_size:
        raise CapacityError(f"t*d + 1 = {cfg.size} exceeds the permutation-walk cap {max_size}")
    H = cfg.hypergraph()
    tally: dict[int, int] = {}
    for order in itertools.permutations(range(cfg.size)):
        b = backward_count(H, order, 0)
        tally[b] = tally.get(b, 0) + 1
    total = math.factorial(cfg.size)
    return {b: Fraction(c, total) for b, c in sorted(tally.items())}


def cumulative(dist: dict[int, Fraction], upto: int) -> Fraction:
    return sum((p for b, p in dist.items() if b <= upto), Fraction(0))


# -- orderings on a concrete hypergraph ----------------------------------------


def _positions(order: Sequence[int], n: int) -> list[int]:
    if len(order) != n or sorted(order) != list(range(n)):
        raise InputError("order must be a permutation of the vertex ids")
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    return pos


def backward_count(H: Hypergraph, order: Sequence[int], v: int) -> int:
    """Edges through v whose other vertices all come before v in ``order``."""
    H._check_vertex(v)
    pos = _positions(order, H.n)
    return sum(
        1 for i in H.incidence[v] if all(pos[u] < pos[v] for u in H.edges[i] if u != v)
    )


def backward_counts(H: Hypergraph, order: Sequence[int]) -> list[int]:
    pos = _positions(order, H.n)
    counts = [0] * H.n
    for edge in H.edges:
        counts[max(edge, key=pos.__getitem__)] += 1
    return counts


def select_low_backward(H: Hypergraph, order: Sequence[int], A: int) -> frozenset[int]:
    """Vertices with at most A - 1 backward edges under ``order``."""
    if A < 1:
        raise InputError(f"A must be >= 1, got {A}")
    return frozenset(v for v, b in enumerate(backward_counts(H, order)) if b <= A - 1)


def internal_edge_count(H: Hypergraph, S: Iterable[int]) -> int:
    members = set(S)
    return sum(1 for e in H.edges if all(v in members for v in e))


# -- second stage ---------------------------------------------------------------


def _min_degree_greedy(
    vertices: Iterable[int], edges: Iterable[Sequence[int]], rng: np.random.Generator
) -> set[int]:
    """Repeatedly take a minimum-degree vertex (uniform among ties).

    Taking v shrinks every edge through v; once an edge has a single
    untaken vertex u left, u is discarded together with its edges.
    """
    alive = set(vertices)
    remaining: dict[int, set[int]] = {}
    inc: dict[int, set[int]] = {v: set() for v in alive}
    for idx, e in enumerate(edges):
        remaining[idx] = set(e)
        for v in e:
            inc[v].add(idx)
    chosen = {v for v in alive if not inc[v]}
    alive -= chosen

    def drop_edge(idx: int) -> None:
        for w in remaining.pop(idx):
            inc[w].discard(idx)

    while alive:
        low = min(len(inc[v]) for v in alive)
        ties = sorted(v for v in alive if len(inc[v]) == low)
        v = ties[int(rng.integers(len(ties)))]
        alive.discard(v)
        chosen.add(v)
        for idx in list(inc[v]):
            if idx not in remaining:
                continue
            rest = remaining[idx]
            rest.discard(v)
            inc[v].discard(idx)
            if len(rest) == 1:
                (u,) = rest
                alive.discard(u)
                for j in list(inc[u]):
                    drop_edge(j)
        free = {w for w in alive if not inc[w]}
        chosen |= free
        alive -= free
    return chosen


def second_stage(H_induced: Hypergraph, rng: np.random.Generator | int | None = None) -> frozenset[int]:
    """Independent set of ``H_induced`` by min-degree greedy with random ties."""
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    return frozenset(_min_degree_greedy(range(H_induced.n), H_induced.edges, gen))


# -- Monte Carlo trials ---------------------------------------------------------


def trial_rng(seed: int, i: int) -> np.random.Generator:
    """Generator for trial i: numpy's SeedSequence stream splitting of ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(i,)))


class ExpectationCheck(NamedTuple):
    mean: float
    expected: Fraction
    std_error: float
    z: float
    within: bool


@dataclass(frozen=True)
class TrialBatch:
    seed: int
    trials: int
    A: int
    sizes: tuple[int, ...]
    internal_edges: tuple[int, ...]
    final_sizes: tuple[int, ...]
    best_set: frozenset[int]
    best_trial: int
    linear: bool
    expected_size: Fraction | None = field(default=None)

    @property
    def mean_size(self) -> Fraction:
        return Fraction(sum(self.sizes), self.trials)

    @property
    def std_error(self) -> float:
        if self.trials < 2:
            return float("nan")
        return float(np.std(self.sizes, ddof=1) / math.sqrt(self.trials))

    @property
    def best_size(self) -> int:
        return len(self.best_set)

    def expectation_check(self, sigmas: float = 5.0) -> ExpectationCheck | None:
        """Mean |I| against the linear-hypergraph expectation; None if not linear."""
        if self.expected_size is None:
            return None
        mean = float(self.mean_size)
        se = self.std_error
        gap = mean - float(self.expected_size)
        if se == 0:
            z = 0.0 if gap == 0 else math.inf
        else:
            z = gap / se
        return ExpectationCheck(mean, self.expected_size, se, z, abs(z) <= sigmas)

    def summary(self) -> dict:
        out = {
            "seed": self.seed,
            "trials": self.trials,
            "A": self.A,
            "linear": self.linear,
            "mean_I": str(self.mean_size),
            "mean_I_float": float(self.mean_size),
            "std_error": self.std_error,
            "max_internal_edges": max(self.internal_edges),
            "sparsity_ok": all(
                e <= (self.A - 1) * s for e, s in zip(self.internal_edges, self.sizes)
            ),
            "mean_final": float(np.mean(self.final_sizes)),
            "best_size": self.best_size,
            "best_trial": self.best_trial,
            "best_set": sorted(self.best_set),
        }
        check = self.expectation_check()
        if check is None:
            out["expectation"] = None
        else:
            out["expectation"] = {
                "expected": str(check.expected),
                "expected_float": float(check.expected),
                "z": check.z,
                "within_5_se": check.within,
            }
        return out


def expected_low_backward(H: Hypergraph, A: int) -> Fraction:
    """Sum over vertices of p_at_most(d(v), t, A - 1); exact for linear H."""
    return sum((p_at_most(d, H.t, A - 1) for d in H.degrees), Fraction(0))


def run_trials(
    H: Hypergraph, A: int, trials: int, seed: int, second: bool = True
) -> TrialBatch:
    """Sample ``trials`` uniform orders and record the low-backward sets.

    Trial i draws its permutation (numpy's Fisher-Yates shuffle) and the
    greedy tie-breaks from ``trial_rng(seed, i)``, so the batch depends only
    on (H, A, trials, seed).  With ``second=False`` the greedy stage is
    skipped: a trial's final size is |I| when I is already independent and
    0 otherwise.
    """
    if A < 1:
        raise InputError(f"A must be >= 1, got {A}")
    if trials < 1:
        raise InputError(f"trials must be >= 1, got {trials}")
    n, m = H.n, H.m
    E = np.array(H.edges, dtype=np.int64).reshape(m, H.k)
    rows = np.arange(m)
    sizes, internal, finals = [], [], []
    best: frozenset[int] = frozenset()
    best_trial = -1
    for i in range(trials):
        rng = trial_rng(seed, i)
        order = rng.permutation(n)
        pos = np.empty(n, dtype=np.int64)
        pos[order] = np.arange(n)
        if m:
            last = E[rows, np.argmax(pos[E], axis=1)]
            back = np.bincount(last, minlength=n)
        else:
            back = np.zeros(n, dtype=np.int64)
        keep = back <= A - 1
        inside = keep[E].all(axis=1) if m else np.zeros(0, dtype=bool)
        members = np.flatnonzero(keep)
        sizes.append(int(members.size))
        internal.append(int(inside.sum()))
        if not inside.any():
            found = frozenset(members.tolist())
        elif not second:
            found = frozenset()
        else:
            found = frozenset(_min_degree_greedy(members.tolist(), E[inside].tolist(), rng))
        finals.append(len(found))
        if len(found) > len(best):
            best, best_trial = found, i
    if best_trial >= 0 and not is_independent(H, best):
        raise RuntimeError("second stage returned a dependent set")
    linear = is_linear(H)
    return TrialBatch(
        seed=seed,
        trials=trials,
        A=A,
        sizes=tuple(sizes),
        internal_edges=tuple(internal),
        final_sizes=tuple(finals),
        best_set=best,
        best_trial=best_trial,
        linear=linear,
        expected_size=expected_low_backward(H, A) if linear else None,
    )
