"""k-uniform hypergraphs on dense integer vertex ids, plus exact oracles.

Vertices are ``0 .. n-1``.  Edges are stored as sorted tuples; internally the
search routines work on integer bitmasks.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import NamedTuple

import mpmath

from .caps import cap
from .errors import CapacityError, EmptyLinkError, InputError, UndefinedBoundError

INEQUALITY_DPS = 60
TIE_TOLERANCE = mpmath.mpf(10) ** -45


@dataclass(frozen=True)
class Hypergraph:
    """Immutable k-uniform hypergraph.

    ``k`` may be 1 only for link graphs of ordinary graphs; user-facing
    loaders insist on ``k >= 2``.
    """

    k: int
    n: int
    edges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InputError(f"uniformity must be >= 1, got {self.k}")
        if self.n < 0:
            raise InputError(f"vertex count must be >= 0, got {self.n}")
        normalized = []
        seen = set()
        for raw in self.edges:
            edge = tuple(sorted(int(v) for v in raw))
            if len(edge) != self.k or len(set(edge)) != self.k:
                raise InputError(f"edge {tuple(raw)} does not have {self.k} distinct vertices")
            if edge[0] < 0 or edge[-1] >= self.n:
                raise InputError(f"edge {edge} has a vertex outside [0, {self.n})")
            if edge in seen:
                raise InputError(f"duplicate edge {edge}")
            seen.add(edge)
            normalized.append(edge)
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def t(self) -> int:
        return self.k - 1

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for edge in self.edges:
            for v in edge:
                deg[v] += 1
        return tuple(deg)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices through each vertex."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for idx, edge in enumerate(self.edges):
            for v in edge:
                inc[v].append(idx)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in edge) for edge in self.edges)

    def degree_sequence(self) -> DegreeSequence:
        return DegreeSequence(self.degrees, self.k)

    def average_degree(self) -> Fraction:
        if self.n == 0:
            raise InputError("average degree of the empty vertex set is undefined")
        return Fraction(self.k * self.m, self.n)

    def induced(self, vertices: Iterable[int]) -> tuple[Hypergraph, tuple[int, ...]]:
        """Sub-hypergraph induced by ``vertices``, relabelled densely.

        Returns the new hypergraph and the tuple mapping new ids to old ones.
        """
        labels = tuple(sorted(set(vertices)))
        for v in labels:
            self._check_vertex(v)
        index = {v: i for i, v in enumerate(labels)}
        edges = [
            tuple(index[v] for v in edge) for edge in self.edges if all(v in index for v in edge)
        ]
        return Hypergraph(self.k, len(labels), tuple(edges)), labels

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InputError(f"vertex {v} outside [0, {self.n})")


@dataclass(frozen=True)
class DegreeSequence:
    """Degrees of a k-uniform hypergraph, usable wherever only degrees matter."""

    degrees: tuple[int, ...]
    k: int
    average: Fraction = field(init=False)

    def __post_init__(self) -> None:
        total = sum(self.degrees)
        if any(d < 0 for d in self.degrees):
            raise InputError("degrees must be non-negative")
        if total % self.k:
            raise InputError(f"degree sum {total} is not a multiple of k = {self.k}")
        n = len(self.degrees)
        avg = Fraction(total, n) if n else Fraction(0)
        object.__setattr__(self, "average", avg)

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def m(self) -> int:
        return sum(self.degrees) // self.k

    @property
    def t(self) -> int:
        return self.k - 1

    def average_degree(self) -> Fraction:
        if not self.degrees:
            raise InputError("average degree of the empty vertex set is undefined")
        return self.average


@dataclass(frozen=True)
class LinkGraph:
    """(k-1)-uniform link of ``center``; ``labels[i]`` is the host id of link vertex i."""

    center: int
    host: Hypergraph
    labels: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.host.n


class InequalityCheck(NamedTuple):
    lhs: Fraction
    rhs: mpmath.mpf
    holds: bool
    indeterminate: bool


def disjoint_union(parts: Sequence[Hypergraph]) -> Hypergraph:
    """Lay the parts out consecutively: part j's vertex v becomes offset_j + v."""
    if not parts:
        raise InputError("disjoint union of nothing")
    k = parts[0].k
    edges: list[tuple[int, ...]] = []
    offset = 0
    for part in parts:
        if part.k != k:
            raise InputError("disjoint union needs equal uniformity")
        edges.extend(tuple(v + offset for v in e) for e in part.edges)
        offset += part.n
    return Hypergraph(k, offset, tuple(edges))


def is_independent(H: Hypergraph, S: Iterable[int]) -> bool:
    members = set(S)
    for v in members:
        H._check_vertex(v)
    if len(members) < H.k:
        return True
    return not any(all(v in members for v in edge) for edge in H.edges)


def is_linear(H: Hypergraph) -> bool:
    """True iff no two edges share two or more vertices."""
    pairs: set[tuple[int, int]] = set()
    for edge in H.edges:
        for i in range(len(edge)):
            for j in range(i + 1, len(edge)):
                pair = (edge[i], edge[j])
                if pair in pairs:
                    return False
                pairs.add(pair)
    return True


def link_graph(H: Hypergraph, v: int) -> LinkGraph:
    H._check_vertex(v)
    through = [H.edges[i] for i in H.incidence[v]]
    if not through:
        raise EmptyLinkError(f"vertex {v} has degree 0; its link is empty")
    rest = [tuple(u for u in edge if u != v) for edge in through]
    labels = tuple(sorted({u for r in rest for u in r}))
    index = {u: i for i, u in enumerate(labels)}
    host = Hypergraph(H.k - 1, len(labels), tuple(tuple(index[u] for u in r) for r in rest))
    return LinkGraph(v, host, labels)


# -- exhaustive search -------------------------------------------------------


def _require_small(H: Hypergraph, max_n: int | None) -> None:
    limit = cap("max_n") if max_n is None else max_n
    if H.n > limit:
        raise CapacityError(
            f"n = {H.n} exceeds the enumeration cap {limit}; "
            "raise it with max_n or INDEPBOUND_CAPS=max_n=..."
        )


def _forced_out(masks: Sequence[int], chosen: int, free: int) -> int:
    """Free vertices whose addition to ``chosen`` would complete an edge."""
    out = 0
    for e in masks:
        rest = e & ~chosen
        if rest and rest & (rest - 1) == 0 and rest & free:
            out |= rest
    return out


def _live_edges(masks: Sequence[int], chosen: int, free: int) -> list[int]:
    """Edges still completable: inside chosen|free and touching free."""
    pool = chosen | free
    return [e for e in masks if e & ~pool == 0 and e & free]


def _greedy_lower(H: Hypergraph) -> int:
    """Deterministic min-degree greedy for an initial alpha bound."""
    chosen = 0
    free = (1 << H.n) - 1
    masks = H.edge_masks
    size = 0
    while free:
        live = _live_edges(masks, chosen, free)
        best_v, best_deg = -1, None
        f = free
        while f:
            low = f & -f
            v = low.bit_length() - 1
            deg = sum(1 for e in live if e & low)
            if best_deg is None or deg < best_deg:
                best_v, best_deg = v, deg
            f ^= low
        chosen |= 1 << best_v
        free &= ~(1 << best_v)
        size += 1
        free &= ~_forced_out(masks, chosen, free)
    return size


def exact_alpha(H: Hypergraph, max_n: int | None = None) -> int:
    """Independence number by branch and bound.

    Branches on the free vertex of largest live degree (include first).  The
    bound subtracts one vertex per pairwise-disjoint live edge remainder,
    since each such remainder must lose at least one vertex.
    """
    _require_small(H, max_n)
    if H.m == 0:
        return H.n
    masks = H.edge_masks
    best = _greedy_lower(H)

    def upper(chosen: int, free: int, live: list[int]) -> int:
        used = 0
        lost = 0
        for e in sorted(live, key=lambda e: (e & free).bit_count()):
            part = e & free
            if part & used == 0:
                used |= part
                lost += 1
        return chosen.bit_count() + free.bit_count() - lost

    def search(chosen: int, free: int) -> None:
        nonlocal best
        live = _live_edges(masks, chosen, free)
        if not live:
            best = max(best, chosen.bit_count() + free.bit_count())
            return
        if upper(chosen, free, live) <= best:
            return
        counts: dict[int, int] = {}
        for e in live:
            f = e & free
            while f:
                low = f & -f
                counts[low] = counts.get(low, 0) + 1
                f ^= low
        pick = max(counts, key=lambda b: (counts[b], -b))
        rest = free & ~pick
        with_v = chosen | pick
        search(with_v, rest & ~_forced_out(masks, with_v, rest))
        search(chosen, rest)

    search(0, (1 << H.n) - 1)
    return best


def independent_counts(H: Hypergraph, max_n: int | None = None) -> list[int]:
    """``counts[j]`` = number of independent sets of size j (empty set included)."""
    _require_small(H, max_n)
    masks = H.edge_masks
    counts = [0] * (H.n + 1)

    def walk(chosen: int, free: int) -> None:
        live = _live_edges(masks, chosen, free)
        size = chosen.bit_count()
        if not live:
            f = free.bit_count()
            for j in range(f + 1):
                counts[size + j] += math.comb(f, j)
            return
        pivot = live[0] & free
        pick = pivot & -pivot
        rest = free & ~pick
        with_v = chosen | pick
        walk(with_v, rest & ~_forced_out(masks, with_v, rest))
        walk(chosen, rest)

    walk(0, (1 << H.n) - 1)
    return counts


def independent_sum(H: Hypergraph, max_n: int | None = None) -> Fraction:
    """Sum of 1/C(n, |J|) over all independent sets J, including the empty set.

    Dropping the empty set lowers the value by exactly 1.
    """
    counts = independent_counts(H, max_n)
    return sum((Fraction(c, math.comb(H.n, j)) for j, c in enumerate(counts) if c), Fraction(0))


def check_hgraph_inequality(H: Hypergraph, max_n: int | None = None) -> InequalityCheck:
    """Compare independent_sum(H) with 2^(-(k+1)/k) * n / m^(1/k).

    The right side is evaluated at 60 significant digits; a difference under
    1e-45 is reported as indeterminate and never as holding.
    """
    if H.m == 0:
        raise UndefinedBoundError("the inequality needs at least one edge")
    lhs = independent_sum(H, max_n)
    with mpmath.workdps(INEQUALITY_DPS):
        k = mpmath.mpf(H.k)
        rhs = mpmath.power(2, -(k + 1) / k) * H.n / mpmath.root(H.m, H.k)
        diff = mpmath.mpf(lhs.numerator) / lhs.denominator - rhs
        tie = abs(diff) < TIE_TOLERANCE
        return InequalityCheck(lhs, rhs, bool(diff > 0) and not tie, bool(tie))


# -- ".hg" text format ---------------------------------------------------------


def parse_hg(text: str) -> Hypergraph:
    """Parse ``k n m`` followed by m lines of k vertex ids; ``#`` starts a comment."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].split()
        if body:
            rows.append((lineno, body))
    if not rows:
        raise InputError("empty hypergraph file")
    lineno, header = rows[0]
    try:
        k, n, m = (int(x) for x in header)
    except ValueError:
        raise InputError(f"line {lineno}: header must be 'k n m'") from None
    if k < 2:
        raise InputError(f"line {lineno}: uniformity must be >= 2")
    if len(rows) - 1 != m:
        raise InputError(f"header declares {m} edges, found {len(rows) - 1}")
    edges = []
    for lineno, body in rows[1:]:
        if len(body) != k:
            raise InputError(f"line {lineno}: expected {k} vertex ids, got {len(body)}")
        try:
            edges.append(tuple(int(x) for x in body))
        except ValueError:
            raise InputError(f"line {lineno}: non-integer vertex id") from None
    try:
        return Hypergraph(k, n, tuple(edges))
    except InputError as exc:
        raise InputError(f"invalid hypergraph: {exc}") from None


def load_hg(path: str | Path) -> Hypergraph:
    return parse_hg(Path(path).read_text())


def from_labelled_edges(k: int, edges: Iterable[Iterable]) -> tuple[Hypergraph, tuple]:
    """Build a hypergraph from arbitrary hashable labels, remapped in sorted order."""
    raw = [tuple(e) for e in edges]
    labels = tuple(sorted({v for e in raw for v in e}, key=repr))
    index = {v: i for i, v in enumerate(labels)}
    return Hypergraph(k, len(labels), tuple(tuple(index[v] for v in e) for e in raw)), labels


def format_hg(H: Hypergraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{H.k} {H.n} {H.m}")
    lines.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(lines) + "\n"


def dump_hg(H: Hypergraph, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_hg(H, comment))
