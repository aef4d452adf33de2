"""Generators for the extremal families.

Components are laid out consecutively.  Vertex ``x = (x_0, ..., x_{L-1})`` of
an i-unit on ``[k]^L`` (L = 2^i) gets id ``sum(x_j * k**j)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .caps import cap
from .errors import CapacityError, InputError
from .hypergraph import DegreeSequence, Hypergraph, disjoint_union

FAMILIES = ("bipartite-tower", "i-unit", "family-H", "eps0-counterexample")


def complete_bipartite(a: int, b: int) -> Hypergraph:
    return Hypergraph(2, a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def bipartite_tower(n: int) -> Hypergraph:
    """K_{1,1} + K_{2,2} + ... + K_{2^(n-1), 2^(n-1)}, disjoint."""
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    if 2 ** (n + 1) - 2 > cap("max_vertices") or (4**n - 1) // 3 > cap("max_edges"):
        raise CapacityError(f"bipartite tower of height {n} exceeds the size cap")
    return disjoint_union([complete_bipartite(2**j, 2**j) for j in range(n)])


def bipartite_tower_degrees(n: int) -> DegreeSequence:
    """Degree sequence of :func:`bipartite_tower` straight from its block layout.

    Block j contributes 2 * 2^j vertices of degree 2^j; no edges are built,
    so this works well past the point where the graph itself is too large.
    """
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    degrees: list[int] = []
    for j in range(n):
        degrees.extend([2**j] * (2 * 2**j))
    return DegreeSequence(tuple(degrees), 2)


def encode(coords: tuple[int, ...], k: int) -> int:
    return sum(x * k**j for j, x in enumerate(coords))


def decode(v: int, k: int, length: int) -> tuple[int, ...]:
    out = []
    for _ in range(length):
        v, r = divmod(v, k)
        out.append(r)
    return tuple(out)


def i_unit(k: int, i: int) -> Hypergraph:
    """Axis-parallel lines of the grid [k]^(2^i): linear, 2^i-regular."""
    if k < 2 or i < 0:
        raise InputError(f"need k >= 2 and i >= 0, got k={k}, i={i}")
    dims = 2**i
    n = k**dims
    if n > cap("max_vertices"):
        raise CapacityError(f"i-unit [{k}]^{dims} has {n} vertices, over the cap")
    edges = []
    for axis in range(dims):
        step = k**axis
        for rest in itertools.product(range(k), repeat=dims - 1):
            base = encode(rest[:axis] + (0,) + rest[axis:], k)
            edges.append(tuple(base + x * step for x in range(k)))
    return Hypergraph(k, n, tuple(edges))


def family_H_counts(n: int, k: int, w: int) -> list[int]:
    """Number of i-unit copies for i = 0..n-1: ceil(w k^(2^n) / k^(2^i))."""
    m = w * k ** (2**n)
    return [-(-m // k ** (2**i)) for i in range(n)]


def family_H(n: int, k: int, w: int) -> Hypergraph:
    """Disjoint union over i < n of ceil(m / k^(2^i)) copies of the i-unit, m = w k^(2^n).

    ``w`` is a fixed integer here; growth statements about this family only
    make sense as w increases.
    """
    if n < 1 or w < 1:
        raise InputError(f"need n >= 1 and w >= 1, got n={n}, w={w}")
    counts = family_H_counts(n, k, w)
    total = sum(c * k ** (2**i) for i, c in enumerate(counts))
    if total > cap("max_vertices"):
        raise CapacityError(f"family H({n}) would have {total} vertices, over the cap")
    parts = []
    for i, copies in enumerate(counts):
        unit = i_unit(k, i)
        parts.extend([unit] * copies)
    return disjoint_union(parts)


def family_H_average_degree(n: int, k: int, w: int) -> Fraction:
    """Exact average degree of family_H from the closed-form component sizes."""
    counts = family_H_counts(n, k, w)
    verts = sum(c * k ** (2**i) for i, c in enumerate(counts))
    degree_sum = sum(c * k ** (2**i) * 2**i for i, c in enumerate(counts))
    return Fraction(degree_sum, verts)


def eps0_counterexample(n: int) -> Hypergraph:
    """K_{n/3,n/3} plus n/3 isolated vertices matched into the first part.

    First part: ids [0, n/3); second part: [n/3, 2n/3); matched vertices
    [2n/3, n), with 2n/3 + j joined to j.
    """
    if n < 3 or n % 3:
        raise InputError(f"n must be a positive multiple of 3, got {n}")
    s = n // 3
    edges = [(i, s + j) for i in range(s) for j in range(s)]
    edges += [(j, 2 * s + j) for j in range(s)]
    return Hypergraph(2, n, tuple(edges))


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)

    def build(self) -> Hypergraph:
        p = self.params
        try:
            if self.family == "bipartite-tower":
                return bipartite_tower(p["n"])
            if self.family == "i-unit":
                return i_unit(p["k"], p["i"])
            if self.family == "family-H":
                return family_H(p["n"], p["k"], p.get("w", 1))
            if self.family == "eps0-counterexample":
                return eps0_counterexample(p["n"])
        except KeyError as exc:
            raise InputError(f"family {self.family!r} needs parameter {exc.args[0]!r}") from None
        raise InputError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")

    def label(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.family}({inner})"


def tower_average_degree(n: int) -> Fraction:
    return Fraction(2**n + 1, 3)


def tower_vertex_count(n: int) -> int:
    return 2 ** (n + 1) - 2


def unit_edge_count(k: int, i: int) -> int:
    return 2**i * k ** (2**i - 1)


def asymptotic_family_H_degree(n: int) -> float:
    """The (2^n - 1)/n shape, reported beside the exact value, never equated."""
    return (2**n - 1) / n


def random_linear_hypergraph(n: int, k: int, rng: random.Random, max_edges: int | None = None) -> Hypergraph:
    """Random linear k-uniform hypergraph: scan shuffled k-sets, keep those
    sharing at most one vertex with every kept edge."""
    if n < 0 or k < 2:
        raise InputError(f"need n >= 0 and k >= 2, got n={n}, k={k}")
    candidates = list(itertools.combinations(range(n), k))
    rng.shuffle(candidates)
    limit = len(candidates) if max_edges is None else max_edges
    used_pairs: set[tuple[int, int]] = set()
    edges = []
    for cand in candidates:
        if len(edges) >= limit:
            break
        pairs = list(itertools.combinations(cand, 2))
        if any(p in used_pairs for p in pairs):
            continue
        used_pairs.update(pairs)
        edges.append(cand)
    return Hypergraph(k, n, tuple(edges))
