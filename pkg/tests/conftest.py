import itertools
import math
import random
from fractions import Fraction

import pytest

from indepbound.constructions import random_linear_hypergraph
from indepbound.hypergraph import Hypergraph

# filled by the acceptance tests, echoed in the terminal summary
ACCEPTANCE_RESULTS: dict[int, str] = {}


def brute_alpha(H):
    """Largest subset containing no edge, by plain subset enumeration."""
    edges = [set(e) for e in H.edges]
    for size in range(H.n, -1, -1):
        for S in itertools.combinations(range(H.n), size):
            members = set(S)
            if not any(e <= members for e in edges):
                return size
    return 0


def brute_independent_sum(H):
    edges = [set(e) for e in H.edges]
    total = Fraction(0)
    for size in range(H.n + 1):
        for S in itertools.combinations(range(H.n), size):
            if not any(e <= set(S) for e in edges):
                total += Fraction(1, math.comb(H.n, size))
    return total


def all_graphs(max_n):
    """Every labelled graph on n <= max_n vertices (all edge subsets of K_n)."""
    for n in range(1, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            yield Hypergraph(2, n, tuple(p for j, p in enumerate(pairs) if mask >> j & 1))


def random_linear_triples(count, seed, max_n=12):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(3, max_n)
        yield random_linear_hypergraph(n, 3, rng, max_edges=rng.randint(1, 40))


@pytest.fixture
def triangle():
    return Hypergraph(2, 3, ((0, 1), (1, 2), (0, 2)))


@pytest.fixture
def triple():
    return Hypergraph(3, 3, ((0, 1, 2),))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[number])
