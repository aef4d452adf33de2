"""Degree-sequence and average-degree lower bounds on the independence number.

Constant-free bounds (Caro-Wei, Caro-Tuza) are exact rationals and are true
lower bounds.  Every bound carrying an existential constant (``c``, ``dk``,
``ck``) defaults that constant to 1 and is labelled ``shape-only``: it is
reported for comparison and never claimed to lie below alpha.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import mpmath

from .caps import cap
from .combinatorics import frac_binom
from .errors import CapacityError, InputError, UndefinedBoundError, WrongUniformityError
from .hypergraph import Hypergraph, exact_alpha, is_linear
from .permutation import run_trials

DPS = 40
SCHEMA = "indepbound/1"
BOUND_FAMILIES = ("triangle-free", "kr-free", "linear-kuniform")


def _mpf(x: Fraction | int) -> mpmath.mpf:
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def caro_wei(G: Hypergraph) -> Fraction:
    """sum_v 1/(d(v) + 1) for a graph."""
    if G.k != 2:
        raise WrongUniformityError(f"Caro-Wei needs a graph (k = 2), got k = {G.k}")
    return sum((Fraction(1, d + 1) for d in G.degrees), Fraction(0))


def caro_tuza(H: Hypergraph) -> Fraction:
    """sum_v 1 / C(d(v) + 1/t, d(v)); isolated vertices contribute 1."""
    if H.k < 2:
        raise WrongUniformityError(f"need k >= 2, got k = {H.k}")
    t = H.t
    cache: dict[int, Fraction] = {}
    total = Fraction(0)
    for d in H.degrees:
        if d not in cache:
            cache[d] = 1 / frac_binom(d, t, d)
        total += cache[d]
    return total


def caro_tuza_simplified(H: Hypergraph, dk: float | mpmath.mpf = 1) -> mpmath.mpf:
    """dk * sum_v (d(v) + 1)^(-1/t)."""
    with mpmath.workdps(DPS):
        dk = mpmath.mpf(dk)
        if dk <= 0:
            raise InputError("dk must be positive")
        return dk * mpmath.fsum(mpmath.root(d + 1, H.t) ** -1 for d in H.degrees)


def _log_D(H: Hypergraph) -> tuple[Fraction, mpmath.mpf]:
    D = H.average_degree()
    if D <= 1:
        raise UndefinedBoundError(f"average degree {D} <= 1 makes log D non-positive")
    return D, mpmath.log(_mpf(D))


def degree_sequence_bound(
    H: Hypergraph,
    epsilon: float | Fraction | mpmath.mpf,
    c: float | mpmath.mpf = 1,
    family: str = "triangle-free",
) -> mpmath.mpf:
    """Degree-sequence bound for one of the three families.

    triangle-free    c log D         sum 1/max(D^eps, d(v))
    kr-free          c log D/loglogD sum 1/max(D^eps, d(v))
    linear-kuniform  c (log D)^(1/t) sum 1/max(D^(eps/t), d(v)^(1/t))

    The family hypothesis is not checked here; see :func:`check_family`.
    """
    if family not in BOUND_FAMILIES:
        raise InputError(f"unknown family {family!r}")
    with mpmath.workdps(DPS):
        eps = mpmath.mpf(epsilon) if not isinstance(epsilon, Fraction) else _mpf(epsilon)
        if not 0 <= eps < 1:
            raise InputError(f"epsilon must lie in [0, 1), got {epsilon}")
        D, logD = _log_D(H)
        Dm = _mpf(D)
        c = mpmath.mpf(c)
        if family == "linear-kuniform":
            t = H.t
            floor_ = mpmath.power(Dm, eps / t)
            terms = (1 / max(floor_, mpmath.root(d, t)) for d in H.degrees)
            return c * mpmath.root(logD, t) * mpmath.fsum(terms)
        floor_ = mpmath.power(Dm, eps)
        total = mpmath.fsum(1 / max(floor_, mpmath.mpf(d)) for d in H.degrees)
        if family == "triangle-free":
            return c * logD * total
        if D <= math.e:
            raise UndefinedBoundError(f"average degree {D} <= e makes log log D non-positive")
        return c * logD / mpmath.log(logD) * total


def average_degree_bound(
    H: Hypergraph, c: float | mpmath.mpf = 1, family: str = "triangle-free"
) -> mpmath.mpf:
    """The regular-case counterpart: c n log D / D, divided by log log D for K_r-free,
    and c n (log D / D)^(1/t) for linear hypergraphs."""
    if family not in BOUND_FAMILIES:
        raise InputError(f"unknown family {family!r}")
    with mpmath.workdps(DPS):
        D, logD = _log_D(H)
        Dm = _mpf(D)
        c = mpmath.mpf(c)
        if family == "linear-kuniform":
            return c * H.n * mpmath.root(logD / Dm, H.t)
        value = c * H.n * logD / Dm
        if family == "triangle-free":
            return value
        if D <= math.e:
            raise UndefinedBoundError(f"average degree {D} <= e makes log log D non-positive")
        return value / mpmath.log(logD)


def spencer_bound(H: Hypergraph, ck: float | mpmath.mpf = 1) -> mpmath.mpf:
    """ck * n / D^(1/t); with no edges the bound is n itself."""
    with mpmath.workdps(DPS):
        if H.m == 0:
            return mpmath.mpf(H.n)
        return mpmath.mpf(ck) * H.n / mpmath.root(_mpf(H.average_degree()), H.t)


def _adjacency(G: Hypergraph) -> list[int]:
    adj = [0] * G.n
    for u, v in G.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def has_clique(G: Hypergraph, r: int) -> bool:
    """True iff the graph contains K_r."""
    adj = _adjacency(G)

    def grow(size: int, cand: int) -> bool:
        if size == r:
            return True
        if cand.bit_count() < r - size:
            return False
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            # only later vertices, so every clique is seen once
            if grow(size + 1, cand & adj[v]):
                return True
        return False

    return grow(0, (1 << G.n) - 1)


def check_family(H: Hypergraph, family: str, r: int = 3) -> bool:
    """Validate the structural hypothesis of a bound family."""
    if family == "linear-kuniform":
        return is_linear(H)
    if family == "triangle-free":
        r = 3
    elif family != "kr-free":
        raise InputError(f"unknown family {family!r}")
    if H.k != 2:
        raise WrongUniformityError(f"{family} is a graph family; got k = {H.k}")
    limit = cap("max_clique")
    if r > limit:
        raise CapacityError(f"clique size {r} exceeds the cap {limit}")
    if r < 2:
        raise InputError(f"r must be >= 2, got {r}")
    return not has_clique(H, r)


def threshold_from_epsilon(D: Fraction, epsilon: float | Fraction) -> int:
    """A = ceil(D^eps), at least 1."""
    with mpmath.workdps(DPS):
        eps = _mpf(epsilon) if isinstance(epsilon, Fraction) else mpmath.mpf(epsilon)
        value = mpmath.power(_mpf(D), eps) if D > 0 else mpmath.mpf(1)
        A = int(mpmath.ceil(value - mpmath.mpf(10) ** -30))
    return max(A, 1)


def eps0_crossover(build, sizes) -> int | None:
    """Smallest size after which the eps = 0 triangle-free bound exceeds n.

    ``build(size)`` returns the graph; returns the first size s in ``sizes``
    from which every later size also overshoots, or None if the last size
    does not.
    """
    start = None
    for s in sizes:
        G = build(s)
        try:
            over = degree_sequence_bound(G, 0, 1, "triangle-free") > G.n
        except UndefinedBoundError:
            over = False
        if over and start is None:
            start = s
        elif not over:
            start = None
    return start


# -- reports ------------------------------------------------------------------------


def _format_value(value: Any) -> tuple[str, float]:
    if isinstance(value, Fraction):
        return str(value), float(value)
    if isinstance(value, int):
        return str(value), float(value)
    with mpmath.workdps(DPS):
        return mpmath.nstr(value, 30), float(value)


@dataclass
class BoundRecord:
    name: str
    params: dict
    value: Any
    label: str  # "exact" or "shape-only"
    applicable: bool
    note: str = ""

    def to_dict(self) -> dict:
        text, approx = _format_value(self.value) if self.value is not None else (None, None)
        out = {
            "name": self.name,
            "params": self.params,
            "value": text,
            "value_float": approx,
            "label": self.label,
            "applicable": self.applicable,
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class BoundReport:
    n: int
    m: int
    k: int
    average_degree: Fraction
    records: list[BoundRecord] = field(default_factory=list)
    alpha: int | None = None
    best_found: int | None = None
    ratios: dict[str, Any] = field(default_factory=dict)
    A: int | None = None
    trials: dict | None = None
    notes: list[str] = field(default_factory=list)

    def get(self, name: str) -> BoundRecord:
        for rec in self.records:
            if rec.name == name:
                return rec
        raise KeyError(name)

    def violations(self) -> list[str]:
        """Names of exact-labelled bounds exceeding the computed alpha."""
        if self.alpha is None:
            return []
        return [
            r.name
            for r in self.records
            if r.label == "exact" and r.applicable and r.value is not None and r.value > self.alpha
        ]

    def to_dict(self) -> dict:
        ratios = {}
        for key, value in self.ratios.items():
            text, approx = _format_value(value)
            ratios[key] = {"value": text, "value_float": approx}
        return {
            "schema": SCHEMA,
            "hypergraph": {
                "n": self.n,
                "m": self.m,
                "k": self.k,
                "average_degree": str(self.average_degree),
            },
            "bounds": [r.to_dict() for r in self.records],
            "alpha": self.alpha,
            "best_found": self.best_found,
            "ratios": ratios,
            "A": self.A,
            "trials": self.trials,
            "notes": self.notes,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "params", "value", "value_float", "label", "applicable"])
        for rec in self.records:
            row = rec.to_dict()
            params = ";".join(f"{k}={v}" for k, v in sorted(rec.params.items()))
            writer.writerow(
                [row["name"], params, row["value"], row["value_float"], row["label"], row["applicable"]]
            )
        for key, value in self.ratios.items():
            text, approx = _format_value(value)
            writer.writerow([f"ratio:{key}", "", text, approx, "shape-only", True])
        if self.alpha is not None:
            writer.writerow(["alpha", "", self.alpha, float(self.alpha), "exact", True])
        if self.best_found is not None:
            writer.writerow(["best_found", "", self.best_found, float(self.best_found), "heuristic", True])
        return buf.getvalue()


def _family_flags(H: Hypergraph) -> dict[str, bool]:
    flags = {"general": True, "linear-kuniform": is_linear(H)}
    if H.k == 2:
        flags["triangle-free"] = not has_clique(H, 3)
        flags["kr-free"] = not has_clique(H, 4)
    else:
        flags["triangle-free"] = False
        flags["kr-free"] = False
    return flags


def compare_bounds(
    H: Hypergraph,
    epsilon: float | Fraction = 0.5,
    seed: int = 0,
    trials: int = 0,
    *,
    c: float = 1,
    A: int | None = None,
    r: int = 4,
    max_n: int | None = None,
) -> BoundReport:
    """Evaluate every applicable bound, optionally run the trial pipeline, and
    compute exact alpha when ``H.n`` is within ``max_n``.

    ``ratios`` holds degree-sequence bound / average-degree bound per family.
    ``r`` is the clique order for the K_r-free family (``r <= 6``).
    """
    report = BoundReport(H.n, H.m, H.k, H.average_degree() if H.n else Fraction(0))
    flags = _family_flags(H)
    if H.k == 2 and r != 4:
        flags["kr-free"] = check_family(H, "kr-free", r)

    if H.k == 2:
        report.records.append(BoundRecord("caro_wei", {}, caro_wei(H), "exact", True))
    report.records.append(BoundRecord("caro_tuza", {"t": H.t}, caro_tuza(H), "exact", True))
    report.records.append(
        BoundRecord("caro_tuza_simplified", {"dk": c}, caro_tuza_simplified(H, c), "shape-only", True)
    )
    spencer_note = "no edges: value is n" if H.m == 0 else ""
    report.records.append(
        BoundRecord("spencer", {"ck": c}, spencer_bound(H, c), "shape-only", True, spencer_note)
    )

    families = ["triangle-free", "kr-free"] if H.k == 2 else ["linear-kuniform"]
    for fam in families:
        params = {"epsilon": float(epsilon), "c": c}
        if fam == "kr-free":
            params["r"] = r
        for kind, fn in (
            ("degree_sequence", lambda: degree_sequence_bound(H, epsilon, c, fam)),
            ("average_degree", lambda: average_degree_bound(H, c, fam)),
        ):
            name = f"{kind}[{fam}]"
            try:
                value = fn()
                note = ""
            except UndefinedBoundError as exc:
                value, note = None, str(exc)
            report.records.append(
                BoundRecord(name, dict(params), value, "shape-only", flags[fam] and value is not None, note)
            )
        seq = report.get(f"degree_sequence[{fam}]").value
        avg = report.get(f"average_degree[{fam}]").value
        if seq is not None and avg is not None:
            with mpmath.workdps(DPS):
                report.ratios[fam] = seq / avg

    limit = cap("max_n") if max_n is None else max_n
    if H.n <= limit:
        report.alpha = exact_alpha(H, limit)
    else:
        report.notes.append(f"alpha not computed: n = {H.n} > cap {limit}")

    if trials > 0:
        if A is None:
            A = threshold_from_epsilon(report.average_degree, epsilon)
        batch = run_trials(H, A, trials, seed)
        report.A = A
        report.best_found = batch.best_size
        report.trials = batch.summary()
    bad = report.violations()
    if bad:
        report.notes.append("exact bound above alpha: " + ", ".join(bad))
    return report
