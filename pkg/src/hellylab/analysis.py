"""Densities, clique counts and the fractional pipeline on concrete families."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import BudgetExceeded, InputError
from .geometry import (
    BoxFamily,
    PointSet,
    count_S_intersecting_tuples,
    max_S_intersecting_subfamily,
    s_pair_graph,
)
from .perms import find_dependent_tuple

KALAI_GUARD = 1e-9
PIPELINE_MAX_BOXES = 24


def kalai_fraction(alpha, d: int) -> float:
    """``1 - (1 - alpha)^(1 / 2d)``; for reporting only."""
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise InputError(f"alpha must lie in [0, 1], got {alpha}")
    if d < 1:
        raise InputError("d must be positive")
    if alpha == 1:
        return 1.0
    return 1.0 - float(1 - alpha) ** (1.0 / (2 * d))


def degeneracy_order(graph: dict) -> list:
    """Vertices in smallest-last order."""
    degree = {v: len(nb) for v, nb in graph.items()}
    removed, order = set(), []
    while len(order) < len(graph):
        v = min((u for u in graph if u not in removed), key=lambda u: (degree[u], u))
        order.append(v)
        removed.add(v)
        for u in graph[v]:
            if u not in removed:
                degree[u] -= 1
    return order


def clique_count(graph: dict, m: int) -> int:
    """Exact number of ``m``-cliques of a graph given as adjacency sets."""
    if m < 1:
        raise InputError("m must be positive")
    if m == 1:
        return len(graph)
    order = degeneracy_order(graph)
    pos = {v: i for i, v in enumerate(order)}
    later = {v: {u for u in graph[v] if pos[u] > pos[v]} for v in graph}

    def extend(cands: set, need: int) -> int:
        if need == 0:
            return 1
        if len(cands) < need:
            return 0
        if need == 1:
            return len(cands)
        return sum(extend(cands & later[u], need - 1) for u in cands)

    return sum(extend(later[v], m - 1) for v in order)


def complete_graph(n: int) -> dict:
    return {v: {u for u in range(1, n + 1) if u != v} for v in range(1, n + 1)}


@dataclass
class PipelineReport:
    n: int
    d: int
    pair_density: Fraction
    tuple_counts: dict
    tuple_densities: dict
    clique_counts: dict
    kalai_fraction: Optional[float]
    max_size: int
    max_fraction: Fraction
    max_members: tuple
    guarantees: dict = field(default_factory=dict)
    double_counting: Optional[dict] = None

    def to_json(self) -> dict:
        out = asdict(self)
        out["pair_density"] = str(self.pair_density)
        out["max_fraction"] = str(self.max_fraction)
        out["max_members"] = list(self.max_members)
        out["tuple_counts"] = {str(k): v for k, v in self.tuple_counts.items()}
        out["tuple_densities"] = {str(k): str(v) for k, v in self.tuple_densities.items()}
        out["clique_counts"] = {str(k): v for k, v in self.clique_counts.items()}
        return out

    @property
    def ok(self) -> bool:
        return all(self.guarantees.values())


def pipeline_report(family: BoxFamily, S: PointSet, N: Optional[int] = None) -> PipelineReport:
    """Exact densities and subfamily sizes along the pair-density pipeline.

    With ``N`` given, also evaluates the double count: every ``N``-clique of
    the S-pair graph containing an S-intersecting ``(d+1)``-tuple forces at
    least ``#N-cliques / C(n-d-1, N-d-1)`` such tuples.  That lower bound is
    only promised when ``N`` is at least the true threshold for dimension ``d``,
    so its ``holds`` flag is informative and does not enter ``guarantees``.
    """
    n, d = len(family), family.dimension
    if n > PIPELINE_MAX_BOXES:
        raise BudgetExceeded(f"pipeline supports at most {PIPELINE_MAX_BOXES} boxes", limit=PIPELINE_MAX_BOXES)
    ps = sorted({p for p in list(range(2, d + 2)) + [2 * d] if p <= n})
    counts = {p: count_S_intersecting_tuples(family, S, p) for p in ps}
    densities = {p: Fraction(counts[p], math.comb(n, p)) for p in ps}
    graph = s_pair_graph(family, S)
    clique_sizes = set(range(2, min(n, d + 1) + 1))
    if N is not None:
        if not d + 1 <= N <= n:
            raise InputError(f"N must lie in {d + 1}..{n}")
        clique_sizes.add(N)
    cliques = {m: clique_count(graph, m) for m in sorted(clique_sizes)}
    size, members, _ = max_S_intersecting_subfamily(family, S)
    fraction = Fraction(size, n)
    kalai = kalai_fraction(densities[2 * d], d) if 2 * d in densities else None
    guarantees = {
        "densities_in_unit_interval": all(0 <= v <= 1 for v in densities.values()),
        "densities_nonincreasing": all(
            densities[a] >= densities[b] for a, b in zip(ps, ps[1:])
        ),
        "pair_cliques_match_pairs": n < 2 or cliques.get(2) == counts.get(2),
    }
    if kalai is not None:
        guarantees["kalai"] = float(fraction) + KALAI_GUARD >= kalai
    report = PipelineReport(
        n=n,
        d=d,
        pair_density=densities.get(2, Fraction(0)),
        tuple_counts=counts,
        tuple_densities=densities,
        clique_counts=cliques,
        kalai_fraction=kalai,
        max_size=size,
        max_fraction=fraction,
        max_members=members,
        guarantees=guarantees,
    )
    if N is not None:
        k = d + 1
        bound = Fraction(cliques[N], math.comb(n - k, N - k))
        alpha_prime = Fraction(cliques[N], math.comb(n, N)) / math.comb(N, k)
        actual = counts.get(k, count_S_intersecting_tuples(family, S, k))
        report.double_counting = {
            "N": N,
            "cliques": cliques[N],
            "alpha_prime": str(alpha_prime),
            "tuple_lower_bound": str(bound),
            "tuple_count": actual,
            "holds": actual >= bound,
        }
    return report


def check_pairwise_forces_tuple(family: BoxFamily, S: PointSet) -> dict:
    """Look for an S-intersecting ``(d+1)``-tuple in a pairwise S-intersecting family.

    Reports both the dependent tuple extracted from the endpoint orders and
    the exact deepest point of S.  The dependent tuple can be shorter than the
    optimum, so only the exact value decides whether the family is a
    counterexample candidate.
    """
    n, d = len(family), family.dimension
    pairwise = n < 2 or count_S_intersecting_tuples(family, S, 2) == math.comb(n, 2)
    out = {"n": n, "d": d, "target": d + 1, "pairwise_S_intersecting": pairwise}
    if not pairwise or n < 2:
        out.update(applicable=False, found=None, counterexample_candidate=False)
        return out
    tup = find_dependent_tuple(family, S, 2)
    size, members, point = max_S_intersecting_subfamily(family, S)
    out.update(
        applicable=True,
        dependent_tuple=list(tup),
        dependent_tuple_size=len(tup),
        max_size=size,
        max_members=list(members),
        witness_point=[str(x) for x in point] if point is not None else None,
        found=size >= d + 1,
        counterexample_candidate=size < d + 1,
    )
    return out
