"""Generators and searches.

* :func:`lower_bound_family` builds flat boxes spanned by blocks of basis
  vectors, pairwise S-intersecting with small maximum depth.
* :func:`random_family` and friends make seeded test inputs.
* :func:`empirical_n_search` looks for sets ``A`` of at most ``a`` permutations
  of ``[n]`` with ``d_p(A) <= b - 2`` and certifies what it finds.
* :func:`verify_recurrence` checks the step ``(a, b, p) -> (a + 2, b, p + 1)``
  against empirical thresholds.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Optional

import numpy as np

from .errors import BudgetExceeded, InputError
from .geometry import Box, BoxFamily, PointSet, intersect_tuple
from .perms import (
    DependencyResult,
    PermutationSet,
    identity,
    p_tuple_dependency,
    prefix_masks,
)

# -- lower-bound construction -------------------------------------------------


@dataclass(frozen=True)
class LowerBoundDesign:
    d: int
    lines: int
    blocks: tuple  # E_1..E_{d'} as tuples of basis indices (1-based)
    copies: int
    points: tuple  # basis indices lying on two blocks

    def check(self) -> None:
        for i, j in combinations(range(len(self.blocks)), 2):
            if len(set(self.blocks[i]) & set(self.blocks[j])) != 1:
                raise AssertionError(f"blocks {i + 1} and {j + 1} do not meet in one element")
        for k in range(1, self.d + 1):
            if sum(k in b for b in self.blocks) > 2:
                raise AssertionError(f"basis vector {k} lies in three blocks")
        if any(k > self.d or k < 1 for b in self.blocks for k in b):
            raise AssertionError("block uses an index outside [d]")


def lower_bound_design(d: int) -> LowerBoundDesign:
    """Blocks from ``floor(sqrt(d))`` lines in general position.

    Every pair of lines ``i < j`` meets in a point labeled by its own basis
    index; block ``E_i`` holds the labels on line ``i``.  With two lines the
    single shared label is padded by one private label per line.
    """
    if d < 4:
        raise InputError("lower_bound_family needs d >= 4")
    lines = math.isqrt(d)
    label = {}
    for k, pair in enumerate(combinations(range(lines), 2), 1):
        label[pair] = k
    blocks = [sorted(k for pair, k in label.items() if i in pair) for i in range(lines)]
    points = tuple(sorted(label.values()))
    if lines == 2:
        # one shared label only: pad so each block spans a plane
        blocks = [[1, 2], [1, 3]]
    design = LowerBoundDesign(d, lines, tuple(map(tuple, blocks)), d // 2, points)
    design.check()
    return design


def lower_bound_family(d: int):
    """``(family, S, expected_max)`` with all pairs S-intersecting but max depth ``2 * (d // 2) < d + 1``."""
    design = lower_bound_design(d)
    boxes = []
    for block in design.blocks:
        mins = tuple(-1 if k + 1 in block else 0 for k in range(d))
        maxs = tuple(1 if k + 1 in block else 0 for k in range(d))
        boxes.extend([Box(mins, maxs)] * design.copies)
    family = BoxFamily(d, tuple(boxes))
    S = PointSet(d, [tuple(1 if k + 1 == e else 0 for k in range(d)) for e in design.points])
    return family, S, 2 * design.copies


# -- random inputs --------------------------------------------------------------


INTERSECT_MODES = ("none", "pairwise", "p-wise")


def random_family(
    d: int,
    n: int,
    coordinate_range=(0, 12),
    intersect_mode: str = "none",
    seed=None,
    p: int = 2,
    denominator: int = 1,
    rng: Optional[random.Random] = None,
) -> BoxFamily:
    """Seeded random family with coordinates ``k / denominator`` in ``coordinate_range``.

    ``pairwise`` puts every left endpoint at or below every right endpoint on
    each axis; ``p-wise`` is the same for ``p >= 2`` (boxes are 2-Helly) and
    ``none`` for ``p = 1``.
    """
    if rng is None:
        if seed is None:
            raise InputError("random_family needs a seed")
        rng = random.Random(seed)
    if n < 1 or d < 1:
        raise InputError("need n >= 1 and d >= 1")
    if intersect_mode not in INTERSECT_MODES:
        raise InputError(f"intersect_mode must be one of {INTERSECT_MODES}")
    lo, hi = (int(c * denominator) for c in coordinate_range)
    if hi - lo < 1:
        raise InputError("coordinate range is empty")
    pairwise = intersect_mode == "pairwise" or (intersect_mode == "p-wise" and p >= 2)
    bounds = []
    for _ in range(n):
        mins, maxs = [], []
        for _ in range(d):
            if pairwise:
                mid = (lo + hi) // 2
                a, b = rng.randint(lo, mid), rng.randint(mid, hi)
            else:
                a, b = sorted((rng.randint(lo, hi), rng.randint(lo, hi)))
            mins.append(Fraction(a, denominator))
            maxs.append(Fraction(b, denominator))
        bounds.append((mins, maxs))
    return BoxFamily.from_bounds(bounds)


def random_point_set(family: BoxFamily, k: int, rng: random.Random, corner_bias: float = 0.5):
    """``k`` points, each either a corner of a random nonempty intersection or a grid point."""
    d = family.dimension
    lo = min(min(b.mins) for b in family.boxes)
    hi = max(max(b.maxs) for b in family.boxes)
    pts = []
    n = len(family)
    for _ in range(k):
        if rng.random() < corner_bias:
            size = rng.randint(1, min(n, 3))
            common = intersect_tuple(family, rng.sample(range(1, n + 1), size))
            if common is not None:
                pts.append(tuple(rng.choice((common.mins[i], common.maxs[i])) for i in range(d)))
                continue
        span = int((hi - lo) * 2)
        pts.append(tuple(lo + Fraction(rng.randint(0, span), 2) for _ in range(d)))
    return PointSet(d, pts)


def random_instance(d: int, n: int, seed, k_points: Optional[int] = None, **kw):
    rng = random.Random(seed)
    family = random_family(d, n, rng=rng, **kw)
    k = k_points if k_points is not None else rng.randint(0, 2 * n)
    return family, random_point_set(family, k, rng)


def shallow_pair_points(family: BoxFamily, rng: random.Random) -> PointSet:
    """For every pair of boxes, one point of least depth inside their intersection.

    Candidate points are the cell representatives of the family's code, so
    the choice is exact.  Ties are broken at random.
    """
    from .codes import box_code

    code = list(box_code(family).values())
    pts = []
    for pair in combinations(range(1, len(family) + 1), 2):
        options = [c for c in code if pair[0] in c.members and pair[1] in c.members]
        depth = min(len(c.members) for c in options)
        choice = rng.choice([c for c in options if len(c.members) == depth])
        if choice.witness not in pts:
            pts.append(choice.witness)
    return PointSet(family.dimension, pts)


def random_pairwise_S_instance(d: int, n: int, seed):
    """Pairwise-intersecting family with an adversarial S: every pair S-intersecting, S points as shallow as possible."""
    rng = random.Random(seed)
    family = random_family(d, n, coordinate_range=(0, 4 * n), intersect_mode="pairwise", rng=rng)
    return family, shallow_pair_points(family, rng)


# -- empirical n(a, b; p) -------------------------------------------------------


@dataclass
class SearchCertificate:
    n: int
    A: PermutationSet
    claimed: str  # "counterexample" or "threshold"
    p: int
    b: int
    worst: DependencyResult

    def recheck(self) -> bool:
        """Recompute ``d_p(A)`` independently and confirm the claim."""
        value = p_tuple_dependency(self.A, self.p).value
        if value != self.worst.value:
            return False
        if self.claimed == "counterexample":
            return value <= self.b - 2
        return value >= self.b - 1

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "A": [list(s) for s in self.A],
            "claimed": self.claimed,
            "p": self.p,
            "b": self.b,
            "worst": self.worst.to_json(),
        }


DEFAULT_SUPPORT_BUDGET = 100_000_000
_POP = np.array([bin(i).count("1") for i in range(1 << 12)], dtype=np.int8)


class _UpsetTable:
    """``masks[s, P]`` is the up-set of ``P`` under the ``s``-th permutation of ``S_n``."""

    def __init__(self, n: int, p: int):
        self.n, self.p = n, p
        self.perms = list(permutations(range(1, n + 1)))
        self.Ps = list(combinations(range(1, n + 1), p))
        masks = np.zeros((len(self.perms), len(self.Ps)), dtype=np.int64)
        for s, sigma in enumerate(self.perms):
            pref = prefix_masks(sigma)
            for k, P in enumerate(self.Ps):
                masks[s, k] = pref[max(sigma[x - 1] for x in P)]
        self.masks = masks

    def best(self, rows) -> int:
        m = self.masks[0].copy()
        for r in rows:
            m &= self.masks[r]
        return int(_POP[m].max())


_UPSET_CACHE = {}


def _upset_table(n: int, p: int) -> _UpsetTable:
    if n > 12:
        raise BudgetExceeded("permutation search supports n <= 12", limit=12)
    key = (n, p)
    if key not in _UPSET_CACHE:
        _UPSET_CACHE[key] = _UpsetTable(n, p)
    return _UPSET_CACHE[key]


def _scan_prefixes(n: int, p: int, k: int, threshold: int, prefixes) -> tuple:
    """Scan supports ``prefix + (last,)`` with ``last`` ranging past the prefix.

    Returns ``(counterexample_support or None, min_top, argmin_support, checked)``
    where ``top`` is the largest dependent-set size over ``P``.  Stops at the
    first counterexample in lexicographic order.
    """
    table = _upset_table(n, p)
    N = len(table.perms)
    masks = table.masks
    min_top, argmin, checked = None, None, 0
    for prefix in prefixes:
        base = masks[0].copy()
        for r in prefix:
            base &= masks[r]
        start = (prefix[-1] + 1) if prefix else 1
        if k == len(prefix):
            tops = np.array([_POP[base].max()])
            lasts = [None]
        else:
            block = masks[start:N] & base
            tops = _POP[block].max(axis=1)
            lasts = range(start, N)
        checked += len(tops)
        if not len(tops):
            continue
        i = int(np.argmin(tops))
        if min_top is None or tops[i] < min_top:
            min_top = int(tops[i])
            argmin = prefix + ((lasts[i],) if lasts[i] is not None else ())
        bad = np.flatnonzero(tops < threshold)
        if bad.size:
            j = int(bad[0])
            support = prefix + ((lasts[j],) if lasts[j] is not None else ())
            return support, min_top, argmin, checked
    return None, min_top, argmin, checked


def _scan_chunk(args):
    return _scan_prefixes(*args)


def _prefixes(N: int, k: int):
    """Lexicographic ``(k-1)``-prefixes of ``k``-subsets of ``1..N-1``."""
    if k == 0:
        return [()]
    return [c for c in combinations(range(1, N), k - 1) if (c[-1] if c else 0) < N - 1]


def _sample_supports(N: int, k: int, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    out = np.empty((0, k), dtype=np.int64)
    while len(out) < count:
        draw = np.sort(rng.integers(1, N, size=(count - len(out), k)), axis=1)
        if k > 1:
            draw = draw[(np.diff(draw, axis=1) > 0).all(axis=1)]
        out = np.concatenate([out, draw])
    return out[:count]


def _certificate(table: _UpsetTable, support, claimed: str, p: int, b: int) -> SearchCertificate:
    n = table.n
    A = PermutationSet([identity(n)] + [table.perms[r] for r in support], n=n)
    return SearchCertificate(n, A, claimed, p, b, p_tuple_dependency(A, p))


def search_at(
    a: int,
    b: int,
    p: int,
    n: int,
    sample: Optional[int] = None,
    seed: int = 0,
    budget: int = DEFAULT_SUPPORT_BUDGET,
    workers: int = 1,
) -> dict:
    """Look for ``A`` with ``id in A``, ``|A| <= a`` and ``d_p(A) <= b - 2`` in ``S_n``.

    Adding permutations only shrinks dependent sets, so when no counterexample
    exists among supports of the largest allowed size there is none at all.
    Smaller supports are scanned first so certificates stay small.
    """
    if a < 1 or b < 1 or p < 1:
        raise InputError("a, b and p must be positive")
    if n < p:
        raise InputError(f"n must be at least p = {p}")
    start = time.perf_counter()
    table = _upset_table(n, p)
    N = len(table.perms)
    kmax = min(a - 1, N - 1)
    threshold = p + b - 1  # need a dependent set this large to avoid a counterexample
    row = {"n": n, "supports_checked": 0, "sampled": False}
    exhaustive_total = math.comb(N - 1, kmax)
    sizes = range(kmax + 1)
    if exhaustive_total > budget:
        if sample is None:
            raise BudgetExceeded(
                f"{exhaustive_total} supports at n={n} exceed the budget of {budget}", limit=budget
            )
        sizes = range(kmax)  # smaller sizes exhaustively, the top size by sampling
    min_top, argmin = None, None
    for k in sizes:
        prefixes = _prefixes(N, k)
        if workers > 1 and len(prefixes) > workers:
            step = -(-len(prefixes) // (workers * 4))
            chunks = [(n, p, k, threshold, prefixes[i : i + step]) for i in range(0, len(prefixes), step)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_scan_chunk, chunks))
        else:
            results = [_scan_prefixes(n, p, k, threshold, prefixes)]
        hit = None
        for bad, top, arg, checked in results:
            # chunks are in lexicographic order; stop where a serial scan would
            row["supports_checked"] += checked
            if top is not None and (min_top is None or top < min_top):
                min_top, argmin = top, arg
            if bad is not None:
                hit = bad
                break
        if hit is not None:
            row["status"] = "counterexample"
            row["certificate"] = _certificate(table, hit, "counterexample", p, b)
            row["elapsed"] = round(time.perf_counter() - start, 3)
            return row
    if exhaustive_total > budget:
        supports = _sample_supports(N, kmax, sample, seed)
        row["sampled"] = True
        for support in supports:
            top = table.best(support)
            row["supports_checked"] += 1
            if min_top is None or top < min_top:
                min_top, argmin = top, tuple(int(x) for x in support)
            if top < threshold:
                row["status"] = "counterexample"
                row["certificate"] = _certificate(table, argmin, "counterexample", p, b)
                row["elapsed"] = round(time.perf_counter() - start, 3)
                return row
        row["status"] = "none found"
    else:
        row["status"] = "no counterexample"
    row["certificate"] = _certificate(table, argmin, "threshold", p, b)
    row["elapsed"] = round(time.perf_counter() - start, 3)
    return row


def empirical_n_search(
    a: int,
    b: int,
    p: int,
    n_max: int,
    sample: Optional[int] = None,
    seed: int = 0,
    budget: int = DEFAULT_SUPPORT_BUDGET,
    workers: int = 1,
    n_min: Optional[int] = None,
) -> dict:
    """Table of :func:`search_at` rows for ``n = max(p, 2) .. n_max``.

    ``empirical_n`` is the least ``n`` verified exhaustively to have no
    counterexample (the property is inherited by larger ``n``); ``candidate_n``
    also accepts sampled evidence.
    """
    lo = n_min if n_min is not None else max(p, 2)
    rows = [
        search_at(a, b, p, n, sample=sample, seed=seed + n, budget=budget, workers=workers)
        for n in range(lo, n_max + 1)
    ]
    empirical, candidate = _threshold_from_rows(rows)
    return {
        "a": a,
        "b": b,
        "p": p,
        "n_max": n_max,
        "rows": rows,
        "empirical_n": empirical,
        "candidate_n": candidate,
    }


def _threshold_from_rows(rows) -> tuple:
    """Least exhaustive and least sampled-or-exhaustive ``n`` past the last counterexample."""
    empirical = candidate = None
    for row in rows:
        if row["status"] == "counterexample":
            empirical = candidate = None
            continue
        if candidate is None:
            candidate = row["n"]
        if row["status"] == "no counterexample" and empirical is None:
            empirical = row["n"]
    return empirical, candidate


def recurrence_rhs(n_base: int, a: int) -> int:
    """``n + 2 * ceil(n / a) - 1``."""
    return n_base + 2 * (-(-n_base // a)) - 1


def iterated_bound(n_base2: int, a: int, p: int) -> int:
    """Linear bound on ``n(a + 2p - 4, b; p)`` from the base value ``n(a, b; 2)``."""
    return n_base2 + (2 * (-(-n_base2 // a)) - 1) * (p - 2)


def verify_recurrence(
    a: int,
    b: int,
    p: int,
    n_max: int = 6,
    n_values=None,
    sample: Optional[int] = None,
    seed: int = 0,
    budget: int = DEFAULT_SUPPORT_BUDGET,
    workers: int = 1,
    iterate_p_max: int = 6,
) -> dict:
    """Check ``n(a+2, b; p+1) <= n(a,b;p) + 2 ceil(n(a,b;p)/a) - 1`` empirically."""
    start = time.perf_counter()
    base = empirical_n_search(a, b, p, n_max, budget=budget, workers=workers)
    n0 = base["empirical_n"]
    if n0 is None:
        raise InputError(
            f"no exhaustive base value n({a},{b};{p}) found up to n={n_max}; raise --nmax"
        )
    delta = -(-n0 // a)
    rhs = recurrence_rhs(n0, a)
    targets = sorted(set(n_values or [rhs]))
    rows = [
        search_at(a + 2, b, p + 1, n, sample=sample, seed=seed + n, budget=budget, workers=workers)
        for n in targets
        if n >= p + 1
    ]
    at_rhs = next((r for r in rows if r["n"] == rhs), None)
    if at_rhs is None:
        status = "not checked"
    elif at_rhs["status"] == "counterexample":
        status = "violated"
    elif at_rhs["status"] == "no counterexample":
        status = "verified"
    else:
        status = "consistent, not contradicted"
    report = {
        "a": a,
        "b": b,
        "p": p,
        "base": {"n": n0, "rows": base["rows"]},
        "delta": delta,
        "rhs": rhs,
        "target": {"a": a + 2, "b": b, "p": p + 1, "rows": rows},
        "status": status,
        "holds": status != "violated",
        "delta_inequality": {
            "lhs": str(Fraction(n0 + 2 * delta - 1, a + 2)),
            "delta": delta,
            "holds": Fraction(n0 + 2 * delta - 1, a + 2) < delta,
        },
    }
    if p == 2:
        report["iterated_bounds"] = [
            {"p": q, "a": a + 2 * q - 4, "bound": iterated_bound(n0, a, q)}
            for q in range(2, iterate_p_max + 1)
        ]
    report["elapsed"] = round(time.perf_counter() - start, 3)
    return report
