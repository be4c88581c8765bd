"""Randomized and exhaustive invariant suites.

Each property is a function ``(rng, trials) -> PropertyResult``.  Seeds are
derived from the run seed and the property name, so every property is
reproducible on its own and independent of execution order.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain, combinations, permutations
from typing import Optional

import numpy as np

from . import analysis, codes, constructions, geometry, perms
from .geometry import BoxFamily, PointSet


@dataclass
class PropertyResult:
    name: str
    trials: int
    failures: int = 0
    example: Optional[object] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def fail(self, example) -> None:
        self.failures += 1
        if self.example is None:
            self.example = example

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "failures": self.failures,
            "passed": self.passed,
            "example": self.example,
        }


def _rand_perm(rng: random.Random, n: int) -> tuple:
    p = list(range(1, n + 1))
    rng.shuffle(p)
    return tuple(p)


def _rand_subset(rng: random.Random, n: int, min_size: int = 1) -> tuple:
    k = rng.randint(min_size, n)
    return tuple(sorted(rng.sample(range(1, n + 1), k)))


def _nonempty_subsets(n: int):
    items = range(1, n + 1)
    return chain.from_iterable(combinations(items, k) for k in range(1, n + 1))


def _js(x):
    """Best-effort JSON-friendly rendering of a counterexample."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_js(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _js(v) for k, v in x.items()}
    if isinstance(x, BoxFamily):
        return [[_js(b.mins), _js(b.maxs)] for b in x.boxes]
    if isinstance(x, PointSet):
        return _js(x.points)
    return x


# -- core geometry ----------------------------------------------------------------


def prop_intersection_monotone(rng, trials):
    res = PropertyResult("geometry.intersection_monotone", trials)
    for _ in range(trials):
        d, n = rng.randint(1, 4), rng.randint(2, 8)
        F = constructions.random_family(d, n, rng=rng, intersect_mode=rng.choice(["none", "pairwise"]))
        big = _rand_subset(rng, n, 2)
        small = tuple(sorted(rng.sample(big, rng.randint(1, len(big) - 1))))
        ib, isml = geometry.intersect_tuple(F, big), geometry.intersect_tuple(F, small)
        if ib is not None and (isml is None or not isml.contains_box(ib)):
            res.fail(_js({"family": F, "tuple": big, "subtuple": small}))
    return res


def prop_helly_1d(rng, trials):
    """Pairwise S-intersecting families have pairwise intersecting projections, hence a common point per axis."""
    res = PropertyResult("geometry.helly_1d_projection", trials)
    for _ in range(trials):
        d, n = rng.randint(1, 3), rng.randint(2, 7)
        F = constructions.random_family(d, n, rng=rng, intersect_mode="pairwise")
        S = constructions.shallow_pair_points(F, rng)
        if geometry.count_S_intersecting_tuples(F, S, 2) != math.comb(n, 2):
            res.fail(_js({"family": F, "reason": "pairs not S-intersecting"}))
            continue
        for axis in range(d):
            iv = F.projection(axis)
            if max(a for a, _ in iv) > min(b for _, b in iv):
                res.fail(_js({"family": F, "axis": axis}))
    return res


def prop_S_hereditary(rng, trials):
    res = PropertyResult("geometry.S_intersecting_hereditary", trials)
    for _ in range(trials):
        d, n = rng.randint(1, 3), rng.randint(2, 7)
        F, S = constructions.random_instance(d, n, rng.random(), k_points=rng.randint(1, 2 * n))
        tup = _rand_subset(rng, n, 2)
        if not geometry.is_S_intersecting(F, tup, S):
            continue
        for k in range(1, len(tup)):
            for sub in combinations(tup, k):
                if not geometry.is_S_intersecting(F, sub, S):
                    res.fail(_js({"family": F, "S": S, "tuple": tup, "sub": sub}))
                    break
    return res


def prop_max_subfamily_bruteforce(rng, trials):
    res = PropertyResult("geometry.max_subfamily_bruteforce", trials)
    for _ in range(trials):
        d, n = rng.randint(1, 3), rng.randint(1, 12)
        F, S = constructions.random_instance(d, n, rng.random(), k_points=rng.randint(0, 6))
        best = 0
        for k in range(n, 0, -1):
            for tup in combinations(range(1, n + 1), k):
                box = geometry.intersect_tuple(F, tup)
                if box is not None and any(box.contains(s) for s in S):
                    best = k
                    break
            if best:
                break
        size, members, point = geometry.max_S_intersecting_subfamily(F, S)
        if size != best or (point is not None and geometry.point_membership(F, point) != members):
            res.fail(_js({"family": F, "S": S, "brute": best, "got": size}))
    return res


# -- permutation calculus -------------------------------------------------------------


def prop_up_set_downward_closed(rng, trials):
    res = PropertyResult("perms.up_set_contains_P_and_downward_closed", trials)

    def check(sigma, P):
        U = set(perms.up_set(sigma, P))
        if not set(P) <= U:
            return False
        top = max(sigma[u - 1] for u in U)
        return len(U) == top  # a prefix of the sigma order

    for n in range(1, 6):
        for sigma in permutations(range(1, n + 1)):
            for P in _nonempty_subsets(n):
                if not check(sigma, P):
                    res.fail([list(sigma), list(P)])
    for _ in range(trials):
        n = rng.randint(1, 10)
        sigma, P = _rand_perm(rng, n), _rand_subset(rng, n)
        if not check(sigma, P):
            res.fail([list(sigma), list(P)])
    return res


def prop_translation_law(rng, trials):
    """``(sigma tau^-1)(<= tau P) = tau(sigma(<= P))``, exhaustive for n <= 5."""
    res = PropertyResult("perms.translation_law_exhaustive_n5", 0)
    for n in range(1, 6):
        Sn = list(permutations(range(1, n + 1)))
        subsets = list(_nonempty_subsets(n))
        for sigma in Sn:
            pref = perms.prefix_masks(sigma)
            for tau in Sn:
                st = perms.compose(sigma, perms.inverse(tau))
                pref_st = perms.prefix_masks(st)
                for P in subsets:
                    tP = [tau[p - 1] for p in P]
                    lhs = pref_st[max(st[x - 1] for x in tP)]
                    up = pref[max(sigma[p - 1] for p in P)]
                    rhs = 0
                    for s in range(n):
                        if up >> s & 1:
                            rhs |= 1 << (tau[s] - 1)
                    res.trials += 1
                    if lhs != rhs:
                        res.fail([list(sigma), list(tau), list(P)])
    return res


def _dp_table(n: int, kmax: int):
    """``d_p`` for every set of at most ``kmax`` permutations of ``[n]``.

    Returns ``(perm_list, sets, values)``: ``sets`` holds sorted index triples
    padded by repeating the last index, ``values[t, p-1] = d_p``.
    """
    tabs = [constructions._upset_table(n, p) for p in range(1, n + 1)]
    M = np.concatenate([t.masks for t in tabs], axis=1)
    sizes = np.concatenate([np.full(len(t.Ps), p) for p, t in zip(range(1, n + 1), tabs)])
    cuts = np.cumsum([0] + [len(t.Ps) for t in tabs])

    def dp_rows(rows):
        slack = constructions._POP[rows] - sizes
        return np.stack([slack[:, a:b].max(axis=1) for a, b in zip(cuts, cuts[1:])], axis=1)

    N = len(tabs[0].perms)
    sets, values = [], []
    for i in range(N):
        sets.append([i, i, i])
        values.append(dp_rows(M[i : i + 1]))
        if kmax < 2:
            continue
        for j in range(i + 1, N):
            base = M[i] & M[j]
            sets.append([i, j, j])
            values.append(dp_rows(base[None, :]))
            if kmax >= 3 and j + 1 < N:
                sets.extend([i, j, k] for k in range(j + 1, N))
                values.append(dp_rows(base & M[j + 1 :]))
    return tabs[0].perms, np.array(sets, dtype=np.int64), np.concatenate(values).astype(np.int8)


def prop_dp_invariance(rng, trials):
    """``d_p(A) = d_p(A tau^-1)`` for every ``A`` with ``|A| <= 3``, every ``tau``, n <= 5.

    The table is cross-checked against the reference dependency on random sets.
    """
    res = PropertyResult("perms.dp_translation_invariance", 0)
    for n in range(1, 6):
        plist, sets, values = _dp_table(n, 3)
        N = len(plist)
        index = {s: k for k, s in enumerate(plist)}
        lookup = np.full((N, N, N), -1, dtype=np.int64)
        lookup[sets[:, 0], sets[:, 1], sets[:, 2]] = np.arange(len(sets))
        for tau in plist:
            tinv = perms.inverse(tau)
            mul = np.array([index[perms.compose(s, tinv)] for s in plist])
            img = mul[sets]
            img.sort(axis=1)
            # re-pad: duplicates collapse onto the canonical padded form
            img[:, 1] = np.where(img[:, 0] == img[:, 1], img[:, 2], img[:, 1])
            rows = lookup[img[:, 0], img[:, 1], img[:, 2]]
            if (rows < 0).any():
                raise AssertionError("normalized set missing from the d_p table")
            moved = values[rows]
            bad = np.nonzero((moved != values).any(axis=1))[0]
            res.trials += len(sets)
            for t in bad[:1]:
                res.fail([[list(plist[x]) for x in sorted(set(sets[t]))], list(tau)])
            res.failures += max(len(bad) - 1, 0)
        for _ in range(max(1, trials // 5)):
            t = rng.randrange(len(sets))
            A = [plist[x] for x in sorted(set(sets[t].tolist()))]
            p = rng.randint(1, n)
            res.trials += 1
            if perms.p_tuple_dependency(A, p).value != values[t, p - 1]:
                res.fail({"table_mismatch": [list(s) for s in A], "p": p})
    return res


def prop_dependent_set_same_intersection(rng, trials):
    """Boxes indexed by ``P`` and by its dependent set under the endpoint orders share their intersection."""
    res = PropertyResult("perms.dependent_set_same_intersection", trials)
    for _ in range(trials):
        d, n = rng.randint(1, 4), rng.randint(1, 8)
        F = constructions.random_family(
            d, n, rng=rng, coordinate_range=(0, rng.choice([3, 6, 12])),
            intersect_mode=rng.choice(["none", "pairwise"]), denominator=rng.choice([1, 2]),
        )
        table = perms._DependencyTable(perms.axis_orders(F))
        for P in chain.from_iterable(combinations(range(1, n + 1), k) for k in range(1, min(3, n) + 1)):
            dep = perms._mask_to_set(table.mask(P))
            if not set(P) <= set(dep) or geometry.intersect_tuple(F, P) != geometry.intersect_tuple(F, dep):
                res.fail(_js({"family": F, "P": P, "dependent": dep}))
    return res


def prop_path_bounds_dependency(rng, trials):
    res = PropertyResult("perms.path_bounds_dependency", trials)
    for _ in range(trials):
        n = rng.randint(2, 9)
        A = [perms.identity(n)] + [_rand_perm(rng, n) for _ in range(rng.randint(0, 3))]
        path = perms.longest_mono_increasing_path(A)
        G = perms.pattern_graph(A)
        colors = {G.color(u, v) for u, v in zip(path, path[1:])}
        ok_path = len(colors) <= 1 and path == sorted(path)
        b = len(path) - 1
        if not ok_path or perms.p_tuple_dependency(A, 2).value < b - 1:
            res.fail({"A": [list(s) for s in A], "path": path})
    return res


def _restrict_oracle(sigma, v):
    """Restriction of ``sigma`` to ``[n] \\ {v}`` with both sides relabeled in order."""
    keep = [i for i in range(1, len(sigma) + 1) if i != v]
    vals = sorted(sigma[i - 1] for i in keep)
    rank = {x: k for k, x in enumerate(vals, 1)}
    return tuple(rank[sigma[i - 1]] for i in keep)


def _remove_value_oracle(sigma, v):
    rest = [x for x in sigma if x != v]
    rank = {x: k for k, x in enumerate(sorted(rest), 1)}
    return tuple(rank[x] for x in rest)


def prop_quotient_identity(rng, trials):
    """``(sigma/v)(s^{v-}) = sigma(s)^{sigma(v)-}``; exhaustive n <= 6 then random n <= 10."""
    res = PropertyResult("perms.quotient_identity", 0)

    def check(sigma, v):
        q = perms.quotient_perm(sigma, v)
        for s in range(1, len(sigma) + 1):
            if s == v:
                continue
            res.trials += 1
            if q[perms.minus(s, v) - 1] != perms.minus(sigma[s - 1], sigma[v - 1]):
                res.fail([list(sigma), v, s])

    for n in range(2, 7):
        for sigma in permutations(range(1, n + 1)):
            for v in range(1, n + 1):
                check(sigma, v)
    for _ in range(trials):
        n = rng.randint(2, 10)
        check(_rand_perm(rng, n), rng.randint(1, n))
    return res


def prop_delete_quotient_oracles(rng, trials):
    res = PropertyResult("perms.delete_quotient_oracles", trials)
    for _ in range(trials):
        n = rng.randint(2, 10)
        sigma, v = _rand_perm(rng, n), rng.randint(1, n)
        d, q = perms.delete_perm(sigma, v), perms.quotient_perm(sigma, v)
        if d != _remove_value_oracle(sigma, v) or q != _restrict_oracle(sigma, v):
            res.fail([list(sigma), v])
        elif perms.inverse(d) != perms.quotient_perm(perms.inverse(sigma), v):
            res.fail([list(sigma), v, "inverse"])
    return res


def prop_quotient_inclusion(rng, trials):
    """``<A/v; P>^{v+}`` is contained in ``<A; P^{v+}>``, every ``v`` and ``P``; iterated form for random ``V``."""
    res = PropertyResult("perms.quotient_dependency_inclusion", trials)
    for _ in range(trials):
        n = rng.randint(2, 6)
        A = perms.PermutationSet([_rand_perm(rng, n) for _ in range(rng.randint(1, 3))])
        big = perms._DependencyTable(A)
        for v in range(1, n + 1):
            small = perms._DependencyTable(perms.quotient_perms(A, [v]))
            for P in _nonempty_subsets(n - 1):
                lifted = {perms.plus(s, v) for s in perms._mask_to_set(small.mask(P))}
                target = set(perms._mask_to_set(big.mask([perms.plus(x, v) for x in P])))
                if not lifted <= target:
                    res.fail({"A": [list(s) for s in A], "v": v, "P": list(P)})
        if n >= 3:
            V = tuple(sorted(rng.sample(range(1, n + 1), rng.randint(1, n - 2))))
            small = perms.quotient_perms(A, V)
            P = _rand_subset(rng, n - len(V))
            lifted = set(perms.relabel_up(perms.dependent_set(small, P).dependent_set, V, n))
            target = set(perms.dependent_set(A, perms.relabel_up(P, V, n)).dependent_set)
            if not lifted <= target or lifted & set(V):
                res.fail({"A": [list(s) for s in A], "V": list(V), "P": list(P)})
    return res


# -- codes ----------------------------------------------------------------------------


def prop_code_in_chain_superset(rng, trials):
    res = PropertyResult("codes.box_code_within_chain_superset", trials)
    for _ in range(trials):
        n = rng.randint(1, 6)
        F = constructions.random_family(2, n, rng=rng, coordinate_range=(0, 10), intersect_mode="pairwise")
        code = codes.box_code(F)
        sup = codes.chain_code_superset(codes.ChainConfig.from_family(F))
        for key, cw in code.items():
            if geometry.point_membership(F, cw.witness) != key:
                res.fail(_js({"family": F, "codeword": key, "witness": cw.witness}))
        if not set(code) <= sup:
            res.fail(_js({"family": F, "extra": sorted(set(code) - sup)}))
    return res


def prop_atoms_are_prefixes(rng, trials):
    """Atoms of a pairwise-intersecting interval family are order prefixes; all of them when endpoints are distinct."""
    res = PropertyResult("codes.atoms_are_order_prefixes", trials)
    for _ in range(trials):
        n = rng.randint(1, 8)
        distinct = rng.random() < 0.5
        if distinct:
            F = codes.realize_sequences(_rand_perm(rng, n), _rand_perm(rng, n))
        else:
            F = constructions.random_family(1, n, rng=rng, coordinate_range=(0, 8), intersect_mode="pairwise")
        ell, r = perms.axis_order_list(F)
        c1, c2 = codes.chains_from_order(ell, r)
        prefixes = set(c1[1:]) | set(c2[1:])
        got = {a.members for a in codes.axis_atoms(F.projection(0))}
        if not got <= prefixes or (distinct and got != prefixes):
            res.fail(_js({"family": F, "atoms": sorted(got), "prefixes": sorted(prefixes)}))
    return res


def prop_sweep_symmetry(rng, trials):
    """Pair coverage of a chain configuration on [5] is invariant under relabeling [5]."""
    res = PropertyResult("codes.sweep_relabel_invariance", trials)
    for _ in range(trials):
        cfg = codes.ChainConfig.from_sequences(*[_rand_perm(rng, 5) for _ in range(4)])
        pi = _rand_perm(rng, 5)
        a = len(codes.covered_pairs(cfg))
        b = len(codes.covered_pairs(cfg.relabel(pi)))
        if a != b:
            res.fail({"config": [list(map(list, c)) for c in cfg.chains], "pi": list(pi)})
    return res


def prop_pairs_inside_level_three(rng, trials):
    """Every covered pair lies inside some ``omega_3``, so a repeated ``omega_3`` caps coverage at 9."""
    res = PropertyResult("codes.pairs_within_third_level", trials)
    for _ in range(trials):
        seqs = [list(_rand_perm(rng, 5)) for _ in range(4)]
        if rng.random() < 0.5:
            # force two chains to share their third level
            i, j = rng.sample(range(4), 2)
            head = seqs[i][:3]
            rng.shuffle(head)
            seqs[j] = head + [x for x in seqs[j] if x not in head]
        cfg = codes.ChainConfig.from_sequences(*seqs)
        pairs = codes.covered_pairs(cfg)
        level3 = [set(w) for w in cfg.level(3)]
        if any(not any(set(pr) <= w for w in level3) for pr in pairs):
            res.fail({"seqs": seqs})
        distinct = {frozenset(w) for w in level3}
        if len(distinct) < 4 and len(pairs) > 9:
            res.fail({"seqs": seqs, "pairs": len(pairs)})
    return res


# -- constructions ---------------------------------------------------------------------


def prop_lower_bound_family(rng, trials):
    res = PropertyResult("constructions.lower_bound_family", 0)
    for d in list(range(4, 26)) + [36, 49]:
        res.trials += 1
        F, S, expected = constructions.lower_bound_family(d)
        n = len(F)
        pairs_ok = _all_pairs_share_point(F, S)
        size, _, _ = geometry.max_S_intersecting_subfamily(F, S)
        depths = {len(geometry.point_membership(F, s)) for s in S}
        if not (pairs_ok and size == expected == 2 * (d // 2) and size < d + 1 and depths == {expected}):
            res.fail({"d": d, "n": n, "max": size, "depths": sorted(depths)})
    return res


def _all_pairs_share_point(F, S) -> bool:
    n = len(F)
    covered = set()
    for s in S:
        m = geometry.point_membership(F, s)
        covered.update(combinations(m, 2))
    return len(covered) == math.comb(n, 2)


def prop_certificates_recheck(rng, trials):
    res = PropertyResult("constructions.search_certificates_recheck", 0)
    for a in range(1, 4):
        for b in range(1, 4):
            for p in range(1, 4):
                table = constructions.empirical_n_search(a, b, p, n_max=4)
                for row in table["rows"]:
                    res.trials += 1
                    if not row["certificate"].recheck():
                        res.fail({"a": a, "b": b, "p": p, "n": row["n"]})
    return res


# -- analysis ----------------------------------------------------------------------------


def prop_density_monotone(rng, trials):
    res = PropertyResult("analysis.density_nonincreasing", trials)
    for _ in range(trials):
        d, n = rng.randint(1, 3), rng.randint(2, 9)
        F, S = constructions.random_instance(d, n, rng.random())
        dens = [Fraction(geometry.count_S_intersecting_tuples(F, S, p), math.comb(n, p)) for p in range(1, n + 1)]
        if any(x < y for x, y in zip(dens, dens[1:])):
            res.fail(_js({"family": F, "S": S, "densities": dens}))
    return res


def prop_kalai(rng, trials):
    """Exact max S-intersecting fraction is at least the fraction promised by the 2d-tuple density."""
    res = PropertyResult("analysis.kalai_fraction_bound", trials)
    for _ in range(trials):
        d = rng.randint(1, 3)
        n = rng.randint(2 * d, 12)
        mode = rng.choice(["none", "pairwise", "pairwise"])
        F, S = constructions.random_instance(
            d, n, rng.random(), k_points=rng.randint(1, 2 * n), intersect_mode=mode,
            coordinate_range=(0, rng.choice([4, 8, 12])),
        )
        dens = Fraction(geometry.count_S_intersecting_tuples(F, S, 2 * d), math.comb(n, 2 * d))
        size, _, _ = geometry.max_S_intersecting_subfamily(F, S)
        bound = analysis.kalai_fraction(dens, d)
        if size / n + analysis.KALAI_GUARD < bound:
            res.fail(_js({"family": F, "S": S, "density": dens, "max": size, "bound": bound}))
    return res


def prop_clique_complete(rng, trials):
    res = PropertyResult("analysis.clique_count_complete_graph", 0)
    for n in range(1, 11):
        G = analysis.complete_graph(n)
        for m in range(1, n + 1):
            res.trials += 1
            if analysis.clique_count(G, m) != math.comb(n, m):
                res.fail({"n": n, "m": m})
    return res


def prop_pipeline_naive(rng, trials):
    res = PropertyResult("analysis.pipeline_matches_naive", trials)
    for _ in range(trials):
        d, n = rng.randint(1, 3), rng.randint(2, 8)
        F, S = constructions.random_instance(d, n, rng.random())
        rep = analysis.pipeline_report(F, S)
        for p, count in rep.tuple_counts.items():
            naive = sum(geometry.is_S_intersecting(F, t, S) for t in combinations(range(1, n + 1), p))
            if naive != count:
                res.fail(_js({"family": F, "S": S, "p": p}))
        adj = geometry.s_pair_graph(F, S)
        for m, count in rep.clique_counts.items():
            naive = sum(
                all(v in adj[u] for u, v in combinations(c, 2)) for c in combinations(range(1, n + 1), m)
            )
            if naive != count:
                res.fail(_js({"family": F, "S": S, "m": m}))
    return res


def prop_planar_pairwise_forces_triple(rng, trials):
    """Pairwise S-intersecting planar families with ``n >= 5`` contain an S-intersecting triple."""
    res = PropertyResult("analysis.planar_pairwise_forces_triple", trials)
    for _ in range(trials):
        n = rng.randint(5, 7)
        F, S = constructions.random_pairwise_S_instance(2, n, rng.random())
        out = analysis.check_pairwise_forces_tuple(F, S)
        if not out["pairwise_S_intersecting"] or out["counterexample_candidate"]:
            res.fail(_js({"family": F, "S": S}))
    return res


# -- fixtures ------------------------------------------------------------------------------


def fixture_checks(family: BoxFamily = None, S: PointSet = None) -> list:
    """Exact checks on the four-box planar witness (or a substitute)."""
    family = family if family is not None else codes.w4_family()
    S = S if S is not None else codes.w4_points()
    out = []

    def record(name, ok, detail=None):
        r = PropertyResult(name, 1)
        if not ok:
            r.fail(detail)
        out.append(r)

    v = codes.validate_witness(family, S)
    record("fixture.witness_pair_density_one", v["pair_count"] == v["pair_total"], v)
    record("fixture.witness_no_S_triple", v["tuple_count"] == 0, v)
    record("fixture.witness_max_subfamily_two", v["max_subfamily"] == 2, v)
    if family.dimension == 2:
        cfg = codes.ChainConfig.from_family(family)
        code = codes.box_code(family)
        pairs = set(combinations(range(1, len(family) + 1), 2))
        record("fixture.witness_code_has_all_pairs", pairs <= set(code), sorted(pairs - set(code)))
        record("fixture.witness_chain_cover", pairs <= codes.covered_pairs(cfg))
    forcing = analysis.check_pairwise_forces_tuple(family, S)
    record("fixture.witness_is_candidate", forcing.get("counterexample_candidate") is True, _js(forcing))
    return out


PROPERTIES: dict = {
    f.__name__: f
    for f in [
        prop_intersection_monotone,
        prop_helly_1d,
        prop_S_hereditary,
        prop_max_subfamily_bruteforce,
        prop_up_set_downward_closed,
        prop_translation_law,
        prop_dp_invariance,
        prop_dependent_set_same_intersection,
        prop_path_bounds_dependency,
        prop_quotient_identity,
        prop_delete_quotient_oracles,
        prop_quotient_inclusion,
        prop_code_in_chain_superset,
        prop_atoms_are_prefixes,
        prop_sweep_symmetry,
        prop_pairs_inside_level_three,
        prop_lower_bound_family,
        prop_certificates_recheck,
        prop_density_monotone,
        prop_kalai,
        prop_clique_complete,
        prop_pipeline_naive,
        prop_planar_pairwise_forces_triple,
    ]
}


def run_property(name: str, seed: int, trials: int) -> PropertyResult:
    rng = random.Random(f"{seed}:{name}")
    return PROPERTIES[name](rng, trials)


def check_all(seed: int = 0, trials: int = 200, family=None, S=None, only=None) -> dict:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    names = [n for n in PROPERTIES if only is None or n in only]
    results = [run_property(n, seed, trials) for n in names]
    results += fixture_checks(family, S)
    return {
        "seed": seed,
        "trials": trials,
        "properties": [r.to_json() for r in results],
        "failed": [r.name for r in results if not r.passed],
        "all_passed": all(r.passed for r in results),
    }
