"""Codes of box families, prefix chains, and the two halves of ``N(2) = 5``.

For a pairwise-intersecting interval family the membership sets along an axis
are exactly the prefixes of the left-endpoint order and of the right-endpoint
order.  In the plane every codeword is therefore ``X & Y`` for a prefix ``X``
on axis 1 and a prefix ``Y`` on axis 2.  ``verify_N2_upper`` sweeps all such
prefix configurations on ``[5]`` and checks that none produces all ten pairs
as codewords; ``find_N2_witness`` finds a four-box configuration that does.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import NamedTuple, Optional

import numpy as np

from .errors import BudgetExceeded
from .geometry import (
    BoxFamily,
    IndexSet,
    PointSet,
    count_S_intersecting_tuples,
    max_S_intersecting_subfamily,
)
from .perms import axis_order_list, inverse

CODE_MAX_DIM = 3
CODE_MAX_BOXES = 12

# Reference four-box witness in the plane.
W4_BOUNDS = [
    ((1, 4), (8, 10)),
    ((2, 3), (10, 7)),
    ((3, 1), (7, 8)),
    ((4, 2), (9, 9)),
]
W4_POINTS = [
    (Fraction(5, 2), Fraction(5)),
    (Fraction(17, 2), Fraction(5)),
    (Fraction(5), Fraction(5, 2)),
    (Fraction(5), Fraction(17, 2)),
    (Fraction(7, 2), Fraction(15, 2)),
    (Fraction(7, 2), Fraction(7, 2)),
]


def w4_family() -> BoxFamily:
    return BoxFamily.from_bounds(W4_BOUNDS)


def w4_points() -> PointSet:
    return PointSet(2, W4_POINTS)


# -- 1D atoms and box codes ---------------------------------------------------


class Atom(NamedTuple):
    lo: Fraction
    hi: Fraction
    point: Fraction  # representative point of the run
    members: IndexSet


def axis_atoms(intervals) -> list:
    """Cells of the endpoint arrangement with their memberships.

    Consecutive cells with equal membership are merged into one run
    ``[lo, hi]``; cells covered by no interval are dropped.
    """
    ends = sorted({Fraction(x) for iv in intervals for x in iv})
    cells = []
    for i, e in enumerate(ends):
        cells.append((e, e, e))
        if i + 1 < len(ends):
            cells.append((e, ends[i + 1], (e + ends[i + 1]) / 2))
    atoms = []
    for lo, hi, pt in cells:
        members = tuple(j for j, (a, b) in enumerate(intervals, 1) if a <= pt <= b)
        if not members:
            continue
        if atoms and atoms[-1].members == members and atoms[-1].hi == lo:
            prev = atoms[-1]
            rep = pt if prev.lo == prev.hi and lo != hi else prev.point
            atoms[-1] = Atom(prev.lo, hi, rep, members)
        else:
            atoms.append(Atom(lo, hi, pt, members))
    return atoms


@dataclass(frozen=True)
class Codeword:
    members: IndexSet
    witness: tuple


def box_code(family: BoxFamily) -> dict:
    """All nonempty codewords of ``family`` mapped to a witness point.

    The region outside every box (the empty codeword) is left out.
    """
    if family.dimension > CODE_MAX_DIM or len(family) > CODE_MAX_BOXES:
        raise BudgetExceeded(
            f"box_code supports d <= {CODE_MAX_DIM} and n <= {CODE_MAX_BOXES}",
            limit={"d": CODE_MAX_DIM, "n": CODE_MAX_BOXES},
        )
    per_axis = [axis_atoms(family.projection(i)) for i in range(family.dimension)]
    code = {}
    for cell in product(*per_axis):
        common = set(cell[0].members)
        for atom in cell[1:]:
            common &= set(atom.members)
        if not common:
            continue
        key = tuple(sorted(common))
        if key not in code:
            code[key] = Codeword(key, tuple(a.point for a in cell))
    return code


# -- chains -------------------------------------------------------------------


Chain = tuple  # (omega_0, omega_1, ..., omega_n) of IndexSets


def chain_from_sequence(seq) -> Chain:
    """Prefix chain of an element sequence listed in rank order."""
    return tuple(tuple(sorted(seq[:k])) for k in range(len(seq) + 1))


def chains_from_order(ell, r) -> tuple:
    """Prefix chains of the left order ``ell`` and right order ``r``.

    ``ell`` and ``r`` are rank permutations; the chains list elements by rank,
    i.e. follow ``ell^{-1}`` and ``r^{-1}``.
    """
    if len(ell) != len(r):
        raise ValueError("orders must be on the same [n]")
    return chain_from_sequence(inverse(ell)), chain_from_sequence(inverse(r))


@dataclass(frozen=True)
class ChainConfig:
    """Four prefix chains: ``(l_1, r_1)`` on axis 1 and ``(l_2, r_2)`` on axis 2."""

    chains: tuple

    @classmethod
    def from_sequences(cls, *seqs) -> "ChainConfig":
        return cls(tuple(chain_from_sequence(tuple(s)) for s in seqs))

    @classmethod
    def from_family(cls, family: BoxFamily) -> "ChainConfig":
        if family.dimension != 2:
            raise ValueError("chain configurations are defined for planar families")
        chains = []
        for sigma in axis_order_list(family):
            chains.append(chain_from_sequence(inverse(sigma)))
        return cls(tuple(chains))

    @property
    def n(self) -> int:
        return len(self.chains[0]) - 1

    def level(self, k: int) -> list:
        return [c[k] for c in self.chains]

    def relabel(self, pi) -> "ChainConfig":
        """Apply the element relabeling ``j -> pi[j - 1]`` to every chain."""
        return ChainConfig(
            tuple(tuple(tuple(sorted(pi[j - 1] for j in w)) for w in c) for c in self.chains)
        )


def chain_code_superset(config: ChainConfig) -> set:
    """Nonempty ``X & Y`` with ``X`` from an axis-1 chain and ``Y`` from an axis-2 chain."""
    axis1 = {frozenset(w) for c in config.chains[:2] for w in c[1:]}
    axis2 = {frozenset(w) for c in config.chains[2:] for w in c[1:]}
    out = set()
    for x in axis1:
        for y in axis2:
            z = x & y
            if z:
                out.add(tuple(sorted(z)))
    return out


def covered_pairs(config: ChainConfig) -> set:
    return {c for c in chain_code_superset(config) if len(c) == 2}


def covers_all_pairs(config: ChainConfig) -> bool:
    return len(covered_pairs(config)) == config.n * (config.n - 1) // 2


# -- exhaustive sweep ---------------------------------------------------------


def _pair_bits(n: int) -> np.ndarray:
    """``bits[x]`` is the one-hot bit of the pair ``x`` if ``x`` has two elements, else 0."""
    pairs = {(1 << i) | (1 << j): k for k, (i, j) in enumerate(combinations(range(n), 2))}
    bits = np.zeros(1 << n, dtype=np.int64)
    for mask, k in pairs.items():
        bits[mask] = 1 << k
    return bits


def _seq_prefix_masks(seqs) -> np.ndarray:
    """Nonempty prefix masks of each sequence, shape ``(len(seqs), n)``."""
    out = np.zeros((len(seqs), len(seqs[0])), dtype=np.int64)
    for i, s in enumerate(seqs):
        m = 0
        for k, e in enumerate(s):
            m |= 1 << (e - 1)
            out[i, k] = m
    return out


class _SweepTables:
    def __init__(self, n: int):
        self.n = n
        self.seqs = list(permutations(range(1, n + 1)))
        self.full = (1 << (n * (n - 1) // 2)) - 1
        m = len(self.seqs)
        pref = _seq_prefix_masks(self.seqs)
        # axis masks for every ordered pair (left sequence, right sequence)
        self.axis_masks = np.concatenate(
            [np.repeat(pref, m, axis=0), np.tile(pref, (m, 1))], axis=1
        )
        bits = _pair_bits(n)
        xs = np.arange(1 << n, dtype=np.int64)
        # cover[c, x]: pairs realized as x & y for y among the axis-2 masks of config c
        joined = self.axis_masks[:, None, :] & xs[None, :, None]
        self.cover = np.bitwise_or.reduce(bits[joined], axis=2)

    def count_covered(self, first_axis_rows) -> tuple:
        """Covered configurations among ``first_axis_rows x all axis-2 configs``."""
        total, first = 0, None
        for row in first_axis_rows:
            cov = np.bitwise_or.reduce(self.cover[:, self.axis_masks[row]], axis=1)
            hits = np.flatnonzero(cov == self.full)
            if hits.size:
                if first is None:
                    first = (int(row), int(hits[0]))
                total += int(hits.size)
        return total, first

    def config(self, row1: int, row2: int) -> ChainConfig:
        m = len(self.seqs)
        return ChainConfig.from_sequences(
            self.seqs[row1 // m], self.seqs[row1 % m], self.seqs[row2 // m], self.seqs[row2 % m]
        )


_TABLE_CACHE = {}


def _tables(n: int) -> _SweepTables:
    if n not in _TABLE_CACHE:
        _TABLE_CACHE[n] = _SweepTables(n)
    return _TABLE_CACHE[n]


def _sweep_chunk(args):
    n, rows = args
    return _tables(n).count_covered(rows)


def sweep_chain_configs(n: int = 5, full: bool = False, workers: int = 1) -> dict:
    """Count prefix configurations on ``[n]`` whose codes contain every pair.

    With ``full=False`` the axis-1 left order is fixed to the identity, which
    loses nothing because relabeling ``[n]`` preserves pair coverage.
    """
    start = time.perf_counter()
    tables = _tables(n)
    m = len(tables.seqs)
    rows = list(range(m * m)) if full else list(range(m))  # row < m means left seq = identity
    if workers > 1:
        step = -(-len(rows) // (workers * 4))
        chunks = [(n, rows[i : i + step]) for i in range(0, len(rows), step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_chunk, chunks))
    else:
        results = [tables.count_covered(rows)]
    covered, first = 0, None
    for count, hit in results:
        covered += count
        if first is None and hit is not None:
            first = hit
    report = {
        "n": n,
        "full": full,
        "configs_checked": len(rows) * m * m,
        "covered_count": covered,
        "first_covered": None,
        "elapsed": round(time.perf_counter() - start, 3),
    }
    if first is not None:
        report["first_covered"] = [list(c) for c in _config_sequences(tables, *first)]
    return report


def _config_sequences(tables: _SweepTables, row1: int, row2: int) -> list:
    m = len(tables.seqs)
    return [
        tables.seqs[row1 // m],
        tables.seqs[row1 % m],
        tables.seqs[row2 // m],
        tables.seqs[row2 % m],
    ]


def verify_N2_upper(full: bool = False, workers: int = 1) -> dict:
    """No planar family of five boxes has every pair as a codeword."""
    report = sweep_chain_configs(5, full=full, workers=workers)
    report["claim"] = "no configuration on [5] realizes all 10 pairs as codewords"
    report["holds"] = report["covered_count"] == 0
    return report


# -- witnesses ----------------------------------------------------------------


def realize_sequences(*axis_seqs) -> BoxFamily:
    """Box family whose endpoint orders are the given sequences.

    ``axis_seqs`` alternates left and right sequences per axis.  Left endpoints
    are ``1..n`` and right endpoints ``n+1..2n``, so every pair of boxes meets.
    """
    n = len(axis_seqs[0])
    axes = []
    for i in range(0, len(axis_seqs), 2):
        left_seq, right_seq = axis_seqs[i], axis_seqs[i + 1]
        lo = [0] * n
        hi = [0] * n
        for k, e in enumerate(left_seq, 1):
            lo[e - 1] = k
        for k, e in enumerate(right_seq, 1):
            hi[e - 1] = 2 * n + 1 - k
        axes.append(list(zip(lo, hi)))
    return BoxFamily.from_intervals(axes)


def pair_witness_points(family: BoxFamily, max_size: int) -> Optional[PointSet]:
    """One point per pair ``{j, k}`` inside a region of depth at most ``max_size``.

    Returns ``None`` when some pair has no such region.
    """
    code = box_code(family)
    points = []
    for pair in combinations(range(1, len(family) + 1), 2):
        options = [c for c in code.values() if set(pair) <= set(c.members)]
        options = [c for c in options if len(c.members) <= max_size]
        if not options:
            return None
        best = min(options, key=lambda c: (len(c.members), c.members))
        if best.witness not in points:
            points.append(best.witness)
    return PointSet(family.dimension, points)


def validate_witness(family: BoxFamily, S: PointSet) -> dict:
    """Exact checks that ``(family, S)`` is pairwise S-intersecting with no S-intersecting (d+1)-tuple."""
    n, d = len(family), family.dimension
    pairs = count_S_intersecting_tuples(family, S, 2) if n >= 2 else 0
    big = count_S_intersecting_tuples(family, S, d + 1) if n >= d + 1 else 0
    size, members, point = max_S_intersecting_subfamily(family, S)
    return {
        "n": n,
        "pair_count": pairs,
        "pair_total": n * (n - 1) // 2,
        "pair_density": str(Fraction(pairs, n * (n - 1) // 2)) if n >= 2 else "0",
        "tuple_size": d + 1,
        "tuple_count": big,
        "max_subfamily": size,
        "valid": pairs == n * (n - 1) // 2 and big == 0 and size <= d,
    }


def find_witness(d: int = 2, n: int = 4) -> Optional[tuple]:
    """First pairwise S-intersecting ``n``-box family in ``R^d`` without an S-intersecting (d+1)-tuple.

    Sweeps endpoint orders (axis-1 left order fixed), realizes the first
    configuration whose code covers every pair with a codeword of size at most
    ``d``, and places one point in each such codeword region.  Only ``d`` of 1
    or 2 is supported.
    """
    if d == 2:
        tables = _tables(n)
        _, hit = tables.count_covered(range(len(tables.seqs)))
        if hit is None:
            return None
        family = realize_sequences(*_config_sequences(tables, *hit))
    elif d == 1:
        family = None
        ident = tuple(range(1, n + 1))
        for right in permutations(range(1, n + 1)):
            cand = realize_sequences(ident, right)
            if pair_witness_points(cand, d) is not None:
                family = cand
                break
        if family is None:
            return None
    else:
        raise ValueError("witness search supports d in {1, 2}")
    S = pair_witness_points(family, d)
    if S is None or not validate_witness(family, S)["valid"]:
        raise AssertionError("sweep produced a configuration that failed exact validation")
    return family, S


def find_N2_witness() -> tuple:
    """A validated four-box planar witness for ``N(2) > 4``."""
    found = find_witness(2, 4)
    if found is None:
        raise AssertionError("no four-box witness found")
    return found
