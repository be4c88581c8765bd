"""Exact axis-parallel boxes, finite point sets and S-intersection primitives.

Boxes are closed, bounded and may be degenerate (zero width along some axes).
All coordinates are :class:`fractions.Fraction`; no predicate touches floats.
Box indices are 1-based throughout, matching the usual ``[n]`` convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import InputError

IndexSet = tuple  # sorted, duplicate-free tuple of 1-based indices


def rational(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` / ``"k"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r}")


def index_set(indices: Iterable[int], n: Optional[int] = None) -> IndexSet:
    out = tuple(sorted(set(int(i) for i in indices)))
    if n is not None and out and (out[0] < 1 or out[-1] > n):
        raise InputError(f"index out of range 1..{n}: {list(out)}")
    return out


@dataclass(frozen=True)
class Box:
    mins: tuple
    maxs: tuple

    def __post_init__(self):
        mins = tuple(rational(x) for x in self.mins)
        maxs = tuple(rational(x) for x in self.maxs)
        if len(mins) != len(maxs) or not mins:
            raise InputError("box needs equal-length, nonempty min and max vectors")
        for lo, hi in zip(mins, maxs):
            if lo > hi:
                raise InputError(f"inverted box side [{lo}, {hi}]")
        object.__setattr__(self, "mins", mins)
        object.__setattr__(self, "maxs", maxs)

    @property
    def dimension(self) -> int:
        return len(self.mins)

    def contains(self, point: Sequence[Fraction]) -> bool:
        return all(lo <= x <= hi for lo, x, hi in zip(self.mins, point, self.maxs))

    def contains_box(self, other: "Box") -> bool:
        return all(
            lo <= olo and ohi <= hi
            for lo, hi, olo, ohi in zip(self.mins, self.maxs, other.mins, other.maxs)
        )


@dataclass(frozen=True)
class BoxFamily:
    dimension: int
    boxes: tuple

    def __post_init__(self):
        boxes = tuple(self.boxes)
        if self.dimension < 1:
            raise InputError("dimension must be positive")
        if not boxes:
            raise InputError("a box family needs at least one box")
        for b in boxes:
            if b.dimension != self.dimension:
                raise InputError(
                    f"box of dimension {b.dimension} in a family of dimension {self.dimension}"
                )
        object.__setattr__(self, "boxes", boxes)

    @classmethod
    def from_bounds(cls, bounds) -> "BoxFamily":
        """Build from ``[(mins, maxs), ...]``."""
        boxes = tuple(Box(tuple(lo), tuple(hi)) for lo, hi in bounds)
        if not boxes:
            raise InputError("a box family needs at least one box")
        return cls(boxes[0].dimension, boxes)

    @classmethod
    def from_intervals(cls, axes) -> "BoxFamily":
        """Build from per-axis interval lists: ``axes[i][j] = (a_j, b_j)``."""
        n = len(axes[0])
        bounds = [
            (tuple(ax[j][0] for ax in axes), tuple(ax[j][1] for ax in axes)) for j in range(n)
        ]
        return cls.from_bounds(bounds)

    def __len__(self) -> int:
        return len(self.boxes)

    def box(self, j: int) -> Box:
        if not 1 <= j <= len(self.boxes):
            raise InputError(f"box index {j} out of range 1..{len(self.boxes)}")
        return self.boxes[j - 1]

    def projection(self, axis: int) -> list:
        """Intervals ``(a_j, b_j)`` of the family along ``axis`` (0-based)."""
        return [(b.mins[axis], b.maxs[axis]) for b in self.boxes]

    def replace(self, j: int, box: Box) -> "BoxFamily":
        boxes = list(self.boxes)
        boxes[j - 1] = box
        return BoxFamily(self.dimension, tuple(boxes))


@dataclass(frozen=True)
class PointSet:
    dimension: int
    points: tuple = ()

    def __post_init__(self):
        pts = tuple(tuple(rational(x) for x in p) for p in self.points)
        for p in pts:
            if len(p) != self.dimension:
                raise InputError(f"point {p} does not have dimension {self.dimension}")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def _check_tuple(family: BoxFamily, tup) -> IndexSet:
    tup = index_set(tup, len(family))
    if not tup:
        raise InputError("tuple must be nonempty")
    return tup


def intersect_tuple(family: BoxFamily, tup) -> Optional[Box]:
    """Common intersection of the boxes indexed by ``tup``, or ``None`` when empty."""
    tup = _check_tuple(family, tup)
    boxes = [family.boxes[j - 1] for j in tup]
    mins, maxs = [], []
    for axis in range(family.dimension):
        lo = max(b.mins[axis] for b in boxes)
        hi = min(b.maxs[axis] for b in boxes)
        if lo > hi:
            return None
        mins.append(lo)
        maxs.append(hi)
    return Box(tuple(mins), tuple(maxs))


def point_membership(family: BoxFamily, point) -> IndexSet:
    """Indices of the boxes containing ``point`` (boundary included)."""
    point = tuple(rational(x) for x in point)
    if len(point) != family.dimension:
        raise InputError(f"point {point} does not have dimension {family.dimension}")
    return tuple(j for j, b in enumerate(family.boxes, 1) if b.contains(point))


def membership_mask(family: BoxFamily, point) -> int:
    """Bitmask form of :func:`point_membership`; bit ``j-1`` stands for box ``j``."""
    mask = 0
    for j in point_membership(family, point):
        mask |= 1 << (j - 1)
    return mask


def _check_dims(family: BoxFamily, S: PointSet):
    if len(S) and S.dimension != family.dimension:
        raise InputError(
            f"point set dimension {S.dimension} differs from family dimension {family.dimension}"
        )


def is_S_intersecting(family: BoxFamily, tup, S: PointSet) -> bool:
    _check_dims(family, S)
    common = intersect_tuple(family, tup)
    if common is None:
        return False
    return any(common.contains(s) for s in S)


def s_pair_graph(family: BoxFamily, S: PointSet) -> dict:
    """Adjacency sets of the graph whose edges are the S-intersecting pairs."""
    adj = {j: set() for j in range(1, len(family) + 1)}
    for mask in _point_masks(family, S):
        members = [j + 1 for j in range(len(family)) if mask >> j & 1]
        for u, v in combinations(members, 2):
            adj[u].add(v)
            adj[v].add(u)
    return adj


def _point_masks(family: BoxFamily, S: PointSet) -> list:
    _check_dims(family, S)
    return [membership_mask(family, s) for s in S]


def count_S_intersecting_tuples(family: BoxFamily, S: PointSet, p: int) -> int:
    """Number of p-subsets of the family whose intersection meets S."""
    n = len(family)
    if not 1 <= p <= n:
        raise InputError(f"p must lie in 1..{n}, got {p}")
    masks = set(_point_masks(family, S))
    # only maximal memberships matter
    masks = [m for m in masks if not any(m != o and m & o == m for o in masks)]
    if not masks:
        return 0
    count = 0
    for tup in combinations(range(n), p):
        t = 0
        for j in tup:
            t |= 1 << j
        for m in masks:
            if m & t == t:
                count += 1
                break
    return count


def max_S_intersecting_subfamily(family: BoxFamily, S: PointSet):
    """Largest S-intersecting subfamily as ``(size, indices, witness_point)``.

    A subfamily is S-intersecting exactly when all its members contain a common
    point of S, so the deepest point of S gives an optimum.
    """
    _check_dims(family, S)
    best = (0, (), None)
    for s in S:
        members = point_membership(family, s)
        if len(members) > best[0]:
            best = (len(members), members, s)
    return best
