"""Permutation dependency calculus on ``[n]``.

Permutations are tuples in 1-based one-line notation: ``sigma[i - 1]`` is the
rank ``sigma(i)`` of element ``i``.  The order ``u <_sigma v`` means
``sigma(u) < sigma(v)``.

The central objects are

* the up-set ``sigma(<= P)``: everything ranked by ``sigma`` no higher than the
  ``sigma``-largest element of ``P``;
* the dependent set ``<A; P>``: the intersection of up-sets over ``A``;
* the dependency ``d(A; P) = |<A; P>| - |P|`` and its maximum ``d_p(A)`` over
  all ``p``-subsets.

For boxes, ``A`` is the set of endpoint orders (left endpoints ascending,
right endpoints descending per axis) and ``<A; P>`` is a superset of ``P``
whose boxes have the same common intersection as ``P``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence

from .errors import InputError, PreconditionError
from .geometry import (
    BoxFamily,
    IndexSet,
    PointSet,
    index_set,
    is_S_intersecting,
    membership_mask,
)

Permutation = tuple


# -- basic permutation algebra --------------------------------------------


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def perm(values) -> Permutation:
    """Parse a permutation from a digit string (``"2143"``) or an int sequence."""
    if isinstance(values, str):
        s = values.strip()
        if "," in s or " " in s:
            values = [int(x) for x in s.replace(",", " ").split()]
        else:
            values = [int(c) for c in s]
    sigma = tuple(int(x) for x in values)
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise InputError(f"not a permutation of [{len(sigma)}]: {list(sigma)}")
    return sigma


def inverse(sigma: Permutation) -> Permutation:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma, 1):
        inv[s - 1] = i
    return tuple(inv)


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """``sigma o tau``, i.e. ``i -> sigma(tau(i))``."""
    if len(sigma) != len(tau):
        raise InputError("cannot compose permutations of different sizes")
    return tuple(sigma[t - 1] for t in tau)


def apply_to_set(sigma: Permutation, P) -> IndexSet:
    return tuple(sorted(sigma[p - 1] for p in P))


def all_permutations(n: int) -> list:
    """``S_n`` in lexicographic order."""
    return list(permutations(range(1, n + 1)))


# -- sets of permutations -------------------------------------------------


class PermutationSet:
    """A set of permutations of a common ``[n]``.

    Duplicates are dropped (first occurrence keeps its position) but their
    multiplicity is remembered; every dependency value depends only on the
    distinct members.
    """

    def __init__(self, perms: Iterable, n: Optional[int] = None):
        members, mult = [], {}
        for p in perms:
            p = perm(p)
            if n is None:
                n = len(p)
            if len(p) != n:
                raise InputError(f"permutation {list(p)} is not on [{n}]")
            if p not in mult:
                members.append(p)
                mult[p] = 0
            mult[p] += 1
        if n is None:
            raise InputError("empty permutation set needs an explicit n")
        self.n = n
        self.perms = tuple(members)
        self.multiplicity = mult

    def __iter__(self):
        return iter(self.perms)

    def __len__(self) -> int:
        return len(self.perms)

    def __contains__(self, sigma) -> bool:
        return tuple(sigma) in self.multiplicity

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermutationSet):
            return NotImplemented
        return self.n == other.n and set(self.perms) == set(other.perms)

    def __hash__(self):
        return hash((self.n, frozenset(self.perms)))

    def __repr__(self) -> str:
        body = ", ".join("".join(map(str, p)) if self.n < 10 else str(list(p)) for p in self.perms)
        return f"PermutationSet(n={self.n}, {{{body}}})"

    @property
    def size_with_multiplicity(self) -> int:
        return sum(self.multiplicity.values())

    def has_identity(self) -> bool:
        return identity(self.n) in self.multiplicity


@dataclass(frozen=True)
class DependencyResult:
    value: int
    argmax_P: IndexSet
    dependent_set: IndexSet

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "P": list(self.argmax_P),
            "dependent_set": list(self.dependent_set),
        }


# -- endpoint orders -------------------------------------------------------


def _ranks(keys: Sequence) -> Permutation:
    order = sorted(range(len(keys)), key=lambda j: (keys[j], j))
    ranks = [0] * len(keys)
    for r, j in enumerate(order, 1):
        ranks[j] = r
    return tuple(ranks)


def axis_orders(family: BoxFamily) -> PermutationSet:
    """Endpoint orders ``l_1, r_1, ..., l_d, r_d`` of a family.

    ``l_i`` ranks boxes by left endpoint ascending along axis ``i``, ``r_i`` by
    right endpoint descending; ties go to the smaller box index.
    """
    return PermutationSet(axis_order_list(family), n=len(family))


def axis_order_list(family: BoxFamily) -> list:
    """The ``2d`` endpoint orders in axis order, duplicates kept."""
    orders = []
    for axis in range(family.dimension):
        intervals = family.projection(axis)
        orders.append(_ranks([a for a, _ in intervals]))
        orders.append(_ranks([-b for _, b in intervals]))
    return orders


# -- up-sets and dependencies ----------------------------------------------


def _check_P(P, n: int) -> IndexSet:
    P = index_set(P, n)
    if not P:
        raise InputError("P must be nonempty")
    return P


def up_set(sigma: Permutation, P) -> IndexSet:
    """``{s : sigma(s) <= max_{p in P} sigma(p)}``."""
    P = _check_P(P, len(sigma))
    top = max(sigma[p - 1] for p in P)
    return tuple(s for s in range(1, len(sigma) + 1) if sigma[s - 1] <= top)


def prefix_masks(sigma: Permutation) -> list:
    """``masks[k]`` is the bitmask of the ``k`` lowest-ranked elements of ``sigma``."""
    inv = inverse(sigma)
    masks = [0]
    for k in range(len(sigma)):
        masks.append(masks[-1] | 1 << (inv[k] - 1))
    return masks


def _mask_to_set(mask: int) -> IndexSet:
    out, j = [], 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def _set_to_mask(P) -> int:
    m = 0
    for p in P:
        m |= 1 << (p - 1)
    return m


def _as_set(A) -> PermutationSet:
    return A if isinstance(A, PermutationSet) else PermutationSet(A)


def dependent_set(A, P) -> DependencyResult:
    """``<A; P>`` together with the dependency ``d(A; P)``."""
    A = _as_set(A)
    P = _check_P(P, A.n)
    if not len(A):
        raise InputError("A must be nonempty")
    common = (1 << A.n) - 1
    for sigma in A:
        top = max(sigma[p - 1] for p in P)
        common &= prefix_masks(sigma)[top]
    dep = _mask_to_set(common)
    return DependencyResult(len(dep) - len(P), P, dep)


class _DependencyTable:
    """Prefix masks of each member, reused across many ``P``."""

    def __init__(self, A: PermutationSet):
        self.n = A.n
        self.rows = [(sigma, prefix_masks(sigma)) for sigma in A]

    def mask(self, P) -> int:
        common = (1 << self.n) - 1
        for sigma, pref in self.rows:
            common &= pref[max(sigma[p - 1] for p in P)]
        return common


def p_tuple_dependency(A, p: int) -> DependencyResult:
    """Exhaustive ``d_p(A)``; ties go to the lexicographically smallest ``P``."""
    A = _as_set(A)
    if not len(A):
        raise InputError("A must be nonempty")
    if not 1 <= p <= A.n:
        raise InputError(f"p must lie in 1..{A.n}, got {p}")
    table = _DependencyTable(A)
    best_val, best_P, best_mask = -1, None, 0
    for P in combinations(range(1, A.n + 1), p):
        m = table.mask(P)
        val = bin(m).count("1") - p
        if val > best_val:
            best_val, best_P, best_mask = val, P, m
    return DependencyResult(best_val, best_P, _mask_to_set(best_mask))


def normalize(A, tau: Permutation) -> PermutationSet:
    """``A tau^{-1} = {sigma o tau^{-1}}``; contains the identity when ``tau`` is in ``A``."""
    A = _as_set(A)
    if len(tau) != A.n:
        raise InputError(f"tau is on [{len(tau)}], A is on [{A.n}]")
    tinv = inverse(tau)
    return PermutationSet([compose(sigma, tinv) for sigma in A], n=A.n)


# -- pattern graphs ---------------------------------------------------------


@dataclass
class PatternGraph:
    """Edge-colored complete graph on ``[n]``.

    ``members`` lists the non-identity permutations in sorted order; bit ``i``
    of a color stands for ``members[i]``.
    """

    n: int
    members: tuple
    colors: dict = field(default_factory=dict)

    def color(self, u: int, v: int) -> int:
        return self.colors[(u, v) if u < v else (v, u)]

    def color_members(self, color: int) -> list:
        return [m for i, m in enumerate(self.members) if color >> i & 1]

    def num_colors(self) -> int:
        return len(set(self.colors.values()))


def _pattern_members(A: PermutationSet) -> tuple:
    if not A.has_identity():
        raise PreconditionError("pattern graphs need the identity in A; normalize A first")
    ident = identity(A.n)
    return tuple(sorted(s for s in A if s != ident))


def pattern(A, u: int, v: int) -> int:
    """Color of edge ``uv``: members ``sigma != id`` with ``sigma(u) < sigma(v)``."""
    A = _as_set(A)
    if not (1 <= u < v <= A.n):
        raise InputError(f"need 1 <= u < v <= {A.n}, got u={u}, v={v}")
    color = 0
    for i, sigma in enumerate(_pattern_members(A)):
        if sigma[u - 1] < sigma[v - 1]:
            color |= 1 << i
    return color


def pattern_graph(A) -> PatternGraph:
    A = _as_set(A)
    members = _pattern_members(A)
    colors = {}
    for u, v in combinations(range(1, A.n + 1), 2):
        c = 0
        for i, sigma in enumerate(members):
            if sigma[u - 1] < sigma[v - 1]:
                c |= 1 << i
        colors[(u, v)] = c
    return PatternGraph(A.n, members, colors)


def longest_mono_increasing_path(A) -> list:
    """Longest vertex-increasing path whose edges all share one pattern color.

    Dynamic program over vertices in increasing order: ``best[v][c]`` is the
    longest such path of color ``c`` ending at ``v``.  Ties go to the path found
    first (smallest end vertex, then smallest predecessor).
    """
    G = A if isinstance(A, PatternGraph) else pattern_graph(A)
    best = {v: {} for v in range(1, G.n + 1)}  # v -> color -> (length, prev)
    top = (1, 1, None)  # length, end vertex, color
    for v in range(1, G.n + 1):
        for u in range(1, v):
            c = G.colors[(u, v)]
            length = best[u].get(c, (1, None))[0] + 1
            if length > best[v].get(c, (0, None))[0]:
                best[v][c] = (length, u)
                if length > top[0]:
                    top = (length, v, c)
    length, v, c = top
    path = [v]
    while c is not None and len(path) < length:
        v = best[v][c][1]
        path.append(v)
    return path[::-1]


def mono_increasing_path(A, b: int) -> Optional[list]:
    """A monochromatic increasing path with ``b`` edges, or ``None`` if there is none."""
    path = longest_mono_increasing_path(A)
    if len(path) - 1 < b:
        return None
    return path[: b + 1]


# -- deletion, quotient and relabeling ---------------------------------------


def minus(i: int, v: int) -> int:
    """``i^{v-}``: close the gap left by removing ``v`` (``i != v``)."""
    if i == v:
        raise InputError("i^{v-} is undefined for i = v")
    return i if i < v else i - 1


def plus(i: int, v: int) -> int:
    """``i^{v+}``: open a gap at ``v``."""
    return i if i < v else i + 1


def delete_perm(sigma: Permutation, v: int) -> Permutation:
    """``sigma \\ v``: drop the entry carrying value ``v`` and close the value gap."""
    n = len(sigma)
    if n < 2:
        raise InputError("cannot delete from a permutation of [1]")
    if not 1 <= v <= n:
        raise InputError(f"v must lie in 1..{n}, got {v}")
    return tuple(s if s < v else s - 1 for s in sigma if s != v)


def quotient_perm(sigma: Permutation, v: int) -> Permutation:
    """``sigma / v = (sigma^{-1} \\ v)^{-1}``: drop domain point ``v`` and relabel."""
    return inverse(delete_perm(inverse(sigma), v))


def _check_V(V, n: int) -> IndexSet:
    V = index_set(V, n)
    if len(V) >= n:
        raise InputError("V must leave at least one element")
    return V


def delete_set(sigma: Permutation, V) -> Permutation:
    """Delete every value in ``V`` (labels refer to ``sigma``'s own ``[n]``)."""
    V = _check_V(V, len(sigma))
    for v in reversed(V):
        sigma = delete_perm(sigma, v)
    return sigma


def quotient_set(sigma: Permutation, V) -> Permutation:
    """Quotient by every domain point in ``V``, i.e. restrict ``sigma`` to ``[n] \\ V``.

    ``V`` is given in the original labels; removing in descending order keeps
    the remaining labels valid at each step.
    """
    V = _check_V(V, len(sigma))
    for v in reversed(V):
        sigma = quotient_perm(sigma, v)
    return sigma


def delete_perms(A, V) -> PermutationSet:
    A = _as_set(A)
    return PermutationSet([delete_set(s, V) for s in A], n=A.n - len(index_set(V)))


def quotient_perms(A, V) -> PermutationSet:
    A = _as_set(A)
    return PermutationSet([quotient_set(s, V) for s in A], n=A.n - len(index_set(V)))


def relabel_up(P, V, n: int) -> IndexSet:
    """Image of ``P`` under the order-preserving bijection ``[n - |V|] -> [n] \\ V``.

    Computed as ``P^{v_1+ v_2+ ...}`` with ``V`` taken in ascending order.
    """
    V = index_set(V, n)
    P = index_set(P, n - len(V))
    out = list(P)
    for v in V:
        out = [plus(i, v) for i in out]
    return tuple(sorted(out))


# -- geometric extraction ----------------------------------------------------


def find_dependent_tuple(family: BoxFamily, S: PointSet, p: int) -> IndexSet:
    """An S-intersecting tuple of size ``d_p(Sigma_F) + p``.

    Requires every ``p``-tuple of ``family`` to be S-intersecting; otherwise a
    :class:`PreconditionError` carries a failing tuple as its certificate.
    """
    n = len(family)
    if not 1 <= p <= n:
        raise InputError(f"p must lie in 1..{n}, got {p}")
    masks = [membership_mask(family, s) for s in S]
    for tup in combinations(range(1, n + 1), p):
        t = _set_to_mask(tup)
        if not any(m & t == t for m in masks):
            raise PreconditionError(f"tuple {list(tup)} is not S-intersecting", certificate=tup)
    result = p_tuple_dependency(axis_orders(family), p)
    tup = result.dependent_set
    if not is_S_intersecting(family, tup, S):
        raise AssertionError(f"dependent set {list(tup)} is not S-intersecting")
    return tup
