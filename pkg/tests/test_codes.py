import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest

from hellylab import codes
from hellylab.codes import (
    ChainConfig,
    axis_atoms,
    box_code,
    chain_from_sequence,
    chains_from_order,
    covered_pairs,
    covers_all_pairs,
    realize_sequences,
    sweep_chain_configs,
    validate_witness,
)
from hellylab.errors import BudgetExceeded
from hellylab.geometry import BoxFamily, count_S_intersecting_tuples, point_membership
from hellylab.perms import identity

W4_ORDERS = [(1, 2, 3, 4), (2, 4, 1, 3), (3, 4, 2, 1), (1, 4, 3, 2)]


def test_axis_atoms_examples():
    assert [a.members for a in axis_atoms([(0, 2), (1, 3)])] == [(1,), (1, 2), (2,)]
    assert [a.members for a in axis_atoms([(0, 2)])] == [(1,)]
    w4_axis1 = [(1, 8), (2, 10), (3, 7), (4, 9)]
    assert [a.members for a in axis_atoms(w4_axis1)] == [
        (1,), (1, 2), (1, 2, 3), (1, 2, 3, 4), (1, 2, 4), (2, 4), (2,)
    ]


def test_atom_points_lie_in_their_atoms():
    for a in axis_atoms([(0, 2), (1, 3), (1, 1), (2, 5)]):
        assert a.lo <= a.point <= a.hi
        assert point_membership(
            BoxFamily.from_intervals([[(0, 2), (1, 3), (1, 1), (2, 5)]]), [a.point]
        ) == a.members


def test_box_code_examples(w4):
    assert sorted(box_code(BoxFamily.from_intervals([[(0, 2), (1, 3)]]))) == [(1,), (1, 2), (2,)]
    assert sorted(box_code(BoxFamily.from_bounds([([0, 0], [1, 1])]))) == [(1,)]
    family, _ = w4
    code = box_code(family)
    assert set(combinations(range(1, 5), 2)) <= set(code)
    for members, cw in code.items():
        assert point_membership(family, cw.witness) == members


def test_box_code_budget():
    F = BoxFamily.from_bounds([([0] * 4, [1] * 4)])
    with pytest.raises(BudgetExceeded):
        box_code(F)


def test_chain_examples():
    assert chains_from_order(identity(3), identity(3))[0] == ((), (1,), (1, 2), (1, 2, 3))
    assert chain_from_sequence((2, 4, 1, 3)) == ((), (2,), (2, 4), (1, 2, 4), (1, 2, 3, 4))
    assert chain_from_sequence((3, 4, 2, 1)) == ((), (3,), (3, 4), (2, 3, 4), (1, 2, 3, 4))


def test_chains_follow_inverse_order():
    # ell ranks box 2 first, box 3 second, box 1 third
    ell = (3, 1, 2)
    assert chains_from_order(ell, identity(3))[0] == ((), (2,), (2, 3), (1, 2, 3))


def test_identity_config_prefixes():
    cfg = ChainConfig.from_sequences(*[identity(4)] * 4)
    assert codes.chain_code_superset(cfg) == {(1,), (1, 2), (1, 2, 3), (1, 2, 3, 4)}


def test_w4_config(w4):
    family, _ = w4
    cfg = ChainConfig.from_family(family)
    assert cfg == ChainConfig.from_sequences(*W4_ORDERS)
    assert covers_all_pairs(cfg)
    assert {(1, 3), (2, 3)} <= covered_pairs(cfg)


def test_shared_third_level_covers_at_most_nine():
    rng = random.Random(7)
    for _ in range(300):
        head = rng.sample(range(1, 6), 3)
        tail = [x for x in range(1, 6) if x not in head]
        l1 = rng.sample(head, 3) + rng.sample(tail, 2)
        r1 = rng.sample(head, 3) + rng.sample(tail, 2)
        rest = [rng.sample(range(1, 6), 5) for _ in range(2)]
        cfg = ChainConfig.from_sequences(l1, r1, *rest)
        assert len(covered_pairs(cfg)) <= 9


def test_all_third_levels_equal_sweep():
    def orders():
        for a in permutations((1, 2, 3)):
            for b in permutations((4, 5)):
                yield a + b

    seqs = list(orders())
    hits = 0
    for l1 in seqs[:1]:  # relabeling fixes the first left order
        for r1 in seqs:
            for l2 in seqs:
                for r2 in seqs:
                    hits += covers_all_pairs(ChainConfig.from_sequences(l1, r1, l2, r2))
    assert hits == 0


def test_sweep_n4_finds_covering_configs():
    report = sweep_chain_configs(4)
    assert report["configs_checked"] == 24**3
    assert report["covered_count"] == 720
    cfg = ChainConfig.from_sequences(*report["first_covered"])
    assert covers_all_pairs(cfg)


def test_sweep_workers_agree():
    a = sweep_chain_configs(4, workers=1)
    b = sweep_chain_configs(4, workers=2)
    for key in ("configs_checked", "covered_count", "first_covered"):
        assert a[key] == b[key]


def test_sweep_agrees_with_direct_cover_check():
    report = sweep_chain_configs(3)
    seqs = list(permutations((1, 2, 3)))
    direct = sum(
        covers_all_pairs(ChainConfig.from_sequences((1, 2, 3), r1, l2, r2))
        for r1 in seqs for l2 in seqs for r2 in seqs
    )
    assert report["covered_count"] == direct


def test_verify_n2_upper():
    report = codes.verify_N2_upper()
    assert report["configs_checked"] == 1_728_000
    assert report["covered_count"] == 0 and report["holds"]
    assert report["first_covered"] is None


def test_realize_sequences_orders():
    fam = realize_sequences(*W4_ORDERS)
    assert ChainConfig.from_family(fam) == ChainConfig.from_sequences(*W4_ORDERS)
    assert count_S_intersecting_tuples(fam, codes.w4_points(), 2) >= 0


def test_reference_witness(w4):
    family, S = w4
    v = validate_witness(family, S)
    assert (v["pair_count"], v["tuple_count"], v["max_subfamily"], v["valid"]) == (6, 0, 2, True)
    assert v["pair_density"] == "1"
    for p in S.points:
        assert len(point_membership(family, p)) == 2
    assert S.points[0] == (Fraction(5, 2), Fraction(5))


def test_found_witness_is_valid():
    family, S = codes.find_N2_witness()
    assert len(family) == 4 and family.dimension == 2
    assert validate_witness(family, S)["valid"]


def test_no_one_dimensional_witness():
    assert codes.find_witness(1, 2) is None
    assert codes.find_witness(1, 3) is None
