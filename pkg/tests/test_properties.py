import pytest

from hellylab import codes, properties
from hellylab.geometry import Box


@pytest.mark.parametrize("name", sorted(properties.PROPERTIES))
def test_property_passes(name):
    result = properties.run_property(name, seed=1, trials=25)
    assert result.passed, result.to_json()
    assert result.trials > 0


def test_property_seeding_is_per_name():
    a = properties.run_property("prop_kalai", seed=5, trials=10).to_json()
    b = properties.run_property("prop_kalai", seed=5, trials=10).to_json()
    assert a == b


def test_fixture_checks_pass():
    assert all(r.passed for r in properties.fixture_checks())


def test_fixture_checks_catch_mutation():
    family, S = codes.w4_family(), codes.w4_points()
    # growing B3 over (5/2, 5) makes {1, 2, 3} S-intersecting
    bad = family.replace(3, Box((2, 1), (7, 8)))
    failed = {r.name for r in properties.fixture_checks(bad, S) if not r.passed}
    assert "fixture.witness_no_S_triple" in failed


def test_check_all_rejects_zero_trials():
    with pytest.raises(ValueError):
        properties.check_all(trials=0)


def test_dp_table_matches_reference():
    from hellylab.perms import p_tuple_dependency

    plist, sets, values = properties._dp_table(4, 2)
    for t in range(0, len(sets), 37):
        A = [plist[x] for x in sorted(set(sets[t].tolist()))]
        for p in range(1, 5):
            assert values[t, p - 1] == p_tuple_dependency(A, p).value
