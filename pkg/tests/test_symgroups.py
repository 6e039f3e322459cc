import pytest

from diagcong.symgroups import (NormalSubgroup, count_normal_subgroups,
                                normal_closure_of_cycle_type, normal_subgroups,
                                parse_normal_subgroup)


def test_chain_order():
    chain = [NormalSubgroup(1, "trivial"), NormalSubgroup(2, "trivial"),
             NormalSubgroup(2, "symmetric"), NormalSubgroup(3, "trivial"),
             NormalSubgroup(3, "alternating"), NormalSubgroup(3, "symmetric"),
             NormalSubgroup(4, "trivial"), NormalSubgroup(4, "klein4"),
             NormalSubgroup(4, "alternating"), NormalSubgroup(4, "symmetric")]
    assert chain == sorted(chain)
    assert all(chain[i] < chain[i + 1] for i in range(len(chain) - 1))


def test_small_degrees_collapse():
    assert NormalSubgroup(1, "symmetric") == NormalSubgroup(1, "trivial")
    assert NormalSubgroup(2, "alternating") == NormalSubgroup(2, "trivial")
    with pytest.raises(ValueError):
        NormalSubgroup(3, "klein4")
    with pytest.raises(ValueError):
        NormalSubgroup(5, "klein4")


def test_counts():
    assert [count_normal_subgroups(q) for q in (1, 2, 3, 4, 5, 6)] == \
        [1, 2, 3, 4, 3, 3]
    assert [str(n) for n in normal_subgroups(4)] == ["id_4", "K_4", "A_4", "S_4"]


def test_membership_by_cycle_type():
    k4 = NormalSubgroup(4, "klein4")
    assert k4.contains_cycle_type((1, 1, 1, 1))
    assert k4.contains_cycle_type((2, 2))
    assert not k4.contains_cycle_type((3, 1))
    a4 = NormalSubgroup(4, "alternating")
    assert a4.contains_cycle_type((3, 1))
    assert a4.contains_cycle_type((2, 2))
    assert not a4.contains_cycle_type((4,))
    assert not a4.contains_cycle_type((2, 1, 1))
    assert NormalSubgroup(4, "symmetric").contains_cycle_type((4,))
    with pytest.raises(ValueError):
        a4.contains_cycle_type((3,))


def test_normal_closure():
    assert normal_closure_of_cycle_type(3, (1, 1, 1)).is_trivial_group
    assert normal_closure_of_cycle_type(2, (2,)) == NormalSubgroup(2, "symmetric")
    assert normal_closure_of_cycle_type(3, (3,)) == NormalSubgroup(3, "alternating")
    assert normal_closure_of_cycle_type(4, (2, 2)) == NormalSubgroup(4, "klein4")
    assert normal_closure_of_cycle_type(4, (3, 1)) == NormalSubgroup(4, "alternating")
    assert normal_closure_of_cycle_type(4, (4,)) == NormalSubgroup(4, "symmetric")
    assert normal_closure_of_cycle_type(5, (2, 2, 1)) == NormalSubgroup(5, "alternating")
    assert normal_closure_of_cycle_type(5, (2, 1, 1, 1)) == NormalSubgroup(5, "symmetric")


def test_parse_format_round_trip():
    for text in ["S_1", "id_2", "S_2", "id_3", "A_3", "S_3", "K_4", "A_7"]:
        assert str(parse_normal_subgroup(text)) == text
    # aliases collapse to the canonical form
    assert str(parse_normal_subgroup("A_2")) == "id_2"
    assert str(parse_normal_subgroup("id_1")) == "S_1"
    with pytest.raises(ValueError):
        parse_normal_subgroup("B_3")
