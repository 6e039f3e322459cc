import pytest
from hypothesis import given, strategies as st

from diagcong.cardinals import (ALEPH_0, Cardinal, CardinalContext, FIN_0,
                                FIN_1, OrdIndex, cofinality, compare,
                                format_cardinal, interval, parse_cardinal,
                                predecessor, successor)


def test_order_examples():
    assert compare(Cardinal.finite(5), ALEPH_0) == -1
    assert compare(Cardinal.aleph(0, 1), Cardinal.aleph(0, 1)) == 0
    # aleph_3 < aleph_w
    assert compare(Cardinal.aleph(0, 3), Cardinal.aleph(1, 0)) == -1
    assert Cardinal.finite(7) < Cardinal.finite(8) < ALEPH_0


def test_successor_examples():
    assert successor(FIN_0) == FIN_1
    assert successor(ALEPH_0) == Cardinal.aleph(0, 1)
    assert successor(Cardinal.aleph(1, 0)) == Cardinal.aleph(1, 1)


def test_predecessor_inverts_successor():
    for c in [FIN_0, Cardinal.finite(9), ALEPH_0, Cardinal.aleph(2, 3)]:
        assert predecessor(successor(c)) == c
    with pytest.raises(ValueError):
        predecessor(FIN_0)
    with pytest.raises(ValueError):
        predecessor(ALEPH_0)


def test_cofinality_convention():
    # successor cardinals (and nonzero finite ones) get cofinality 1
    assert cofinality(Cardinal.aleph(0, 1)) == FIN_1
    assert cofinality(Cardinal.finite(3)) == FIN_1
    # all representable limits are countably cofinal
    assert cofinality(ALEPH_0) == ALEPH_0
    assert cofinality(Cardinal.aleph(1, 0)) == ALEPH_0
    assert cofinality(Cardinal.aleph(5, 0)) == ALEPH_0
    with pytest.raises(ValueError):
        cofinality(FIN_0)


def test_cofinality_properties():
    infinite = [ALEPH_0, Cardinal.aleph(0, 2), Cardinal.aleph(1, 0), Cardinal.aleph(3, 4)]
    for c in infinite:
        assert cofinality(c) <= c
        assert cofinality(successor(c)) == FIN_1


def test_interval_all():
    assert interval(ALEPH_0, Cardinal.aleph(0, 2)) == \
        [ALEPH_0, Cardinal.aleph(0, 1), Cardinal.aleph(0, 2)]
    assert interval(Cardinal.finite(2), Cardinal.finite(5)) == \
        [Cardinal.finite(k) for k in (2, 3, 4, 5)]
    assert interval(Cardinal.aleph(0, 2), Cardinal.aleph(0, 1)) == []


def test_interval_one_or_infinite():
    assert interval(FIN_1, Cardinal.aleph(0, 1), "one_or_infinite") == \
        [FIN_1, ALEPH_0, Cardinal.aleph(0, 1)]
    # 1 excluded when the interval starts above it
    assert interval(Cardinal.finite(2), ALEPH_0, "one_or_infinite") == [ALEPH_0]


def test_interval_rejects_infinite_sets():
    with pytest.raises(ValueError):
        interval(FIN_1, ALEPH_0)
    with pytest.raises(ValueError):
        interval(Cardinal.aleph(0, 2), Cardinal.aleph(1, 0))
    with pytest.raises(ValueError):
        interval(FIN_0, Cardinal.aleph(1, 2), "one_or_infinite")


def test_interval_sorted_and_duplicate_free():
    vals = interval(FIN_1, Cardinal.aleph(0, 3), "one_or_infinite")
    assert vals == sorted(vals)
    assert len(set(vals)) == len(vals)


def test_ordinal_index_limits():
    assert not OrdIndex(0, 0).is_limit
    assert OrdIndex(2, 0).is_limit
    assert not OrdIndex(2, 1).is_limit
    assert Cardinal.aleph(1, 0).is_uncountable_limit
    assert not ALEPH_0.is_uncountable_limit
    assert ALEPH_0.is_limit


@pytest.mark.parametrize("text", [
    "0", "7", "aleph_0", "aleph_12", "aleph_w", "aleph_w+3",
    "aleph_w*2", "aleph_w*2+5",
])
def test_text_round_trip(text):
    assert format_cardinal(parse_cardinal(text)) == text


@pytest.mark.parametrize("bad", ["", "aleph", "aleph_", "w+1", "-3", "aleph_w*"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_cardinal(bad)


def test_context():
    ctx = CardinalContext(Cardinal.aleph(0, 1))
    assert ctx.x_plus == Cardinal.aleph(0, 2)
    assert ctx.finite_index == 1
    assert CardinalContext(Cardinal.aleph(1, 0)).finite_index is None
    with pytest.raises(ValueError):
        CardinalContext(Cardinal.finite(4))


cardinals = st.one_of(
    st.integers(min_value=0, max_value=50).map(Cardinal.finite),
    st.tuples(st.integers(0, 5), st.integers(0, 5)).map(lambda ab: Cardinal.aleph(*ab)),
)


@given(cardinals)
def test_successor_strictly_increases(c):
    assert c < successor(c)


@given(cardinals)
def test_format_parse_round_trip(c):
    assert parse_cardinal(format_cardinal(c)) == c


@given(cardinals, cardinals, cardinals)
def test_total_order(a, b, c):
    assert compare(a, b) == -compare(b, a)
    if a <= b <= c:
        assert a <= c
