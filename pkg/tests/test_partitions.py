import random

import pytest
from hypothesis import given, settings, strategies as st

from diagcong.monoids import random_partial_matching, random_partition
from diagcong.partitions import (GreenFlags, Partition, all_singletons,
                                 as_transformation_map, basic_relation_member,
                                 compose, drank, epsilon_partition,
                                 format_partition, green, hat,
                                 identity_partition, make_partition,
                                 parse_partition, partition_join,
                                 partition_meet, perm_partition,
                                 phi_cycle_type, refine_lattice, refines, star,
                                 stats, sym_diff_counts)
from diagcong.symgroups import NormalSubgroup

# the degree-6 pair whose product is worked out in the source material
ALPHA = parse_partition("6; {1,4},{2,3,4',5'},{5,6},{1',2',6'}")
BETA = parse_partition("6; {1,2},{3,4,1'},{5,4',5',6'}")


@st.composite
def partitions(draw, n=4):
    rgs = [0]
    for _ in range(2 * n - 1):
        rgs.append(draw(st.integers(0, max(rgs) + 1)))
    blocks = {}
    for v, c in enumerate(rgs):
        blocks.setdefault(c, []).append(v)
    return make_partition(n, blocks.values())


def brute_rank(p):
    # independent of stats(): scan the raw blocks
    return sum(1 for b in p.blocks if any(v < p.n for v in b) and any(v >= p.n for v in b))


def test_make_partition_validates():
    ident = make_partition(2, [[0, 2], [1, 3]])
    assert ident == identity_partition(2)
    with pytest.raises(ValueError):
        make_partition(2, [[0], [0, 1]])
    with pytest.raises(ValueError):
        make_partition(2, [[0, 4]])
    # omitted singletons are completed
    assert make_partition(2, [[0, 2]]) == parse_partition("2; {1,1'}")


def test_worked_example_product():
    expected = parse_partition("6; {2,3,1',4',5',6'},{1,4},{5,6},{2'},{3'}")
    assert compose(ALPHA, BETA) == expected


def test_identity_element():
    for p in [ALPHA, BETA, all_singletons(6)]:
        assert compose(identity_partition(6), p) == p
        assert compose(p, identity_partition(6)) == p


def test_epsilon_intersection():
    eY, eZ = epsilon_partition(3, [1, 2]), epsilon_partition(3, [2, 3])
    assert compose(eY, eZ) == epsilon_partition(3, [2])


def test_compose_degree_mismatch():
    with pytest.raises(ValueError):
        compose(ALPHA, identity_partition(5))


def test_star_examples():
    assert star(identity_partition(4)) == identity_partition(4)
    expected = parse_partition("6; {1',4'},{4,5,2',3'},{5',6'},{1,2,6},{3}")
    assert star(ALPHA) == expected


@given(partitions())
def test_star_involution(p):
    assert star(star(p)) == p


@given(partitions(n=3), partitions(n=3))
def test_antihomomorphism(a, b):
    assert star(compose(a, b)) == compose(star(b), star(a))


@given(partitions())
def test_regularity(p):
    assert compose(compose(p, star(p)), p) == p


def test_stats_examples():
    s = stats(epsilon_partition(3, [1, 3]))
    assert s.rank == 2 and s.dom == s.codom == frozenset({1, 3})
    assert s.ker == s.coker == ((1,), (2,), (3,))
    assert stats(ALPHA).rank == 1 == brute_rank(ALPHA)
    empty = stats(all_singletons(4))
    assert empty.rank == 0 and empty.dom == empty.codom == frozenset()


@given(partitions(n=5))
def test_rank_against_block_scan(p):
    assert stats(p).rank == brute_rank(p) == p.rank


def test_hat_examples():
    assert hat(identity_partition(3)) == all_singletons(3)
    rank0 = hat(ALPHA)
    assert rank0.rank == 0
    assert hat(rank0) == rank0


@given(partitions())
def test_hat_preserves_traces(p):
    sp, sh = stats(p), stats(hat(p))
    assert sh.over == sp.over and sh.under == sp.under and sh.rank == 0


def test_hat_is_retraction_on_low_ranks(monoid):
    m = monoid("P", 3)
    low = [p for p in m.elements if p.rank <= 1]
    for a in low:
        for b in low:
            assert hat(compose(a, b)) == compose(hat(a), hat(b))


def test_sym_diff_examples():
    assert sym_diff_counts(ALPHA, ALPHA) == (0, 0, 0)
    # dropping a two-point block from an epsilon costs three blocks per point
    eYZ, eY = epsilon_partition(5, [1, 2, 3, 4, 5]), epsilon_partition(5, [1, 2, 3])
    assert sym_diff_counts(eYZ, eY)[0] == 3 * 2


@given(partitions(), partitions())
def test_trace_diff_bounded_by_block_diff(a, b):
    d_total, d_over, d_under = sym_diff_counts(a, b)
    assert d_over <= d_total and d_under <= d_total


def test_green_epsilon():
    for y in ([1], [1, 2], [2]):
        for z in ([1], [1, 2], [2]):
            flags = green(epsilon_partition(2, y), epsilon_partition(2, z))
            assert flags.r == (set(y) == set(z))


@given(partitions(n=3), partitions(n=3))
def test_green_j_is_rank(a, b):
    flags = green(a, b)
    assert flags.j == (a.rank == b.rank)
    assert flags.leq_j == (a.rank <= b.rank)
    assert flags.h == (flags.r and flags.l)


def division_oracle(m):
    """<=_R, <=_L, <=_J via actual one- and two-sided division."""
    size = len(m)
    rows = [set(m.table[i]) | {i} for i in range(size)]
    cols = [set(m.table[j][i] for j in range(size)) | {i} for i in range(size)]
    two = [set() for _ in range(size)]
    for i in range(size):
        for s in range(size):
            two[i].update(rows[m.table[s][i]])
    return rows, cols, two


def test_green_matches_division_p2(monoid):
    m = monoid("P", 2)
    rows, cols, two = division_oracle(m)
    for a in range(len(m)):
        for b in range(len(m)):
            flags = green(m.elements[a], m.elements[b])
            assert flags.leq_r == (a in rows[b])
            assert flags.leq_l == (a in cols[b])
            assert flags.leq_j == (a in two[b])
            assert flags.r == (flags.leq_r and b in rows[a])
            assert flags.l == (flags.leq_l and b in cols[a])


def test_phi_cycle_type():
    ident = identity_partition(3)
    assert phi_cycle_type(ident, ident) == (1, 1, 1)
    swap = perm_partition(3, [2, 1, 3])
    assert phi_cycle_type(ident, swap) == (2, 1)
    cycle = perm_partition(4, [2, 3, 4, 1])
    assert phi_cycle_type(ident, cycle) == (4,)
    assert phi_cycle_type(cycle, ident) == (4,)
    with pytest.raises(ValueError):
        phi_cycle_type(ident, epsilon_partition(3, [1]))


def test_phi_on_nontrivial_transversals():
    a = make_partition(2, [[0, 1, 2], [3]])  # {1,2,1'},{2'}
    b = make_partition(2, [[0, 1, 3], [2]])  # {1,2,2'},{1'}
    assert green(a, b).h
    assert phi_cycle_type(a, b) == (1,)


def test_refinement_examples():
    for p in [ALPHA, BETA, identity_partition(6)]:
        assert refines(all_singletons(6), p)
        res = refine_lattice(p, p)
        assert res.meet == p and res.join == p and res.refines


@given(partitions(), partitions())
def test_join_shrinks_difference(a, b):
    theta = partition_join(a, b)
    d_ab = sym_diff_counts(a, b)[0]
    assert sym_diff_counts(a, theta)[0] <= d_ab
    assert sym_diff_counts(b, theta)[0] <= d_ab


@given(partitions(), partitions())
def test_meet_join_bound_both(a, b):
    assert refines(partition_meet(a, b), a)
    assert refines(a, partition_join(a, b))


@settings(max_examples=40)
@given(partitions(), partitions(), partitions())
def test_refinement_is_multiplicative(a, b, th):
    if refines(a, b):
        assert refines(compose(th, a), compose(th, b))
        assert refines(compose(a, th), compose(b, th))


def test_drank_examples():
    ident = identity_partition(3)
    assert drank(ident, ident) == 0
    const = make_partition(3, [[0, 1, 2, 3], [4], [5]])  # everything to 1
    assert as_transformation_map(const) == (1, 1, 1)
    # points 2,3 move; their images are {1} under const and {2,3} under id
    assert drank(const, ident) == 2
    with pytest.raises(ValueError):
        drank(epsilon_partition(3, [1]), ident)


def test_drank_inequality_sampled():
    rng = random.Random(99)
    from diagcong.monoids import random_transformation
    for _ in range(300):
        a, b = random_transformation(rng, 5), random_transformation(rng, 5)
        d = sym_diff_counts(a, b)[0]
        dr = drank(a, b)
        if dr == 0:
            assert d == 0
        else:
            assert dr <= d <= 4 * dr


def test_basic_relations():
    ident = identity_partition(2)
    other = epsilon_partition(2, [1])
    assert basic_relation_member("block_diff", 1, ident, ident)
    assert not basic_relation_member("block_diff", 1, ident, other)
    assert basic_relation_member("rees", 2, other, all_singletons(2))
    assert not basic_relation_member("rees", 1, other, all_singletons(2))
    s2 = NormalSubgroup(2, "symmetric")
    assert basic_relation_member("perm_normal", s2, ident, perm_partition(2, [2, 1]))
    assert not basic_relation_member("perm_normal", NormalSubgroup(2, "trivial"),
                                     ident, perm_partition(2, [2, 1]))
    with pytest.raises(ValueError):
        basic_relation_member("block_diff", 0, ident, ident)
    with pytest.raises(ValueError):
        basic_relation_member("perm_normal", 3, ident, ident)


def test_upper_diff_never_reaches_2n(monoid):
    m = monoid("PB", 2)
    bound = 2 * 2
    for a in m.elements:
        for b in m.elements:
            assert sym_diff_counts(a, b)[1] < bound
            assert basic_relation_member("upper_diff", bound, a, b)


def test_associativity_exhaustive_p2(monoid):
    m = monoid("P", 2)
    t = m.table
    n = len(m)
    for i in range(n):
        for j in range(n):
            tij = t[i][j]
            for k in range(n):
                assert t[tij][k] == t[i][t[j][k]]


@settings(max_examples=60)
@given(st.data())
def test_associativity_sampled(data):
    a = data.draw(partitions(n=4))
    b = data.draw(partitions(n=4))
    c = data.draw(partitions(n=4))
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_pb_closed_under_composition():
    rng = random.Random(7)
    for _ in range(400):
        a = random_partial_matching(rng, 5)
        b = random_partial_matching(rng, 5)
        assert compose(a, b).max_block_size() <= 2


def test_degree_zero():
    empty = make_partition(0, [])
    assert empty == identity_partition(0) == all_singletons(0)
    assert compose(empty, empty) == empty
    assert stats(empty).rank == 0
    assert format_partition(empty) == "0;"


def test_text_round_trip():
    for text in ["0;", "2;", "2; {1,1'},{2,2'}", "6; {1,4},{2,3,4',5'},{5,6},{1',2',6'}"]:
        assert format_partition(parse_partition(text)) == text
    rng = random.Random(5)
    for _ in range(100):
        p = random_partition(rng, 4)
        assert parse_partition(format_partition(p)) == p


def test_parse_accepts_explicit_singletons():
    assert parse_partition("3; {1,1'},{2},{3},{2'},{3'}") == epsilon_partition(3, [1])


@pytest.mark.parametrize("bad", ["3 {1}", "2; {1,5'}", "2; {0}", "2; {1,x}"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_partition(bad)


def test_green_flags_are_namedtuple():
    flags = green(ALPHA, BETA)
    assert isinstance(flags, GreenFlags)
    assert flags.leq_j == (ALPHA.rank <= BETA.rank)
