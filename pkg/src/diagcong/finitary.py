"""Infinite-X partitions with finite deviation, and symbolic pair profiles.

A finitary partition is a finite-degree core on the points 1..w plus a tail
describing all points beyond the window: either {x, x'} blocks everywhere
(identity tail) or all singletons.  Two tail modes keep the concrete
semantics finite and testable; pair profiles that no finitary pair can
realize (such as a countable block difference inside an uncountable X) are
produced directly by `synth_profile`, which enforces the same consistency
invariants the concrete extraction guarantees.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cardinals import Cardinal, CardinalContext, FIN_0, parse_cardinal
from .partitions import (Partition, format_partition, compose, green,
                         make_partition, parse_partition, phi_cycle_type,
                         stats, sym_diff_counts)
from .symgroups import CycleType, identity_cycle_type

IDENTITY_TAIL = "identity"
SINGLETON_TAIL = "singleton"


@dataclass(frozen=True)
class FinitaryPartition:
    context: CardinalContext
    core: Partition
    tail: str

    def __post_init__(self):
        if self.tail not in (IDENTITY_TAIL, SINGLETON_TAIL):
            raise ValueError(f"unknown tail mode {self.tail!r}")

    @property
    def window(self) -> int:
        return self.core.n

    def __str__(self) -> str:
        return f"{format_partition(self.core)} | tail={self.tail} | X={self.context}"


def _last_column_matches_tail(core: Partition, tail: str) -> bool:
    w = core.n
    if w == 0:
        return False
    if tail == IDENTITY_TAIL:
        return (w - 1, 2 * w - 1) in core.blocks
    return (w - 1,) in core.blocks and (2 * w - 1,) in core.blocks


def _shrink(core: Partition) -> Partition:
    w = core.n
    keep = []
    for block in core.blocks:
        b = [v if v < w else v - 1 for v in block if v not in (w - 1, 2 * w - 1)]
        if b:
            keep.append(b)
    return make_partition(w - 1, keep)


def make_finitary(context: CardinalContext, core: Partition, tail: str) -> FinitaryPartition:
    """Canonical form: strip trailing columns that just repeat the tail."""
    while _last_column_matches_tail(core, tail):
        core = _shrink(core)
    return FinitaryPartition(context, core, tail)


def widen_core(a: FinitaryPartition, width: int) -> Partition:
    """The core extended to the given window by explicit tail columns."""
    if width < a.window:
        raise ValueError("cannot widen below the current window")
    w, n = a.window, width
    blocks = [[v if v < w else v + (n - w) for v in block] for block in a.core.blocks]
    if a.tail == IDENTITY_TAIL:
        blocks.extend([x, n + x] for x in range(w, n))
    return make_partition(n, blocks)


def fin_identity(context: CardinalContext) -> FinitaryPartition:
    return make_finitary(context, make_partition(0, []), IDENTITY_TAIL)


def fin_all_singletons(context: CardinalContext) -> FinitaryPartition:
    return make_finitary(context, make_partition(0, []), SINGLETON_TAIL)


def fin_epsilon_cofinite(context: CardinalContext, missing) -> FinitaryPartition:
    """The idempotent with {y, y'} blocks for every y outside a finite set."""
    missing = set(missing)
    w = max(missing, default=0)
    core = make_partition(w, ([y - 1, w + y - 1] for y in range(1, w + 1)
                              if y not in missing))
    return make_finitary(context, core, IDENTITY_TAIL)


def fin_epsilon_finite(context: CardinalContext, points) -> FinitaryPartition:
    """The idempotent with {y, y'} blocks exactly on a finite set."""
    pts = set(points)
    w = max(pts, default=0)
    core = make_partition(w, ([y - 1, w + y - 1] for y in pts))
    return make_finitary(context, core, SINGLETON_TAIL)


def compose_fin(a: FinitaryPartition, b: FinitaryPartition) -> FinitaryPartition:
    if a.context != b.context:
        raise ValueError("context mismatch")
    w = max(a.window, b.window)
    core = compose(widen_core(a, w), widen_core(b, w))
    tail = IDENTITY_TAIL if a.tail == b.tail == IDENTITY_TAIL else SINGLETON_TAIL
    return make_finitary(a.context, core, tail)


@dataclass(frozen=True)
class FinStats:
    rank: Cardinal
    core: object
    tail: str


def fin_stats(a: FinitaryPartition) -> FinStats:
    core_stats = stats(a.core)
    if a.tail == IDENTITY_TAIL:
        rank = a.context.x_card
    else:
        rank = Cardinal.finite(core_stats.rank)
    return FinStats(rank, core_stats, a.tail)


@dataclass(frozen=True)
class PairProfile:
    """The symbolic data a congruence descriptor sees about a pair: ranks,
    H-relatedness with its cycle type, and the three difference counts."""

    context: CardinalContext
    equal: bool
    rank_a: Cardinal
    rank_b: Cardinal
    h_related: bool
    phi_type: CycleType | None
    d_total: Cardinal
    d_over: Cardinal
    d_under: Cardinal


def synth_profile(context: CardinalContext, equal: bool, rank_a: Cardinal,
                  rank_b: Cardinal, h_related: bool, phi_type: CycleType | None,
                  d_total: Cardinal, d_over: Cardinal,
                  d_under: Cardinal) -> PairProfile:
    """Validated direct construction; rejects combinations no pair realizes."""
    x = context.x_card
    for label, c in (("rank_a", rank_a), ("rank_b", rank_b), ("d_total", d_total),
                     ("d_over", d_over), ("d_under", d_under)):
        if c > x:
            raise ValueError(f"{label} = {c} exceeds |X| = {x}")
    if equal:
        if rank_a != rank_b or not h_related:
            raise ValueError("an equal pair is H-related with equal ranks")
        if not (d_total == FIN_0 and d_over == FIN_0 and d_under == FIN_0):
            raise ValueError("an equal pair has zero differences")
        expected = identity_cycle_type(rank_a.fin) if rank_a.is_finite else None
        if phi_type != expected:
            raise ValueError("an equal pair carries the identity cycle type")
        return PairProfile(context, True, rank_a, rank_b, True, phi_type,
                           d_total, d_over, d_under)

    if d_total < Cardinal.finite(1):
        raise ValueError("distinct pairs differ in at least one block")
    if d_over > d_total or d_under > d_total:
        raise ValueError("trace differences never exceed the block difference")

    if h_related:
        if rank_a != rank_b:
            raise ValueError("H-related pairs have equal ranks")
        if d_over != FIN_0 or d_under != FIN_0:
            raise ValueError("H-related pairs have identical traces")
        if rank_a.is_finite:
            if phi_type is None or sum(phi_type) != rank_a.fin:
                raise ValueError(f"need a cycle type of a permutation of {rank_a} points")
            moved = sum(c for c in phi_type if c > 1)
            if moved == 0:
                raise ValueError("a trivially-connected H-related pair is equal")
            if d_total != Cardinal.finite(2 * moved):
                raise ValueError("an H-related pair differs in exactly 2 blocks "
                                 "per moved transversal")
        elif phi_type is not None:
            raise ValueError("cycle types only exist at finite rank")
    else:
        if phi_type is not None:
            raise ValueError("cycle types only exist for H-related pairs")
        if rank_a != rank_b and max(rank_a, rank_b).is_aleph:
            if d_total < max(rank_a, rank_b):
                raise ValueError("unequal infinite ranks force a block difference "
                                 "at least as large as the bigger rank")
        if rank_a == rank_b == FIN_0 and d_over == FIN_0 and d_under == FIN_0:
            raise ValueError("rank-0 partitions are determined by their traces")

    return PairProfile(context, False, rank_a, rank_b, h_related, phi_type,
                       d_total, d_over, d_under)


def pair_profile(a: FinitaryPartition, b: FinitaryPartition) -> PairProfile:
    if a.context != b.context:
        raise ValueError("context mismatch")
    ctx = a.context
    w = max(a.window, b.window)
    ca, cb = widen_core(a, w), widen_core(b, w)
    d0, d1, d2 = sym_diff_counts(ca, cb)
    tails_agree = a.tail == b.tail
    d_total = Cardinal.finite(d0) if tails_agree else ctx.x_card
    d_over, d_under = Cardinal.finite(d1), Cardinal.finite(d2)
    rank_a, rank_b = fin_stats(a).rank, fin_stats(b).rank
    equal = a == b
    h = tails_agree and green(ca, cb).h
    phi = None
    if h and rank_a.is_finite:
        phi = phi_cycle_type(ca, cb)
    return synth_profile(ctx, equal, rank_a, rank_b, h, phi, d_total, d_over, d_under)


def _cycle_types(n: int):
    """Integer partitions of n, as descending tuples."""
    def rec(remaining: int, largest: int):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - part, part):
                yield (part,) + rest
    yield from rec(n, n)


def sweep_profiles(context: CardinalContext, n_max: int = 4) -> list[PairProfile]:
    """A deterministic sweep of the synthesizable profile space at |X| = aleph_m.

    Covers equal pairs, finite-rank H-related pairs for every nontrivial
    cycle type up to n_max, finite-rank non-H pairs with trace differences
    across all finite and aleph values, and infinite-rank pairs on both
    sides of the block-difference-vs-rank divide.  Finite non-H ranks stop
    at n_max - 1 so that the generated congruences stay within an
    enumeration bounded by n_max.
    """
    m = context.finite_index
    if m is None:
        raise ValueError(f"sweep needs |X| = aleph_m with finite m, got {context}")
    alephs = [Cardinal.aleph(0, j) for j in range(m + 1)]
    fins = [Cardinal.finite(j) for j in range(3)]
    diffs = fins + alephs
    out: list[PairProfile] = []

    def add(**kw):
        out.append(synth_profile(context, **kw))

    for rank in [FIN_0, Cardinal.finite(1), Cardinal.finite(n_max)] + alephs:
        phi = None
        if rank.is_finite:
            from .symgroups import identity_cycle_type
            phi = identity_cycle_type(rank.fin)
        add(equal=True, rank_a=rank, rank_b=rank, h_related=True, phi_type=phi,
            d_total=FIN_0, d_over=FIN_0, d_under=FIN_0)

    for n in range(2, n_max + 1):
        for ct in _cycle_types(n):
            moved = sum(c for c in ct if c > 1)
            if moved == 0:
                continue
            add(equal=False, rank_a=Cardinal.finite(n), rank_b=Cardinal.finite(n),
                h_related=True, phi_type=ct, d_total=Cardinal.finite(2 * moved),
                d_over=FIN_0, d_under=FIN_0)

    for n in range(0, n_max):
        for rank_b in {FIN_0, Cardinal.finite(n)}:
            for d_over in diffs:
                for d_under in diffs:
                    if n == 0 and d_over == d_under == FIN_0:
                        continue
                    d_total = max(d_over, d_under, Cardinal.finite(1))
                    add(equal=False, rank_a=Cardinal.finite(n), rank_b=rank_b,
                        h_related=False, phi_type=None, d_total=d_total,
                        d_over=d_over, d_under=d_under)

    for kappa in alephs:
        small = [Cardinal.finite(1), Cardinal.finite(2)] + \
            [a for a in alephs if a < kappa]
        for d_total in small:
            for d_over in (d for d in diffs if d <= d_total):
                for d_under in (d for d in diffs if d <= d_total):
                    add(equal=False, rank_a=kappa, rank_b=kappa, h_related=False,
                        phi_type=None, d_total=d_total, d_over=d_over,
                        d_under=d_under)
        lows = [FIN_0] + [a for a in alephs if a < kappa] + [kappa]
        for rank_b in lows:
            for d_total in (a for a in alephs if a >= kappa):
                for d_over in (d for d in diffs if d <= d_total):
                    for d_under in (d for d in diffs if d <= d_total):
                        add(equal=False, rank_a=kappa, rank_b=rank_b,
                            h_related=False, phi_type=None, d_total=d_total,
                            d_over=d_over, d_under=d_under)
    return out


def format_finitary(a: FinitaryPartition) -> str:
    return str(a)


def parse_finitary(text: str) -> FinitaryPartition:
    parts = [p.strip() for p in text.split("|")]
    if len(parts) != 3 or not parts[1].startswith("tail=") or not parts[2].startswith("X="):
        raise ValueError(f"expected '<partition> | tail=... | X=...', got {text!r}")
    core = parse_partition(parts[0])
    tail = parts[1][len("tail="):]
    ctx = CardinalContext(parse_cardinal(parts[2][len("X="):]))
    return make_finitary(ctx, core, tail)
