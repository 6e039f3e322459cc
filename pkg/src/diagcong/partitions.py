"""Finite diagram-monoid elements: set partitions of {1..n} ∪ {1'..n'}.

A degree-n element is a partition of 2n vertices, encoded 0..2n-1 with
vertex i (0 <= i < n) standing for the upper point i+1 and vertex n+i for
the lower point (i+1)'.  Canonical form orders blocks by least vertex and
vertices within a block ascending, so equality and hashing are structural.

Multiplication is by the product graph: stack alpha over beta, identify
alpha's lower row with beta's upper row in a scratch 3n-vertex union-find,
and read off the components restricted to the outer 2n vertices.  A block
meeting both rows is a transversal; the number of transversals is the rank,
and the partitions induced on the upper and lower rows (the traces) drive
everything else: Green's relations, the rank-0 retraction, and the
symmetric-difference counts that the congruence relations bound.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .symgroups import CycleType, NormalSubgroup

Block = tuple[int, ...]
Blocks = tuple[Block, ...]
# partition of 1-based points {1..n}, same canonical ordering as Blocks
Trace = tuple[tuple[int, ...], ...]


def _canonical(blocks: Iterable[Iterable[int]]) -> Blocks:
    return tuple(sorted((tuple(sorted(b)) for b in blocks if b), key=lambda b: b[0]))


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # root at the smaller vertex keeps canonicalization stable
            if rx > ry:
                rx, ry = ry, rx
            self.parent[ry] = rx

    def components(self, size: int) -> list[list[int]]:
        comp: dict[int, list[int]] = {}
        for v in range(size):
            comp.setdefault(self.find(v), []).append(v)
        return list(comp.values())


@dataclass(frozen=True)
class Partition:
    n: int
    blocks: Blocks

    def __str__(self) -> str:
        return format_partition(self)

    @property
    def rank(self) -> int:
        n = self.n
        return sum(1 for b in self.blocks if b[0] < n <= b[-1])

    def max_block_size(self) -> int:
        return max((len(b) for b in self.blocks), default=0)


def make_partition(n: int, blocks: Iterable[Iterable[int]]) -> Partition:
    """Build and validate a degree-n partition; omitted singletons are filled in."""
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    seen: set[int] = set()
    cleaned: list[list[int]] = []
    for block in blocks:
        b = list(block)
        if not b:
            continue
        for v in b:
            if not 0 <= v < 2 * n:
                raise ValueError(f"vertex {v} out of range for degree {n}")
            if v in seen:
                raise ValueError(f"vertex {v} appears in more than one block")
            seen.add(v)
        cleaned.append(b)
    cleaned.extend([v] for v in range(2 * n) if v not in seen)
    return Partition(n, _canonical(cleaned))


def identity_partition(n: int) -> Partition:
    return make_partition(n, ([i, n + i] for i in range(n)))


def epsilon_partition(n: int, points: Iterable[int]) -> Partition:
    """Blocks {y, y'} for y in the given 1-based set, singletons elsewhere."""
    return make_partition(n, ([y - 1, n + y - 1] for y in points))


def all_singletons(n: int) -> Partition:
    return make_partition(n, [])


def perm_partition(n: int, images: Iterable[int]) -> Partition:
    """The unit with blocks {i, (i pi)'} for the 1-based image list."""
    imgs = list(images)
    if sorted(imgs) != list(range(1, n + 1)):
        raise ValueError(f"{imgs} is not a permutation of 1..{n}")
    return make_partition(n, ([i, n + imgs[i] - 1] for i in range(n)))


def compose(alpha: Partition, beta: Partition) -> Partition:
    if alpha.n != beta.n:
        raise ValueError(f"degree mismatch: {alpha.n} vs {beta.n}")
    n = alpha.n
    uf = _UnionFind(3 * n)
    for block in alpha.blocks:
        first = block[0]
        a0 = first if first < n else first + n
        for v in block[1:]:
            uf.union(a0, v if v < n else v + n)  # alpha's lower row -> middle
    for block in beta.blocks:
        first = block[0]
        b0 = first + 2 * n if first < n else first
        for v in block[1:]:
            uf.union(b0, v + 2 * n if v < n else v)  # beta's upper row -> middle
    outer: dict[int, list[int]] = {}
    for v in range(2 * n):
        outer.setdefault(uf.find(v), []).append(v)
    return Partition(n, _canonical(outer.values()))


def star(alpha: Partition) -> Partition:
    """Swap the upper and lower copies of every block (the involution)."""
    n = alpha.n
    flipped = ([v + n if v < n else v - n for v in b] for b in alpha.blocks)
    return Partition(n, _canonical(flipped))


class PartitionStats(NamedTuple):
    rank: int
    dom: frozenset[int]
    codom: frozenset[int]
    over: Trace  # upper-trace partition of {1..n}
    under: Trace  # lower-trace partition of {1..n}

    @property
    def ker(self) -> Trace:
        """Kernel as a partition of {1..n}; its equivalence is the upper trace."""
        return self.over

    @property
    def coker(self) -> Trace:
        return self.under


def stats(alpha: Partition) -> PartitionStats:
    n = alpha.n
    rank = 0
    dom: list[int] = []
    codom: list[int] = []
    over: list[tuple[int, ...]] = []
    under: list[tuple[int, ...]] = []
    for block in alpha.blocks:
        up = [v + 1 for v in block if v < n]
        low = [v - n + 1 for v in block if v >= n]
        if up:
            over.append(tuple(up))
        if low:
            under.append(tuple(low))
        if up and low:
            rank += 1
            dom.extend(up)
            codom.extend(low)
    return PartitionStats(rank, frozenset(dom), frozenset(codom),
                          tuple(sorted(over)), tuple(sorted(under)))


def hat(alpha: Partition) -> Partition:
    """The unique rank-0 partition with alpha's traces: split every transversal."""
    n = alpha.n
    pieces: list[list[int]] = []
    for block in alpha.blocks:
        up = [v for v in block if v < n]
        low = [v for v in block if v >= n]
        if up:
            pieces.append(up)
        if low:
            pieces.append(low)
    return Partition(n, _canonical(pieces))


def sym_diff_counts(alpha: Partition, beta: Partition) -> tuple[int, int, int]:
    """(d_total, d_over, d_under): block counts of the symmetric differences
    of the partitions themselves and of their upper/lower traces."""
    if alpha.n != beta.n:
        raise ValueError(f"degree mismatch: {alpha.n} vs {beta.n}")
    d_total = len(set(alpha.blocks) ^ set(beta.blocks))
    sa, sb = stats(alpha), stats(beta)
    d_over = len(set(sa.over) ^ set(sb.over))
    d_under = len(set(sa.under) ^ set(sb.under))
    return d_total, d_over, d_under


def trace_refines(finer: Trace, coarser: Trace) -> bool:
    owner: dict[int, int] = {}
    for i, block in enumerate(coarser):
        for x in block:
            owner[x] = i
    return all(len({owner[x] for x in block}) <= 1 for block in finer)


class GreenFlags(NamedTuple):
    leq_r: bool
    leq_l: bool
    leq_j: bool
    r: bool
    l: bool
    j: bool
    h: bool


def green(alpha: Partition, beta: Partition) -> GreenFlags:
    """Green's pre-orders and relations from the statistics characterization."""
    if alpha.n != beta.n:
        raise ValueError(f"degree mismatch: {alpha.n} vs {beta.n}")
    sa, sb = stats(alpha), stats(beta)
    # x <=_R y iff dom shrinks and the kernel coarsens (y's trace refines x's)
    leq_r = sa.dom <= sb.dom and trace_refines(sb.over, sa.over)
    leq_l = sa.codom <= sb.codom and trace_refines(sb.under, sa.under)
    leq_j = sa.rank <= sb.rank
    r = sa.dom == sb.dom and sa.over == sb.over
    l = sa.codom == sb.codom and sa.under == sb.under
    j = sa.rank == sb.rank
    return GreenFlags(leq_r, leq_l, leq_j, r, l, j, r and l)


def phi_cycle_type(alpha: Partition, beta: Partition) -> CycleType:
    """Cycle type of the permutation matching alpha's transversals to beta's.

    Only defined for H-related elements; conjugation-invariance makes the
    cycle type independent of how the transversals are indexed.
    """
    if not green(alpha, beta).h:
        raise ValueError("cycle type is only defined for H-related partitions")
    n = alpha.n

    def transversals(p: Partition) -> dict[frozenset[int], frozenset[int]]:
        out = {}
        for block in p.blocks:
            up = frozenset(v for v in block if v < n)
            low = frozenset(v for v in block if v >= n)
            if up and low:
                out[up] = low
        return out

    ta, tb = transversals(alpha), transversals(beta)
    uppers = sorted(ta, key=sorted)
    low_index = {ta[u]: i for i, u in enumerate(uppers)}
    pi = [low_index[tb[u]] for u in uppers]

    seen = [False] * len(pi)
    cycles: list[int] = []
    for i in range(len(pi)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = pi[j]
            length += 1
        cycles.append(length)
    return tuple(sorted(cycles, reverse=True))


def refines(alpha: Partition, beta: Partition) -> bool:
    """Whether every block of alpha is contained in a block of beta."""
    if alpha.n != beta.n:
        raise ValueError(f"degree mismatch: {alpha.n} vs {beta.n}")
    return trace_refines(alpha.blocks, beta.blocks)


def partition_meet(alpha: Partition, beta: Partition) -> Partition:
    if alpha.n != beta.n:
        raise ValueError(f"degree mismatch: {alpha.n} vs {beta.n}")
    owner_a: dict[int, int] = {}
    for i, block in enumerate(alpha.blocks):
        for v in block:
            owner_a[v] = i
    owner_b: dict[int, int] = {}
    for i, block in enumerate(beta.blocks):
        for v in block:
            owner_b[v] = i
    cells: dict[tuple[int, int], list[int]] = {}
    for v in range(2 * alpha.n):
        cells.setdefault((owner_a[v], owner_b[v]), []).append(v)
    return Partition(alpha.n, _canonical(cells.values()))


def partition_join(alpha: Partition, beta: Partition) -> Partition:
    if alpha.n != beta.n:
        raise ValueError(f"degree mismatch: {alpha.n} vs {beta.n}")
    uf = _UnionFind(2 * alpha.n)
    for p in (alpha, beta):
        for block in p.blocks:
            for v in block[1:]:
                uf.union(block[0], v)
    return Partition(alpha.n, _canonical(uf.components(2 * alpha.n)))


class RefinementResult(NamedTuple):
    refines: bool
    meet: Partition
    join: Partition


def refine_lattice(alpha: Partition, beta: Partition) -> RefinementResult:
    return RefinementResult(refines(alpha, beta),
                            partition_meet(alpha, beta),
                            partition_join(alpha, beta))


def as_transformation_map(alpha: Partition) -> tuple[int, ...]:
    """Image list (1-based) when alpha encodes a total transformation.

    Transformations are the partitions with full domain and trivial cokernel:
    every block is A ∪ {b'} with A possibly empty.
    """
    n = alpha.n
    image = [0] * n
    for block in alpha.blocks:
        up = [v for v in block if v < n]
        low = [v - n for v in block if v >= n]
        if len(low) > 1:
            raise ValueError("not a transformation: cokernel is not trivial")
        if not low:
            if up:
                raise ValueError("not a transformation: domain is not all of X")
            continue
        for v in up:
            image[v] = low[0] + 1
    if any(y == 0 for y in image):
        raise ValueError("not a transformation: domain is not all of X")
    return tuple(image)


def is_transformation(alpha: Partition) -> bool:
    try:
        as_transformation_map(alpha)
        return True
    except ValueError:
        return False


def drank(alpha: Partition, beta: Partition) -> int:
    """Difference rank of two transformations: max image size of the set
    of points where they disagree."""
    if alpha.n != beta.n:
        raise ValueError(f"degree mismatch: {alpha.n} vs {beta.n}")
    fa, fb = as_transformation_map(alpha), as_transformation_map(beta)
    moved = [x for x in range(alpha.n) if fa[x] != fb[x]]
    return max(len({fa[x] for x in moved}), len({fb[x] for x in moved}))


_RELATION_KINDS = ("rees", "block_diff", "upper_diff", "lower_diff", "perm_normal")


def basic_relation_member(kind: str, threshold, alpha: Partition, beta: Partition) -> bool:
    """Membership in one of the five building-block relations at a finite level.

    rees: equal, or both ranks below the integer threshold.
    block_diff / upper_diff / lower_diff: the respective symmetric-difference
    count is strictly below the integer threshold.
    perm_normal: both of rank q, H-related, and the connecting permutation's
    cycle type lies in the NormalSubgroup threshold.
    """
    if alpha.n != beta.n:
        raise ValueError(f"degree mismatch: {alpha.n} vs {beta.n}")
    if kind == "perm_normal":
        if not isinstance(threshold, NormalSubgroup):
            raise ValueError("perm_normal needs a NormalSubgroup threshold")
        q = threshold.q
        if alpha.rank != q or beta.rank != q or not green(alpha, beta).h:
            return False
        return threshold.contains_cycle_type(phi_cycle_type(alpha, beta))
    if kind not in _RELATION_KINDS:
        raise ValueError(f"unknown relation kind {kind!r}")
    if not isinstance(threshold, int) or threshold < 1:
        raise ValueError(f"threshold must be a positive integer, got {threshold!r}")
    if kind == "rees":
        return alpha == beta or (alpha.rank < threshold and beta.rank < threshold)
    d_total, d_over, d_under = sym_diff_counts(alpha, beta)
    value = {"block_diff": d_total, "upper_diff": d_over, "lower_diff": d_under}[kind]
    return value < threshold


_BLOCK_RE = re.compile(r"\{([^{}]*)\}")
_POINT_RE = re.compile(r"^(\d+)(')?$")


def format_partition(alpha: Partition) -> str:
    n = alpha.n
    parts = []
    for block in alpha.blocks:
        if len(block) == 1:
            continue
        pts = [f"{v + 1}" if v < n else f"{v - n + 1}'" for v in block]
        parts.append("{" + ",".join(pts) + "}")
    return f"{n};" + (" " + ",".join(parts) if parts else "")


def parse_partition(text: str) -> Partition:
    head, sep, rest = text.partition(";")
    if not sep:
        raise ValueError(f"missing ';' in partition text {text!r}")
    n = int(head.strip())
    blocks = []
    for m in _BLOCK_RE.finditer(rest):
        body = m.group(1).strip()
        if not body:
            continue
        block = []
        for tok in body.split(","):
            pm = _POINT_RE.match(tok.strip())
            if not pm:
                raise ValueError(f"bad point {tok!r} in partition text")
            k, prime = int(pm.group(1)), pm.group(2)
            if not 1 <= k <= n:
                raise ValueError(f"point {tok.strip()} out of range for degree {n}")
            block.append(n + k - 1 if prime else k - 1)
        blocks.append(block)
    return make_partition(n, blocks)
