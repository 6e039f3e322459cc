"""Enumeration of finite diagram monoids with cached multiplication tables.

Five families: P (all partitions), PB (blocks of size <= 2), B (perfect
matchings), T (transformations: full domain, trivial cokernel) and I
(partial bijections), the last two embedded as special partitions.
Enumeration is direct combinatorial generation, so element ids are stable
and independent of any generating set.
"""

from __future__ import annotations

import itertools
import os
import random
import struct
from dataclasses import dataclass, field
from math import comb, factorial

from .partitions import (Partition, all_singletons, compose, format_partition,
                         identity_partition, make_partition, parse_partition)

FAMILIES = ("P", "PB", "B", "T", "I")

DEFAULT_ELEMENT_CAP = 10_000
DEFAULT_TABLE_BYTE_CAP = 512 * 1024 * 1024

_CACHE_MAGIC = "DIAGMON"
_CACHE_VERSION = 1


@dataclass(frozen=True)
class MonoidFamily:
    tag: str
    n: int

    def __post_init__(self):
        if self.tag not in FAMILIES:
            raise ValueError(f"unknown family {self.tag!r}")
        if self.n < 0:
            raise ValueError(f"degree must be >= 0, got {self.n}")

    def __str__(self) -> str:
        return f"{self.tag}_{self.n}"


class CapExceeded(Exception):
    pass


@dataclass
class FiniteMonoid:
    family: MonoidFamily
    elements: list[Partition]
    index: dict[Partition, int] = field(repr=False)
    identity: int
    table: list[list[int]] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def product(self, i: int, j: int) -> int:
        if self.table is not None:
            return self.table[i][j]
        return self.index[compose(self.elements[i], self.elements[j])]

    def ranks(self) -> list[int]:
        return [p.rank for p in self.elements]


def set_partitions(points: int):
    """All set partitions of range(points) via restricted-growth strings."""
    if points == 0:
        yield []
        return
    rgs = [0] * points

    def rec(i: int, maxval: int):
        if i == points:
            blocks: list[list[int]] = [[] for _ in range(maxval + 1)]
            for v, c in enumerate(rgs):
                blocks[c].append(v)
            yield blocks
            return
        for c in range(maxval + 2):
            rgs[i] = c
            yield from rec(i + 1, max(maxval, c))

    yield from rec(1, 0)


def partial_matchings(points: int, perfect: bool = False):
    """All partitions of range(points) into blocks of size <= 2 (== 2 if perfect)."""

    def rec(free: tuple[int, ...]):
        if not free:
            yield []
            return
        x, rest = free[0], free[1:]
        if not perfect:
            for tail in rec(rest):
                yield [[x]] + tail
        for k, y in enumerate(rest):
            sub = rest[:k] + rest[k + 1:]
            for tail in rec(sub):
                yield [[x, y]] + tail

    yield from rec(tuple(range(points)))


def transformation_partition(n: int, image: tuple[int, ...]) -> Partition:
    """Partition form of the map sending point x to image[x-1] (1-based)."""
    blocks: dict[int, list[int]] = {y: [n + y - 1] for y in range(1, n + 1)}
    for x, y in enumerate(image, start=1):
        blocks[y].append(x - 1)
    return make_partition(n, blocks.values())


def partial_injection_partition(n: int, pairs: dict[int, int]) -> Partition:
    """Partition form of a 1-based partial bijection given as a dict."""
    return make_partition(n, ([x - 1, n + y - 1] for x, y in pairs.items()))


def _enumerate_elements(family: MonoidFamily):
    n = family.n
    if family.tag == "P":
        for blocks in set_partitions(2 * n):
            yield make_partition(n, blocks)
    elif family.tag == "PB":
        for blocks in partial_matchings(2 * n):
            yield make_partition(n, blocks)
    elif family.tag == "B":
        for blocks in partial_matchings(2 * n, perfect=True):
            yield make_partition(n, blocks)
    elif family.tag == "T":
        if n == 0:
            yield all_singletons(0)
            return
        for image in itertools.product(range(1, n + 1), repeat=n):
            yield transformation_partition(n, image)
    else:  # I
        points = list(range(1, n + 1))
        for k in range(n + 1):
            for dom in itertools.combinations(points, k):
                for img in itertools.permutations(points, k):
                    yield partial_injection_partition(n, dict(zip(dom, img)))


def expected_count(family: MonoidFamily) -> int:
    """Independent combinatorial count for each family."""
    n = family.n
    if family.tag == "P":
        return bell_number(2 * n)
    if family.tag == "PB":
        return involution_number(2 * n)
    if family.tag == "B":
        return double_factorial_odd(2 * n - 1) if n else 1
    if family.tag == "T":
        return n ** n if n else 1
    return sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1))


def bell_number(m: int) -> int:
    # Bell triangle
    row = [1]
    for _ in range(m):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def involution_number(m: int) -> int:
    a, b = 1, 1  # I(0), I(1)
    if m == 0:
        return a
    for k in range(2, m + 1):
        a, b = b, b + (k - 1) * a
    return b


def double_factorial_odd(m: int) -> int:
    out = 1
    for k in range(m, 0, -2):
        out *= k
    return out


def enumerate_monoid(family: MonoidFamily, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteMonoid:
    expected = expected_count(family)
    if expected > cap:
        raise CapExceeded(f"{family} has {expected} elements, above the cap {cap}")
    elements = list(_enumerate_elements(family))
    index = {p: i for i, p in enumerate(elements)}
    if len(index) != len(elements):
        raise RuntimeError(f"enumeration of {family} produced duplicates")
    if len(elements) != expected:
        raise RuntimeError(f"enumeration of {family} produced {len(elements)} "
                           f"elements, expected {expected}")
    ident = index[identity_partition(family.n)]
    return FiniteMonoid(family, elements, index, ident)


def build_table(m: FiniteMonoid, cache_dir: str | None = None,
                byte_cap: int = DEFAULT_TABLE_BYTE_CAP) -> FiniteMonoid:
    """Populate the dense multiplication table, using the cache when possible."""
    if m.table is not None:
        return m
    size = len(m)
    width = 2 if size < 2 ** 16 else 4
    if size * size * width > byte_cap:
        raise CapExceeded(f"table for {m.family} needs {size * size * width} bytes")
    path = _cache_path(cache_dir, m.family) if cache_dir else None
    if path and os.path.exists(path):
        cached = _read_cache(path)
        if cached is not None and cached[0] == [format_partition(p) for p in m.elements]:
            m.table = cached[1]
            return m
    idx = m.index
    els = m.elements
    m.table = [[idx[compose(a, b)] for b in els] for a in els]
    if path:
        _write_cache(path, m, width)
    return m


def _cache_path(cache_dir: str, family: MonoidFamily) -> str:
    os.makedirs(cache_dir, exist_ok=True)
    return os.path.join(cache_dir, f"{family.tag}{family.n}.v{_CACHE_VERSION}.mon")


def _write_cache(path: str, m: FiniteMonoid, width: int) -> None:
    size = len(m)
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        header = f"{_CACHE_MAGIC} {_CACHE_VERSION} {m.family.tag} {m.family.n} {size} {width}\n"
        fh.write(header.encode())
        for p in m.elements:
            fh.write((format_partition(p) + "\n").encode())
        fh.write(b"TABLE\n")
        fmt = "<" + ("H" if width == 2 else "I") * size
        for row in m.table:
            fh.write(struct.pack(fmt, *row))
    os.replace(tmp, path)


def _read_cache(path: str):
    try:
        with open(path, "rb") as fh:
            header = fh.readline().decode().split()
            if header[:2] != [_CACHE_MAGIC, str(_CACHE_VERSION)]:
                return None
            size, width = int(header[4]), int(header[5])
            lines = [fh.readline().decode().rstrip("\n") for _ in range(size)]
            if fh.readline() != b"TABLE\n":
                return None
            fmt = "<" + ("H" if width == 2 else "I") * size
            rowbytes = width * size
            table = [list(struct.unpack(fmt, fh.read(rowbytes))) for _ in range(size)]
        return lines, table
    except (OSError, ValueError, struct.error, IndexError):
        return None


def roundtrip_cache_elements(path: str) -> list[Partition]:
    """Parse the canonical element list back out of a cache file."""
    with open(path, "rb") as fh:
        header = fh.readline().decode().split()
        size = int(header[4])
        return [parse_partition(fh.readline().decode().rstrip("\n")) for _ in range(size)]


def structure(m: FiniteMonoid) -> dict:
    """D-classes grouped by rank and the nested ideals below each rank bound."""
    ranks = m.ranks()
    by_rank: dict[int, list[int]] = {}
    for i, r in enumerate(ranks):
        by_rank.setdefault(r, []).append(i)
    d_classes = dict(sorted(by_rank.items()))
    ideals = {}
    below: list[int] = []
    for r in sorted(d_classes) + [max(d_classes, default=-1) + 1]:
        ideals[r] = list(below)
        below.extend(d_classes.get(r, []))
    return {"d_classes": d_classes, "ideals": ideals}


def generator_closure(m: FiniteMonoid, gens: list[int]) -> set[int]:
    """All products of the given elements (no empty product)."""
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                for p in (m.product(a, g), m.product(g, a)):
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
        frontier = nxt
    return seen


def generators(m: FiniteMonoid) -> list[int]:
    """A verified generating set, grown greedily in element-id order."""
    if len(m) <= 1:
        return []
    gens: list[int] = []
    generated: set[int] = set()
    for i in range(len(m)):
        if i not in generated:
            gens.append(i)
            generated = generator_closure(m, gens)
    if generated != set(range(len(m))):
        raise RuntimeError("greedy generating set failed to close")
    return gens


# Seeded random sampling: used by the property suites at degrees where full
# enumeration is far past the caps.  Distributions are deterministic given
# the rng, not uniform.

def random_partition(rng: random.Random, n: int) -> Partition:
    rgs = [0]
    for _ in range(2 * n - 1):
        rgs.append(rng.randint(0, max(rgs) + 1))
    blocks: dict[int, list[int]] = {}
    for v, c in enumerate(rgs):
        blocks.setdefault(c, []).append(v)
    return make_partition(n, blocks.values())


def random_partial_matching(rng: random.Random, n: int, perfect: bool = False) -> Partition:
    free = list(range(2 * n))
    blocks = []
    while free:
        x = free.pop(0)
        if free and (perfect or rng.random() < 0.75):
            y = free.pop(rng.randrange(len(free)))
            blocks.append([x, y])
        else:
            blocks.append([x])
    return make_partition(n, blocks)


def random_transformation(rng: random.Random, n: int) -> Partition:
    return transformation_partition(n, tuple(rng.randint(1, n) for _ in range(n)))


def random_element(rng: random.Random, family: MonoidFamily) -> Partition:
    n = family.n
    if family.tag == "P":
        return random_partition(rng, n)
    if family.tag == "PB":
        return random_partial_matching(rng, n)
    if family.tag == "B":
        return random_partial_matching(rng, n, perfect=True)
    if family.tag == "T":
        return random_transformation(rng, n)
    k = rng.randint(0, n)
    dom = rng.sample(range(1, n + 1), k)
    img = rng.sample(range(1, n + 1), k)
    return partial_injection_partition(n, dict(zip(dom, img)))
