"""Congruence generation and full lattice enumeration on a finite monoid.

The closure algorithm is pair saturation: a union-find over element ids is
seeded with the generating pairs, and a work queue propagates every merge
through left and right multiplication by a generating set.  Multiplying by
generators only is sound because compatibility with the generators extends
to all products; a slow mode that multiplies by every element is kept as a
verification oracle.  Since the transitive closure of a union of
congruences is again a congruence, the whole lattice is the join-closure of
the principal congruences plus the diagonal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .monoids import FiniteMonoid, generators


@dataclass(frozen=True)
class EqRel:
    """Equivalence on a monoid's element ids as a normalized class map.

    Class ids run 0..c-1 in order of least member, so two relations are
    equal iff their maps are identical tuples.
    """

    size: int
    classes: tuple[int, ...]

    def __post_init__(self):
        if len(self.classes) != self.size:
            raise ValueError("class map length mismatch")

    @staticmethod
    def from_parent(parents: list[int]) -> "EqRel":
        size = len(parents)
        root_of = [_find(parents, i) for i in range(size)]
        relabel: dict[int, int] = {}
        classes = []
        for r in root_of:
            if r not in relabel:
                relabel[r] = len(relabel)
            classes.append(relabel[r])
        return EqRel(size, tuple(classes))

    @staticmethod
    def diagonal(size: int) -> "EqRel":
        return EqRel(size, tuple(range(size)))

    @staticmethod
    def universal(size: int) -> "EqRel":
        return EqRel(size, (0,) * max(size, 0))

    @property
    def num_classes(self) -> int:
        return max(self.classes) + 1 if self.classes else 0

    def related(self, a: int, b: int) -> bool:
        return self.classes[a] == self.classes[b]

    def class_members(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_classes)]
        for e, c in enumerate(self.classes):
            out[c].append(e)
        return out

    def leq(self, other: "EqRel") -> bool:
        """Refinement order: every class of self inside a class of other."""
        image: dict[int, int] = {}
        for c_self, c_other in zip(self.classes, other.classes):
            if image.setdefault(c_self, c_other) != c_other:
                return False
        return True

    def join(self, other: "EqRel") -> "EqRel":
        parents = list(range(self.size))
        for rel in (self, other):
            first: dict[int, int] = {}
            for e, c in enumerate(rel.classes):
                if c in first:
                    _union(parents, first[c], e)
                else:
                    first[c] = e
        return EqRel.from_parent(parents)

    def meet(self, other: "EqRel") -> "EqRel":
        relabel: dict[tuple[int, int], int] = {}
        classes = []
        for pair in zip(self.classes, other.classes):
            if pair not in relabel:
                relabel[pair] = len(relabel)
            classes.append(relabel[pair])
        return EqRel(self.size, tuple(classes))

    def relabel(self, perm: list[int]) -> "EqRel":
        """Image under a bijection of the element ids, renormalized."""
        raw = [0] * self.size
        for x, c in enumerate(self.classes):
            raw[perm[x]] = c
        fresh: dict[int, int] = {}
        out = []
        for c in raw:
            if c not in fresh:
                fresh[c] = len(fresh)
            out.append(fresh[c])
        return EqRel(self.size, tuple(out))


def _find(parents: list[int], x: int) -> int:
    while parents[x] != x:
        parents[x] = parents[parents[x]]
        x = parents[x]
    return x


def _union(parents: list[int], x: int, y: int) -> bool:
    rx, ry = _find(parents, x), _find(parents, y)
    if rx == ry:
        return False
    if rx > ry:
        rx, ry = ry, rx
    parents[ry] = rx
    return True


def closure(m: FiniteMonoid, pairs, gens: list[int] | None = None,
            use_all_elements: bool = False) -> EqRel:
    """Least congruence containing the given (id, id) pairs.

    Only merge edges go on the work stack: any related pair is chained
    through merge edges, so propagating those through the generators is
    enough.  The union-find is inlined; this loop dominates whole-lattice
    runs.
    """
    size = len(m)
    if gens is None:
        gens = list(range(size)) if use_all_elements else generators(m)
    table = m.table
    if table is None:
        raise ValueError("closure needs a multiplication table")
    parent = list(range(size))
    stack: list[tuple[int, int]] = []
    for a, b in pairs:
        if not (0 <= a < size and 0 <= b < size):
            raise ValueError(f"element id out of range: {(a, b)}")
        if _union(parent, a, b):
            stack.append((a, b))
    while stack:
        a, b = stack.pop()
        for g in gens:
            row_g = table[g]
            x = row_g[a]
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            y = row_g[b]
            while parent[y] != y:
                parent[y] = parent[parent[y]]
                y = parent[y]
            if x != y:
                if x > y:
                    x, y = y, x
                parent[y] = x
                stack.append((x, y))
            x = table[a][g]
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            y = table[b][g]
            while parent[y] != y:
                parent[y] = parent[parent[y]]
                y = parent[y]
            if x != y:
                if x > y:
                    x, y = y, x
                parent[y] = x
                stack.append((x, y))
    return EqRel.from_parent(parent)


def closure_naive(m: FiniteMonoid, pairs) -> EqRel:
    """Fixed-point closure oracle: saturate under every element until stable."""
    size = len(m)
    rel = EqRel.diagonal(size)
    parents = list(range(size))
    for a, b in pairs:
        _union(parents, a, b)
    rel = EqRel.from_parent(parents)
    while True:
        parents = list(parents)
        changed = False
        members = rel.class_members()
        for cls in members:
            if len(cls) < 2:
                continue
            a = cls[0]
            for b in cls[1:]:
                for s in range(size):
                    changed |= _union(parents, m.product(s, a), m.product(s, b))
                    changed |= _union(parents, m.product(a, s), m.product(b, s))
        nxt = EqRel.from_parent(parents)
        if not changed and nxt == rel:
            return rel
        rel = nxt


def is_congruence(m: FiniteMonoid, rel: EqRel, gens: list[int] | None = None) -> bool:
    """Compatibility check: each class maps into a single class under every
    left/right translation by the given elements (default: all of them)."""
    probes = gens if gens is not None else list(range(len(m)))
    for cls in rel.class_members():
        if len(cls) < 2:
            continue
        a = cls[0]
        for s in probes:
            ls, rs = rel.classes[m.product(s, a)], rel.classes[m.product(a, s)]
            for b in cls[1:]:
                if rel.classes[m.product(s, b)] != ls or rel.classes[m.product(b, s)] != rs:
                    return False
    return True


def unit_conjugations(m: FiniteMonoid) -> list[list[int]]:
    """The distinct permutations x -> u x u^{-1} of element ids, one per unit.

    These form a group of monoid automorphisms, so pair orbits under them
    generate automorphic images of principal congruences.
    """
    size = len(m)
    e = m.identity
    perms: dict[tuple[int, ...], list[int]] = {}
    for u in range(size):
        row = m.table[u]
        inverse = next((v for v in range(size)
                        if row[v] == e and m.table[v][u] == e), None)
        if inverse is None:
            continue
        perm = [m.table[row[x]][inverse] for x in range(size)]
        perms.setdefault(tuple(perm), perm)
    return list(perms.values())


def principal_congruences_naive(m: FiniteMonoid, cap: int | None = None) -> list[EqRel]:
    """Deduplicated closures of every single unordered pair (oracle path)."""
    gens = generators(m)
    seen: dict[tuple[int, ...], EqRel] = {}
    size = len(m)
    for a in range(size):
        for b in range(a + 1, size):
            rel = closure(m, [(a, b)], gens=gens)
            seen.setdefault(rel.classes, rel)
            if cap is not None and len(seen) > cap:
                raise RuntimeError(f"more than {cap} principal congruences")
    return sorted(seen.values(), key=lambda r: r.classes)


def principal_congruences(m: FiniteMonoid, cap: int | None = None) -> list[EqRel]:
    """Deduplicated principal congruences, one closure per pair orbit under
    unit conjugation, with the automorphic images filled in afterwards."""
    gens = generators(m)
    perms = unit_conjugations(m)
    size = len(m)
    seen_pairs = bytearray(size * size)
    reps: dict[tuple[int, ...], EqRel] = {}
    for a in range(size):
        base = a * size
        for b in range(a + 1, size):
            if seen_pairs[base + b]:
                continue
            for p in perms:
                pa, pb = p[a], p[b]
                if pa > pb:
                    pa, pb = pb, pa
                seen_pairs[pa * size + pb] = 1
            rel = closure(m, [(a, b)], gens=gens)
            reps.setdefault(rel.classes, rel)
            if cap is not None and len(reps) > cap:
                raise RuntimeError(f"more than {cap} principal congruences")
    seen: dict[tuple[int, ...], EqRel] = {}
    for rel in reps.values():
        for p in perms:
            image = rel.relabel(p)
            seen.setdefault(image.classes, image)
    return sorted(seen.values(), key=lambda r: r.classes)


@dataclass
class CongruenceLattice:
    monoid: FiniteMonoid
    congruences: list[EqRel]
    principal: list[EqRel]
    leq: list[list[bool]] = field(repr=False, default=None)

    def __post_init__(self):
        if self.leq is None:
            n = len(self.congruences)
            self.leq = [[self.congruences[i].leq(self.congruences[j])
                         for j in range(n)] for i in range(n)]

    def __len__(self) -> int:
        return len(self.congruences)

    def index_of(self, rel: EqRel) -> int:
        try:
            return next(i for i, r in enumerate(self.congruences) if r == rel)
        except StopIteration:
            raise KeyError("relation is not in the lattice "
                           "(enumeration bug if it should be)") from None

    @property
    def bottom(self) -> int:
        return self.index_of(EqRel.diagonal(len(self.monoid)))

    @property
    def top(self) -> int:
        return self.index_of(EqRel.universal(len(self.monoid)))

    def hasse_edges(self) -> list[tuple[int, int]]:
        n = len(self.congruences)
        leq = self.leq
        edges = []
        for i in range(n):
            for j in range(n):
                if i == j or not leq[i][j]:
                    continue
                if not any(leq[i][k] and leq[k][j] for k in range(n) if k not in (i, j)):
                    edges.append((i, j))
        return edges


def all_congruences(m: FiniteMonoid, cap: int | None = None) -> CongruenceLattice:
    """Join-closure of the principal congruences plus the diagonal."""
    principal = principal_congruences(m, cap=cap)
    pool: dict[tuple[int, ...], EqRel] = {EqRel.diagonal(len(m)).classes: EqRel.diagonal(len(m))}
    for rel in principal:
        pool[rel.classes] = rel
    work = sorted(pool.values(), key=lambda r: r.classes)
    while work:
        fresh = []
        ordered = sorted(pool.values(), key=lambda r: r.classes)
        for a in work:
            for b in ordered:
                j = a.join(b)
                if j.classes not in pool:
                    pool[j.classes] = j
                    fresh.append(j)
                    if cap is not None and len(pool) > cap:
                        raise RuntimeError(f"more than {cap} congruences")
        work = fresh
    congruences = sorted(pool.values(), key=lambda r: (r.num_classes, r.classes))
    return CongruenceLattice(m, congruences, principal)


def lattice_ops(lattice: CongruenceLattice, i: int, j: int) -> dict:
    meet = lattice.congruences[i].meet(lattice.congruences[j])
    join = lattice.congruences[i].join(lattice.congruences[j])
    return {"meet": lattice.index_of(meet), "join": lattice.index_of(join)}


def analyze(lattice: CongruenceLattice) -> dict:
    n = len(lattice)
    idx = {rel.classes: i for i, rel in enumerate(lattice.congruences)}
    meet = [[idx[lattice.congruences[i].meet(lattice.congruences[j]).classes]
             for j in range(n)] for i in range(n)]
    join = [[idx[lattice.congruences[i].join(lattice.congruences[j]).classes]
             for j in range(n)] for i in range(n)]
    distributive = all(meet[i][join[j][k]] == join[meet[i][j]][meet[i][k]]
                       for i in range(n) for j in range(n) for k in range(n))
    edges = lattice.hasse_edges()
    bottom, top = lattice.bottom, lattice.top
    atoms = sorted(j for i, j in edges if i == bottom)
    coatoms = sorted(i for i, j in edges if j == top)
    return {"is_distributive": distributive, "atoms": atoms,
            "coatoms": coatoms, "hasse": edges}


def crank_bruteforce(lattice: CongruenceLattice, sigma: EqRel,
                     subset_cap: int = 4) -> int:
    """Least number of generating pairs, as the least number of principal
    congruences below sigma whose join is sigma."""
    target = lattice.congruences[lattice.index_of(sigma)]
    if target == EqRel.diagonal(target.size):
        return 0
    below = [p for p in lattice.principal if p.leq(target)]
    for k in range(1, subset_cap + 1):
        for combo in combinations(below, k):
            acc = combo[0]
            for rel in combo[1:]:
                acc = acc.join(rel)
            if acc == target:
                return k
    raise RuntimeError(f"no generating set of size <= {subset_cap} found")


def serialize_lattice(lattice: CongruenceLattice) -> str:
    lines = [f"LATTICE {lattice.monoid.family} {len(lattice.monoid)} {len(lattice)}"]
    for rel in lattice.congruences:
        lines.append(f"{rel.num_classes} " + " ".join(map(str, rel.classes)))
    lines.append("HASSE")
    lines.extend(f"{i} {j}" for i, j in lattice.hasse_edges())
    return "\n".join(lines) + "\n"


def is_rees(m: FiniteMonoid, rel: EqRel) -> bool:
    """Whether the relation collapses exactly an ideal of ranks below a bound."""
    ranks = m.ranks()
    big = [cls for cls in rel.class_members() if len(cls) > 1]
    if not big:
        return True
    if len(big) > 1:
        return False
    bound = max(ranks[e] for e in big[0]) + 1
    return sorted(big[0]) == sorted(e for e in range(len(m)) if ranks[e] < bound)


def lattice_dot(lattice: CongruenceLattice, labels: list[str] | None = None) -> str:
    """DOT digraph of the Hasse diagram; Rees congruences drawn hollow."""
    out = ["digraph cong {", "  rankdir=BT;", "  node [shape=circle];"]
    for i, rel in enumerate(lattice.congruences):
        label = labels[i] if labels else f"{rel.num_classes}"
        style = "filled" if not is_rees(lattice.monoid, rel) else "solid"
        out.append(f'  n{i} [label="{label}", style={style}];')
    for i, j in lattice.hasse_edges():
        out.append(f"  n{i} -> n{j};")
    out.append("}")
    return "\n".join(out) + "\n"
