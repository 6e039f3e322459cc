"""Normal subgroups of finite symmetric groups, handled by cycle type.

For q >= 5 the proper chain is trivial < alternating < symmetric; q = 4
additionally has the Klein 4-group, and small q collapse (A_2 and S_1 are
trivial).  Membership of a permutation in any of these subgroups depends
only on its cycle type, which is all that the congruence machinery ever
sees.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

TRIVIAL = "trivial"
KLEIN4 = "klein4"
ALTERNATING = "alternating"
SYMMETRIC = "symmetric"

_TAG_RANK = {TRIVIAL: 0, KLEIN4: 1, ALTERNATING: 2, SYMMETRIC: 3}

CycleType = tuple[int, ...]


def identity_cycle_type(q: int) -> CycleType:
    return (1,) * q


def is_even_cycle_type(ct: CycleType) -> bool:
    return sum(c - 1 for c in ct) % 2 == 0


@total_ordering
@dataclass(frozen=True)
class NormalSubgroup:
    """A normal subgroup of S_q, canonicalized so equal groups compare equal."""

    q: int
    tag: str

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"degree must be >= 1, got {self.q}")
        if self.tag not in _TAG_RANK:
            raise ValueError(f"unknown tag {self.tag!r}")
        if self.tag == KLEIN4 and self.q != 4:
            raise ValueError("the Klein 4-group only lives in S_4")
        # collapse S_1 = A_1 = A_2 = trivial
        tag = self.tag
        if self.q == 1:
            tag = TRIVIAL
        elif self.q == 2 and tag == ALTERNATING:
            tag = TRIVIAL
        object.__setattr__(self, "tag", tag)

    def __lt__(self, other: "NormalSubgroup") -> bool:
        return (self.q, _TAG_RANK[self.tag]) < (other.q, _TAG_RANK[other.tag])

    @property
    def is_trivial_group(self) -> bool:
        return self.tag == TRIVIAL

    def contains_cycle_type(self, ct: CycleType) -> bool:
        if sum(ct) != self.q:
            raise ValueError(f"cycle type {ct} is not a permutation of {self.q} points")
        if self.tag == TRIVIAL:
            return all(c == 1 for c in ct)
        if self.tag == KLEIN4:
            return sorted(ct) in ([1, 1, 1, 1], [2, 2])
        if self.tag == ALTERNATING:
            return is_even_cycle_type(ct)
        return True

    def __str__(self) -> str:
        if self.q == 1:
            return "S_1"
        if self.tag == TRIVIAL:
            return f"id_{self.q}"
        if self.tag == KLEIN4:
            return "K_4"
        letter = "A" if self.tag == ALTERNATING else "S"
        return f"{letter}_{self.q}"


def parse_normal_subgroup(text: str) -> NormalSubgroup:
    s = text.strip()
    try:
        head, num = s.split("_", 1)
        q = int(num)
    except ValueError:
        raise ValueError(f"cannot parse normal subgroup {text!r}") from None
    tags = {"id": TRIVIAL, "K": KLEIN4, "A": ALTERNATING, "S": SYMMETRIC}
    if head not in tags:
        raise ValueError(f"cannot parse normal subgroup {text!r}")
    return NormalSubgroup(q, tags[head])


def normal_subgroups(q: int) -> list[NormalSubgroup]:
    """The normal subgroups of S_q, ascending along the chain order."""
    if q < 1:
        raise ValueError(f"degree must be >= 1, got {q}")
    if q == 1:
        return [NormalSubgroup(1, TRIVIAL)]
    if q == 2:
        return [NormalSubgroup(2, TRIVIAL), NormalSubgroup(2, SYMMETRIC)]
    tags = [TRIVIAL, ALTERNATING, SYMMETRIC]
    if q == 4:
        tags = [TRIVIAL, KLEIN4, ALTERNATING, SYMMETRIC]
    return [NormalSubgroup(q, t) for t in tags]


def count_normal_subgroups(q: int) -> int:
    return len(normal_subgroups(q))


def normal_closure_of_cycle_type(q: int, ct: CycleType) -> NormalSubgroup:
    """Least normal subgroup of S_q containing a permutation of the given type."""
    if sum(ct) != q:
        raise ValueError(f"cycle type {ct} is not a permutation of {q} points")
    if all(c == 1 for c in ct):
        return NormalSubgroup(q, TRIVIAL)
    if not is_even_cycle_type(ct):
        return NormalSubgroup(q, SYMMETRIC)
    if q == 4 and sorted(ct) == [2, 2]:
        return NormalSubgroup(4, KLEIN4)
    return NormalSubgroup(q, ALTERNATING)
