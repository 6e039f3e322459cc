"""Symbolic cardinal arithmetic on the chain {0,1,2,...} ∪ {aleph_(w*a+b)}.

The representable infinite cardinals are the alephs indexed by ordinals of
the form w*a+b (w = omega) with natural a, b.  Every index of that shape is
either 0, a successor (b > 0), or a limit of countable cofinality (b = 0,
a > 0), so the cofinality of a representable cardinal is always 1 or
aleph_0 under the convention used here: successor cardinals (and nonzero
finite cardinals) get cofinality 1.  Indices like w_1 are not representable
and no attempt is made to fake them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class OrdIndex:
    """Ordinal w*a + b with natural coefficients, ordered lexicographically."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError(f"ordinal index parts must be >= 0, got ({self.a}, {self.b})")

    def __lt__(self, other: "OrdIndex") -> bool:
        return (self.a, self.b) < (other.a, other.b)

    @property
    def is_limit(self) -> bool:
        return self.b == 0 and self.a > 0

    def successor(self) -> "OrdIndex":
        return OrdIndex(self.a, self.b + 1)


@total_ordering
@dataclass(frozen=True)
class Cardinal:
    """A finite cardinal or an aleph; exactly one of `fin`/`idx` is set.

    Finite cardinals sort below every aleph; alephs sort by index.
    """

    fin: int | None = None
    idx: OrdIndex | None = None

    def __post_init__(self):
        if (self.fin is None) == (self.idx is None):
            raise ValueError("exactly one of fin/idx must be given")
        if self.fin is not None and self.fin < 0:
            raise ValueError(f"finite cardinal must be >= 0, got {self.fin}")

    @staticmethod
    def finite(k: int) -> "Cardinal":
        return Cardinal(fin=k)

    @staticmethod
    def aleph(a: int, b: int | None = None) -> "Cardinal":
        # aleph(b) means aleph_b; aleph(a, b) means aleph_(w*a+b)
        if b is None:
            a, b = 0, a
        return Cardinal(idx=OrdIndex(a, b))

    def _key(self) -> tuple:
        if self.fin is not None:
            return (0, self.fin, 0)
        return (1, self.idx.a, self.idx.b)

    def __lt__(self, other: "Cardinal") -> bool:
        return self._key() < other._key()

    @property
    def is_finite(self) -> bool:
        return self.fin is not None

    @property
    def is_aleph(self) -> bool:
        return self.idx is not None

    @property
    def is_limit(self) -> bool:
        """Limit cardinal: aleph whose index is 0 or a limit ordinal."""
        return self.idx is not None and self.idx.b == 0

    @property
    def is_uncountable_limit(self) -> bool:
        return self.idx is not None and self.idx.b == 0 and self.idx.a > 0

    def __str__(self) -> str:
        return format_cardinal(self)


FIN_0 = Cardinal.finite(0)
FIN_1 = Cardinal.finite(1)
ALEPH_0 = Cardinal.aleph(0)


def compare(c1: Cardinal, c2: Cardinal) -> int:
    """Total order on the chain: -1, 0 or 1."""
    k1, k2 = c1._key(), c2._key()
    return (k1 > k2) - (k1 < k2)


def successor(c: Cardinal) -> Cardinal:
    if c.fin is not None:
        return Cardinal.finite(c.fin + 1)
    return Cardinal(idx=c.idx.successor())


def predecessor(c: Cardinal) -> Cardinal:
    """Inverse of successor; undefined at 0, aleph_0 and limit alephs."""
    if c.fin is not None:
        if c.fin == 0:
            raise ValueError("0 has no predecessor")
        return Cardinal.finite(c.fin - 1)
    if c.idx.b == 0:
        raise ValueError(f"{c} is not a successor cardinal")
    return Cardinal(idx=OrdIndex(c.idx.a, c.idx.b - 1))


def cofinality(c: Cardinal) -> Cardinal:
    """Least size of a cofinal set of strictly smaller cardinals.

    Convention: successor cardinals have cofinality 1, and so do nonzero
    finite cardinals.  All representable limit alephs (index w*a) have
    countable cofinality, so the only possible results are 1 and aleph_0.
    """
    if c.fin is not None:
        if c.fin == 0:
            raise ValueError("cofinality undefined at 0")
        return FIN_1
    if c.idx.b > 0:
        return FIN_1
    return ALEPH_0


def interval(lo: Cardinal, hi: Cardinal, mode: str = "all") -> list[Cardinal]:
    """Ascending list of the cardinals in [lo, hi], possibly filtered.

    mode "all" keeps everything; mode "one_or_infinite" keeps {1} plus the
    infinite members.  Raises when the requested set is infinite (e.g. all
    naturals below an aleph, or an aleph range crossing a limit index).
    """
    if mode not in ("all", "one_or_infinite"):
        raise ValueError(f"unknown interval mode {mode!r}")
    if hi < lo:
        return []

    out: list[Cardinal] = []
    if mode == "one_or_infinite":
        if lo <= FIN_1 <= hi:
            out.append(FIN_1)
        if hi.is_finite:
            return out
        lo = max(lo, ALEPH_0)

    if lo.is_finite:
        if hi.is_aleph:
            raise ValueError(f"interval [{lo}, {hi}] contains every natural number")
        out.extend(Cardinal.finite(k) for k in range(lo.fin, hi.fin + 1))
        return out

    # both endpoints are alephs here
    if lo.idx.a != hi.idx.a:
        raise ValueError(f"interval [{lo}, {hi}] crosses a limit index and is infinite")
    out.extend(Cardinal.aleph(lo.idx.a, b) for b in range(lo.idx.b, hi.idx.b + 1))
    return out


_ALEPH_RE = re.compile(r"^aleph_(?:(?:w(?:\*(\d+))?(?:\+(\d+))?)|(\d+))$")


def format_cardinal(c: Cardinal) -> str:
    if c.fin is not None:
        return str(c.fin)
    a, b = c.idx.a, c.idx.b
    if a == 0:
        return f"aleph_{b}"
    head = "aleph_w" if a == 1 else f"aleph_w*{a}"
    return head if b == 0 else f"{head}+{b}"


def parse_cardinal(text: str) -> Cardinal:
    s = text.strip()
    if s.isdigit():
        return Cardinal.finite(int(s))
    m = _ALEPH_RE.match(s)
    if not m:
        raise ValueError(f"cannot parse cardinal {text!r}")
    mult, add, plain = m.groups()
    if plain is not None:
        return Cardinal.aleph(0, int(plain))
    a = int(mult) if mult is not None else 1
    b = int(add) if add is not None else 0
    return Cardinal.aleph(a, b)


@dataclass(frozen=True)
class CardinalContext:
    """Fixes the ambient |X| (an aleph) and hence |X|+ for all symbolic work."""

    x_card: Cardinal

    def __post_init__(self):
        if not self.x_card.is_aleph:
            raise ValueError("|X| must be infinite")

    @property
    def x_plus(self) -> Cardinal:
        return successor(self.x_card)

    @property
    def finite_index(self) -> int | None:
        """m when |X| = aleph_m with a plain finite index, else None."""
        return self.x_card.idx.b if self.x_card.idx.a == 0 else None

    def __str__(self) -> str:
        return format_cardinal(self.x_card)
