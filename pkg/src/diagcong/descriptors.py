"""Symbolic calculus of congruences on infinite diagram and transformation
monoids: descriptors, the containment order, meets/joins, enumeration for a
fixed |X|, principal congruences and generating ranks.

A descriptor is either finite-rank (a normal subgroup N of some finite S_n
with two thresholds z1, z2 bounding trace differences) or infinite-rank
(thresholds z1, z2 above a rank bound eta, together with a reversal: an
order-reversing step function assigning to every rank kappa in [eta, |X|]
the bound below which whole-partition block differences are collapsed at
that rank).  The universal congruence is kept in the canonical infinite-rank
form with eta = z1 = z2 = |X|+ and the single step (1, |X|+).

Containment, meet and join reduce to comparisons and pointwise min/max of
parameters; for two infinite-rank descriptors the step data is compared as
reversals, with an independent index-embedding formulation retained as a
cross-check.  Generating ranks are finite except where a parameter sits at
a limit cardinal, in which case the rank is that limit's cofinality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from .cardinals import (ALEPH_0, Cardinal, CardinalContext, FIN_0, FIN_1,
                        cofinality, format_cardinal, interval, parse_cardinal,
                        successor)
from .finitary import PairProfile
from .symgroups import (NormalSubgroup, normal_closure_of_cycle_type,
                        normal_subgroups, parse_normal_subgroup)

PARTITION = "partition"
TRANSFORMATION = "transformation"
INVERSE = "inverse"
FLAVORS = (PARTITION, TRANSFORMATION, INVERSE)

Steps = tuple[tuple[Cardinal, Cardinal], ...]  # (value, upper bound) pairs


@dataclass(frozen=True)
class Reversal:
    """Order-reversing step map [eta, |X|] -> {1} ∪ [aleph_0, eta].

    Step i holds value `steps[i][0]` on [bound_{i-1}, bound_i) with
    bound_{-1} = eta and the last bound = |X|+.  The empty map (eta = |X|+)
    is the top of the reversal lattice.
    """

    context: CardinalContext
    eta: Cardinal
    steps: Steps

    def __post_init__(self):
        if self.eta == self.context.x_plus and self.steps:
            object.__setattr__(self, "steps", ())

    def violations(self) -> list[str]:
        ctx = self.context
        out = []
        if self.eta == ctx.x_plus:
            return out
        if not ALEPH_0 <= self.eta <= ctx.x_card:
            out.append(f"eta = {self.eta} outside [aleph_0, |X|]")
        if not self.steps:
            out.append("a non-empty domain needs at least one step")
            return out
        values = [v for v, _ in self.steps]
        bounds = [b for _, b in self.steps]
        for v in values:
            if not (v == FIN_1 or ALEPH_0 <= v <= self.eta):
                out.append(f"step value {v} outside {{1}} ∪ [aleph_0, eta]")
        if any(values[i] <= values[i + 1] for i in range(len(values) - 1)):
            out.append("step values must strictly decrease")
        if any(bounds[i] >= bounds[i + 1] for i in range(len(bounds) - 1)):
            out.append("step bounds must strictly increase")
        if bounds and bounds[0] <= self.eta:
            out.append("first bound must exceed eta")
        if bounds and bounds[-1] != ctx.x_plus:
            out.append("last bound must be |X|+")
        return out

    @property
    def is_empty(self) -> bool:
        return self.eta == self.context.x_plus

    def value_at(self, kappa: Cardinal) -> Cardinal:
        if not self.eta <= kappa <= self.context.x_card:
            raise ValueError(f"{kappa} outside the domain [{self.eta}, {self.context.x_card}]")
        for value, bound in self.steps:
            if kappa < bound:
                return value
        raise AssertionError("step bounds did not cover the domain")

    def piece_starts(self) -> list[Cardinal]:
        starts = [self.eta]
        starts.extend(b for _, b in self.steps[:-1])
        return starts

    def __str__(self) -> str:
        if self.is_empty:
            return "()"
        pairs = zip((v for v, _ in self.steps), self.piece_starts())
        return "(" + ", ".join(f"{v}@{s}" for v, s in pairs) + ")"


def reversal_from_pieces(context: CardinalContext,
                         pieces: list[tuple[Cardinal, Cardinal]]) -> Reversal:
    """Build from (start, value) pieces in ascending start order."""
    if not pieces:
        return Reversal(context, context.x_plus, ())
    merged: list[tuple[Cardinal, Cardinal]] = []
    for start, value in pieces:
        if merged and merged[-1][1] == value:
            continue
        merged.append((start, value))
    steps = []
    for i, (start, value) in enumerate(merged):
        bound = merged[i + 1][0] if i + 1 < len(merged) else context.x_plus
        steps.append((value, bound))
    return Reversal(context, merged[0][0], tuple(steps))


def reversal_leq(r1: Reversal, r2: Reversal) -> bool:
    """Pointwise order on [eta2, |X|], plus eta1 <= eta2.

    Both maps are constant between consecutive piece starts, so comparing at
    the starts that fall in the common domain decides the whole order; this
    stays finite for any |X|.
    """
    if r1.context != r2.context:
        raise ValueError("context mismatch")
    if not r1.eta <= r2.eta:
        return False
    if r2.is_empty:
        return True
    x = r1.context.x_card
    probes = {r2.eta}
    for r in (r1, r2):
        probes.update(s for s in r.piece_starts() if r2.eta < s <= x)
    return all(r1.value_at(p) <= r2.value_at(p) for p in probes)


def reversal_meet(r1: Reversal, r2: Reversal) -> Reversal:
    if r1.context != r2.context:
        raise ValueError("context mismatch")
    if r2.eta < r1.eta:
        r1, r2 = r2, r1
    if r2.is_empty:
        return r1
    ctx = r1.context
    starts = set(r1.piece_starts()) | {r2.eta}
    starts.update(s for s in r2.piece_starts() if s > r2.eta)
    pieces = []
    for s in sorted(starts, key=lambda c: c._key()):
        if s < r2.eta:
            pieces.append((s, r1.value_at(s)))
        else:
            pieces.append((s, min(r1.value_at(s), r2.value_at(s))))
    return reversal_from_pieces(ctx, pieces)


def reversal_join(r1: Reversal, r2: Reversal) -> Reversal:
    if r1.context != r2.context:
        raise ValueError("context mismatch")
    if r2.eta < r1.eta:
        r1, r2 = r2, r1
    if r2.is_empty:
        return r2
    starts = set(r2.piece_starts())
    starts.update(s for s in r1.piece_starts() if s > r2.eta)
    pieces = [(s, max(r1.value_at(s), r2.value_at(s)))
              for s in sorted(starts, key=lambda c: c._key())]
    return reversal_from_pieces(r1.context, pieces)


def enumerate_reversals(context: CardinalContext) -> list[Reversal]:
    """All reversals for |X| = aleph_m with finite m, the empty one last."""
    m = context.finite_index
    if m is None:
        raise ValueError(f"|X| = {context} has no finite aleph index")
    out: list[Reversal] = []
    for k in range(m + 1):
        eta = Cardinal.aleph(0, k)
        domain = [Cardinal.aleph(0, j) for j in range(k, m + 1)]
        values = [FIN_1] + [Cardinal.aleph(0, j) for j in range(k + 1)]
        values.reverse()  # descending, so choices below are non-increasing
        for choice in combinations_with_replacement(range(len(values)), len(domain)):
            pieces = [(dom, values[c]) for dom, c in zip(domain, choice)]
            rev = reversal_from_pieces(context, pieces)
            assert rev.eta == eta and not rev.violations()
            out.append(rev)
    out.append(Reversal(context, context.x_plus, ()))
    return out


@dataclass(frozen=True)
class CongruenceDescriptor:
    """Canonical parametric form of one congruence at a fixed |X|."""

    context: CardinalContext
    flavor: str
    ct: int
    zeta1: Cardinal
    zeta2: Cardinal
    normal: NormalSubgroup | None = None  # finite-rank type only
    eta: Cardinal | None = None           # infinite-rank type only
    steps: Steps | None = None

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.ct not in (1, 2):
            raise ValueError("type must be 1 or 2")

    # parameter views -----------------------------------------------------
    @property
    def is_nabla(self) -> bool:
        return self.ct == 2 and self.eta == self.context.x_plus

    @property
    def k(self) -> int:
        return len(self.steps)

    def xi(self, i: int) -> Cardinal:
        """xi_i for i = 1..k."""
        return self.steps[i - 1][0]

    def eta_bound(self, i: int) -> Cardinal:
        """eta_i for i = 1..k (eta_k = |X|+)."""
        return self.steps[i - 1][1]

    def reversal(self) -> Reversal:
        return Reversal(self.context, self.eta, self.steps)

    def sort_key(self) -> tuple:
        if self.ct == 1:
            return (1, self.normal.q, self.normal.tag, self.zeta1._key(), self.zeta2._key())
        return (2, self.eta._key(), tuple((v._key(), b._key()) for v, b in self.steps),
                self.zeta1._key(), self.zeta2._key())

    def __str__(self) -> str:
        return format_descriptor(self)


def delta(context: CardinalContext, flavor: str = PARTITION) -> CongruenceDescriptor:
    return ct1(context, flavor, NormalSubgroup(1, "trivial"), FIN_1, FIN_1)


def nabla(context: CardinalContext, flavor: str = PARTITION) -> CongruenceDescriptor:
    xp = context.x_plus
    return CongruenceDescriptor(context, flavor, 2, xp, xp, eta=xp,
                                steps=((FIN_1, xp),))


def ct1(context: CardinalContext, flavor: str, normal: NormalSubgroup,
        zeta1: Cardinal | None = None, zeta2: Cardinal | None = None) -> CongruenceDescriptor:
    if flavor in (TRANSFORMATION, INVERSE):
        if zeta1 is not None or zeta2 is not None:
            raise ValueError(f"{flavor} congruences carry no thresholds")
        zeta1 = zeta2 = context.x_plus
    if zeta1 is None or zeta2 is None:
        raise ValueError("partition congruences need both thresholds")
    return CongruenceDescriptor(context, flavor, 1, zeta1, zeta2, normal=normal)


def ct2(context: CardinalContext, flavor: str, eta: Cardinal, steps: Steps,
        zeta1: Cardinal | None = None, zeta2: Cardinal | None = None) -> CongruenceDescriptor:
    if flavor in (TRANSFORMATION, INVERSE):
        if zeta1 is not None or zeta2 is not None:
            raise ValueError(f"{flavor} congruences carry no thresholds")
        zeta1 = zeta2 = context.x_plus
    if zeta1 is None or zeta2 is None:
        raise ValueError("partition congruences need both thresholds")
    if eta == context.x_plus:
        return nabla(context, flavor)
    return CongruenceDescriptor(context, flavor, 2, zeta1, zeta2, eta=eta,
                                steps=tuple(steps))


def from_reversal(context: CardinalContext, flavor: str, rev: Reversal,
                  zeta1: Cardinal | None = None,
                  zeta2: Cardinal | None = None) -> CongruenceDescriptor:
    if rev.is_empty:
        return nabla(context, flavor)
    return ct2(context, flavor, rev.eta, rev.steps, zeta1, zeta2)


def validate(d: CongruenceDescriptor) -> list[str]:
    """Every range constraint of the classification, as a violation list."""
    return list(_validate_cached(d))


@lru_cache(maxsize=16384)
def _validate_cached(d: CongruenceDescriptor) -> tuple[str, ...]:
    return tuple(_validate_impl(d))


def _validate_impl(d: CongruenceDescriptor) -> list[str]:
    ctx = d.context
    xp = ctx.x_plus
    out: list[str] = []
    restricted = d.flavor in (TRANSFORMATION, INVERSE)
    if restricted and (d.zeta1 != xp or d.zeta2 != xp):
        out.append("thresholds are fixed at |X|+ for this flavor")
    if d.ct == 1:
        if d.normal is None or d.eta is not None or d.steps is not None:
            out.append("finite-rank descriptors carry exactly a normal subgroup")
            return out
        lo = FIN_1 if d.normal.q <= 2 else ALEPH_0
        for z in (d.zeta1, d.zeta2):
            ok = (z == FIN_1 and d.normal.q <= 2) or ALEPH_0 <= z <= xp
            if not ok:
                out.append(f"threshold {z} outside "
                           f"{'{1} ∪ ' if lo == FIN_1 else ''}[aleph_0, |X|+]"
                           f" for n = {d.normal.q}")
        return out
    if d.normal is not None or d.eta is None or d.steps is None:
        out.append("infinite-rank descriptors carry eta and steps")
        return out
    if d.is_nabla:
        if d.zeta1 != xp or d.zeta2 != xp or d.steps != ((FIN_1, xp),):
            out.append("the universal congruence has the canonical form "
                       "eta = z1 = z2 = |X|+ with the single step (1, |X|+)")
        return out
    out.extend(Reversal(ctx, d.eta, d.steps).violations())
    for z in (d.zeta1, d.zeta2):
        if not d.eta <= z <= xp:
            out.append(f"threshold {z} outside [eta, |X|+]")
    return out


def _require_same(s: CongruenceDescriptor, t: CongruenceDescriptor) -> None:
    if s.context != t.context:
        raise ValueError("context mismatch")
    if s.flavor != t.flavor:
        raise ValueError("flavor mismatch")


def _require_valid(*ds: CongruenceDescriptor) -> None:
    for d in ds:
        bad = _validate_cached(d)
        if bad:
            raise ValueError(f"invalid descriptor {d}: " + "; ".join(bad))


def leq(s: CongruenceDescriptor, t: CongruenceDescriptor) -> bool:
    """The containment order on congruences, via the reversal order for two
    infinite-rank descriptors."""
    _require_same(s, t)
    _require_valid(s, t)
    if not (s.zeta1 <= t.zeta1 and s.zeta2 <= t.zeta2):
        return False
    if s.ct == 1 and t.ct == 1:
        return s.normal <= t.normal
    if s.ct == 1:
        return True
    if t.ct == 1:
        return False
    return reversal_leq(s.reversal(), t.reversal())


def leq_index_form(s: CongruenceDescriptor, t: CongruenceDescriptor) -> bool:
    """Cross-check oracle for two infinite-rank descriptors: a monotone
    embedding of (xi_i, eta_i) data, with position 0 standing for eta(t)."""
    _require_same(s, t)
    _require_valid(s, t)
    if s.ct != 2 or t.ct != 2:
        raise ValueError("the index form only compares infinite-rank descriptors")
    if not (s.eta <= t.eta and s.zeta1 <= t.zeta1 and s.zeta2 <= t.zeta2):
        return False
    slots = [(t.eta, t.eta)] + [(t.xi(j), t.eta_bound(j)) for j in range(1, t.k + 1)]
    j = 0
    for i in range(1, s.k + 1):
        xi_i, eta_i = s.xi(i), s.eta_bound(i)
        while j < len(slots) and not (xi_i <= slots[j][0] and eta_i <= slots[j][1]):
            j += 1
        if j == len(slots):
            return False
    return True


def meet(s: CongruenceDescriptor, t: CongruenceDescriptor) -> CongruenceDescriptor:
    _require_same(s, t)
    _require_valid(s, t)
    z1, z2 = min(s.zeta1, t.zeta1), min(s.zeta2, t.zeta2)
    restricted = s.flavor in (TRANSFORMATION, INVERSE)
    zk = {} if restricted else {"zeta1": z1, "zeta2": z2}
    if s.ct == 1 and t.ct == 1:
        return ct1(s.context, s.flavor, min(s.normal, t.normal), **zk)
    if s.ct == 1 or t.ct == 1:
        finite = s if s.ct == 1 else t
        return ct1(s.context, s.flavor, finite.normal, **zk)
    out = from_reversal(s.context, s.flavor, reversal_meet(s.reversal(), t.reversal()), **zk)
    _require_valid(out)
    return out


def join(s: CongruenceDescriptor, t: CongruenceDescriptor) -> CongruenceDescriptor:
    _require_same(s, t)
    _require_valid(s, t)
    z1, z2 = max(s.zeta1, t.zeta1), max(s.zeta2, t.zeta2)
    restricted = s.flavor in (TRANSFORMATION, INVERSE)
    zk = {} if restricted else {"zeta1": z1, "zeta2": z2}
    if s.ct == 1 and t.ct == 1:
        return ct1(s.context, s.flavor, max(s.normal, t.normal), **zk)
    if s.ct == 1 or t.ct == 1:
        infinite = s if s.ct == 2 else t
        return from_reversal(s.context, s.flavor, infinite.reversal(), **zk)
    out = from_reversal(s.context, s.flavor, reversal_join(s.reversal(), t.reversal()), **zk)
    _require_valid(out)
    return out


def is_star(d: CongruenceDescriptor) -> bool:
    """Invariance under the involution: equal thresholds."""
    if d.flavor != PARTITION:
        raise ValueError("the involution only acts on the partition flavor")
    _require_valid(d)
    return d.zeta1 == d.zeta2


def enumerate_all(context: CardinalContext, flavor: str = PARTITION,
                  n_max: int = 4) -> list[CongruenceDescriptor]:
    """Every valid descriptor with finite-rank part bounded by n_max, plus
    the complete (finite) infinite-rank family for |X| = aleph_m."""
    if context.finite_index is None:
        raise ValueError(f"enumeration needs |X| = aleph_m with finite m, got {context}")
    xp = context.x_plus
    restricted = flavor in (TRANSFORMATION, INVERSE)
    out: list[CongruenceDescriptor] = []
    for n in range(1, n_max + 1):
        zrange = interval(FIN_1, xp, "one_or_infinite") if n <= 2 \
            else interval(ALEPH_0, xp)
        for normal in normal_subgroups(n):
            if restricted:
                out.append(ct1(context, flavor, normal))
            else:
                out.extend(ct1(context, flavor, normal, z1, z2)
                           for z1 in zrange for z2 in zrange)
    for rev in enumerate_reversals(context):
        if restricted:
            out.append(from_reversal(context, flavor, rev))
        elif rev.is_empty:
            out.append(nabla(context, flavor))
        else:
            zrange = interval(rev.eta, xp)
            out.extend(from_reversal(context, flavor, rev, z1, z2)
                       for z1 in zrange for z2 in zrange)
    out.sort(key=lambda d: d.sort_key())
    for d in out:
        assert not validate(d)
    return out


def crank(d: CongruenceDescriptor) -> Cardinal:
    """Least size of a generating set of pairs, by the rank case analysis."""
    if d.flavor != PARTITION:
        raise ValueError("ranks are computed for the partition flavor")
    _require_valid(d)

    if d.ct == 1:
        n, z1, z2 = d.normal.q, d.zeta1, d.zeta2
        if z1.is_uncountable_limit or z2.is_uncountable_limit:
            return max(cofinality(z1), cofinality(z2))
        if d.normal.is_trivial_group:
            if n == 1:
                return FIN_0 if z1 == z2 == FIN_1 else FIN_1
            return FIN_1
        # nontrivial N: one pair glues the top class, a second is needed
        # unless the thresholds already sit at their least joint value
        least = FIN_1 if n == 2 else ALEPH_0
        return FIN_1 if z1 == z2 == least else Cardinal.finite(2)

    params = [d.eta, d.zeta1, d.zeta2]
    params += [d.xi(i) for i in range(1, d.k + 1)]
    params += [d.eta_bound(i) for i in range(1, d.k + 1)]
    if any(p.is_uncountable_limit for p in params) or \
            (d.k == 1 and d.eta == ALEPH_0 and d.xi(1) == FIN_1):
        return max(cofinality(p) for p in params if p > FIN_0)
    if d.eta == ALEPH_0 and d.xi(1) == ALEPH_0:
        return FIN_1 if d.zeta1 == d.zeta2 == ALEPH_0 else Cardinal.finite(2)
    flat = d.xi(1) == d.zeta1 == d.zeta2 == d.eta
    if d.xi(d.k) == FIN_1:
        if d.k == 1:
            return FIN_1
        return Cardinal.finite(d.k - 1 if flat else d.k)
    return Cardinal.finite(d.k if flat else d.k + 1)


def membership(d: CongruenceDescriptor, p: PairProfile) -> bool:
    """Whether a pair with the given profile lies in the congruence."""
    if d.context != p.context:
        raise ValueError("context mismatch")
    _require_valid(d)
    if p.equal:
        return True
    if d.ct == 1:
        q = Cardinal.finite(d.normal.q)
        if p.rank_a < q and p.rank_b < q and p.d_over < d.zeta1 and p.d_under < d.zeta2:
            return True
        return (p.rank_a == p.rank_b == q and p.h_related
                and d.normal.contains_cycle_type(p.phi_type))
    if d.is_nabla:
        return True
    if p.rank_a < d.eta and p.rank_b < d.eta and \
            p.d_over < d.zeta1 and p.d_under < d.zeta2:
        return True
    return any(p.rank_a < bound and p.rank_b < bound and p.d_total < value
               for value, bound in d.steps)


def principal_descriptor(p: PairProfile) -> CongruenceDescriptor:
    """The congruence generated by one pair with the given profile."""
    ctx = p.context
    if p.rank_a < p.rank_b:
        raise ValueError("orient the profile so that rank_a >= rank_b")
    if p.equal:
        return delta(ctx)

    if p.rank_a.is_finite:
        n = p.rank_a.fin
        if p.h_related:
            normal = normal_closure_of_cycle_type(n, p.phi_type)
            z = FIN_1 if n == 2 else ALEPH_0
            return ct1(ctx, PARTITION, normal, z, z)
        trivial = NormalSubgroup(n + 1, "trivial")
        if n <= 1:
            z1 = FIN_1 if p.d_over == FIN_0 else max(ALEPH_0, successor(p.d_over))
            z2 = FIN_1 if p.d_under == FIN_0 else max(ALEPH_0, successor(p.d_under))
        else:
            z1 = max(ALEPH_0, successor(p.d_over))
            z2 = max(ALEPH_0, successor(p.d_under))
        return ct1(ctx, PARTITION, trivial, z1, z2)

    kappa = p.rank_a
    kappa_plus = successor(kappa)
    if p.d_total >= kappa:
        z1 = max(kappa_plus, successor(p.d_over))
        z2 = max(kappa_plus, successor(p.d_under))
        return ct2(ctx, PARTITION, kappa_plus, ((FIN_1, ctx.x_plus),), z1, z2)
    level = max(ALEPH_0, successor(p.d_total))
    if kappa_plus == ctx.x_plus:
        steps: Steps = ((level, ctx.x_plus),)
    else:
        steps = ((level, kappa_plus), (FIN_1, ctx.x_plus))
    return ct2(ctx, PARTITION, level, steps, level, level)


# Text format ------------------------------------------------------------

_FIELD_RE = re.compile(r"\s*(\w+)\s*=\s*([^;]*?)\s*(?:;|$)")


def format_descriptor(d: CongruenceDescriptor) -> str:
    restricted = d.flavor in (TRANSFORMATION, INVERSE)
    if d.ct == 1:
        fields = [f"N={d.normal}"]
        if not restricted:
            fields += [f"z1={format_cardinal(d.zeta1)}", f"z2={format_cardinal(d.zeta2)}"]
        return "CT1[" + "; ".join(fields) + "]"
    if d.is_nabla:
        return "NABLA"
    rev = d.reversal()
    psi = ", ".join(f"{format_cardinal(v)}@{format_cardinal(s)}"
                    for (v, _), s in zip(d.steps, rev.piece_starts()))
    fields = [] if restricted else [f"z1={format_cardinal(d.zeta1)}",
                                    f"z2={format_cardinal(d.zeta2)}"]
    fields.append(f"psi=({psi})")
    return "CT2[" + "; ".join(fields) + "]"


class DescriptorParseError(ValueError):
    def __init__(self, text: str, pos: int, message: str):
        self.pos = pos
        super().__init__(f"at position {pos} in {text!r}: {message}")


def parse_descriptor(text: str, context: CardinalContext,
                     flavor: str = PARTITION) -> CongruenceDescriptor:
    s = text.strip()
    if s == "NABLA":
        return nabla(context, flavor)
    m = re.match(r"^(CT[12])\[(.*)\]$", s)
    if not m:
        raise DescriptorParseError(text, 0, "expected CT1[...], CT2[...] or NABLA")
    kind, body = m.group(1), m.group(2)
    fields: dict[str, str] = {}
    for fm in _FIELD_RE.finditer(body):
        fields[fm.group(1)] = fm.group(2)
    restricted = flavor in (TRANSFORMATION, INVERSE)

    def get_zetas():
        if restricted:
            for z in ("z1", "z2"):
                if z in fields:
                    raise DescriptorParseError(text, s.find(z), f"{z} not allowed for {flavor}")
            return {}
        try:
            return {"zeta1": parse_cardinal(fields["z1"]),
                    "zeta2": parse_cardinal(fields["z2"])}
        except KeyError as e:
            raise DescriptorParseError(text, len(kind) + 1, f"missing field {e.args[0]}") from None

    if kind == "CT1":
        if "N" not in fields:
            raise DescriptorParseError(text, len(kind) + 1, "missing field N")
        normal = parse_normal_subgroup(fields["N"])
        return ct1(context, flavor, normal, **get_zetas())

    if "psi" not in fields:
        raise DescriptorParseError(text, len(kind) + 1, "missing field psi")
    psi = fields["psi"].strip()
    if not (psi.startswith("(") and psi.endswith(")")):
        raise DescriptorParseError(text, s.find("psi"), "psi must be parenthesized")
    pieces = []
    body_psi = psi[1:-1].strip()
    if body_psi:
        for part in body_psi.split(","):
            tok = part.strip()
            if "@" not in tok:
                raise DescriptorParseError(text, s.find(tok), "steps are value@start pairs")
            v, at = tok.split("@", 1)
            pieces.append((parse_cardinal(at), parse_cardinal(v)))
    if not pieces:
        return nabla(context, flavor)
    rev = reversal_from_pieces(context, pieces)
    return from_reversal(context, flavor, rev, **get_zetas())


# Lattice view over an enumeration ----------------------------------------

def layer_key(d: CongruenceDescriptor) -> str:
    """Congruences with all parameters but the thresholds fixed form a layer."""
    if d.ct == 1:
        return f"N={d.normal}"
    return f"psi={d.reversal()}"


def leq_matrix(descs: list[CongruenceDescriptor]) -> list[list[bool]]:
    return [[leq(a, b) for b in descs] for a in descs]


def hasse_edges(descs: list[CongruenceDescriptor],
                matrix: list[list[bool]] | None = None) -> list[tuple[int, int]]:
    n = len(descs)
    m = matrix if matrix is not None else leq_matrix(descs)
    edges = []
    for i in range(n):
        for j in range(n):
            if i == j or not m[i][j]:
                continue
            if not any(m[i][k] and m[k][j] for k in range(n) if k not in (i, j)):
                edges.append((i, j))
    return edges


def descriptor_dot(descs: list[CongruenceDescriptor]) -> str:
    """DOT Hasse diagram of an enumeration, clustered by layer."""
    matrix = leq_matrix(descs)
    out = ["digraph symbolic {", "  rankdir=BT;", "  node [shape=box];"]
    layers: dict[str, list[int]] = {}
    for i, d in enumerate(descs):
        layers.setdefault(layer_key(d), []).append(i)
    for li, (key, members) in enumerate(sorted(layers.items())):
        out.append(f"  subgraph cluster_{li} {{")
        out.append(f'    label="{key}";')
        for i in members:
            out.append(f'    n{i} [label="{format_descriptor(descs[i])}"];')
        out.append("  }")
    for i, j in hasse_edges(descs, matrix):
        out.append(f"  n{i} -> n{j};")
    out.append("}")
    return "\n".join(out) + "\n"
