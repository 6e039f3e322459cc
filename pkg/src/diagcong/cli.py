"""Command-line front end: enumeration, verification, symbolic queries,
property-check suites, and DOT export.

Exit codes: 0 ok, 1 verification mismatch or suite violation, 2 usage or
parse error, 3 a configured cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass

from .cardinals import CardinalContext, parse_cardinal
from .congruences import all_congruences, lattice_dot
from .descriptors import (FLAVORS, crank, descriptor_dot, enumerate_all,
                          format_descriptor, is_star, join, leq, meet,
                          leq_matrix, parse_descriptor, principal_descriptor,
                          membership)
from .finitary import pair_profile, parse_finitary
from .finite_classification import enumerate_parametric, prepare, verify
from .monoids import (CapExceeded, DEFAULT_ELEMENT_CAP, MonoidFamily,
                      build_table, enumerate_monoid, generators,
                      random_element, structure)
from .partitions import (compose, drank, green, stats, sym_diff_counts)

OK, MISMATCH, USAGE, CAP = 0, 1, 2, 3

_FLAVOR_OF = {"P": "partition", "PB": "partition", "T": "transformation",
              "I": "inverse"}


@dataclass
class RunConfig:
    cache_dir: str | None = None
    threads: int = 1
    seed: int = 0
    cap_elements: int = DEFAULT_ELEMENT_CAP
    fmt: str = "text"

    def __post_init__(self):
        if self.threads < 1 or self.cap_elements < 1:
            raise ValueError("caps and thread count must be positive")


def _env(name: str, fallback):
    return os.environ.get(f"DIAGCONG_{name}", fallback)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="diagcong")
    ap.add_argument("--cache-dir", default=_env("CACHE_DIR", None))
    ap.add_argument("--threads", type=int, default=int(_env("THREADS", 1)))
    ap.add_argument("--seed", type=int, default=int(_env("SEED", 0)))
    ap.add_argument("--cap-elements", type=int,
                    default=int(_env("CAP_ELEMENTS", DEFAULT_ELEMENT_CAP)))
    ap.add_argument("--format", dest="fmt", choices=("text", "jsonl", "dot"),
                    default=_env("FORMAT", "text"))
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("monoid")
    p.add_argument("family", choices=("P", "PB", "B", "T", "I"))
    p.add_argument("n", type=int)
    p.add_argument("action", choices=("enum", "table", "structure"))

    p = sub.add_parser("cong")
    p.add_argument("family", choices=("P", "PB", "T", "I"))
    p.add_argument("n", type=int)
    p.add_argument("action", choices=("brute", "verify", "dot"))

    p = sub.add_parser("symbolic")
    p.add_argument("context")
    p.add_argument("flavor", choices=("P", "PB", "T", "I"))
    p.add_argument("query", choices=("enumerate", "leq", "meet", "join",
                                     "crank", "principal", "star", "dot"))
    p.add_argument("args", nargs="*")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--ct2-only", action="store_true")

    p = sub.add_parser("check")
    p.add_argument("suite", choices=("inequalities", "order", "green",
                                     "bridge", "all"))
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--n", type=int, default=3)
    return ap


def cmd_monoid(cfg: RunConfig, family: str, n: int, action: str) -> int:
    fam = MonoidFamily(family, n)
    m = enumerate_monoid(fam, cap=cfg.cap_elements)
    if action == "enum":
        print(f"{fam}: {len(m)} elements")
        return OK
    m = build_table(m, cache_dir=cfg.cache_dir)
    if action == "table":
        print(f"{fam}: table {len(m)}x{len(m)} built; generators: "
              f"{len(generators(m))}")
        return OK
    info = structure(m)
    for r, members in info["d_classes"].items():
        print(f"rank {r}: {len(members)} elements")
    return OK


def cmd_cong(cfg: RunConfig, family: str, n: int, action: str) -> int:
    fam = MonoidFamily(family, n)
    if action == "verify":
        report = verify(fam, cap=cfg.cap_elements, cache_dir=cfg.cache_dir)
        if cfg.fmt == "jsonl":
            print(json.dumps(report))
        else:
            detail = f"chain: {report['is_chain']}" if "is_chain" in report \
                else f"star ok: {report.get('star_matches_prediction')}"
            print(f"{fam}: match: {report['brute_count']} = "
                  f"{report['parametric_count']} ({detail})")
        return OK if report["match"] else MISMATCH
    m = prepare(fam, cap=cfg.cap_elements, cache_dir=cfg.cache_dir)
    lattice = all_congruences(m)
    if action == "dot":
        labels = None
        try:
            by_classes = {rel.classes: str(spec)
                          for spec, rel in enumerate_parametric(m)}
            labels = [by_classes.get(rel.classes, "?") for rel in lattice.congruences]
        except ValueError:
            pass
        sys.stdout.write(lattice_dot(lattice, labels))
        return OK
    if cfg.fmt == "jsonl":
        for rel in lattice.congruences:
            print(json.dumps({"classes": list(rel.classes)}))
    else:
        print(f"{fam}: {len(lattice)} congruences")
        for rel in lattice.congruences:
            print(f"  {rel.num_classes} classes")
    return OK


def cmd_symbolic(cfg: RunConfig, context: str, flavor_tag: str, query: str,
                 args: list[str], n_max: int, ct2_only: bool) -> int:
    ctx = CardinalContext(parse_cardinal(context))
    flavor = _FLAVOR_OF[flavor_tag]

    def parse_args(k: int):
        if len(args) != k:
            raise SystemExit(USAGE)
        return [parse_descriptor(a, ctx, flavor) for a in args]

    if query == "enumerate":
        descs = enumerate_all(ctx, flavor, n_max=n_max)
        if ct2_only:
            descs = [d for d in descs if d.ct == 2]
        if cfg.fmt == "jsonl":
            for d in descs:
                print(json.dumps({"descriptor": format_descriptor(d),
                                  "type": d.ct}))
        else:
            print(len(descs))
        return OK
    if query == "dot":
        descs = enumerate_all(ctx, flavor, n_max=n_max)
        sys.stdout.write(descriptor_dot(descs))
        return OK
    if query == "leq":
        s, t = parse_args(2)
        print("true" if leq(s, t) else "false")
        return OK
    if query in ("meet", "join"):
        s, t = parse_args(2)
        op = meet if query == "meet" else join
        print(format_descriptor(op(s, t)))
        return OK
    if query == "crank":
        (d,) = parse_args(1)
        print(crank(d))
        return OK
    if query == "star":
        (d,) = parse_args(1)
        print("true" if is_star(d) else "false")
        return OK
    # principal: two finitary partition texts
    if len(args) != 2:
        raise SystemExit(USAGE)
    a, b = parse_finitary(args[0]), parse_finitary(args[1])
    profile = pair_profile(a, b)
    if profile.rank_a < profile.rank_b:
        profile = pair_profile(b, a)
    d = principal_descriptor(profile)
    assert membership(d, profile)
    print(format_descriptor(d))
    return OK


def _ineq_chunk(payload) -> list[str]:
    """One deterministic chunk of the inequality suite; returns violations."""
    seed, count = payload
    rng = random.Random(seed)
    bad: list[str] = []
    cases = [MonoidFamily("P", 5), MonoidFamily("PB", 6)]
    for _ in range(count):
        for fam in cases:
            a, b, th = (random_element(rng, fam) for _ in range(3))
            ra, rb = a.rank, b.rank
            d_t, d_o, d_u = sym_diff_counts(a, b)
            at, bt = compose(a, th), compose(b, th)
            ta, tb = compose(th, a), compose(th, b)
            dt_t, dt_o, dt_u = sym_diff_counts(at, bt)
            tt_t, tt_o, tt_u = sym_diff_counts(ta, tb)
            checks = [
                dt_o <= d_o + 2 * ra + 2 * rb,
                tt_o <= d_o,
                dt_u <= d_u,
                tt_u <= d_u + 2 * ra + 2 * rb,
                dt_t <= d_t,
                tt_t <= d_t,
                d_o <= d_t,
                d_u <= d_t,
                d_t <= d_o + d_u + 3 * ra + 3 * rb,
            ]
            if not all(checks):
                bad.append(f"{fam}: a={a} b={b} th={th} checks={checks}")
        fam = MonoidFamily("T", 5)
        a, b = random_element(rng, fam), random_element(rng, fam)
        d_t = sym_diff_counts(a, b)[0]
        dr = drank(a, b)
        ok = d_t == 0 if dr == 0 else dr <= d_t <= 4 * dr
        if not ok:
            bad.append(f"T_5 drank: a={a} b={b} drank={dr} d={d_t}")
    return bad


def cmd_check(cfg: RunConfig, suite: str, samples: int, n: int) -> int:
    failures: list[str] = []

    def run_inequalities():
        chunks = max(cfg.threads, 1)
        per = (samples + chunks - 1) // chunks
        payloads = [(cfg.seed + i, per) for i in range(chunks)]
        if cfg.threads > 1:
            from concurrent.futures import ProcessPoolExecutor
            with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
                results = list(pool.map(_ineq_chunk, payloads))
        else:
            results = [_ineq_chunk(p) for p in payloads]
        for r in results:
            failures.extend(r)
        print(f"inequalities: {per * chunks} samples, "
              f"{sum(len(r) for r in results)} violations")

    def run_green():
        for tag in ("P", "PB"):
            m = prepare(MonoidFamily(tag, n), cache_dir=cfg.cache_dir)
            bad = _green_mismatches(m)
            print(f"green {tag}_{n}: {bad} mismatches")
            if bad:
                failures.append(f"green {tag}_{n}")

    def run_order():
        from .cardinals import Cardinal
        for idx in (0, 1):
            ctx = CardinalContext(Cardinal.aleph(0, idx))
            bad = _order_mismatches(ctx)
            print(f"order aleph_{idx}: {bad} mismatches")
            if bad:
                failures.append(f"order aleph_{idx}")

    def run_bridge():
        from .cardinals import Cardinal
        from .finitary import sweep_profiles
        for idx in (0, 1):
            ctx = CardinalContext(Cardinal.aleph(0, idx))
            bad = 0
            for p in sweep_profiles(ctx, n_max=4):
                d = principal_descriptor(p)
                if not membership(d, p):
                    bad += 1
                    failures.append(f"bridge {ctx}: {p}")
            print(f"bridge aleph_{idx}: {bad} violations")

    runners = {"inequalities": run_inequalities, "green": run_green,
               "order": run_order, "bridge": run_bridge}
    for name, fn in runners.items():
        if suite in (name, "all"):
            fn()
    if failures:
        print("FIRST VIOLATION:", failures[0])
        return MISMATCH
    print("all checks passed")
    return OK


def _green_mismatches(m) -> int:
    size = len(m)
    table = m.table
    rows = [set(table[i]) | {i} for i in range(size)]
    cols = [set(table[j][i] for j in range(size)) | {i} for i in range(size)]
    two = [set() for _ in range(size)]
    for i in range(size):
        for s in range(size):
            two[i].update(rows[table[s][i]])
    bad = 0
    for a in range(size):
        for b in range(size):
            flags = green(m.elements[a], m.elements[b])
            if flags.leq_r != (a in rows[b]) or flags.leq_l != (a in cols[b]) \
                    or flags.leq_j != (a in two[b]):
                bad += 1
            if flags.r != (flags.leq_r and b in rows[a]) \
                    or flags.l != (flags.leq_l and b in cols[a]):
                bad += 1
    return bad


def _order_mismatches(ctx: CardinalContext) -> int:
    descs = enumerate_all(ctx, n_max=4)
    mat = leq_matrix(descs)
    size = len(descs)
    down = [sum(1 << i for i in range(size) if mat[i][j]) for j in range(size)]
    up = [sum(1 << j for j in range(size) if mat[i][j]) for i in range(size)]
    down_ix = {d: i for i, d in enumerate(down)}
    up_ix = {u: i for i, u in enumerate(up)}
    bad = 0
    for i in range(size):
        for j in range(size):
            g = down_ix.get(down[i] & down[j])
            l = up_ix.get(up[i] & up[j])
            if g is None or descs[g] != meet(descs[i], descs[j]):
                bad += 1
            if l is None or descs[l] != join(descs[i], descs[j]):
                bad += 1
    return bad


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        cfg = RunConfig(ns.cache_dir, ns.threads, ns.seed, ns.cap_elements, ns.fmt)
        if ns.command == "monoid":
            return cmd_monoid(cfg, ns.family, ns.n, ns.action)
        if ns.command == "cong":
            return cmd_cong(cfg, ns.family, ns.n, ns.action)
        if ns.command == "symbolic":
            return cmd_symbolic(cfg, ns.context, ns.flavor, ns.query, ns.args,
                                ns.n_max, ns.ct2_only)
        return cmd_check(cfg, ns.suite, ns.samples, ns.n)
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return CAP
    except (ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
