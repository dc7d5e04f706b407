"""Acceptance criteria, each checked at its stated tolerance.

Every test records one PASS/FAIL line, shown in the pytest summary.
"""
import math
import random
from fractions import Fraction

from pwcolor.analyzer import piecewise_analyze, thresholds, verify_assignment
from pwcolor.engine import EngineConfig, SearchState, check_measure_decrease, count_colorings, decide_colorable, enum_is_pw
from pwcolor.graph import Graph, generate
from pwcolor.oracles import brute_force_oracle
from pwcolor.pathwidth import (
    augment_decomposition,
    decompose,
    decompose_heuristic,
    decompose_low_degree,
    pw_count_colorings,
    validate_decomposition,
)
from pwcolor.tables import C_PRIME_3COL, C_PRIME_3COL_FAST, PIECE_SWEEP, PUBLISHED, THRESHOLDS_550

BASE_TOL = 5e-4


def test_four_coloring_headline(criterion):
    rep = piecewise_analyze(d=3, p=550, a=7, c_prime=C_PRIME_3COL, c=4)
    last = rep.pieces[-1]
    ok = rep.max_base <= 1.7207 + BASE_TOL and rep.worst is last
    criterion(1, ok, f"p=550 max base {rep.max_base:.4f} (<= 1.7207 + 5e-4), worst piece last: {rep.worst is last}")


def test_piece_count_sweep(criterion):
    bases = {p: piecewise_analyze(d=3, p=p, c_prime=C_PRIME_3COL).max_base for p in PIECE_SWEEP}
    close = all(abs(bases[p] - want) <= BASE_TOL for p, want in PIECE_SWEEP.items())
    seq = [bases[p] for p in sorted(bases)]
    monotone = all(b <= a for a, b in zip(seq, seq[1:]))
    criterion(2, close and monotone, f"bases {bases} vs {PIECE_SWEEP}, non-increasing: {monotone}")


def test_counting_headline(criterion):
    rep = piecewise_analyze(d=2, p=5000, a=7, c_prime=0.0, c=3, counting=True, threads=2)
    criterion(3, rep.max_base <= 1.6225 + BASE_TOL, f"p=5000 counting max base {rep.max_base:.4f} (<= 1.6225 + 5e-4)")


def test_published_assignments(criterion):
    rows, ok = [], True
    for name, e in PUBLISHED.items():
        v = verify_assignment(e["weights"], e["piece"], e["c"], counting=e["counting"], tol=1e-4)
        good = v.feasible and max(v.slacks) <= 1 + 1e-4 and abs(v.base - e["base"]) <= 1e-3
        ok &= good
        rows.append(f"{name}={v.base:.4f}")
    criterion(4, ok, "feasible, bases within 1e-3: " + " ".join(rows))


def test_threshold_identity(criterion):
    th = thresholds(0.39150)
    got = {i: round(th[i][0], 5) for i in THRESHOLDS_550}
    exact = thresholds(Fraction(393, 1000))[4][0]
    ok = all(abs(got[i] - THRESHOLDS_550[i]) < 1e-12 for i in got) and exact == Fraction(895, 10000)
    criterion(5, ok, f"alpha_3..6 {got}; alpha_4 at 0.393 = {exact} ({float(exact)})")


def test_faster_subroutine_whatif(criterion):
    rep = piecewise_analyze(d=3, p=550, a=7, c_prime=C_PRIME_3COL_FAST, c=4)
    criterion(6, rep.max_base <= 1.7146 + 1e-3, f"p=550, c'=log2 1.3217: max base {rep.max_base:.4f} (<= 1.7146 + 1e-3)")


def _structured():
    fams = [generate("path", n) for n in range(1, 11)]
    fams += [generate("cycle", n) for n in range(3, 11)]
    fams += [generate("complete", n) for n in range(1, 8)]
    fams += [generate("bipartite", a, m=b) for a in range(1, 5) for b in range(1, 5)]
    fams.append(generate("petersen"))
    return fams


def _random(n, count):
    for seed in range(count):
        p = random.Random(1000 * n + seed).uniform(0.15, 0.85)
        yield generate("gnp", n, p=p, seed=1000 * n + seed)


def _decompositions(g, rng):
    """Every constructor that applies to g, plus an augmented one from a random (S, C)."""
    out = [decompose(g), decompose_heuristic(g)]
    if g.max_degree() <= 2:
        out.append(decompose_low_degree(g))
    S = set()
    for v in rng.sample(range(g.n), g.n):
        if not g.adj[v] & S and rng.random() < 0.4:
            S.add(v)
    C = set().union(*(g.adj[v] for v in S)) if S else set()
    rest = [v for v in range(g.n) if v not in S | C]
    out.append(augment_decomposition(decompose(g, rest), C, S))
    return out


def test_engine_oracle_equivalence(criterion):
    rng = random.Random(0)
    checked, bad = 0, []
    graphs = _structured() + [g for n in range(4, 9) for g in _random(n, 200)]
    for g in graphs:
        for c in (2, 3, 4):
            if decide_colorable(g, c).answer != brute_force_oracle(g, c, "decide"):
                bad.append(("decide", g.n, g.sorted_edges(), c))
        if g.n <= 12 and count_colorings(g, 3) != brute_force_oracle(g, 3, "count"):
            bad.append(("count", g.n, g.sorted_edges(), 3))
        checked += 1
    dp = 0
    for g in [h for h in _structured() if h.n <= 10] + [h for n in range(1, 11) for h in _random(n, 40)]:
        truth = {c: brute_force_oracle(g, c, "count") for c in (2, 3, 4)}
        for pd in _decompositions(g, rng):
            assert validate_decomposition(g, pd)
            for c in (2, 3, 4):
                dp += 1
                if pw_count_colorings(g, pd, c) != truth[c]:
                    bad.append(("dp", g.n, g.sorted_edges(), c))
    criterion(7, not bad, f"{checked} graphs x decide c=2,3,4 + count c=3, {dp} DP runs; mismatches {bad[:3]}")


def test_measure_decrease(criterion):
    w = PUBLISHED["four_coloring_1"]["weights"]
    nodes, worst = 0, -math.inf
    for seed in range(400):
        p = random.Random(seed).uniform(0.3, 0.9)
        g = generate("gnp", 12, p=p, seed=seed)
        cfg = EngineConfig(d=3, k=9, alpha=w.alpha, trace=True)
        res = enum_is_pw(g, SearchState.root(), cfg)
        for rec in check_measure_decrease(g, res.trace, cfg, w, tol=1e-9):
            nodes += 1
            worst = max(worst, rec.lhs - rec.rhs)
    ok = nodes >= 1000 and worst <= 0
    criterion(8, ok, f"{nodes} branching nodes at n=12, max (lhs - rhs - 1e-9) = {worst:.3e}")


def test_decomposition_suite(criterion):
    rng = random.Random(9)
    runs, bad = 0, []
    for trial in range(600):
        n = rng.randint(0, 14)
        if trial % 3 == 0:
            # disjoint paths and cycles
            edges, v = [], 0
            while v < n:
                s = min(rng.randint(1, 6), n - v)
                edges += [(v + i, v + i + 1) for i in range(s - 1)]
                if s >= 3 and rng.random() < 0.5:
                    edges.append((v, v + s - 1))
                v += s
            g = Graph.from_edges(n, edges)
        else:
            g = generate("gnp", n, p=rng.uniform(0.05, 0.8), seed=trial)
        pds = [("auto", decompose(g)), ("heuristic", decompose_heuristic(g))]
        if g.max_degree() <= 2:
            low = decompose_low_degree(g)
            pds.append(("low-degree", low))
            if low.width > 2:
                bad.append(("low-degree width", trial))
        S = set()
        for v in rng.sample(range(n), n):
            if not g.adj[v] & S and rng.random() < 0.5:
                S.add(v)
        C = set().union(*(g.adj[v] for v in S)) if S else set()
        extra = [v for v in range(n) if v not in S | C and rng.random() < 0.3]
        C |= set(extra)
        rest = [v for v in range(n) if v not in S | C]
        inner = decompose(g, rest)
        aug = augment_decomposition(inner, C, S)
        pds.append(("augment", aug))
        if aug.width > len(C) + inner.width:
            bad.append(("augment width", trial))
        for name, pd in pds:
            runs += 1
            if not validate_decomposition(g, pd):
                bad.append((name, trial))
    criterion(9, not bad, f"{runs} decompositions validated; failures {bad[:3]}")
