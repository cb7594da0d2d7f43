"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Synthesized results from all suites are collected and checked for the
normal form in the last test, so run the module as a whole.
"""
import math
import random
import time

import pytest

from shufflecode.copyset import COST1, COST2, optimal_copy_set, table_graph
from shufflecode.greedy import greedy_cost, greedy_schedule, psi
from shufflecode.ops import Copy, Permi5
from shufflecode.pipeline import check_normalized, synthesize
from shufflecode.rtg import (
    SignatureDelta,
    TrivialLoop,
    apply_permutation,
    build_rtg,
    decompose,
    signature,
    signature_delta,
)
from shufflecode.sim import oracle_min_length, satisfies

from graphs import all_outdegree_one, all_rtgs, brute_length, random_outdegree_one, random_prtg, random_rtg

FIG1_LEFT = [(1, 2), (1, 3), (4, 5), (5, 6), (6, 4)]
FIG1_RIGHT = FIG1_LEFT + [(1, 1)]
FIG3 = [(2, 1), (2, 3), (3, 4), (4, 5), (5, 6), (6, 2)]

SYNTHESIZED = []


@pytest.fixture
def report(capsys):
    def _report(name, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        assert ok, detail
    return _report


def _synth(g):
    r = synthesize(g)
    SYNTHESIZED.append((g, r))
    return r


def _timed(g, repeats=20):
    best = math.inf
    for _ in range(repeats):
        t = time.perf_counter()
        r = synthesize(g)
        best = min(best, time.perf_counter() - t)
    SYNTHESIZED.append((g, r))
    return r, best


def test_fig1(report):
    left, lt = _timed(build_rtg(FIG1_LEFT))
    right, rt = _timed(build_rtg(FIG1_RIGHT))
    ok = left.total_length == 2 and right.total_length == 3 and lt < 1e-3 and rt < 1e-3
    report("Fig. 1 fixtures", ok,
           f"left={left.total_length} ({lt * 1e3:.3f} ms), right={right.total_length} ({rt * 1e3:.3f} ms)")


def test_fig3(report):
    g = build_rtg(FIG3)
    r = _synth(g)
    forced = synthesize(g, copy_set={(2, 3)})
    SYNTHESIZED.append((g, forced))
    ok = (r.total_length == 2 and r.code.ops == (Permi5((2, 3, 4, 5, 6)), Copy(3, 1))
          and forced.total_length == 3 and satisfies(g, forced.code))
    report("Fig. 3 fixture", ok, f"code={list(r.code)}, forced (2,3) length={forced.total_length}")


def test_greedy_optimality_exhaustive(report):
    t = time.perf_counter()
    count, bad = 0, []
    for n in range(1, 7):
        for g in all_outdegree_one(n):
            count += 1
            got = len(greedy_schedule(g))
            if got != oracle_min_length(g, got) or not satisfies(g, greedy_schedule(g)):
                bad.append(g)
            _synth(g)
    elapsed = time.perf_counter() - t
    report("Greedy optimality (<= 6 registers)", not bad and elapsed < 300,
           f"{count} RTGs, {len(bad)} mismatches, {elapsed:.1f} s")


def test_greedy_cost_formula(report):
    rng = random.Random(2024)
    bad = 0
    for _ in range(10_000):
        g = random_outdegree_one(rng, rng.randint(1, 200))
        x, a2, a3 = signature(g)
        expected = x + max(-(-(a2 + a3) // 2), -(-(a2 + 2 * a3) // 3))
        bad += len(greedy_schedule(g)) != expected
    report("Greedy cost formula", bad == 0, f"10000 RTGs up to 200 registers, {bad} mismatches")


MERGE_TABLE = {
    (0, 0): ((0, 0, 0), (0, 0)), (0, 1): ((0, 0, 0), (0, 0)),
    (0, 2): ((0, 0, 0), (0, 0)), (0, 3): ((0, 0, 0), (0, 0)),
    (1, 1): ((0, 1, 0), (1, 1)), (1, 2): ((0, -1, 1), (0, 1)), (1, 3): ((1, 0, -1), (1, 1)),
    (2, 2): ((1, -2, 0), (0, 1)), (2, 3): ((1, -1, -1), (0, 0)),
    (3, 3): ((1, 1, -2), (1, 0)),
}


def test_merge_table(report):
    wrong = []
    for (i, j), (delta, psis) in MERGE_TABLE.items():
        a, b = 4 + i, 4 + j
        left = [(k, (k + 1) % a) for k in range(a)]
        right = [(100 + k, 100 + (k + 1) % b) for k in range(b)]
        g = build_rtg(left + right)
        merged = apply_permutation({0: 100, 100: 0}, g)
        got = signature_delta(signature(g), signature(merged))
        if len(decompose(merged)) != 1 or got != delta or psi(SignatureDelta(*got)) != psis:
            wrong.append((i, j))
    report("Merge table", not wrong, f"{len(MERGE_TABLE)} cells, wrong: {wrong}")


def test_merge_monotone_one_op(report):
    rng = random.Random(77)
    mono = bound = merges = 0
    for _ in range(10_000):
        g = random_prtg(rng, rng.randint(2, 40))
        regs = g.sorted_vertices()
        before = greedy_cost(signature(g))
        cycles = [(c.vertex,) if isinstance(c, TrivialLoop) else c.vertices for c in decompose(g)]
        if len(cycles) >= 2:
            c1, c2 = rng.sample(cycles, 2)
            u, v = rng.choice(c1), rng.choice(c2)
            merged = apply_permutation({u: v, v: u}, g)
            merges += 1
            mono += greedy_cost(signature(merged)) < before
        k = rng.randint(2, min(5, len(regs)))
        pi = Permi5(tuple(rng.sample(regs, k))).moves()
        bound += before > greedy_cost(signature(apply_permutation(pi, g))) + 1
    report("Merge monotonicity and one-op bound", mono == 0 and bound == 0,
           f"10000 PRTGs, {merges} merges, {mono} monotonicity and {bound} one-op violations")


def test_dp_completeness(report):
    t = time.perf_counter()
    graphs = [g for n in range(1, 5) for g in all_rtgs(n)]
    exhaustive = len(graphs)
    rng = random.Random(31337)
    graphs += [random_rtg(rng, rng.randint(1, 7)) for _ in range(2000)]
    bad = []
    for g in graphs:
        _, length = optimal_copy_set(g)
        r = _synth(g)
        if not (length == r.total_length == brute_length(g) == oracle_min_length(g, length)
                and satisfies(g, r.code)):
            bad.append(g)
    elapsed = time.perf_counter() - t
    report("DP completeness", not bad and elapsed < 600,
           f"{exhaustive} exhaustive + 2000 random RTGs, {len(bad)} mismatches, {elapsed:.1f} s")


def _random_sized(rng, n):
    # random_rtg may leave registers out; keep drawing until all n are used
    while True:
        g = random_rtg(rng, n, p_edge=0.9)
        if len(g) == n:
            return g


def test_complexity(report):
    rng = random.Random(5)
    times = {}
    for n in (25, 50, 100):
        samples = []
        for _ in range(5):
            g = _random_sized(rng, n)
            t = time.perf_counter()
            r = synthesize(g)
            samples.append(time.perf_counter() - t)
            SYNTHESIZED.append((g, r))
        times[n] = sorted(samples)[len(samples) // 2]
    worst = max(samples)
    slope = math.log(times[100] / times[25]) / math.log(4)
    report("Complexity smoke test", worst < 2.0 and slope < 4.5,
           f"median {', '.join(f'n={n}: {t * 1e3:.1f} ms' for n, t in times.items())}; "
           f"worst n=100 {worst * 1e3:.1f} ms; log-log slope {slope:.2f}")


def test_exact_arithmetic(report):
    rng = random.Random(99)
    g = _random_sized(rng, 40)
    first = (table_graph(g, COST1).as_dict(), table_graph(g, COST2).as_dict(), optimal_copy_set(g))
    same = all(
        (table_graph(g, COST1).as_dict(), table_graph(g, COST2).as_dict(), optimal_copy_set(g)) == first
        for _ in range(99)
    )
    ints = all(type(v) is int for table in first[:2] for v in table.values())
    report("Exact arithmetic", same and ints,
           f"100 runs identical: {same}; all table values int: {ints} ({len(first[0]) + len(first[1])} entries)")


def test_normalization(report):
    bad = [(g, v) for g, r in SYNTHESIZED for v in check_normalized(g, r)]
    ok = bool(SYNTHESIZED) and not bad
    report("Normalization", ok, f"{len(SYNTHESIZED)} synthesized codes, {len(bad)} violations")
