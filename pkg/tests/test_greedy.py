import random

import pytest

from shufflecode.greedy import complete_paths, greedy_cost, greedy_length, greedy_schedule, psi
from shufflecode.ops import Permi5, Permi23
from shufflecode.rtg import (
    Cycle,
    NotOutdegreeOneError,
    Signature,
    SignatureDelta,
    apply_permutation,
    build_rtg,
    decompose,
    signature,
    signature_delta,
    signature_of_sizes,
)
from shufflecode.sim import oracle_min_length, satisfies

from graphs import random_outdegree_one, random_prtg


def cycle_edges(vs):
    return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


@pytest.mark.parametrize("sig, expected", [((0, 1, 1), 1), ((0, 0, 0), 0), ((0, 0, 3), 2), ((2, 0, 0), 2)])
def test_greedy_cost_examples(sig, expected):
    assert greedy_cost(Signature(*sig)) == expected


@pytest.mark.parametrize("delta, expected", [((0, -1, 1), (0, 1)), ((0, 0, 0), (0, 0)), ((1, 1, -2), (1, 0))])
def test_psi_examples(delta, expected):
    assert psi(SignatureDelta(*delta)) == expected


def test_complete_paths():
    assert complete_paths(build_rtg([(1, 2)])).edges == {(1, 2), (2, 1)}
    prtg = build_rtg(cycle_edges([1, 2, 3]))
    assert complete_paths(prtg) == prtg
    g = complete_paths(build_rtg([(3, 4), (4, 5), (6, 6)]))
    assert decompose(g) == [Cycle((3, 4, 5))] + decompose(build_rtg([(6, 6)]))
    with pytest.raises(NotOutdegreeOneError):
        complete_paths(build_rtg([(1, 2), (1, 3)]))


def test_schedule_two_plus_three():
    g = build_rtg(cycle_edges([1, 2]) + cycle_edges([3, 4, 5]))
    code = greedy_schedule(g)
    assert len(code) == 1 and isinstance(code.ops[0], Permi23)
    assert satisfies(g, code)


def test_schedule_trivial_is_empty():
    assert len(greedy_schedule(build_rtg([(1, 1), (2, 2)]))) == 0


def test_schedule_nine_cycle():
    g = build_rtg(cycle_edges(list(range(1, 10))))
    code = greedy_schedule(g)
    assert [type(op) for op in code] == [Permi5, Permi5]
    assert satisfies(g, code)


def test_cycle_reduction_residual():
    vs = list(range(10, 17))
    g = build_rtg(cycle_edges(vs))
    op = Permi5(tuple(vs[:5]))
    pi = op.moves()
    rest = apply_permutation(pi, g)
    assert [c for c in decompose(rest) if isinstance(c, Cycle)] == [Cycle((vs[0],) + tuple(vs[5:]))]


@pytest.mark.parametrize("threes", [1, 2, 3, 4, 5])
def test_leftover_threes(threes):
    edges = []
    for i in range(threes):
        edges += cycle_edges([3 * i, 3 * i + 1, 3 * i + 2])
    g = build_rtg(edges)
    code = greedy_schedule(g)
    assert len(code) == greedy_cost(Signature(0, 0, threes))
    assert satisfies(g, code)


def test_count_and_correctness_random():
    rng = random.Random(3)
    for _ in range(500):
        g = random_outdegree_one(rng, rng.randint(1, 60))
        code = greedy_schedule(g)
        assert len(code) == greedy_length(g)
        assert not code.copies
        assert satisfies(g, code)


def test_exhaustive_small_against_oracle():
    from graphs import all_outdegree_one

    for n in range(1, 5):
        for g in all_outdegree_one(n):
            assert len(greedy_schedule(g)) == oracle_min_length(g)


MERGES = {
    (0, 0): (0, 0, 0), (0, 1): (0, 0, 0), (0, 2): (0, 0, 0), (0, 3): (0, 0, 0),
    (1, 1): (0, 1, 0), (1, 2): (0, -1, 1), (1, 3): (1, 0, -1),
    (2, 2): (1, -2, 0), (2, 3): (1, -1, -1),
    (3, 3): (1, 1, -2),
}


def merged_delta(i, j):
    # sizes congruent to i and j, at least 4 so that no residue class is a loop
    a, b = 4 + i, 4 + j
    g = build_rtg(cycle_edges(list(range(a))) + cycle_edges(list(range(100, 100 + b))))
    merged = apply_permutation({0: 100, 100: 0}, g)
    assert len(decompose(merged)) == 1
    return signature_delta(signature(g), signature(merged))


@pytest.mark.parametrize("cell", sorted(MERGES))
def test_merge_table(cell):
    assert merged_delta(*cell) == MERGES[cell]


def test_merge_psi_nonnegative():
    for cell in MERGES:
        a, b = psi(SignatureDelta(*MERGES[cell]))
        assert a >= 0 and b >= 0 and max(a, b) <= 1


def test_merge_monotone_and_one_op_bound():
    rng = random.Random(17)
    for _ in range(300):
        g = random_prtg(rng, rng.randint(2, 30))
        regs = g.sorted_vertices()
        u, v = rng.sample(regs, 2)
        tau = {u: v, v: u}
        before = greedy_length(g)
        merged = apply_permutation(tau, g)
        if len(decompose(merged)) < len(decompose(g)):
            assert greedy_length(merged) >= before
        k = rng.randint(2, min(5, len(regs)))
        cyc = rng.sample(regs, k)
        pi = Permi5(tuple(cyc)).moves()
        assert before <= greedy_length(apply_permutation(pi, g)) + 1


def test_signature_of_sizes_matches():
    assert signature_of_sizes([5, 2, 3, 1, 8]) == Signature(3, 1, 1)
