import itertools
import json
import random

import pytest

from optlrc.errors import CapExceeded, TooLarge
from optlrc.field import BaseField, Matrix, rank_of
from optlrc.matroid import (
    Circuit,
    analyze_matroid,
    compute_mu,
    distance_oracle,
    distance_via_mu,
    enumerate_circuits,
    verify_optimal_lrc,
)

from conftest import code
from oracles import circuits_by_definition, min_weight

F13 = BaseField.prime(13)


def _parity(k):
    rows = [[1 if i == j else 0 for j in range(k)] + [1] for i in range(k)]
    return Matrix(F13, rows)


def _rs(n, k, p=13):
    F = BaseField.prime(p)
    return Matrix(F, [[pow(a, i, p) for a in range(n)] for i in range(k)])


def _random_code(rng, n, k, p):
    F = BaseField.prime(p)
    while True:
        G = Matrix(F, [[rng.randrange(p) for _ in range(n)] for _ in range(k)])
        if rank_of(G) == k:
            return G


# -- circuits --------------------------------------------------------------------------


def test_single_parity_has_one_circuit():
    assert enumerate_circuits(_parity(4)) == [Circuit((0, 1, 2, 3, 4))]


def test_zero_column_is_a_loop():
    G = Matrix(F13, [[1, 0, 2], [0, 0, 5]])
    assert Circuit((1,)) in enumerate_circuits(G)


def test_group_circuits_of_9_3_2():
    circuits = enumerate_circuits(code(9, 3, 2).G)
    assert [c.members for c in circuits if c.size <= 3] == [(0, 1, 2), (3, 4, 5), (6, 7, 8)]


@pytest.mark.parametrize("seed", range(8))
def test_circuits_match_definition(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    k = rng.randint(1, n - 1)
    G = _random_code(rng, n, k, rng.choice([2, 3, 5]))
    assert [c.members for c in enumerate_circuits(G)] == circuits_by_definition(G, k + 1)


def test_size_cap():
    circuits = enumerate_circuits(code(9, 3, 2).G, size_cap=3)
    assert all(c.size <= 3 for c in circuits) and len(circuits) == 3


def test_circuit_budget():
    with pytest.raises(CapExceeded):
        enumerate_circuits(code(9, 3, 2).G, budget=10)


@pytest.mark.parametrize("shape", [(8, 3, 2, 3), (12, 3, 2, 3)])
def test_generalized_nontrivial_circuits_stay_in_groups(shape):
    gm = code(*shape)
    groups = [set(g) for g in gm.params.groups()]
    nontrivial = [c for c in enumerate_circuits(gm.G) if c.size <= gm.k]
    assert nontrivial
    assert all(any(set(c.members) <= g for g in groups) for c in nontrivial)


@pytest.mark.parametrize("shape", [(9, 3, 2), (8, 4, 3), (9, 5, 2), (6, 3, 2)])
def test_union_rank_lemma(shape):
    # a non-trivial union of t circuits loses at least t in rank
    G = code(*shape).G
    masks = [c.members for c in enumerate_circuits(G)]
    for t in (1, 2, 3):
        for fam in itertools.combinations(masks, t):
            sets = [set(c) for c in fam]
            if all(not s <= set().union(*(o for o in sets if o is not s)) for s in sets):
                union = set().union(*sets)
                assert rank_of(G, sorted(union)) <= len(union) - t


# -- mu and distance ------------------------------------------------------------------------


def test_mds_has_mu_one():
    assert compute_mu(_rs(7, 3)) == 1


def test_mu_of_8_4_3():
    assert compute_mu(code(8, 4, 3).G) == 2


def test_mu_of_generalized_8_3_2_3():
    assert compute_mu(code(8, 3, 2, 3).G) == 3


def test_distances_by_mu():
    assert distance_via_mu(_parity(4)) == 2
    assert distance_via_mu(code(9, 3, 2).G) == 6
    assert distance_via_mu(code(8, 3, 2, 3).G) == 4


def test_distance_oracle_examples():
    assert distance_oracle(Matrix.identity(F13, 3)) == 1
    assert distance_oracle(code(8, 4, 3).G) == 4
    assert distance_oracle(_rs(7, 3)) == 5


def test_distance_oracle_limit():
    with pytest.raises(TooLarge):
        distance_oracle(Matrix(F13, [[1] * 21]))


@pytest.mark.parametrize("seed", range(40))
def test_oracle_matches_codeword_enumeration(seed):
    rng = random.Random(100 + seed)
    p = rng.choice([2, 3, 5])
    n = rng.randint(2, 7)
    k = rng.randint(1, min(n - 1, 4))
    G = _random_code(rng, n, k, p)
    assert distance_oracle(G) == min_weight(G)


@pytest.mark.parametrize("seed", range(40))
def test_mu_formula_on_random_codes(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 9)
    k = rng.randint(1, n - 1)
    G = _random_code(rng, n, k, rng.choice([2, 3, 5, 7, 11, 13]))
    mu = compute_mu(G)
    assert 1 <= mu <= n + 1
    assert distance_via_mu(G) == distance_oracle(G)


# -- optimality -----------------------------------------------------------------------------


def test_9_3_2_is_optimal_with_partition():
    v = verify_optimal_lrc(code(9, 3, 2).G, 2)
    assert v.optimal and v.partition


def test_8_4_3_is_optimal():
    assert verify_optimal_lrc(code(8, 4, 3).G, 3).optimal


def test_rs_is_not_locality_optimal():
    v = verify_optimal_lrc(_rs(6, 3), 2)
    assert not v.optimal
    assert v.witness == (0,)


def test_small_union_violation_reported():
    # two disjoint parity groups of 3 glued without any cross-group mixing: k=4, r=2
    rows = [
        [1, 0, 1, 0, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 1, 1, 0, 1],
        [0, 0, 0, 0, 1, 1, 0, 1, 1],
    ]
    G = Matrix(F13, rows)
    v = verify_optimal_lrc(G, 2)
    assert not v.optimal
    assert len(v.witness) == 2


def test_generalized_optimal():
    v = verify_optimal_lrc(code(8, 3, 2, 3).G, 2, 3)
    assert v.optimal and not v.partition


def test_report_json():
    rep = analyze_matroid(code(9, 3, 2).G, 2)
    d = json.loads(rep.to_json())
    assert d["mu"] == 2 and d["d_formula"] == 6 and d["d_oracle"] == 6
    assert d["nontrivial_circuits"] == [[0, 1, 2], [3, 4, 5], [6, 7, 8]]
    assert d["optimal_lrc"]["optimal"] is True
