import itertools
import json
import math
from fractions import Fraction

import numpy as np
import pytest

from optlrc.analysis import (
    decodability_report,
    pdec_brute,
    pdec_exact,
    pdec_lower_bound,
    pdec_monte_carlo,
    sample_subsets,
)
from optlrc.codec import decodable
from optlrc.errors import ParamError, TooLarge
from optlrc.field import BaseField, Matrix

from conftest import code


def _count_by_groups(n, k, r, delta):
    # direct enumeration: a k-subset is good when no group holds more than r of it
    g = r + delta - 1
    good = sum(all(sum(1 for j in S if j // g == i) <= r for i in range(n // g)) for S in itertools.combinations(range(n), k))
    return Fraction(good, math.comb(n, k))


def test_exact_values():
    assert pdec_exact(8, 4, 3) == Fraction(68, 70)
    assert pdec_exact(9, 3, 2) == Fraction(81, 84)


def test_exact_is_one_when_k_is_below_group_size():
    assert pdec_exact(9, 2, 2) == 1


@pytest.mark.parametrize("n,k,r,delta", [(12, 5, 2, 2), (12, 6, 3, 2), (10, 7, 4, 2), (8, 3, 2, 3), (12, 5, 2, 3), (15, 6, 3, 3)])
def test_exact_matches_enumeration(n, k, r, delta):
    assert pdec_exact(n, k, r, delta) == _count_by_groups(n, k, r, delta)


def test_exact_param_errors():
    with pytest.raises(ParamError):
        pdec_exact(10, 4, 2)


def test_lower_bounds():
    assert pdec_lower_bound(8, 4, 3)[0] == Fraction(68, 70)
    tight, closed = pdec_lower_bound(9, 3, 2)
    assert tight == Fraction(81, 84)
    assert closed == Fraction(8, 9)
    assert closed <= tight


@pytest.mark.parametrize("n,r", [(12, 2), (12, 3), (15, 4), (20, 4), (18, 2)])
def test_bound_ordering(n, r):
    for k in range(r + 1, n * r // (r + 1) + 1):
        tight, closed = pdec_lower_bound(n, k, r)
        assert closed <= tight <= pdec_exact(n, k, r) <= 1


def test_brute_on_mds():
    F = BaseField.prime(13)
    G = Matrix(F, [[pow(a, i, 13) for a in range(7)] for i in range(3)])
    assert pdec_brute(G) == 1


@pytest.mark.parametrize("shape", [(8, 4, 3), (9, 3, 2), (6, 3, 2), (9, 5, 2), (10, 6, 4), (12, 5, 2), (12, 4, 3)])
def test_brute_equals_exact(shape):
    assert pdec_brute(code(*shape).G) == pdec_exact(*shape)


def test_brute_limit():
    F = BaseField.prime(17)
    with pytest.raises(TooLarge):
        pdec_brute(Matrix(F, [[1] * 15]))


def test_duplicate_columns_fall_below_formula():
    F = BaseField.prime(13)
    G = Matrix(F, [[1, 1, 2, 2, 3, 3], [0, 0, 1, 1, 5, 5]])
    assert pdec_brute(G) < 1


def test_single_trial_matches_decodable():
    gm = code(9, 3, 2)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(5).spawn(1)[0]))
    (S,) = sample_subsets(9, 3, 1, rng)
    est = pdec_monte_carlo(gm.G, 3, trials=1, seed=5)
    assert est == float(decodable(gm, set(range(9)) - set(S)))


def test_sampler_is_uniform_enough():
    rng = np.random.Generator(np.random.PCG64(1))
    counts = {}
    for S in sample_subsets(5, 2, 20_000, rng):
        key = frozenset(S)
        counts[key] = counts.get(key, 0) + 1
    assert len(counts) == 10
    assert all(abs(c - 2000) < 200 for c in counts.values())


def test_monte_carlo_is_deterministic():
    G = code(8, 4, 3).G
    a = pdec_monte_carlo(G, trials=25_000, seed=3)
    assert a == pdec_monte_carlo(G, trials=25_000, seed=3)
    assert a == pdec_monte_carlo(G, trials=25_000, seed=3, workers=3)


def test_monte_carlo_within_four_sigma():
    G = code(8, 4, 3).G
    p = 68 / 70
    sigma = math.sqrt(p * (1 - p) / 100_000)
    assert abs(pdec_monte_carlo(G, trials=100_000, seed=11) - p) <= 4 * sigma


def test_report_json():
    rep = decodability_report(code(9, 3, 2).G, 2, trials=1000, seed=2)
    assert rep.consistent
    d = json.loads(rep.to_json())
    assert d["p_exact"] == {"numerator": "27", "denominator": "28"}
    assert d["p_lower_bound"]["closed_form"] == {"numerator": "8", "denominator": "9"}
    assert d["p_monte_carlo"]["seed"] == 2
