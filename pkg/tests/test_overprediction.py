import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chroma.chromatic import chromatic_number, count_colorings, enumerate_colorings
from chroma.constructions import complete, cycle, moser_spindle, path
from chroma.graph import GraphError, from_edge_list
from chroma.overprediction import (
    PartialColoring,
    color_profile,
    distinct_color_distribution,
    global_T_bound,
    greedy_precoloring_sample,
    make_star,
    overprediction_bound_exact,
    profile_star,
    sis_estimate,
    t_exact,
    w_of,
    x_pi,
    x_pi_product,
)

from conftest import corpus, graphs
from oracles import brute_log_overprediction, subset_distinct_law, t_by_permutations, t_monte_carlo

profiles = st.integers(1, 6).flatmap(
    lambda k: st.tuples(st.just(k), st.lists(st.integers(0, 3), min_size=k, max_size=k))
)


# -- X_pi ---------------------------------------------------------------------


def test_x_pi_first_vertex_sees_all_colors():
    G = complete(4)
    assert x_pi((0, 1, 2, 3), 2, [2, 0, 1, 3], G, 4) == 4


def test_x_pi_last_vertex_of_k4():
    G = complete(4)
    for c in itertools.permutations(range(4)):
        assert x_pi(c, 3, [0, 1, 2, 3], G, 4) == 1


def test_x_pi_star_center_last():
    star = from_edge_list(5, [(0, i) for i in range(1, 5)])
    assert x_pi((1, 0, 0, 0, 0), 0, [1, 2, 3, 4, 0], star, 4) == 3


def test_x_pi_ignores_uncolored_backneighbors():
    G = path(3)
    partial = PartialColoring((0, 1, 2), (0,))
    assert x_pi(partial, 1, [0, 1, 2], G, 3) == 2
    assert partial.color_of(2) is None


def test_x_pi_product_examples():
    for c in itertools.permutations(range(4)):
        for order in itertools.permutations(range(4)):
            assert x_pi_product(c, order, complete(4), 4) == 24
    assert x_pi_product((0, 1, 2), [0, 1, 2], from_edge_list(3, []), 5) == 125
    P2 = path(2)
    assert x_pi_product((0, 1), [0, 1], P2, 2) == x_pi_product((0, 1), [1, 0], P2, 2) == 2


# -- exact overprediction -----------------------------------------------------


def test_overprediction_k4_exact():
    for order in itertools.permutations(range(4)):
        assert overprediction_bound_exact(complete(4), 4, order) == pytest.approx(24, rel=1e-12)


def test_overprediction_c5_matches_enumeration():
    rng = np.random.default_rng(3)
    for _ in range(5):
        order = list(rng.permutation(5))
        value = overprediction_bound_exact(cycle(5), 3, order)
        assert value == pytest.approx(math.exp(brute_log_overprediction(cycle(5), 3, order)), rel=1e-12)
        assert value >= 30


def test_overprediction_path_leaf_last():
    P4 = path(4)
    order = [1, 2, 0, 3]
    value = overprediction_bound_exact(P4, 3, order)
    assert value >= 3 * 2**3 * (1 - 1e-12)
    assert value == pytest.approx(math.exp(brute_log_overprediction(P4, 3, order)), rel=1e-12)


def test_overprediction_rejects_uncolorable():
    with pytest.raises(ValueError):
        overprediction_bound_exact(complete(4), 3, range(4))


@given(graphs(max_n=6), st.integers(1, 4), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_overprediction_inequality(G, k, rnd):
    if chromatic_number(G) > k:
        return
    order = list(range(G.n))
    rnd.shuffle(order)
    assert count_colorings(G, k) <= overprediction_bound_exact(G, k, order) * (1 + 1e-9)


# -- the greedy process -------------------------------------------------------


def test_greedy_k4_always_complete():
    rng = np.random.default_rng(0)
    for _ in range(20):
        partial, weight, complete_ = greedy_precoloring_sample(complete(4), 4, rng.permutation(4), rng)
        assert complete_ and weight == 24 and partial.assigned == 4


def test_greedy_k4_three_colors_gets_stuck():
    rng = np.random.default_rng(0)
    for _ in range(20):
        partial, weight, complete_ = greedy_precoloring_sample(complete(4), 3, range(4), rng)
        assert not complete_ and weight == 6 and partial.assigned == 3


def test_greedy_edgeless():
    _, weight, complete_ = greedy_precoloring_sample(from_edge_list(2, []), 2, [1, 0], np.random.default_rng(1))
    assert complete_ and weight == 4


def test_greedy_weight_is_x_pi_product():
    rng = np.random.default_rng(5)
    G = moser_spindle()
    for _ in range(50):
        order = list(rng.permutation(7))
        partial, weight, done = greedy_precoloring_sample(G, 4, order, rng)
        assert weight == x_pi_product(partial, order, G, 4)


def test_sis_k4():
    for order in (None, [3, 1, 0, 2]):
        res = sis_estimate(complete(4), 4, 1000, order=order, seed=11)
        assert res.mean == 24 and res.stderr == 0
    assert sis_estimate(complete(4), 3, 500).mean == 0


def test_sis_moser_within_three_stderr():
    res = sis_estimate(moser_spindle(), 4, 100_000, seed=0)
    assert abs(res.mean - 384) <= 3 * res.stderr


def test_sis_deterministic_and_jobs_independent():
    a = sis_estimate(moser_spindle(), 4, 40_000, seed=7)
    b = sis_estimate(moser_spindle(), 4, 40_000, seed=7)
    c = sis_estimate(moser_spindle(), 4, 40_000, seed=7, jobs=2)
    assert a == b == c
    assert sis_estimate(moser_spindle(), 4, 40_000, seed=8) != a


def test_sis_vectorised_process_law():
    # exact law of the fixed-order process on P3 with k=2: always weight 2
    res = sis_estimate(path(3), 2, 2000, order=[1, 0, 2], seed=1)
    assert res.mean == 2 and res.stderr == 0
    # with order [0, 2, 1] the run dies when the ends differ: weight 4 w.p. 1/2
    res = sis_estimate(path(3), 2, 20000, order=[0, 2, 1], seed=1)
    assert abs(res.mean - 2) <= 4 * res.stderr


@pytest.mark.slow
def test_sis_unbiased_on_small_corpus():
    for n in range(1, 7):
        for G in corpus(n):
            k = max(3, chromatic_number(G))
            exact = count_colorings(G, k)
            order = list(range(G.n))[::-1]
            res = sis_estimate(G, k, 100_000, order=order, seed=n)
            assert abs(res.mean - exact) <= 4 * res.stderr + 1e-9 * exact, (G, res, exact)


# -- T and W ------------------------------------------------------------------


def test_distinct_distribution_examples():
    assert distinct_color_distribution((2, 1), 2) == [0, Fraction(1, 3), Fraction(2, 3)]
    assert distinct_color_distribution((4, 0, 2), 0)[0] == 1
    assert distinct_color_distribution((1, 1, 1), 2)[2] == 1
    with pytest.raises(ValueError):
        distinct_color_distribution((1, 1), 3)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4), st.data())
@settings(max_examples=80)
def test_distinct_distribution_matches_subsets(profile, data):
    t = data.draw(st.integers(0, sum(profile)))
    assert distinct_color_distribution(profile, t) == subset_distinct_law(profile, t)


@given(st.lists(st.integers(0, 5), min_size=1, max_size=5))
def test_per_color_absence_probability(profile):
    d = sum(profile)
    for t in range(d + 1):
        assert sum(distinct_color_distribution(profile, t)) == 1
    for ci in profile:
        # t uniform on {0..d}, then a uniform t-subset misses class i
        absent = sum(Fraction(math.comb(d - ci, t), math.comb(d, t)) for t in range(d + 1))
        assert absent / (d + 1) == Fraction(1, ci + 1)


def test_t_table_values():
    assert t_exact((1, 1, 1, 0), 4) == pytest.approx(math.factorial(4) ** 0.25, abs=1e-12)
    assert t_exact((3, 0, 0, 0), 4) == pytest.approx(4**0.25 * 3**0.75, abs=1e-12)
    assert t_exact((2, 1, 0, 0), 4) == pytest.approx(4**0.25 * 3 ** (1 / 3) * 2 ** (5 / 12), abs=1e-12)
    for k in range(1, 8):
        assert t_exact((1,) * (k - 1) + (0,), k) == pytest.approx(math.factorial(k) ** (1 / k), rel=1e-12)


def test_t_zero_when_a_rainbow_covers_all_colors():
    assert t_exact((1, 1, 1), 3) == 0.0


@given(profiles)
@settings(max_examples=60, deadline=None)
def test_t_exact_matches_permutation_enumeration(kp):
    k, profile = kp
    if sum(profile) > 6:
        return
    assert t_exact(profile, k) == pytest.approx(t_by_permutations(profile, k), rel=1e-12, abs=1e-15)


@pytest.mark.slow
def test_t_exact_matches_monte_carlo():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        k = int(rng.integers(2, 7))
        profile = [int(x) for x in rng.integers(0, 4, size=k)]
        profile[int(rng.integers(k))] = 0  # v's own color is absent
        mean, se = t_monte_carlo(profile, k, 100_000, rng)
        assert abs(math.log(t_exact(profile, k)) - mean) <= 3 * se + 1e-12, (profile, k)


def test_w_examples():
    assert w_of((0, 0, 0, 0), 4) == 4
    assert w_of((3, 0, 0, 0), 4) == Fraction(13, 4)
    assert w_of((1, 1, 1, 0), 4) == Fraction(5, 2)


@given(profiles)
def test_am_gm(kp):
    k, profile = kp
    assert t_exact(profile, k) <= w_of(profile, k) + 1e-12


# -- restricted neighbourhoods ------------------------------------------------


def test_make_star_examples():
    assert make_star(complete(4), 4) == ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))
    star = make_star(moser_spindle(), 4)
    assert star[6] == (1, 2, 4)
    assert all(len(s) == 3 for s in star)
    assert make_star(moser_spindle(), 4, "highest")[6] == (2, 4, 5)
    with pytest.raises(GraphError):
        make_star(path(4), 4)


def test_starred_domination():
    G = moser_spindle()
    for rule in ("lowest", "highest"):
        star = make_star(G, 4, rule)
        for c in list(enumerate_colorings(G, 4))[::7]:
            for v in range(G.n):
                full = color_profile(G, c, v, 4)
                starred = profile_star(c, v, star, 4)
                assert sum(starred) == 3
                assert all(a >= b for a, b in zip(full, starred))
                assert t_exact(starred, 4) >= t_exact(full, 4) - 1e-12
                assert w_of(starred, 4) >= w_of(full, 4)


# -- global T -------------------------------------------------------------------


def test_global_T_examples():
    assert global_T_bound(complete(4), 4) == pytest.approx(24, rel=1e-12)
    value = global_T_bound(moser_spindle(), 4)
    assert 384 <= value <= 24 * 27
    assert global_T_bound(cycle(5), 3) >= 30


def test_global_T_matches_direct_profiles():
    G = cycle(5)
    cols = list(enumerate_colorings(G, 3))
    direct = sum(
        sum(math.log(t_by_permutations(color_profile(G, c, v, 3), 3)) for c in cols) / len(cols) for v in range(5)
    )
    assert global_T_bound(G, 3) == pytest.approx(math.exp(direct), rel=1e-12)
