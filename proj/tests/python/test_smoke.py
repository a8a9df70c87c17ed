import math

import pytest

import isetlab


def test_generators_and_invariants():
    g = isetlab.gen_gnm(30, 60, seed=7)
    assert g.n == 30
    assert g.m == 60
    assert g == isetlab.gen_gnm(30, 60, seed=7)
    for u, v in g.edges():
        assert u < v
        assert g.has_edge(u, v) and g.has_edge(v, u)

    star = isetlab.gen_gnm_star(30, 60, seed=7)
    assert star.m <= 60

    assert isetlab.gen_gnp(10, 0.0, seed=1).m == 0
    assert isetlab.gen_gnp(10, 1.0, seed=1).m == 45

    pg, sigma = isetlab.gen_planted(40, 100, 6, seed=3)
    assert len(sigma) == 6
    assert isetlab.is_independent(pg, sigma)


def test_layers_and_counts():
    g = isetlab.Graph(4, [])
    members, truncated = isetlab.enumerate_layer(g, 2)
    assert not truncated
    assert len(members) == 6
    assert isetlab.count_layer(g, 2) == 6

    p3 = isetlab.Graph(3, [(0, 1), (1, 2)])
    assert isetlab.count_layer(p3, 2) == 1
    assert isetlab.sample_uk(p3, 2, seed=5) == [0, 2]

    k4 = isetlab.Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert isetlab.sample_uk(k4, 2, seed=5) is None

    mis, exact = isetlab.max_is_exact(isetlab.gen_gnm(12, 18, seed=4))
    assert exact
    assert isetlab.is_independent(isetlab.gen_gnm(12, 18, seed=4), mis)
    greedy = isetlab.greedy_mis(isetlab.gen_gnm(12, 18, seed=4), seed=1)
    assert len(greedy) <= len(mis)


def test_analytic_formulas():
    assert isetlab.expected_count_gnm(4, 2, 2).to_double() == pytest.approx(4.0, rel=1e-12)
    assert isetlab.expected_count_star(10, 5, 3).to_double() == pytest.approx(
        120 * 0.91**5, rel=1e-12
    )
    terms, ratio = isetlab.second_moment_terms(6, 4, 2)
    assert len(terms) == 3
    assert ratio.to_double() == pytest.approx(1.05860, rel=2e-4)
    assert ratio.to_double() >= 1.0

    k1 = isetlab.k_epsilon(1000000, 25000000, 1.0)
    k2 = isetlab.k_epsilon(1000000, 25000000, 2.0)
    assert k1 >= k2

    value, leading_only = isetlab.delta_k(100, 10)
    assert value == pytest.approx(20 * math.log(10) + 20)
    assert leading_only

    pts = isetlab.f_d_profile(100000, 1000000, [0.1, 0.2, 0.3])
    assert pts[0][1] > pts[1][1] > pts[2][1]


def test_geometry_and_collider():
    assert isetlab.hamming(10, [1, 2], [2, 3]) == 2
    assert isetlab.overlap(10, [0, 1, 2], [2, 3, 4]) == pytest.approx(0.1)

    report = isetlab.gamma_components(isetlab.Graph(4, []), 2, 2)
    assert report["total"] == 6
    assert len(report["classes"]) == 1

    g = isetlab.gen_gnm(20, 40, seed=2)
    sigma = isetlab.greedy_mis(g, seed=1)
    assert isetlab.pure_vertices(g, sigma) == []
    assert isetlab.is_expandable(g, sigma, 0.2, 0.0)["status"] == "proven_none"
    bigger = isetlab.expand_via_pure(g, sigma[:2], strategy="greedy", seed=1)
    assert set(sigma[:2]) <= set(bigger)
    assert isetlab.is_independent(g, bigger)
    sub, labels = isetlab.pure_subgraph(g, sigma[:2])
    assert sub.n == len(labels) == len(isetlab.pure_vertices(g, sigma[:2]))

    small = isetlab.gen_gnm(12, 18, seed=9)
    s2 = isetlab.greedy_mis(small, seed=1)
    total = sum(
        isetlab.near_layer_count(small, s2, i / 12, 0) for i in range(len(s2) + 1)
    )
    assert total == isetlab.count_layer(small, len(s2))

    path = isetlab.connect_path(isetlab.Graph(8, []), [0, 1], [5, 6], max_rounds=4)
    assert path["success"]
    assert path["rounds"] == 2
    assert path["steps"][0] == [0, 1]
    assert path["steps"][-1] == [5, 6]


def test_metropolis():
    p3 = isetlab.Graph(3, [(0, 1), (1, 2)])
    table = isetlab.stationary_exact(p3, 2.0)
    assert table["z"] == pytest.approx(11.0)
    assert table["mu"] == pytest.approx(14.0 / 11.0)

    trace = isetlab.mp_run(p3, [], 2.0, steps=1000, stride=10, seed=3)
    assert len(trace["sizes"]) == 101

    mix = isetlab.mixing_time_exact(p3, 2.0, horizon=512)
    assert mix["T"] is not None

    assert isetlab.tv_distance([0.5, 0.5], [1.0, 0.0]) == pytest.approx(0.5)

    pg, sigma = isetlab.gen_planted(60, 90, 12, seed=31)
    esc = isetlab.escape_experiment(pg, sigma, 1.0, 0.1, steps=200000, seed=2)
    assert esc is not None and esc >= 1

    with pytest.raises(ValueError):
        isetlab.mp_run(p3, [], 0.5, steps=10, stride=1, seed=1)
