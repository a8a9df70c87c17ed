"""Laboratory for independent sets in sparse random graphs.

Thin wrapper over the C++ core: random-graph generators, independent-set
primitives, closed-form moment formulas, solution-space geometry, the
collider path construction, and the Metropolis process.
"""

from ._core import (  # noqa: F401
    Graph,
    LogValue,
    __version__,
    blocking_vertices,
    cluster_expected,
    connect_path,
    count_isolated,
    count_layer,
    delta_k,
    enumerate_layer,
    escape_experiment,
    expandable_expected,
    expand_via_pure,
    expected_count_gnm,
    expected_count_star,
    f_d_profile,
    find_augmenting,
    gamma_components,
    gen_gnm,
    gen_gnm_star,
    gen_gnp,
    gen_planted,
    greedy_mis,
    hamming,
    is_expandable,
    is_independent,
    k_epsilon,
    max_is_exact,
    mixing_time_exact,
    mp_run,
    near_layer_count,
    overlap,
    pure_subgraph,
    pure_vertices,
    sample_uk,
    second_moment_terms,
    sm_ratio_crossings,
    sm_term_ratio,
    stationary_exact,
    tv_distance,
    weight_profile,
)
