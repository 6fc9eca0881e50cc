from fractions import Fraction as F
from itertools import combinations

from hypothesis import assume, given
from hypothesis import strategies as st

from infragame import (
    BoundaryUnspecified,
    EdgeSet,
    GameParams,
    StrategyProfile,
    brute_force_spe,
    classify,
    edge_connectivity,
    harary,
    parse_rational,
    payoffs,
    solve,
    thresholds,
)
from infragame.game import INDICATORS, SITUATIONS, indicators
from infragame.oracle import best_heal, respond
from infragame.solver import heal_capacity, threshold_implications
from infragame.topology import (
    component_count,
    min_cut_by_removal,
    min_cut_to_components,
    min_degree,
    ring,
    tree,
)


def fractions(lo, hi, denominators=(2, 3, 5, 7, 8, 11, 13, 20, 40, 97)):
    return st.builds(
        lambda d, x: lo + (hi - lo) * F(x % (d + 1), d),
        st.sampled_from(denominators),
        st.integers(0, 10**6),
    )


@st.composite
def game_params(draw, max_n=7):
    n = draw(st.integers(2, max_n))
    tau = draw(fractions(F(0), F(1)))
    tau_r = draw(fractions(F(0), 1 - tau))
    c_d = draw(fractions(F(1, 200), F(1, 2)))
    c_a = draw(fractions(F(1, 100), F(1)))
    assume(c_d > 0 and c_a > 0)
    return GameParams(n, c_d, c_a, tau, tau_r)


@st.composite
def edge_sets(draw, n):
    pool = list(combinations(range(n), 2))
    picks = draw(st.lists(st.booleans(), min_size=len(pool), max_size=len(pool)))
    return EdgeSet(e for e, keep in zip(pool, picks) if keep)


@st.composite
def profiles(draw, n):
    e1 = draw(edge_sets(n))
    ea = EdgeSet(e for e in e1 if draw(st.booleans()))
    rest = e1 - ea
    pool = [e for e in combinations(range(n), 2) if e not in rest]
    e2 = EdgeSet(e for e in pool if draw(st.booleans()))
    return StrategyProfile(e1, ea, e2)


@st.composite
def params_and_profile(draw, max_n=7):
    p = draw(game_params(max_n))
    return p, draw(profiles(p.n))


@st.composite
def connected_graphs(draw, min_n=2, max_n=8):
    n = draw(st.integers(min_n, max_n))
    spanning = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    extra = draw(edge_sets(n))
    return n, EdgeSet(spanning) | extra


# -- game core -------------------------------------------------------------


@given(params_and_profile())
def test_payoff_identity(case):
    p, prof = case
    pay = payoffs(p, prof)
    assert pay.u_d + pay.u_a == 1 - p.c_d * (len(prof.e1) + len(prof.e2)) - p.c_a * len(prof.ea)


@given(params_and_profile())
def test_payoffs_are_exact_and_repeatable(case):
    p, prof = case
    again = GameParams(p.n, *(parse_rational(str(x)) for x in (p.c_d, p.c_a, p.tau, p.tau_r)))
    assert payoffs(p, prof) == payoffs(again, prof) == payoffs(p, prof)


@given(st.integers(2, 7).flatmap(lambda n: st.tuples(st.just(n), profiles(n))))
def test_classification_is_total(case):
    n, prof = case
    sit = classify(n, prof)
    assert sit.label in SITUATIONS.values()


@given(st.integers(2, 7).flatmap(lambda n: st.tuples(st.just(n), profiles(n))))
def test_indicator_monotonicity(case):
    n, prof = case
    con1, con2, con3 = indicators(n, prof)
    assert con2 <= con1
    assert con2 <= con3
    assert (con1, con2, con3) in INDICATORS.values()
    assert classify(n, prof).indicators == (con1, con2, con3)


# -- topology --------------------------------------------------------------


@given(st.integers(3, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(2, n - 1))))
def test_harary_is_minimal_and_k_connected(case):
    n, k = case
    e = harary(n, k)
    assert len(e) == -(-n * k // 2)
    assert edge_connectivity(n, e) == k
    assert min_degree(n, e) == k


@given(connected_graphs(max_n=7))
def test_two_component_cut_is_edge_connectivity(case):
    n, e = case
    assert min_cut_to_components(n, e, 2) == edge_connectivity(n, e)


@given(connected_graphs(min_n=3, max_n=6), st.integers(2, 6))
def test_branch_and_bound_matches_enumeration(case, c):
    n, e = case
    assume(c <= n and len(e) <= 12)
    assert min_cut_to_components(n, e, c) == min_cut_by_removal(n, e, c)


@given(st.integers(2, 12).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(0, n - 2)))))
def test_tree_removals_add_one_component_each(case):
    n, idx = case
    e = tree(n)
    gone = EdgeSet(e.edges[i] for i in idx)
    assert component_count(n, e - gone) == len(gone) + 1


@given(st.integers(3, 12).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(0, n - 1), min_size=2))))
def test_ring_removals(case):
    n, idx = case
    e = ring(n)
    gone = EdgeSet(e.edges[i] for i in idx)
    assert component_count(n, e - gone) == len(gone)


# -- oracle and solver -----------------------------------------------------


@given(game_params(max_n=6).flatmap(lambda p: st.tuples(st.just(p), profiles(p.n))))
def test_healing_is_all_or_nothing(case):
    p, prof = case
    e2 = best_heal(p, prof.e1, prof.ea)
    c = component_count(p.n, prof.after_attack)
    assert len(e2) in (0, c - 1)
    if e2:
        assert component_count(p.n, prof.after_attack | e2) == 1


@given(game_params(max_n=12))
def test_true_threshold_implications(p):
    checks = threshold_implications(thresholds(p))
    assert checks["post_floor_le_k1"]
    assert checks["kah_le_k_kar_1"]


def response_key(p: GameParams):
    """Threshold data that fully determines the adversary's reply."""
    w = p.heal_window
    ratios = (p.tau_r / p.c_a, (1 - p.tau) / p.c_a, w / p.c_a, w / p.c_d)
    th = thresholds(p)
    return (th.k_a_r, th.k_a_h, heal_capacity(p), th.k_a_w), tuple(r.denominator == 1 for r in ratios)


@st.composite
def generic_params(draw, max_n=5):
    """Parameters whose cost ratios are almost never integral."""
    primes = (89, 97, 101, 103)
    n = draw(st.integers(2, max_n))
    tau = draw(fractions(F(0), F(1, 2), primes))
    tau_r = draw(fractions(F(0), 1 - tau, primes))
    c_d = draw(fractions(F(1, 100), F(1, 2), primes))
    c_a = draw(fractions(F(1, 50), F(1), primes))
    assume(c_d > 0 and c_a > 0)
    return GameParams(n, c_d, c_a, tau, tau_r)


@given(generic_params(), st.integers(-40, 40), st.data())
def test_adversary_reply_depends_only_on_thresholds(p, j, data):
    scale = 1 + F(j, 1009)
    q = GameParams(p.n, p.c_d * scale, p.c_a * scale, p.tau, p.tau_r)
    key_p, key_q = response_key(p), response_key(q)
    assume(key_p[0] == key_q[0] and not any(key_p[1]) and not any(key_q[1]))
    e1 = data.draw(edge_sets(p.n))
    assert classify(p.n, respond(p, e1)) == classify(q.n, respond(q, e1))


@given(game_params(max_n=6))
def test_chosen_utilities_nonnegative(p):
    try:
        sol = solve(p)
    except BoundaryUnspecified:
        return
    assert sol.chosen.u_d >= 0 and sol.chosen.u_a >= 0


@given(game_params(max_n=4))
def test_oracle_situations_are_feasible_rows(p):
    sol = brute_force_spe(p)
    assert all(c.situation in SITUATIONS.values() for c in sol.candidates)
    assert classify(p.n, sol.chosen.profile).label == sol.situation


def test_cost_scaling_can_change_situation():
    # equal threshold tuples, yet the scaled costs price the tree out
    p = GameParams(4, F(19, 61), F(11, 14), F(7, 100), F(53, 100))
    s = F(113, 100)
    q = GameParams(4, p.c_d * s, p.c_a * s, p.tau, p.tau_r)
    tp, tq = thresholds(p), thresholds(q)
    assert (tp.k_a_r, tp.k_a_h, tp.k_d_h, tp.k) == (tq.k_a_r, tq.k_a_h, tq.k_d_h, tq.k)
    assert brute_force_spe(p).situation == "S1"
    assert brute_force_spe(q).situation == "S5"
