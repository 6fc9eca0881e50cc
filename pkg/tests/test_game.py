from fractions import Fraction as F

import pytest

from infragame import (
    EdgeSet,
    GameParams,
    InconsistentSituation,
    InvalidInput,
    InvalidProfile,
    StrategyProfile,
    classify,
    is_connected,
    parse_rational,
    payoffs,
)
from infragame.game import EMPTY, reconnect, situation_from_indicators
from infragame.topology import tree


def path(n):
    return EdgeSet((i, i + 1) for i in range(n - 1))


class TestParseRational:
    def test_decimal_is_exact(self):
        assert parse_rational("0.125") == F(1, 8)
        assert parse_rational("0.3") == F(3, 10)

    def test_fraction_syntax(self):
        assert parse_rational("1/20") == F(1, 20)
        assert parse_rational(" 7/10 ") == F(7, 10)

    def test_round_trip(self):
        for text in ["3/10", "11/40", "0", "1"]:
            assert parse_rational(str(parse_rational(text))) == parse_rational(text)

    @pytest.mark.parametrize("bad", ["abc", "1/0", 0.1, None, True])
    def test_rejects(self, bad):
        with pytest.raises(InvalidInput):
            parse_rational(bad)


class TestGameParams:
    def test_accepts_strings(self):
        p = GameParams(10, "1/20", "0.125", "0.3", "2/5")
        assert p.c_a == F(1, 8) and p.heal_window == F(3, 10)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(n=1),
            dict(c_d=0),
            dict(c_a=F(-1, 2)),
            dict(tau=F(-1, 10)),
            dict(tau=F(3, 5), tau_r=F(1, 2)),
        ],
    )
    def test_invariants(self, kwargs):
        base = dict(n=4, c_d=F(1, 10), c_a=F(1, 5), tau=F(1, 5), tau_r=F(1, 5))
        base.update(kwargs)
        with pytest.raises(InvalidInput):
            GameParams(**base)


class TestEdgeSet:
    def test_canonical_order_and_equality(self):
        a = EdgeSet([(2, 1), (0, 1)])
        assert a.edges == ((0, 1), (1, 2))
        assert a == EdgeSet([(1, 2), (1, 0)])
        assert hash(a) == hash(EdgeSet([(0, 1), (1, 2)]))

    def test_duplicates_collapse(self):
        assert len(EdgeSet([(0, 1), (1, 0)])) == 1

    def test_self_loop_rejected(self):
        with pytest.raises(InvalidInput):
            EdgeSet([(3, 3)])

    def test_set_operations_return_new_values(self):
        a = EdgeSet([(0, 1), (1, 2)])
        b = EdgeSet([(1, 2)])
        assert (a - b) == EdgeSet([(0, 1)])
        assert (a | EdgeSet([(2, 3)])).edges == ((0, 1), (1, 2), (2, 3))
        assert a.edges == ((0, 1), (1, 2))

    def test_json(self):
        a = EdgeSet([(1, 2), (0, 1)])
        assert a.to_json() == [[0, 1], [1, 2]]
        assert EdgeSet.from_json(a.to_json()) == a


class TestIsConnected:
    def test_path(self):
        assert is_connected(3, EdgeSet([(0, 1), (1, 2)]))

    def test_isolated_node(self):
        assert not is_connected(3, EdgeSet([(0, 1)]))

    def test_ten_node_path(self):
        assert is_connected(10, path(10))

    def test_single_node_and_empty(self):
        assert is_connected(1, EMPTY)
        assert not is_connected(2, EMPTY)

    def test_endpoint_out_of_range(self):
        with pytest.raises(InvalidInput):
            is_connected(3, EdgeSet([(0, 3)]))


class TestPayoffs:
    def test_case_study_profile(self):
        p = GameParams(10, F(1, 20), F(1, 8), F(3, 10), F(2, 5))
        prof = StrategyProfile(path(10), EdgeSet([(0, 1)]), EdgeSet([(0, 1)]))
        pay = payoffs(p, prof)
        assert pay.u_d == F(1, 10)
        assert pay.u_a == F(11, 40)

    def test_empty_profile(self):
        p = GameParams(6, F(1, 20), F(1, 8), F(3, 10), F(2, 5))
        assert payoffs(p, StrategyProfile(EMPTY, EMPTY, EMPTY)) == (0, 1)

    @pytest.mark.parametrize("n", [2, 5, 9])
    def test_untouched_tree(self, n):
        p = GameParams(n, F(1, 40), F(1, 8), F(1, 4), F(1, 4))
        pay = payoffs(p, StrategyProfile(tree(n), EMPTY, EMPTY))
        assert pay == (1 - (n - 1) * F(1, 40), 0)

    def test_invalid_profiles(self):
        p = GameParams(4, F(1, 20), F(1, 8), F(3, 10), F(2, 5))
        with pytest.raises(InvalidProfile):
            payoffs(p, StrategyProfile(path(4), EdgeSet([(0, 2)]), EMPTY))
        with pytest.raises(InvalidProfile):
            payoffs(p, StrategyProfile(path(4), EMPTY, EdgeSet([(0, 1)])))


class TestClassify:
    def test_untouched(self):
        assert classify(5, StrategyProfile(path(5), EMPTY, EMPTY)).label == "S1"

    def test_attacked_and_healed(self):
        e = EdgeSet([(0, 1)])
        sit = classify(5, StrategyProfile(path(5), e, e))
        assert sit.label == "S2" and sit.indicators == (1, 0, 1)

    def test_attacked_not_healed(self):
        assert classify(5, StrategyProfile(path(5), EdgeSet([(0, 1)]), EMPTY)).label == "S3"

    def test_built_at_healing(self):
        assert classify(4, StrategyProfile(EMPTY, EMPTY, path(4))).label == "S4"

    def test_nothing(self):
        assert classify(4, StrategyProfile(EMPTY, EMPTY, EMPTY)).label == "S5"

    @pytest.mark.parametrize("triple", [(0, 1, 0), (0, 1, 1), (1, 1, 0)])
    def test_unreachable_triples(self, triple):
        with pytest.raises(InconsistentSituation):
            situation_from_indicators(triple)


def test_reconnect_joins_component_representatives():
    e = EdgeSet([(1, 2), (4, 5)])
    assert reconnect(6, e) == EdgeSet([(0, 1), (1, 3), (3, 4)])
    assert is_connected(6, e | reconnect(6, e))
    assert reconnect(3, path(3)) == EMPTY
