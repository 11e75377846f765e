"""Tests for the bounded searches and the check plans built on them."""

import pytest

from config import RunOptions
from src.liveness.bounds import BoundMode, comm_bounds
from src.liveness.comm_graph import check_io
from src.model.component import ComponentHandle
from src.model.errors import ExperimentLengthExceeded
from src.model.experiments import ExperimentSession
from src.oracle.checker import oracle_infinite_often
from src.oracle.compose import compose
from src.parsers.instance import load_tableau
from src.plans.check_plans import (
    SOURCE_CLOSURE,
    SOURCE_LABELING,
    SOURCE_TESTING,
    create_ctl_plan,
    create_liveness_plan,
    create_ltl_plan,
)
from src.testing.search import GraphIndex, WitnessSearch
from src.testing.trace import SearchTrace
from tests.conftest import fixture_path, make_session

OPTIONS = RunOptions(bound_mode=BoundMode.EXACT)


# ======================== Graph index ========================

def test_graph_index_groups_edges(messaging):
    index = GraphIndex(messaging.states, messaging.transitions)
    assert index.env_targets("s0") == ["s1"]
    assert index.inputs("s4") == ["ack"]
    assert index.comm_targets("s3", "send", "yes") == ["s4"]
    assert index.comm_targets("s3", "send", "no") == []
    assert index.cycle_states() == ("s2", "s3", "s4")


# ======================== Liveness search ========================

class TestLivenessSearch:
    def _search(self, system, machine, source, target, state_bound=0):
        graph = check_io(system, source, target)
        session = make_session(machine, state_bound)
        search = WitnessSearch(session, session.handle.state_bound)
        return search, search.test_liveness(graph, comm_bounds(graph, BoundMode.EXACT)), session

    def test_messaging_with_constant_yes(self, messaging, const_yes):
        search, verdict, session = self._search(messaging, const_yes, "s0", "s2")
        assert verdict
        assert search.witness == ("send", "send", "ack")
        assert session.communication_trace(search.witness) == (("send", "yes"), ("send", "yes"), ("ack", "yes"))

    def test_messaging_with_three_component_states(self, messaging, const_yes):
        search, verdict, session = self._search(messaging, const_yes, "s0", "s2", state_bound=3)
        assert verdict
        # one arrival to enter the loop, then one full loop per assumed state
        assert session.communication_trace(search.witness) == (
            ("send", "yes"),
            ("send", "yes"),
            ("ack", "yes"),
            ("send", "yes"),
            ("ack", "yes"),
            ("send", "yes"),
            ("ack", "yes"),
        )

    def test_messaging_refused_with_three_component_states(self, messaging, const_no):
        search, verdict, _ = self._search(messaging, const_no, "s0", "s2", state_bound=3)
        assert not verdict
        assert search.witness is None

    @pytest.mark.parametrize("machine_name", ["const_no", "toggler"])
    def test_messaging_fails(self, messaging, machine_name, request):
        machine = request.getfixturevalue(machine_name)
        search, verdict, _ = self._search(messaging, machine, "s0", "s2")
        assert not verdict
        assert search.witness is None

    def test_sys_b_needs_a_full_cycle(self, sys_b, const_yes, toggler):
        assert self._search(sys_b, const_yes, "a", "b")[1]
        assert not self._search(sys_b, toggler, "a", "b")[1]

    def test_lasso_is_closed_for_larger_bound(self, sys_b, const_yes):
        graph = check_io(sys_b, "a", "b")
        session = ExperimentSession(ComponentHandle.from_machine(const_yes, 3))
        search = WitnessSearch(session, 3)
        assert search.test_liveness(graph, comm_bounds(graph, BoundMode.EXACT))
        # first arrival plus three more
        assert search.witness == ("send", "ack", "send", "ack", "send", "ack", "send")

    def test_trace_records_branches(self, sys_b, const_yes, tmp_path):
        path = str(tmp_path / "trace.jsonl")
        graph = check_io(sys_b, "a", "b")
        with SearchTrace(path) as trace:
            session = make_session(const_yes)
            WitnessSearch(session, 1, trace=trace).test_liveness(graph, comm_bounds(graph))
            assert trace.records > 0
        with open(path, encoding="utf-8") as f:
            events = [line for line in f if line.strip()]
        assert any('"event": "verdict"' in line for line in events)
        assert any('"event": "experiment"' in line for line in events)


# ======================== Plans ========================

class TestLivenessPlan:
    def test_definite_plan_needs_no_component(self, env_lasso, const_no):
        plan = create_liveness_plan(env_lasso, "s0", "s2", OPTIONS)
        assert plan.is_definite
        assert plan.graphs() == []
        assert plan.length_limit(3) == 0
        session = make_session(const_no)
        outcome = plan.run(session)
        assert outcome.verdict and outcome.source == SOURCE_CLOSURE
        assert session.log.experiment_count == 0

    def test_tested_plan(self, messaging, const_yes):
        plan = create_liveness_plan(messaging, "s0", "s2", OPTIONS)
        assert not plan.is_definite
        assert plan.length_limit(1) == 2 * plan.bounds.budget(1)
        outcome = plan.run(make_session(const_yes, length_limit=plan.length_limit(1)))
        assert outcome.verdict and outcome.source == SOURCE_TESTING
        assert outcome.witness == ("send", "send", "ack")
        assert [name for name, _ in plan.graphs()] == ["communication_s0_s2.dot"]

    def test_length_guard_trips_when_too_tight(self, messaging, const_yes):
        plan = create_liveness_plan(messaging, "s0", "s2", OPTIONS)
        with pytest.raises(ExperimentLengthExceeded):
            plan.run(make_session(const_yes, length_limit=1))

    @pytest.mark.parametrize("machine_name", ["const_yes", "const_no", "toggler"])
    def test_agrees_with_composition(self, five_state, machine_name, request):
        machine = request.getfixturevalue(machine_name)
        composed = compose(five_state, machine)
        for source in five_state.states:
            for target in five_state.states:
                plan = create_liveness_plan(five_state, source, target, OPTIONS)
                expected = oracle_infinite_often(composed, source, target)
                assert plan.run(make_session(machine)).verdict == expected, (source, target)


class TestCtlPlan:
    def test_definite_label(self, sys_b, const_no):
        plan = create_ctl_plan(sys_b, "AG (a | b)", "a", OPTIONS)
        assert plan.is_definite
        outcome = plan.run(make_session(const_no))
        assert outcome.verdict and outcome.source == SOURCE_LABELING

    def test_tested_label(self, sys_b, const_yes):
        plan = create_ctl_plan(sys_b, "EX b", "a", OPTIONS)
        assert not plan.is_definite
        assert [name for name, _ in plan.graphs()] == ["witness_2_EX.dot"]
        outcome = plan.run(make_session(const_yes))
        assert outcome.verdict and outcome.source == SOURCE_TESTING


class TestLtlPlan:
    def test_always_accepting(self, sys_b, const_no):
        plan = create_ltl_plan(sys_b, load_tableau(fixture_path("always_accepting.tableau")), "a", OPTIONS)
        outcome = plan.run(make_session(const_no))
        assert not outcome.verdict

    def test_always_accepting_with_a_live_component(self, sys_b, const_yes):
        plan = create_ltl_plan(sys_b, load_tableau(fixture_path("always_accepting.tableau")), "a", OPTIONS)
        assert plan.run(make_session(const_yes)).verdict

    def test_empty_sat(self, sys_b, const_yes):
        plan = create_ltl_plan(sys_b, load_tableau(fixture_path("empty_sat.tableau")), "a", OPTIONS)
        assert plan.liveness_plans == ()
        outcome = plan.run(make_session(const_yes))
        assert not outcome.verdict and outcome.source == SOURCE_CLOSURE

    def test_infinitely_often_b(self, sys_b, gf_target, const_yes, toggler):
        plan = create_ltl_plan(sys_b, gf_target, "a", OPTIONS)
        assert plan.run(make_session(const_yes)).verdict
        assert not plan.run(make_session(toggler)).verdict

    @pytest.mark.parametrize("name, expected", [("gf_p.tableau", True), ("fg_p.tableau", False)])
    def test_environment_lasso(self, env_lasso, const_no, name, expected):
        plan = create_ltl_plan(env_lasso, load_tableau(fixture_path(name)), "s0", OPTIONS)
        outcome = plan.run(make_session(const_no))
        assert outcome.verdict == expected
        assert outcome.source == SOURCE_CLOSURE
