"""Tests for the core model: host systems, components, experiments and the process backend."""

import pytest

from src.model.component import ComponentHandle, MealyMachine, machine_delta
from src.model.errors import (
    AdapterFailure,
    AlphabetViolation,
    DeterminismViolation,
    ExperimentLengthExceeded,
    SessionError,
    UnknownState,
    ValidationError,
)
from src.model.experiments import ExperimentLog, ExperimentSession
from src.model.host_system import HostSystem, Transition
from src.model.process_backend import ProcessBackend
from src.model.scc import nontrivial_components
from tests.conftest import fake_component_command, make_session


def _system(transitions, states=("a", "b"), **kwargs):
    defaults = dict(
        name="t",
        states=states,
        events={"e"},
        inputs={"i"},
        outputs={"o"},
        transitions=tuple(transitions),
        initial_states={states[0]},
    )
    defaults.update(kwargs)
    return HostSystem(**defaults)


# ======================== Host system ========================

class TestHostSystem:
    def test_sys_b_shape(self, sys_b):
        assert sys_b.states == ("a", "b")
        assert len(sys_b.comm_transitions) == 2
        assert sys_b.env_transitions == ()
        assert sys_b.transition("a", "b").label == "send/yes"

    def test_single_state_no_transitions(self):
        system = _system([], states=("only",))
        assert system.outgoing("only") == []

    def test_second_transition_between_same_pair_rejected(self):
        with pytest.raises(ValidationError):
            _system([Transition.env("a", "e", "b"), Transition.comm("a", "i", "o", "b")])

    def test_events_must_not_overlap_component_alphabet(self):
        with pytest.raises(ValidationError):
            _system([], events={"i"})

    def test_undeclared_initial_state(self):
        with pytest.raises(ValidationError):
            _system([], initial_states={"z"})

    def test_undeclared_symbol(self):
        with pytest.raises(ValidationError):
            _system([Transition.comm("a", "x", "o", "b")])

    def test_label_colliding_with_state_name(self):
        with pytest.raises(ValidationError):
            _system([], ap_labels={"a": {"b"}})

    def test_state_names_are_propositions(self):
        system = _system([], ap_labels={"a": {"p"}})
        assert system.holds("a", "a")
        assert system.holds("a", "p")
        assert not system.holds("b", "p")
        assert system.propositions == frozenset({"a", "b", "p"})

    def test_unknown_state(self, sys_b):
        with pytest.raises(UnknownState):
            sys_b.require_state("zz")

    def test_induced_transitions(self, five_state):
        induced = five_state.induced_transitions({"s0", "s1", "s2"})
        assert {(t.source, t.target) for t in induced} == {("s0", "s1"), ("s1", "s2"), ("s2", "s0")}


def test_nontrivial_components_count_self_loops():
    graph = {"a": ["b"], "b": ["a"], "c": ["c"], "d": []}
    components = nontrivial_components(sorted(graph), lambda v: graph[v])
    assert sorted(sorted(c) for c in components) == [["a", "b"], ["c"]]


# ======================== Components ========================

class TestMealyMachine:
    def test_toggler_run(self, toggler):
        assert toggler.is_complete
        assert toggler.run(["send", "send", "ack"]) == ("yes", "no", "yes")

    def test_undefined_transition_is_adapter_failure(self):
        machine = MealyMachine("partial", frozenset({"i"}), frozenset({"o"}), ("x",), "x", {})
        assert not machine.is_complete
        with pytest.raises(AdapterFailure):
            machine.step("x", "i")

    def test_delta_rows(self):
        delta = machine_delta([("x", "i", "o", "x")])
        assert delta == {("x", "i"): ("o", "x")}

    def test_handle_bound_defaults_to_state_count(self, toggler):
        assert ComponentHandle.from_machine(toggler).state_bound == 2
        assert ComponentHandle.from_machine(toggler, 5).state_bound == 5

    def test_handle_rejects_zero_bound(self, toggler):
        with pytest.raises(ValidationError):
            ComponentHandle(toggler.inputs, toggler.outputs, 0, None)


# ======================== Experiments ========================

class _FlakyBackend:
    """Answers yes on the first run after construction, no afterwards."""

    def __init__(self):
        self.resets = 0

    def reset(self):
        self.resets += 1

    def step(self, symbol):
        return "yes" if self.resets <= 1 else "no"

    def close(self):
        pass


class TestExperimentSession:
    def test_experiment_and_cache(self, toggler):
        session = make_session(toggler)
        assert session.experiment(("send", "send", "ack")) == ("yes", "no", "yes")
        assert session.log.reset_count == 1
        assert session.experiment(("send", "send")) == ("yes", "no")
        assert session.log.reset_count == 1
        assert session.log.entries[-1].cached
        assert session.log.experiment_count == 2
        assert session.log.backend_queries == [("send", "send", "ack")]

    def test_step_extends_live_prefix_without_reset(self, toggler):
        session = make_session(toggler)
        session.experiment(("send",))
        assert session.step("send") == "no"
        assert session.step("ack") == "yes"
        assert session.log.reset_count == 1
        assert session.prefix == ("send", "send", "ack")

    def test_step_after_cached_experiment_replays(self, toggler):
        session = make_session(toggler)
        session.experiment(("send", "send"))
        session.experiment(("send",))
        assert session.step("ack") == "no"
        assert session.log.reset_count == 2

    def test_step_needs_a_prefix(self, toggler):
        with pytest.raises(SessionError):
            make_session(toggler).step("send")

    def test_alphabet_violation(self, toggler):
        with pytest.raises(AlphabetViolation):
            make_session(toggler).experiment(("bogus",))

    def test_length_guard(self, toggler):
        session = make_session(toggler, length_limit=2)
        session.experiment(("send", "send"))
        with pytest.raises(ExperimentLengthExceeded):
            session.experiment(("send", "send", "send"))
        with pytest.raises(ExperimentLengthExceeded):
            session.step("send")

    def test_no_cache_resets_every_time(self, toggler):
        session = make_session(toggler, use_cache=False)
        session.experiment(("send",))
        session.experiment(("send",))
        assert session.log.reset_count == 2

    def test_determinism_violation(self):
        handle = ComponentHandle(frozenset({"send"}), frozenset({"yes", "no"}), 1, _FlakyBackend())
        session = ExperimentSession(handle, use_cache=False)
        assert session.experiment(("send",)) == ("yes",)
        with pytest.raises(DeterminismViolation):
            session.experiment(("send",))

    def test_is_run(self, toggler):
        session = make_session(toggler)
        assert session.is_run([("send", "yes"), ("ack", "no")])
        assert not session.is_run([("send", "no")])

    def test_communication_trace(self, toggler):
        session = make_session(toggler)
        assert session.communication_trace(("ack", "send")) == (("ack", "yes"), ("send", "no"))

    def test_log_save_and_load(self, toggler, tmp_path):
        session = make_session(toggler)
        session.experiment(("send", "ack"))
        session.experiment(("send",))
        path = session.log.save(str(tmp_path / "log.jsonl"))
        loaded = ExperimentLog.load(path)
        assert loaded.experiment_count == 2
        assert loaded.reset_count == 1
        assert loaded.cache[("send", "ack")] == ("yes", "no")
        assert loaded.cache[()] == ()


# ======================== Process backend ========================

class TestProcessBackend:
    def _backend(self, mode, timeout_ms=5000):
        command = fake_component_command(mode)
        return ProcessBackend(command, frozenset({"yes", "no"}), timeout_ms)

    def test_toggler_over_the_wire(self):
        backend = self._backend("toggler")
        try:
            backend.reset()
            assert backend.step("send") == "yes"
            assert backend.step("send") == "no"
            backend.reset()
            assert backend.step("ack") == "yes"
        finally:
            backend.close()

    def test_session_on_external_component(self):
        backend = self._backend("toggler")
        handle = ComponentHandle(frozenset({"send", "ack"}), frozenset({"yes", "no"}), 2, backend)
        session = ExperimentSession(handle)
        try:
            assert session.experiment(("send", "ack", "send")) == ("yes", "no", "yes")
        finally:
            session.close()

    def test_garbage_reply(self):
        backend = self._backend("garbage")
        try:
            backend.reset()
            with pytest.raises(AdapterFailure):
                backend.step("send")
        finally:
            backend.close()

    def test_silent_component_times_out(self):
        backend = self._backend("silent", timeout_ms=300)
        try:
            backend.reset()
            with pytest.raises(AdapterFailure):
                backend.step("send")
        finally:
            backend.close()

    def test_component_exit(self):
        backend = self._backend("exit")
        try:
            backend.reset()
            with pytest.raises(AdapterFailure):
                backend.step("send")
        finally:
            backend.close()

    def test_missing_program(self):
        with pytest.raises(AdapterFailure):
            ProcessBackend("/nonexistent/component-binary", frozenset({"yes"}))
