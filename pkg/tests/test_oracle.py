"""Tests for derivation checking, bounded enumeration and bounded traces."""

import pytest

from hornsat.clauses.clause import HornClause
from hornsat.language import parse_file
from hornsat.models import MODELS_DIR
from hornsat.oracle import (
    BoundedInterpreter,
    Derivation,
    check_derivation,
    check_trace_satisfies,
    enumerate_derivable,
    minimal_sizes,
    run_self_check,
    universe_of,
)
from hornsat.terms.fact import attacker, event
from hornsat.terms.formula import Disequal, Formula
from hornsat.terms.term import Fun, Name, Var
from hornsat.utils.config import EngineSettings

SMALL = MODELS_DIR / "small"

x = Var("x")
a, b = Name("a"), Name("b")


def f(*args):
    return Fun("f", args)


KNOWN_A = HornClause((), attacker(a))
APPLY_F = HornClause((attacker(x),), attacker(f(x)))


class TestDerivation:
    """Tests for Derivation and check_derivation."""

    def test_valid_derivation(self):
        leaf = Derivation.of(KNOWN_A, {})
        root = Derivation.of(APPLY_F, {x: a}, [leaf])

        assert root.fact == attacker(f(a))
        assert root.size == 2
        assert check_derivation(root, [KNOWN_A, APPLY_F])

    def test_child_must_prove_the_hypothesis(self):
        leaf = Derivation.of(KNOWN_A, {})
        root = Derivation.of(APPLY_F, {x: b}, [leaf])

        assert not check_derivation(root, [KNOWN_A, APPLY_F])

    def test_clauses_must_come_from_the_set(self):
        root = Derivation.of(APPLY_F, {x: a}, [Derivation.of(KNOWN_A, {})])

        assert not check_derivation(root, [APPLY_F])

    def test_open_conclusion_is_rejected(self):
        assert not check_derivation(Derivation.of(APPLY_F, {}, []), [APPLY_F])


class TestEnumerate:
    """Tests for enumerate_derivable."""

    def test_universe(self):
        assert universe_of([f(a, x)]) == {a}
        assert universe_of([f(f(a))]) == {f(f(a)), f(a), a}

    def test_derivable_facts_and_sizes(self):
        derivable = enumerate_derivable([KNOWN_A, APPLY_F], universe_of([f(f(a))]))

        assert minimal_sizes(derivable) == {
            attacker(a): 1,
            attacker(f(a)): 2,
            attacker(f(f(a))): 3,
        }
        assert all(check_derivation(d, [KNOWN_A, APPLY_F]) for d in derivable.values())

    def test_size_bound(self):
        derivable = enumerate_derivable([KNOWN_A, APPLY_F], universe_of([f(f(a))]), max_size=2)

        assert attacker(f(f(a))) not in derivable

    def test_constraints_are_checked(self):
        guarded = HornClause((attacker(x),), attacker(f(x)), Formula((Disequal(x, a),)))
        known_b = HornClause((), attacker(b))

        derivable = enumerate_derivable([KNOWN_A, known_b, guarded], {a, b, f(a), f(b)})

        assert attacker(f(b)) in derivable
        assert attacker(f(a)) not in derivable

    def test_universe_bound(self):
        with pytest.raises(ValueError, match="exceeds the bound 1"):
            enumerate_derivable([KNOWN_A], {a, b}, max_universe=1)


class TestBoundedSemantics:
    """Tests for the bounded interpreter."""

    @pytest.fixture
    def shared_key(self):
        return parse_file(SMALL / "shared_key.hsl")

    def test_events_follow_the_process(self, shared_key):
        s = Name("s")
        sent, received = event(Fun("Sent", (s,))), event(Fun("Received", (s,)))

        result = BoundedInterpreter(shared_key, step_budget=2).run()

        assert all(trace.labels[0] == sent for trace in result.traces)
        replayed = [t for t in result.traces if received in t.labels]
        assert replayed
        assert check_trace_satisfies(replayed[0], received, shared_key)

    def test_attacker_knowledge(self, shared_key):
        ciphertext = Fun("senc", (Name("s"), Name("k")))

        (first, *_) = BoundedInterpreter(shared_key, step_budget=0).run().traces

        assert check_trace_satisfies(first, attacker(ciphertext), shared_key)
        assert not check_trace_satisfies(first, attacker(Name("k")), shared_key)

    def test_private_channel_synchronizes(self):
        spec = parse_file(SMALL / "private_relay.hsl")

        result = BoundedInterpreter(spec, step_budget=2).run()

        events = {e for t in result.traces for e in t.events}
        assert events == {event(Fun("Accepted", (Fun("ca"),)))}


class TestSelfCheck:
    """Tests for the soundness harness."""

    def test_shared_key_has_no_violations(self):
        settings = EngineSettings(step_budget=2)

        assert run_self_check(settings, [SMALL / "shared_key.hsl"]) == []
