"""Tests for the first saturation phase."""

import pytest

from hornsat.clauses.clause import HornClause
from hornsat.errors import ResourceLimitExceeded
from hornsat.language import StatementKind, parse_file
from hornsat.language.ast import Disjunct, Statement
from hornsat.models import MODELS_DIR
from hornsat.saturation import LemmaApplier, SaturationContext, resolve, saturate, simplify, subsumes
from hornsat.saturation.selection import SelectionFunction, never_selectable
from hornsat.terms.fact import Fact, attacker, event, message
from hornsat.terms.formula import Disequal, Equal, Formula
from hornsat.terms.term import Fun, Name, Var
from hornsat.utils.config import EngineSettings

SMALL = MODELS_DIR / "small"

x, y, z = Var("x"), Var("y"), Var("z")
a, b = Name("a"), Name("b")


def f(*args):
    return Fun("f", args)


def mem(*args, blocked=False):
    return Fact("mem", args, blocked)


def p(*args):
    return Fact("p", args)


@pytest.fixture
def context():
    return SaturationContext(clause_defined=frozenset({"mem"}))


class TestSubsumption:
    """Tests for subsumes."""

    def test_more_general_clause_subsumes(self):
        general = HornClause((attacker(x),), attacker(f(x)))
        specific = HornClause((attacker(a), attacker(b)), attacker(f(a)))

        assert subsumes(general, specific)
        assert not subsumes(specific, general)

    def test_blocking_hypothesis_covers_plain_one(self):
        blocking = HornClause((mem(x, y, blocked=True),), p(x))
        plain = HornClause((mem(x, y),), p(x))

        assert subsumes(blocking, plain)
        assert not subsumes(plain, blocking)

    def test_constraints_must_be_implied(self):
        constrained = HornClause((attacker(x),), attacker(f(x)), Formula((Disequal(x, a),)))
        free = HornClause((attacker(x),), attacker(f(x)))

        assert not subsumes(constrained, free)
        assert subsumes(free, constrained)

    def test_hypotheses_map_injectively(self):
        single = HornClause((attacker(x), attacker(x)), attacker(f(x)))
        target = HornClause((attacker(a),), attacker(f(a)))

        assert not subsumes(single, target)


class TestSimplify:
    """Tests for simplify."""

    def test_tautology_is_deleted(self, context):
        assert simplify(HornClause((attacker(x),), attacker(x)), context) == []

    def test_blocking_tautology(self, context):
        atom = Fun("Sent", (x,))

        assert simplify(HornClause((event(atom, sure=True),), event(atom)), context) == []

    def test_blocking_tautology_kept_for_clause_defined_predicates(self, context):
        clause = HornClause((mem(x, y, blocked=True),), mem(x, y))

        assert simplify(clause, context) == [clause]

    def test_unsatisfiable_constraints(self, context):
        clause = HornClause((attacker(x),), attacker(f(x)), Formula((Disequal(x, x),)))

        assert simplify(clause, context) == []

    def test_equalities_are_substituted(self, context):
        clause = HornClause((attacker(x),), attacker(y), Formula((Equal(y, f(x)),)))

        (result,) = simplify(clause, context)

        assert str(result) == "attacker(x) -> attacker(f(x))"

    def test_unused_attacker_variable_is_dropped(self, context):
        clause = HornClause((attacker(x), attacker(y)), attacker(f(x)))

        (result,) = simplify(clause, context)

        assert result.hypotheses == (attacker(x),)

    def test_redundant_hypothesis_is_dropped(self, context):
        clause = HornClause((mem(x, y), mem(x, z)), p(x))

        (result,) = simplify(clause, context)

        assert len(result.hypotheses) == 1

    def test_blocking_variant_setting(self):
        clause = HornClause((mem(x, y), mem(x, y, blocked=True)), p(x))
        keep = SaturationContext(clause_defined=frozenset({"mem"}))
        drop = SaturationContext(
            clause_defined=frozenset({"mem"}),
            settings=EngineSettings(keep_blocking_variant=False),
        )

        assert simplify(clause, keep)[0].hypotheses == (mem(x, y, blocked=True),)
        assert simplify(clause, drop)[0].hypotheses == (mem(x, y),)

    def test_inductive_psk_lemma_leaves_one_clause(self):
        ident, key, cert, seed = Var("id"), Var("k"), Var("c"), Var("s")
        honest = Fun("honest_id", (seed, cert, key))
        lemma = Statement(
            StatementKind.LEMMA,
            (Fact("psk", (ident, key, cert, seed)),),
            (Disjunct((attacker(ident).to_blocking(),)), Disjunct(formula=Formula((Equal(ident, honest),)))),
            induction=True,
        )
        context = SaturationContext(inductive=(lemma,))
        clause = HornClause((Fact("psk", (x, y, z, Var("w"))), attacker(z)), attacker(x))

        produced = LemmaApplier(context).apply(clause)
        survivors = [c for r in produced for c in simplify(r, context)]

        assert len(produced) == 2
        (survivor,) = survivors
        assert survivor.conclusion == attacker(Fun("honest_id", (Var("w"), z, y)))


class TestSelection:
    """Tests for the selection function."""

    def test_never_selectable(self):
        assert never_selectable(attacker(x))
        assert never_selectable(mem(x, y, blocked=True))
        assert not never_selectable(attacker(f(x)))
        assert not never_selectable(mem(x, y))

    def test_loop_pattern_is_learned(self):
        cell = Name("cell")
        clause = HornClause((message(cell, x),), message(cell, Fun("succ", (x,))))
        selection = SelectionFunction()

        assert selection.select(clause) is None
        assert selection.learn(clause)
        assert selection.covered(message(cell, a))
        assert not selection.learn(clause)

    def test_deepest_hypothesis_is_selected(self):
        clause = HornClause((mem(x, y), mem(f(f(x)), y), attacker(x)), p(x))

        assert SelectionFunction().select(clause) == 1


class TestResolve:
    """Tests for resolve."""

    def test_resolution(self):
        d, ca = Name("d"), Fun("ca")
        solved = HornClause((), message(d, ca))
        accepted = Fun("Accepted", (x,))
        target = HornClause(
            (message(d, x), Fact("allowed", (x,))), event(accepted), origin="event Accepted(x)"
        )

        resolvent = resolve(solved, target, 0)

        assert str(resolvent) == "allowed(ca) -> event(Accepted(ca))"
        assert resolvent.origin == "event Accepted(x)/res"
        assert resolve(solved, resolvent, 0) is None

    def test_origin_suffix_is_not_repeated(self):
        solved = HornClause((), attacker(a))
        target = HornClause((attacker(f(x)),), attacker(x), origin="proj/res")

        assert resolve(HornClause((attacker(x),), attacker(f(x))), target, 0).origin == "proj/res"
        assert resolve(solved, target, 0) is None


class TestSaturate:
    """Tests for saturate on small models."""

    def test_private_relay(self):
        spec = parse_file(SMALL / "private_relay.hsl")

        result = saturate(spec)

        clauses = {str(c) for c in result.clauses}
        assert "-> event(Accepted(ca))" in clauses
        assert not any("Accepted(cb)" in str(c.conclusion) for c in result.clauses)
        assert result.steps > 0

    def test_counter_learns_a_loop(self):
        spec = parse_file(SMALL / "counter.hsl")

        result = saturate(spec)

        clauses = {str(c) for c in result.clauses}
        assert "mess(cell, i) && s-event(Tick(i)) -> mess(cell, i + 1)" in clauses
        assert "mess(cell, i) -> event(Tick(i))" in clauses
        assert Fact("mess", (Name("cell"), Var("i"))) in result.loop_patterns

    def test_counter_terminates_quickly(self):
        spec = parse_file(SMALL / "counter.hsl")
        context = SaturationContext.from_specification(spec, settings=EngineSettings(max_steps=300))

        result = saturate(spec, context)

        assert result.steps <= 300
        assert "mess(cell, i) && s-event(Tick(i)) -> attacker(i)" in {str(c) for c in result.clauses}
        assert not any("cell + " in str(c) for c in result.clauses)

    def test_concluding(self):
        spec = parse_file(SMALL / "shared_key.hsl")

        result = saturate(spec)

        assert all(c.conclusion.predicate == "event" for c in result.concluding("event"))
        assert result.concluding("event")

    def test_step_limit(self):
        spec = parse_file(SMALL / "shared_key.hsl")
        context = SaturationContext.from_specification(spec, settings=EngineSettings(max_steps=3))

        with pytest.raises(ResourceLimitExceeded, match="exceeded 3 steps"):
            saturate(spec, context)

    def test_context_from_specification(self):
        spec = parse_file(SMALL / "private_relay.hsl")

        context = SaturationContext.from_specification(spec)

        assert context.clause_defined == frozenset({"allowed"})
        assert context.is_clause_defined(Fact("allowed", (x,)))
        assert context.in_ordered(event(Fun("Accepted", (x,))))
        assert not context.in_ordered(attacker(x))
