"""Tests for ordering functions and the second phase."""

import dataclasses

import pytest

from hornsat.clauses.clause import HornClause
from hornsat.language import StatementKind, parse_specification
from hornsat.language.ast import Disjunct, Statement
from hornsat.models import MODELS_DIR
from hornsat.saturation import LemmaApplier, SaturationContext, initial_clauses
from hornsat.saturation.engine import SaturationResult
from hornsat.solver import (
    OrderingFunction,
    Outcome,
    Relation,
    StatementPipeline,
    Strictness,
    build_query_clause,
    check_equal_strict,
    delta_res,
    verify_specification,
)
from hornsat.solver.conclusion import ConclusionChecker
from hornsat.solver.ordered import OrderedClause, OrderedFact, ordered_matchings
from hornsat.solver.ordering import EMPTY, added_delta, is_strict_for
from hornsat.terms.fact import EVENT, Fact, attacker, event
from hornsat.terms.formula import TRUE, Equal, Formula
from hornsat.terms.term import Fun, Var
from hornsat.utils.config import EngineSettings

SMALL = MODELS_DIR / "small"

x, y = Var("x"), Var("y")
LESS, LEQ = Relation.LESS, Relation.LEQ


def with_statements(model, statements):
    text = (SMALL / f"{model}.hsl").read_text(encoding="utf-8")
    return parse_specification(text.replace("\nprocess\n", f"\n{statements}\nprocess\n", 1))


@pytest.fixture
def context():
    return SaturationContext(
        clause_defined=frozenset({"mem"}),
        declared_blocking=frozenset({"verify_pp"}),
        ordered_predicates=frozenset({EVENT, "verify_pp"}),
    )


class TestOrderingFunction:
    """Tests for OrderingFunction."""

    def test_construction(self):
        delta = OrderingFunction.of({1: LEQ, 3: LESS})

        assert delta.domain == frozenset({1, 3})
        assert delta.get(3) is LESS
        assert delta.get(2) is None
        assert str(delta) == "{1<=, 3<}"

    def test_strict_and_restricted(self):
        delta = OrderingFunction.of({1: LEQ, 2: LESS})

        assert delta.strict() == OrderingFunction.of({1: LESS, 2: LESS})
        assert delta.restricted(2, 5) == OrderingFunction.at(2, LESS)

    def test_empty(self):
        assert EMPTY.is_empty
        assert str(EMPTY) == "{}"


class TestDeltaRes:
    """Tests for the ordering given to resolved hypotheses."""

    def test_blocking_user_fact_is_unordered(self, context):
        fact = Fact("verify_pp", (x, x, y), True)

        assert delta_res(fact, attacker(x), OrderingFunction.at(1), context) == EMPTY

    def test_clause_defined_fact_under_other_conclusion(self, context):
        fact = Fact("mem", (x, y))

        assert delta_res(fact, attacker(x), OrderingFunction.at(1), context) == EMPTY
        assert delta_res(fact, Fact("mem", (x, x)), OrderingFunction.at(1), context).domain == {1}

    def test_ordered_fact_becomes_strict(self, context):
        sure = event(Fun("Sent", (x,)), sure=True)

        assert delta_res(sure, attacker(x), OrderingFunction.at(1), context) == OrderingFunction.at(1, LESS)

    def test_other_facts_keep_the_ordering(self, context):
        strict = OrderingFunction.at(2, LESS)
        loose = OrderingFunction.of({1: LEQ, 2: LESS})

        assert delta_res(attacker(y), attacker(x), strict, context) == strict
        assert delta_res(Fact("mem", (x, y)), Fact("mem", (y, y)), loose, context) == loose

    def test_added_delta_keeps_common_positions(self):
        first = OrderingFunction.of({1: LESS, 2: LEQ})
        second = OrderingFunction.of({1: LESS, 2: LESS, 3: LESS})

        assert added_delta([first, second]) == OrderingFunction.of({1: LESS, 2: LEQ})
        assert added_delta([]) == EMPTY


class TestCheckEqualStrict:
    """Tests for check_equal_strict and the induction order."""

    def test_strict_when_every_delta_is_strict_somewhere(self):
        assert check_equal_strict([OrderingFunction.at(1, LESS)], 1, 2, [1]) is Strictness.STRICT

    def test_equal_on_a_single_position(self):
        assert check_equal_strict([OrderingFunction.at(1)], 1, 1, [1]) is Strictness.EQUAL

    def test_fewer_facts_than_positions_is_strict(self):
        assert check_equal_strict([OrderingFunction.at(1)], 1, 2, [1]) is Strictness.STRICT

    def test_outside_the_range(self):
        assert check_equal_strict([OrderingFunction.at(3)], 1, 2, [3]) is Strictness.NEITHER

    def test_empty_range(self):
        assert check_equal_strict([], 1, 0, []) is Strictness.EQUAL

    def test_inductive_hypothesis_needs_a_strict_step(self):
        strict = [OrderingFunction.at(1), OrderingFunction.at(2, LESS)]
        same = [OrderingFunction.at(1), OrderingFunction.at(2)]

        assert is_strict_for(strict, 1, 2, 1)
        assert not is_strict_for(same, 1, 2, 1)


class TestQueryClause:
    """Tests for build_query_clause."""

    def test_premise_positions(self):
        spec = with_statements(
            "private_relay", "query x: bitstring; event(Accepted(x)) && allowed(x) ==> false."
        )
        statement = spec.statements[0]

        clause = build_query_clause(statement, SaturationContext.from_specification(spec))

        assert [h.delta for h in clause.hypotheses] == [OrderingFunction.at(1), OrderingFunction.at(2)]
        assert clause.conclusion == statement.premise
        assert clause.idx == 2


class TestVerify:
    """Tests for verifying statements on small models."""

    def test_correspondence_is_proved(self):
        spec = with_statements(
            "shared_key", "query x: bitstring; event(Received(x)) ==> event(Sent(x))."
        )

        (verdict,) = verify_specification(spec)

        assert verdict.outcome is Outcome.PROVED
        assert verdict.witnesses and not verdict.failures
        assert verdict.saturated_clauses > 0

    def test_reachable_event_is_disproved(self):
        spec = with_statements("shared_key", "query x: bitstring; event(Received(x)) ==> false.")

        (verdict,) = verify_specification(spec)

        assert verdict.outcome is Outcome.DISPROVED
        assert "do not imply the conclusion" in verdict.message
        assert verdict.failures[0]["clause"].endswith("event(Received(s))")

    def test_user_predicate_in_conclusion(self):
        spec = with_statements(
            "private_relay", "query x: bitstring; event(Accepted(x)) ==> allowed(x)."
        )

        (verdict,) = verify_specification(spec)

        assert verdict.proved

    def test_lemmas_and_axioms_in_order(self):
        spec = with_statements(
            "private_relay",
            "axiom x: bitstring; event(Accepted(x)) ==> x = ca.\n"
            "lemma x: bitstring; event(Accepted(x)) ==> allowed(x).\n"
            "query x: bitstring; event(Accepted(x)) ==> x = ca.",
        )

        verdicts = verify_specification(spec)

        assert [v.outcome for v in verdicts] == [Outcome.ASSUMED, Outcome.PROVED, Outcome.PROVED]
        assert verdicts[0].kind is StatementKind.AXIOM

    def test_second_phase_limit(self):
        spec = with_statements(
            "shared_key", "query x: bitstring; event(Received(x)) ==> event(Sent(x))."
        )
        pipeline = StatementPipeline(spec, EngineSettings(max_ordered_clauses=1))

        (verdict,) = pipeline.run()

        assert verdict.outcome is Outcome.INCONCLUSIVE
        assert "second phase exceeded 1 clauses" in verdict.message

    def test_saturations_are_shared(self):
        spec = with_statements(
            "shared_key",
            "query x: bitstring; event(Received(x)) ==> event(Sent(x)).\n"
            "query x: bitstring; event(Received(x)) ==> false.",
        )
        pipeline = StatementPipeline(spec)

        verdicts = pipeline.run(jobs=2)

        assert [v.outcome for v in verdicts] == [Outcome.PROVED, Outcome.DISPROVED]
        assert len(pipeline.saturations) == 1

    def test_initial_clauses_are_passed_in(self, monkeypatch):
        spec = with_statements(
            "shared_key", "query x: bitstring; event(Received(x)) ==> event(Sent(x))."
        )
        clauses = initial_clauses(spec)
        monkeypatch.setattr(
            "hornsat.solver.verify.initial_clauses", lambda _: pytest.fail("clauses recomputed")
        )

        pipeline = StatementPipeline(spec, initial=clauses)
        (verdict,) = pipeline.run()

        assert pipeline.initial == clauses
        assert verdict.outcome is Outcome.PROVED


class TestOrderedLemmas:
    """Tests for lemmas whose premise events must occur in the written order."""

    u, v = Var("u"), Var("v")

    def lemma(self, ordered=True):
        return Statement(
            StatementKind.AXIOM,
            (event(Fun("A", (self.u,))), event(Fun("B", (self.v,)))),
            (Disjunct(formula=Formula((Equal(self.u, self.v),))),),
            ordered=ordered,
        )

    def clause(self, delta):
        return OrderedClause(
            (OrderedFact(event(Fun("A", (x,)), sure=True), delta),),
            TRUE,
            (event(Fun("B", (y,))),),
            2,
        )

    def test_applies_when_strictly_before_the_conjunct(self, context):
        clause = self.clause(OrderingFunction.at(1, LESS))

        matches = list(ordered_matchings(self.lemma(), clause, context, False))

        assert matches == [({self.u: x, self.v: y}, [OrderingFunction.at(1, LESS), OrderingFunction.at(1)])]

    def test_not_applied_without_a_strict_order(self, context):
        clause = self.clause(OrderingFunction.at(1))

        assert list(ordered_matchings(self.lemma(), clause, context, False)) == []
        assert len(list(ordered_matchings(self.lemma(ordered=False), clause, context, False))) == 1

    def test_later_event_must_be_a_conjunct(self, context):
        lemma = dataclasses.replace(self.lemma(), premise=tuple(reversed(self.lemma().premise)))
        clause = self.clause(OrderingFunction.at(1, LESS))

        assert list(ordered_matchings(lemma, clause, context, False)) == []

    def test_first_phase_skips_ordered_lemmas(self, context):
        horn = HornClause((event(Fun("A", (x,)), sure=True), event(Fun("B", (y,)), sure=True)), attacker(x))
        applier = LemmaApplier(dataclasses.replace(context, lemmas=(self.lemma(),)))

        assert applier.apply_once(horn) is None
        applier = LemmaApplier(dataclasses.replace(context, lemmas=(self.lemma(ordered=False),)))
        (produced,) = applier.apply_once(horn)
        assert produced.formula.atoms == (Equal(x, y),)


class TestLemmaApplier:
    """Tests for first-phase lemma application on user-headed clauses."""

    u, lv, l = Var("u"), Var("lv"), Var("l")

    def step(self):
        return HornClause((Fact("mem", (x, self.l)),), Fact("mem", (x, Fun("cons", (y, self.l)))))

    def applier(self, context, conclusion):
        lemma = Statement(StatementKind.LEMMA, (Fact("mem", (self.u, self.lv)),), (Disjunct((conclusion,)),))
        return LemmaApplier(dataclasses.replace(context, lemmas=(lemma,)))

    def test_conclusion_of_the_clause_counts_as_known(self, context):
        applier = self.applier(context, Fact("mem", (self.u, self.lv)))

        assert applier.apply_once(self.step()) is None

    def test_new_facts_are_added_blocking(self, context):
        applier = self.applier(context, Fact("mem", (self.u, Fun("cons", (self.u, self.lv)))))

        (produced,) = applier.apply_once(self.step())

        assert Fact("mem", (x, Fun("cons", (x, self.l))), True) in produced.hypotheses
        assert produced.conclusion == self.step().conclusion


class TestConclusionChecker:
    """Tests for deriving the facts a conclusion requires."""

    u, w, w2, lv = Var("u"), Var("w"), Var("w2"), Var("lv")

    def checker(self, context, clauses):
        statement = Statement(
            StatementKind.LEMMA,
            (Fact("mem", (self.u, self.lv)),),
            (Disjunct((Fact("mem", (self.u, Fun("cons", (self.w, Fun("cons", (self.w2, self.lv)))))),)),),
        )
        return ConclusionChecker(statement, context, SaturationResult(clauses), lemma_mode=True)

    def test_blocking_subgoal_is_derived_like_its_plain_form(self, context):
        # a saturated clause carrying the blocking conclusion of some lemma
        step = HornClause((Fact("mem", (x, y), True),), Fact("mem", (x, Fun("cons", (Var("z"), y)))))
        premise = Fact("mem", (x, y))

        proof = self.checker(context, [step]).check([premise], TRUE, (premise,))

        assert proof is not None
        assert proof["facts"][0]["premises"][0]["by"] == "clause"

    def test_missing_fact_is_not_derived(self, context):
        step = HornClause((Fact("mem", (x, y), True),), Fact("mem", (x, Fun("cons", (Var("z"), y)))))
        other = Fact("mem", (y, x))

        assert self.checker(context, [step]).check([other], TRUE, (Fact("mem", (x, y)),)) is None
