"""Tests for question generation.

Questions must be reproducible from (world, seed), have exactly one ground
truth at generation time, and never leak their answer through the surface
form: negative existence subjects really are absent, and attribute subjects
always hide behind made-up names.
"""

import pytest

from tests.conftest import build_two_room_scene, omniscient_answer
from inquest.gen import GenConfig, generate_world
from inquest.names import load_catalog
from inquest.rewards import contains_token_sequence
from inquest.questions import (
    QUESTION_TYPES,
    QuestionError,
    Question,
    answer_candidates,
    make_attribute_question,
    make_existence_question,
    make_location_question,
    make_question,
)
from inquest.world import ATTRIBUTE_NAMES


def generated(seed: int, made_up: bool = True):
    return generate_world(
        GenConfig(difficulty="random_map", seed=seed, made_up_names=made_up)
    )


class TestQuestionDataclass:
    def test_round_trip(self):
        q = Question(qtype="location", text="Where is the knife?",
                     subject="knife", answer="counter", subject_entity="e3")
        assert Question.from_dict(q.to_dict()) == q

    def test_unknown_qtype_rejected(self):
        with pytest.raises(ValueError):
            Question(qtype="weight", text="?", subject="x", answer="1")

    def test_attribute_questions_validate_attribute(self):
        with pytest.raises(ValueError):
            Question(qtype="attribute", text="?", subject="x", answer="yes",
                     attribute="sparkly")


class TestLocationQuestions:
    def test_deterministic(self):
        world = generated(3)
        a = make_location_question(world, 55)
        b = make_location_question(world, 55)
        assert a == b

    def test_subject_is_unique_portable(self):
        for seed in range(20):
            world = generated(seed)
            q = make_location_question(world, seed)
            matches = [
                ent for ent in world.entities.values()
                if ent.id in world.containment and ent.display_name == q.subject
            ]
            assert len(matches) == 1, f"seed {seed}: {q.subject!r} not unique"
            assert matches[0].attributes.portable

    def test_subject_phrase_has_one_textual_referent(self):
        for seed in range(40):
            world = generated(seed)
            q = make_location_question(world, seed)
            for ent in world.entities.values():
                if ent.id == q.subject_entity:
                    continue
                assert not contains_token_sequence(ent.qualified_name, q.subject), (
                    f"seed {seed}: asking about {q.subject!r} while a "
                    f"{ent.qualified_name!r} is also in the world")

    def test_answer_is_direct_holder(self):
        for seed in range(30):
            world = generated(seed)
            q = make_location_question(world, seed * 7 + 1)
            assert q.answer == omniscient_answer(world, "location", q.subject)

    def test_answer_in_candidates(self):
        for seed in range(20):
            world = generated(seed)
            q = make_location_question(world, seed)
            assert q.answer in answer_candidates(world, "location")

    def test_question_text_shape(self):
        world, _ = build_two_room_scene()
        q = make_location_question(world, 1)
        assert q.text == f"Where is the {q.subject}?"

    def test_varies_with_seed(self):
        world = generated(9)
        subjects = {make_location_question(world, s).subject for s in range(30)}
        assert len(subjects) > 1, "thirty seeds should not all pick one subject"


class TestExistenceQuestions:
    def test_deterministic(self):
        world = generated(4)
        assert make_existence_question(world, 9) == make_existence_question(world, 9)

    def test_yes_subjects_exist_and_no_subjects_do_not(self):
        for seed in range(60):
            world = generated(seed % 10)
            q = make_existence_question(world, seed)
            assert q.answer == omniscient_answer(world, "existence", q.subject)

    def test_no_subject_token_absent_from_every_name(self):
        catalog = load_catalog()
        for seed in range(80):
            world = generated(seed % 10)
            q = make_existence_question(world, seed, catalog)
            if q.answer == "no":
                for ent in world.entities.values():
                    assert q.subject not in ent.qualified_name.split(), (
                        f"negative subject {q.subject!r} appears in "
                        f"{ent.qualified_name!r}"
                    )

    def test_both_answers_occur(self):
        world = generated(2)
        answers = {make_existence_question(world, s).answer for s in range(40)}
        assert answers == {"yes", "no"}

    def test_text_uses_indefinite_article(self):
        world, _ = build_two_room_scene()
        q = make_existence_question(world, 12)
        assert q.text.startswith(("Is there a ", "Is there an "))
        assert q.text.endswith(" in the world?")


class TestAttributeQuestions:
    def test_subject_is_the_made_up_entity(self):
        for seed in range(20):
            world = generated(seed)
            q = make_attribute_question(world, seed)
            ent = world.entities[q.subject_entity]
            assert ent.made_up_name == q.subject
            assert q.subject not in load_catalog().all_tokens

    def test_answer_matches_actual_attribute(self):
        for seed in range(40):
            world = generated(seed % 12)
            q = make_attribute_question(world, seed)
            assert q.answer == omniscient_answer(
                world, "attribute", q.subject, q.attribute
            )

    def test_all_attributes_reachable(self):
        world = generated(6)
        seen = {make_attribute_question(world, s).attribute for s in range(200)}
        assert seen == set(ATTRIBUTE_NAMES)

    def test_text_phrasing(self):
        world = generated(1)
        texts = {make_attribute_question(world, s).attribute:
                 make_attribute_question(world, s).text for s in range(200)}
        subject = make_attribute_question(world, 0).subject
        assert texts["edible"] == f"Is {subject} edible?"
        assert texts["heat_source"] == f"Is {subject} a heat source?"
        assert texts["holder"] == f"Is {subject} a holder?"

    def test_world_without_made_up_entity_raises(self):
        world = generated(5, made_up=False)
        with pytest.raises(QuestionError):
            make_attribute_question(world, 0)


class TestDispatcher:
    def test_routes_each_type(self):
        world = generated(8)
        for qtype in QUESTION_TYPES:
            assert make_question(world, qtype, 3).qtype == qtype

    def test_unknown_type(self):
        world = generated(8)
        with pytest.raises(ValueError):
            make_question(world, "color", 3)


class TestAnswerCandidates:
    def test_yes_no_for_binary_types(self):
        world, _ = build_two_room_scene()
        assert answer_candidates(world, "existence") == ["yes", "no"]
        assert answer_candidates(world, "attribute") == ["yes", "no"]

    def test_location_candidates_cover_holders(self):
        world, _ = build_two_room_scene()
        candidates = answer_candidates(world, "location")
        assert "inventory" in candidates
        assert "kitchen" in candidates and "backyard" in candidates
        assert "counter" in candidates and "ghargh" in candidates
        assert "door" not in candidates, "doors never hold anything"

    def test_location_truth_always_listed(self):
        for seed in range(25):
            world = generated(seed)
            q = make_location_question(world, seed + 100)
            assert q.answer in answer_candidates(world, "location")
