"""Question generation for interactive QA episodes.

Each question is built from a finished world plus a dedicated seed, so the
same (world, seed) pair always yields the same question and the ground-truth
answer can be frozen at generation time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .names import NameTable, load_catalog
from .rewards import contains_token_sequence
from .rng import SplitMix64
from .world import ATTRIBUTE_NAMES, INVENTORY, World

QUESTION_TYPES = ("location", "existence", "attribute")

#: Attributes that read as plain adjectives in question text.  The remaining
#: two (heat_source, holder) need a noun phrase instead.
_ATTRIBUTE_PHRASES = {
    "heat_source": "a heat source",
    "holder": "a holder",
}


class QuestionError(Exception):
    """Raised when a world cannot support the requested question type."""


@dataclass(frozen=True)
class Question:
    """A natural-language question with its frozen ground-truth answer.

    subject is the surface form used for reward bookkeeping (display name for
    location/existence questions, the invented noun for attribute questions).
    """

    qtype: str
    text: str
    subject: str
    answer: str
    attribute: Optional[str] = None
    subject_entity: Optional[str] = None

    def __post_init__(self) -> None:
        if self.qtype not in QUESTION_TYPES:
            raise ValueError(f"unknown question type {self.qtype!r}")
        if self.qtype == "attribute" and self.attribute not in ATTRIBUTE_NAMES:
            raise ValueError(f"unknown attribute {self.attribute!r}")

    def to_dict(self) -> dict:
        return {
            "qtype": self.qtype,
            "text": self.text,
            "subject": self.subject,
            "answer": self.answer,
            "attribute": self.attribute,
            "subject_entity": self.subject_entity,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Question":
        return cls(
            qtype=data["qtype"],
            text=data["text"],
            subject=data["subject"],
            answer=data["answer"],
            attribute=data.get("attribute"),
            subject_entity=data.get("subject_entity"),
        )


def _article(word: str) -> str:
    return "an" if word[0] in "aeiou" else "a"


def _contained_entities(world: World):
    """Entities that live in the containment tree, i.e. not doors."""

    return [world.entities[eid] for eid in sorted(world.containment)]


def _textually_unambiguous(world: World, ent) -> bool:
    """True when the entity's display name can only ever mean this entity.

    Rewards and agents find subjects by scanning rendered text for the
    subject phrase, so the phrase must not occur inside any other entity's
    full printed name ("carrot" is out if a "blue diced carrot" exists).
    """

    for other in world.entities.values():
        if other.id == ent.id:
            continue
        if contains_token_sequence(other.qualified_name, ent.display_name):
            return False
    return True


def make_location_question(world: World, seed: int) -> Question:
    """Ask where a portable entity is.

    The subject is drawn from portable entities whose display name has
    exactly one textual referent, so any sighting of the phrase really is
    the asked-about thing.  The answer is the name of the direct holder: a
    location, a holder entity, or "inventory".
    """

    rng = SplitMix64(seed)
    pool = [
        ent
        for ent in _contained_entities(world)
        if ent.attributes.portable and _textually_unambiguous(world, ent)
    ]
    if not pool:
        raise QuestionError("no unambiguously named portable entity to ask about")
    subject = rng.choice(pool)
    answer = world.direct_holder(subject.id)
    return Question(
        qtype="location",
        text=f"Where is the {subject.display_name}?",
        subject=subject.display_name,
        answer=answer,
        subject_entity=subject.id,
    )


def make_existence_question(
    world: World, seed: int, catalog: Optional[NameTable] = None
) -> Question:
    """Ask whether a named thing exists anywhere in the world.

    Positive subjects are display names of entities actually present.
    Negative subjects are catalog names whose token never occurs in any
    present entity's qualified name, so a thorough search really does come
    up empty.
    """

    catalog = catalog or load_catalog()
    rng = SplitMix64(seed)
    pool = _contained_entities(world)
    if not pool:
        raise QuestionError("world has no entities to ask about")
    if rng.chance(0.5):
        subject_ent = rng.choice(pool)
        subject = subject_ent.display_name
        answer = "yes"
        entity_id: Optional[str] = subject_ent.id
    else:
        present: set[str] = set()
        for ent in world.entities.values():
            present.update(ent.qualified_name.split())
        absent = [name for name in catalog.placeable_names if name not in present]
        if not absent:
            raise QuestionError("every catalog name is present in the world")
        subject = rng.choice(absent)
        answer = "no"
        entity_id = None
    return Question(
        qtype="existence",
        text=f"Is there {_article(subject)} {subject} in the world?",
        subject=subject,
        answer=answer,
        subject_entity=entity_id,
    )


def make_attribute_question(world: World, seed: int) -> Question:
    """Ask whether the invented-name entity has a given attribute.

    The subject always carries a made-up noun, so its attributes cannot be
    guessed from vocabulary alone and must be probed through interaction.
    """

    rng = SplitMix64(seed)
    pool = [ent for ent in _contained_entities(world) if ent.made_up_name]
    if not pool:
        raise QuestionError("world has no invented-name entity to ask about")
    subject = rng.choice(pool)
    attribute = rng.choice(list(ATTRIBUTE_NAMES))
    phrase = _ATTRIBUTE_PHRASES.get(attribute, attribute.replace("_", " "))
    answer = "yes" if subject.attributes.value(attribute) else "no"
    return Question(
        qtype="attribute",
        text=f"Is {subject.noun} {phrase}?",
        subject=subject.noun,
        answer=answer,
        attribute=attribute,
        subject_entity=subject.id,
    )


def make_question(
    world: World, qtype: str, seed: int, catalog: Optional[NameTable] = None
) -> Question:
    """Build a question of the requested type from the world."""

    if qtype == "location":
        return make_location_question(world, seed)
    if qtype == "existence":
        return make_existence_question(world, seed, catalog)
    if qtype == "attribute":
        return make_attribute_question(world, seed)
    raise ValueError(f"unknown question type {qtype!r}")


def answer_candidates(world: World, qtype: str) -> list[str]:
    """The finite answer vocabulary an agent may choose from.

    Attribute and existence questions are yes/no.  Location questions may
    name any entity noun, any location, or the player's inventory.
    """

    if qtype in ("existence", "attribute"):
        return ["yes", "no"]
    nouns = {ent.noun for ent in world.entities.values() if not world.is_door(ent.id)}
    places = {loc.name for loc in world.locations.values()}
    return sorted(nouns | places) + [INVENTORY]
