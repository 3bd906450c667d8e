"""Reward signals: novelty bonuses and sufficient-information scoring.

The interesting part is attribute evidence.  A command outcome only counts
as evidence for an attribute when the rest of the command's preconditions
were already satisfied, so the pass or fail can be pinned on the attribute
itself.  Conditions are always read from the world as it was before the
command ran, and they never consult the asked attribute of the subject
(that would be circular); they may consult attributes of other entities.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .commands import Command, Feedback, resolve_entity
from .world import CUT_WORDS, World

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    """Lowercase alphanumeric runs, the unit of all textual matching."""

    return _TOKEN_RE.findall(text.lower())


def contains_token_sequence(haystack: str, needle: str) -> bool:
    """True when needle's tokens occur consecutively in haystack's tokens."""

    hay = tokenize(haystack)
    want = tokenize(needle)
    if not want:
        return False
    span = len(want)
    return any(hay[i : i + span] == want for i in range(len(hay) - span + 1))


class EpisodicNovelty:
    """Counts exact observation strings seen within one episode."""

    def __init__(self) -> None:
        self._seen: set[str] = set()

    def bonus(self, observation: str) -> float:
        if observation in self._seen:
            return 0.0
        self._seen.add(observation)
        return 1.0

    @property
    def distinct_count(self) -> int:
        return len(self._seen)


class CoverageTracker:
    """Tracks how much of the searchable world the player has laid eyes on.

    Coverage is the fraction of locations visited plus openable holders
    observed open, over the total number of both.  It rewards a search that
    could actually have found something, which is what a confident "no"
    answer needs.
    """

    def __init__(self, world: World) -> None:
        self._total_locations = len(world.locations)
        self._total_containers = sum(
            1
            for ent in world.entities.values()
            if ent.attributes.holder and ent.attributes.openable
        )
        self._visited: set[str] = set()
        self._observed_open: set[str] = set()

    def observe(self, world: World) -> None:
        self._visited.add(world.player_at)
        for ent in world.entities.values():
            if not (ent.attributes.holder and ent.attributes.openable):
                continue
            if ent.open_state != "open":
                continue
            if world.containment.get(ent.id) == world.player_at:
                self._observed_open.add(ent.id)

    def ratio(self) -> float:
        total = self._total_locations + self._total_containers
        return (len(self._visited) + len(self._observed_open)) / total


@dataclass(frozen=True)
class EvidenceEntry:
    """One informative command outcome or observed state."""

    row: str
    outcome: str
    decided: str

    def to_dict(self) -> dict:
        return {"row": self.row, "outcome": self.outcome, "decided": self.decided}


@dataclass
class _PreFacts:
    """World facts snapshotted before a command mutates anything."""

    target_id: Optional[str] = None
    target_held: bool = False
    target_cuttable: bool = False
    target_uncut: bool = False
    target_cookable: bool = False
    target_uncooked: bool = False
    subject_held: bool = False
    subject_reachable: bool = False
    subject_open_state: str = "not-openable"
    other_held_sharps: frozenset = frozenset()
    heat_reachable_besides_subject: bool = False
    carrying_anything: bool = False


class AttributeEvidence:
    """Decides one attribute of one subject from interaction outcomes alone.

    Call pre_facts() before applying a command, then record() with the
    feedback, and observe_state() after each step.  decided() reports the
    verdict once an informative outcome has occurred.
    """

    #: put and insert failures are only jointly decisive: a supporter rejects
    #: insert and a container rejects put, so one refusal proves nothing.
    def __init__(self, subject_id: str, attribute: str) -> None:
        self.subject_id = subject_id
        self.attribute = attribute
        self.entries: list[EvidenceEntry] = []
        self._put_refused = False
        self._insert_refused = False

    def pre_facts(self, world: World, command: Optional[Command]) -> _PreFacts:
        facts = _PreFacts()
        subject = world.entities[self.subject_id]
        facts.subject_held = world.holding(subject.id)
        facts.subject_reachable = world.reachable(subject.id)
        facts.subject_open_state = subject.open_state
        facts.carrying_anything = bool(world.inventory_items())
        sharps = set()
        for ent in world.inventory_items():
            if ent.id != subject.id and ent.attributes.sharp:
                sharps.add(ent.id)
        facts.other_held_sharps = frozenset(sharps)
        facts.heat_reachable_besides_subject = any(
            ent.id != subject.id
            and ent.attributes.heat_source
            and world.reachable(ent.id)
            for ent in world.entities.values()
        )
        if command is not None and command.obj is not None:
            found = resolve_entity(world, command.modifier, command.obj)
            if not isinstance(found, Feedback):
                facts.target_id = found.id
                facts.target_held = world.holding(found.id)
                facts.target_cuttable = found.attributes.cuttable
                facts.target_uncut = found.cut_state not in CUT_WORDS
                facts.target_cookable = found.attributes.cookable
                facts.target_uncooked = found.cook_state != "cooked"
        return facts

    def _add(self, row: str, outcome: str, decided: str) -> None:
        entry = EvidenceEntry(row=row, outcome=outcome, decided=decided)
        if entry not in self.entries:
            self.entries.append(entry)

    def record(self, facts: _PreFacts, command: Command, feedback: Feedback) -> None:
        on_subject = facts.target_id == self.subject_id
        attr = self.attribute
        action = command.action

        if action == "take" and on_subject and facts.subject_reachable and not facts.subject_held:
            if feedback.success:
                if attr == "portable":
                    self._add("take", "pass", "yes")
                elif attr in ("holder", "heat_source"):
                    self._add("take", "pass", "no")
            elif feedback.reason == "fail_fixed":
                if attr == "portable":
                    self._add("take", "fail", "no")
                elif attr in ("edible", "drinkable", "sharp", "cuttable", "cookable"):
                    self._add("take", "fail", "no")

        elif action == "eat" and attr == "edible" and on_subject and facts.subject_held:
            if feedback.success:
                # Cooking confers edibility, so only an uncooked bite says
                # anything about the attribute the entity started with.
                if facts.target_uncooked:
                    self._add("eat", "pass", "yes")
            elif feedback.reason == "fail_not_edible":
                self._add("eat", "fail", "no")

        elif action == "drink" and attr == "drinkable" and on_subject and facts.subject_held:
            if feedback.success:
                self._add("drink", "pass", "yes")
            elif feedback.reason == "fail_not_drinkable":
                self._add("drink", "fail", "no")

        elif action in ("slice", "chop", "dice"):
            if attr == "cuttable" and on_subject and facts.subject_held and facts.target_uncut:
                if feedback.success:
                    self._add("cut", "pass", "yes")
                elif feedback.reason == "fail_not_cuttable":
                    self._add("cut", "fail", "no")
            elif (
                attr == "sharp"
                and facts.target_id is not None
                and not on_subject
                and facts.subject_held
                and facts.target_held
                and facts.target_cuttable
                and facts.target_uncut
                and not (facts.other_held_sharps - {facts.target_id})
            ):
                if feedback.success:
                    self._add("cut_with", "pass", "yes")
                elif feedback.reason == "fail_no_sharp":
                    self._add("cut_with", "fail", "no")

        elif action == "cook":
            if (
                attr == "cookable"
                and on_subject
                and facts.subject_held
                and facts.target_uncooked
                and facts.heat_reachable_besides_subject
            ):
                if feedback.success:
                    self._add("cook", "pass", "yes")
                elif feedback.reason == "fail_not_cookable":
                    self._add("cook", "fail", "no")
            elif (
                attr == "heat_source"
                and facts.target_id is not None
                and not on_subject
                and facts.target_held
                and facts.target_cookable
                and facts.target_uncooked
                and facts.subject_reachable
            ):
                if feedback.success:
                    if feedback.instrument == self.subject_id:
                        self._add("cook_on", "pass", "yes")
                    else:
                        self._add("cook_on", "pass", "no")
                elif feedback.reason == "fail_no_heat":
                    self._add("cook_on", "fail", "no")

        elif action == "open" and attr == "openable" and on_subject and facts.subject_reachable:
            if facts.subject_open_state != "open":
                if feedback.success:
                    self._add("open", "pass", "yes")
                elif feedback.reason == "fail_not_openable":
                    self._add("open", "fail", "no")

        elif action == "close" and attr == "openable" and on_subject and facts.subject_reachable:
            if facts.subject_open_state != "closed":
                if feedback.success:
                    self._add("close", "pass", "yes")
                elif feedback.reason == "fail_not_closeable":
                    self._add("close", "fail", "no")

        elif action in ("put", "insert") and attr == "holder" and on_subject:
            if facts.subject_reachable and facts.carrying_anything:
                if feedback.success:
                    self._add(action, "pass", "yes")
                elif action == "put" and feedback.reason == "fail_not_supporter":
                    self._put_refused = True
                elif action == "insert" and feedback.reason == "fail_not_container":
                    self._insert_refused = True
                if self._put_refused and self._insert_refused:
                    self._add("put_and_insert", "fail", "no")

    def observe_state(self, world: World) -> None:
        subject = world.entities[self.subject_id]
        if self.attribute == "portable" and world.holding(subject.id):
            self._add("holding", "state", "yes")
        if self.attribute == "holder":
            in_player_room = world.containment.get(subject.id) == world.player_at
            showing = subject.open_state != "closed"
            has_contents = any(
                parent == subject.id for parent in world.containment.values()
            )
            if in_player_room and showing and has_contents:
                self._add("contents", "state", "yes")

    def decided(self) -> Optional[str]:
        if not self.entries:
            return None
        return self.entries[0].decided

    def to_dict(self) -> dict:
        return {
            "subject": self.subject_id,
            "attribute": self.attribute,
            "entries": [entry.to_dict() for entry in self.entries],
        }


@dataclass(frozen=True)
class SufficientInfo:
    """Breakdown of the end-of-episode sufficient-information reward."""

    base: float
    subject_seen: float = 0.0
    coverage: float = 0.0

    @property
    def total(self) -> float:
        return self.base + self.subject_seen + self.coverage

    def to_dict(self) -> dict:
        return {
            "base": self.base,
            "subject_seen": self.subject_seen,
            "coverage": self.coverage,
            "total": self.total,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SufficientInfo":
        return cls(
            base=data["base"],
            subject_seen=data.get("subject_seen", 0.0),
            coverage=data.get("coverage", 0.0),
        )


def sufficient_info_location(subject: str, final_text: str) -> SufficientInfo:
    """Full marks only when the asked-about entity appears in the final text."""

    base = 1.0 if contains_token_sequence(final_text, subject) else 0.0
    return SufficientInfo(base=base)


def sufficient_info_existence(
    subject: str, answer: str, final_text: str, coverage_ratio: float
) -> SufficientInfo:
    """Yes-questions need the thing on screen; no-questions need coverage."""

    if answer == "yes":
        base = 1.0 if contains_token_sequence(final_text, subject) else 0.0
    else:
        base = coverage_ratio
    return SufficientInfo(base=base)


def sufficient_info_attribute(
    evidence: AttributeEvidence, subject_seen: bool, coverage_ratio: float
) -> SufficientInfo:
    """Evidence is worth 1.0; sighting and coverage add up to 0.1 each."""

    base = 1.0 if evidence.entries else 0.0
    return SufficientInfo(
        base=base,
        subject_seen=0.1 if subject_seen else 0.0,
        coverage=0.1 * coverage_ratio,
    )


def subject_mentioned(texts: Iterable[str], subject: str) -> bool:
    """Whether any of the given texts mentions the subject by name."""

    return any(contains_token_sequence(text, subject) for text in texts)
