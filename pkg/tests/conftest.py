"""Shared fixtures: hand-built scenes and an independent answer oracle."""

from __future__ import annotations

import pytest

from inquest.world import AttributeSet, World, WorldBuilder


def build_two_room_scene() -> tuple[World, dict[str, str]]:
    """A backyard and a kitchen, matching the canonical play transcript.

    The player starts in the backyard.  The kitchen holds a counter carrying
    a diced potato, a knife, and a made-up-name food called ghargh.  Returns
    the world and a name-to-entity-id map for direct assertions.
    """

    builder = WorldBuilder(rng_seed=2024)
    backyard = builder.room("backyard")
    kitchen = builder.room("kitchen")
    builder.player(backyard)
    door = builder.door(
        (backyard, "south", kitchen), modifier="screen", is_open=True
    )

    ids = {"door": door}
    ids["bbq"] = builder.entity(
        "bbq", AttributeSet(heat_source=True), at=backyard
    )
    ids["chair"] = builder.entity(
        "chair", AttributeSet(holder=True), at=backyard, modifier="patio"
    )
    ids["fridge"] = builder.entity(
        "fridge", AttributeSet(openable=True, holder=True), at=kitchen,
        is_open=True,
    )
    ids["oven"] = builder.entity(
        "oven", AttributeSet(openable=True, holder=True, heat_source=True),
        at=kitchen,
    )
    ids["counter"] = builder.entity("counter", AttributeSet(holder=True), at=kitchen)
    ids["potato"] = builder.entity(
        "potato",
        AttributeSet(portable=True, edible=True, cuttable=True, cookable=True),
        at=ids["counter"],
        cut="diced",
    )
    ids["ghargh"] = builder.entity(
        "tomato",
        AttributeSet(portable=True, edible=True, cuttable=True, cookable=True),
        at=ids["counter"],
        modifier="red",
        made_up_name="ghargh",
    )
    ids["knife"] = builder.entity(
        "knife", AttributeSet(portable=True, sharp=True), at=ids["counter"]
    )
    return builder.build(), ids


@pytest.fixture
def two_room_scene():
    return build_two_room_scene()


def omniscient_answer(world: World, qtype: str, subject: str, attribute=None) -> str:
    """Brute-force ground truth read straight off the world state.

    Deliberately avoids the queries the question generator uses: containment
    is walked as a raw dict and names are recomputed from entity fields.
    """

    def display(ent) -> str:
        return " ".join(ent.state_prefixes + [ent.made_up_name or ent.base_name])

    if qtype == "location":
        matches = [
            eid for eid, ent in world.entities.items()
            if eid in world.containment and display(ent) == subject
            and eid not in world.destroyed
        ]
        assert len(matches) == 1, f"subject {subject!r} should be unique"
        holder = world.containment[matches[0]]
        if holder == "inventory":
            return "inventory"
        if holder in world.locations:
            return world.locations[holder].name
        holder_ent = world.entities[holder]
        return holder_ent.made_up_name or holder_ent.base_name

    if qtype == "existence":
        present = any(
            display(ent) == subject
            for eid, ent in world.entities.items()
            if eid in world.containment and eid not in world.destroyed
        )
        return "yes" if present else "no"

    if qtype == "attribute":
        matches = [
            ent for ent in world.entities.values()
            if (ent.made_up_name or ent.base_name) == subject
        ]
        assert len(matches) == 1, f"subject {subject!r} should be unique"
        return "yes" if getattr(matches[0].attributes, attribute) else "no"

    raise ValueError(f"unknown question type {qtype!r}")
