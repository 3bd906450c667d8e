"""Tests for the world model: attributes, entities, containment, visibility.

These cover the consistency rules directly, before any generation or command
logic gets involved: which attribute combinations are legal, how names are
assembled, and what the visibility and holder queries report.
"""

import pytest

from tests.conftest import build_two_room_scene
from inquest.world import (
    ATTRIBUTE_NAMES,
    AttributeSet,
    CUT_WORDS,
    COOK_WORDS,
    Entity,
    WorldBuilder,
)


class TestAttributeSet:
    def test_nine_attributes_exactly(self):
        assert len(ATTRIBUTE_NAMES) == 9
        assert set(ATTRIBUTE_NAMES) == {
            "edible", "drinkable", "portable", "openable", "cuttable",
            "sharp", "heat_source", "cookable", "holder",
        }

    def test_food_attributes_require_portable(self):
        for name in ("sharp", "edible", "drinkable", "cookable", "cuttable"):
            with pytest.raises(ValueError):
                AttributeSet(**{name: True})
            built = AttributeSet(**{name: True, "portable": True})
            assert built.value(name) is True

    def test_fixtures_must_not_be_portable(self):
        with pytest.raises(ValueError):
            AttributeSet(heat_source=True, portable=True)
        with pytest.raises(ValueError):
            AttributeSet(holder=True, portable=True)

    def test_value_rejects_unknown_names(self):
        with pytest.raises(KeyError):
            AttributeSet().value("weight")

    def test_round_trip(self):
        attrs = AttributeSet(portable=True, edible=True, cuttable=True)
        assert AttributeSet.from_dict(attrs.to_dict()) == attrs


class TestEntityNames:
    def test_plain_entity_names(self):
        ent = Entity(id="e1", base_name="spoon",
                     attributes=AttributeSet(portable=True))
        assert ent.noun == "spoon"
        assert ent.display_name == "spoon"
        assert ent.qualified_name == "spoon"

    def test_made_up_name_replaces_base(self):
        ent = Entity(id="e1", base_name="tomato", made_up_name="ghargh",
                     attributes=AttributeSet(portable=True, edible=True))
        assert ent.noun == "ghargh"
        assert ent.display_name == "ghargh"

    def test_modifier_comes_before_state_prefixes(self):
        ent = Entity(
            id="e1", base_name="onion", modifier="rusty",
            attributes=AttributeSet(portable=True, cuttable=True),
            cut_state="sliced", state_prefixes=["sliced"],
        )
        assert ent.display_name == "sliced onion"
        assert ent.qualified_name == "rusty sliced onion"
        assert ent.display_name in ent.qualified_name

    def test_qualifiers_include_modifier_and_earned_words(self):
        ent = Entity(
            id="e1", base_name="potato", modifier="red",
            attributes=AttributeSet(portable=True, cuttable=True),
            cut_state="diced", state_prefixes=["fried", "diced"],
        )
        assert ent.qualifiers == {"red", "fried", "diced"}

    def test_state_consistency_enforced(self):
        with pytest.raises(ValueError):
            Entity(id="e1", base_name="rock", attributes=AttributeSet(),
                   cut_state="uncut")
        with pytest.raises(ValueError):
            Entity(id="e1", base_name="oven",
                   attributes=AttributeSet(openable=True, holder=True,
                                           heat_source=True))

    def test_round_trip(self):
        ent = Entity(
            id="e9", base_name="carrot", modifier="small",
            attributes=AttributeSet(portable=True, cuttable=True, edible=True),
            cut_state="chopped", state_prefixes=["chopped"],
        )
        assert Entity.from_dict(ent.to_dict()) == ent

    def test_state_word_inventories(self):
        assert set(CUT_WORDS) == {"sliced", "chopped", "diced"}
        assert "cooked" in COOK_WORDS


class TestContainmentQueries:
    def test_room_of_follows_chain(self):
        world, ids = build_two_room_scene()
        assert world.room_of(ids["potato"]) == "loc_kitchen"
        assert world.room_of(ids["counter"]) == "loc_kitchen"
        assert world.room_of(ids["bbq"]) == "loc_backyard"

    def test_room_of_door_is_none(self):
        world, ids = build_two_room_scene()
        assert world.room_of(ids["door"]) is None
        assert world.is_door(ids["door"])
        assert not world.is_door(ids["potato"])

    def test_direct_holder_names(self):
        world, ids = build_two_room_scene()
        assert world.direct_holder(ids["potato"]) == "counter"
        assert world.direct_holder(ids["counter"]) == "kitchen"
        world.containment[ids["knife"]] = "inventory"
        assert world.direct_holder(ids["knife"]) == "inventory"

    def test_direct_holder_uses_made_up_name(self):
        world, ids = build_two_room_scene()
        world.containment[ids["knife"]] = ids["ghargh"]
        # not physical, but the query should still report the visible noun
        assert world.direct_holder(ids["knife"]) == "ghargh"

    def test_contents_lists_immediate_children_only(self):
        world, ids = build_two_room_scene()
        on_counter = {ent.id for ent in world.contents(ids["counter"])}
        assert on_counter == {ids["potato"], ids["knife"], ids["ghargh"]}
        in_kitchen = {ent.id for ent in world.contents("loc_kitchen")}
        assert ids["potato"] not in in_kitchen
        assert ids["counter"] in in_kitchen


class TestVisibility:
    def test_player_sees_current_room_only(self):
        world, ids = build_two_room_scene()
        seen = {ent.id for ent in world.visible_entities()}
        assert ids["bbq"] in seen and ids["chair"] in seen
        assert ids["door"] in seen, "doors on exits are visible from both sides"
        assert ids["counter"] not in seen, "kitchen furniture is a room away"

    def test_open_containers_reveal_contents(self):
        world, ids = build_two_room_scene()
        world.player_at = "loc_kitchen"
        seen = {ent.id for ent in world.visible_entities()}
        assert ids["potato"] in seen, "counter tops are always visible"
        world.containment[ids["potato"]] = ids["oven"]
        seen = {ent.id for ent in world.visible_entities()}
        assert ids["potato"] not in seen, "the oven is closed"
        world.entities[ids["oven"]].open_state = "open"
        seen = {ent.id for ent in world.visible_entities()}
        assert ids["potato"] in seen

    def test_inventory_is_visible_but_not_reachable(self):
        world, ids = build_two_room_scene()
        world.containment[ids["knife"]] = "inventory"
        assert world.visible(ids["knife"])
        assert not world.reachable(ids["knife"])

    def test_reachable_requires_same_room(self):
        world, ids = build_two_room_scene()
        assert world.reachable(ids["bbq"])
        assert not world.reachable(ids["counter"])
        assert world.reachable(ids["door"]), "doors are reachable from either side"
        world.player_at = "loc_kitchen"
        assert world.reachable(ids["door"])

    def test_destroyed_entities_vanish(self):
        world, ids = build_two_room_scene()
        world.player_at = "loc_kitchen"
        del world.containment[ids["ghargh"]]
        world.destroyed.add(ids["ghargh"])
        assert not world.visible(ids["ghargh"])
        assert not world.reachable(ids["ghargh"])


class TestValidation:
    def test_builder_produces_valid_world(self):
        world, _ = build_two_room_scene()
        world.validate()

    def test_asymmetric_exit_rejected(self):
        world, _ = build_two_room_scene()
        del world.locations["loc_kitchen"].exits["north"]
        with pytest.raises(ValueError):
            world.validate()

    def test_inventory_must_hold_portables_only(self):
        world, ids = build_two_room_scene()
        world.containment[ids["counter"]] = "inventory"
        with pytest.raises(ValueError):
            world.validate()

    def test_holder_parent_must_be_holder(self):
        world, ids = build_two_room_scene()
        world.containment[ids["knife"]] = ids["potato"]
        with pytest.raises(ValueError):
            world.validate()

    def test_duplicate_noun_needs_distinct_modifiers(self):
        builder = WorldBuilder()
        room = builder.room("pantry")
        builder.entity("apple", AttributeSet(portable=True, edible=True), at=room)
        builder.entity("apple", AttributeSet(portable=True, edible=True), at=room)
        with pytest.raises(ValueError):
            builder.build()

    def test_duplicate_noun_allowed_with_modifiers(self):
        builder = WorldBuilder()
        room = builder.room("pantry")
        builder.entity("apple", AttributeSet(portable=True, edible=True),
                       at=room, modifier="red")
        builder.entity("apple", AttributeSet(portable=True, edible=True),
                       at=room, modifier="green")
        builder.build().validate()

    def test_serialization_round_trip_preserves_everything(self):
        world, ids = build_two_room_scene()
        world.containment[ids["knife"]] = "inventory"
        from inquest.world import World

        clone = World.from_json(world.to_json())
        assert clone.to_dict() == world.to_dict()
        assert clone.direct_holder(ids["knife"]) == "inventory"
