"""Command parsing, entity resolution, and world dynamics.

Commands are triplets: an action, an optional modifier, and an object,
e.g. "take red ghargh" or "go north".  The action must come from the
action lexicon; the object names an entity by its single-token noun; the
modifier slot disambiguates between entities sharing a noun and also
accepts earned state words ("take diced potato").

put and insert name the destination holder; the item moved is the first
thing in the inventory, since the triplet grammar has no second object
slot.  cook names the food; the heat source is whichever one is in the
room (world generation never places two in one room).

Failed commands never change the world.  Every failure renders a fixed
template, four of which are pinned verbatim to the reference transcript:
the unknown-verb line, the not-visible line, the take-first nudge, and
the eat success line.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .names import COOK_PREFIX_BY_HEAT, DEFAULT_COOK_PREFIX
from .templates import (
    Templates, load_templates, name_list, render_inventory,
    render_observation, with_article,
)
from .world import DIRECTIONS, Entity, World, INVENTORY

CUT_WORD_BY_ACTION = {"slice": "sliced", "chop": "chopped", "dice": "diced"}

OBJECT_ACTIONS = {
    "go", "examine", "open", "close", "eat", "drink", "drop", "take",
    "put", "insert", "cook", "slice", "chop", "dice",
}
BARE_ACTIONS = {"look", "inventory", "wait"}


class ParseError(Exception):
    def __init__(self, tag: str, **kw):
        super().__init__(tag)
        self.tag = tag
        self.kw = kw


@dataclass(frozen=True)
class Command:
    action: str
    modifier: str | None = None
    obj: str | None = None

    @property
    def text(self) -> str:
        parts = [self.action]
        if self.modifier:
            parts.append(self.modifier)
        if self.obj:
            parts.append(self.obj)
        return " ".join(parts)


@dataclass
class Feedback:
    text: str
    success: bool
    effect: str
    reason: str | None = None
    target: str | None = None
    instrument: str | None = None
    item: str | None = None
    destination: str | None = None
    direction: str | None = None

    def to_dict(self) -> dict:
        out = {"text": self.text, "success": self.success, "effect": self.effect}
        for key in ("reason", "target", "instrument", "item", "destination", "direction"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Feedback":
        return cls(
            text=data["text"], success=data["success"], effect=data["effect"],
            reason=data.get("reason"), target=data.get("target"),
            instrument=data.get("instrument"), item=data.get("item"),
            destination=data.get("destination"), direction=data.get("direction"),
        )


def parse(world: World, text: str) -> Command:
    """Split a raw line into the triplet.  Unknown verbs raise ParseError."""
    tokens = text.strip().lower().split()
    if not tokens or tokens[0] not in world.lexicons.actions:
        raise ParseError("fail_verb")
    action = tokens[0]
    rest = tokens[1:]
    modifier = None
    if len(rest) >= 2 and rest[0] in world.lexicons.modifiers:
        modifier = rest[0]
        rest = rest[1:]
    obj = " ".join(rest) if rest else None
    return Command(action=action, modifier=modifier, obj=obj)


def resolve_entity(world: World, modifier: str | None, obj: str) -> Entity | Feedback:
    """Match a (modifier, noun) pair against the visible entities.

    Returns the unique match, or a failed Feedback for zero or several.
    """
    tpl = load_templates()
    matches = [
        ent for ent in world.visible_entities()
        if ent.noun == obj and (modifier is None or modifier in ent.qualifiers)
    ]
    if not matches:
        return Feedback(tpl.feedback("fail_not_visible"), False, "no-op",
                        reason="fail_not_visible")
    if len(matches) > 1:
        options = " or ".join("the " + ent.qualified_name for ent in matches)
        return Feedback(tpl.feedback("fail_ambiguous", options=options), False,
                        "no-op", reason="fail_ambiguous")
    return matches[0]


def _fail(tpl: Templates, tag: str, **kw) -> Feedback:
    extras = {k: v for k, v in kw.items() if k in ("target", "direction", "destination")}
    fmt = {k: v for k, v in kw.items() if k not in extras}
    return Feedback(tpl.feedback(tag, **fmt), False, "no-op", reason=tag, **extras)


def _reachable_heat_sources(world: World) -> list[Entity]:
    return [
        ent for ent in world.visible_entities()
        if ent.attributes.heat_source and world.reachable(ent.id)
    ]


def _held_sharps(world: World, excluding: str) -> list[Entity]:
    return [
        ent for ent in world.inventory_items()
        if ent.attributes.sharp and ent.id != excluding
    ]


def apply(world: World, command: Command) -> Feedback:
    """Execute one command; mutates the world only on success."""
    tpl = load_templates()
    action = command.action

    if action in BARE_ACTIONS:
        if command.obj is not None:
            return _fail(tpl, "fail_extra_object", verb=action)
        if action == "look":
            return Feedback(render_observation(world), True, "looked")
        if action == "inventory":
            return Feedback(render_inventory(world), True, "looked")
        return Feedback(tpl.feedback("waited"), True, "waited")

    if action == "go":
        if command.obj is None:
            return _fail(tpl, "fail_go_where")
        direction = command.obj
        exit_ = world.locations[world.player_at].exits.get(direction)
        if direction not in DIRECTIONS or exit_ is None:
            return _fail(tpl, "fail_no_exit")
        if exit_.door is not None:
            door = world.entities[exit_.door]
            if door.open_state == "closed":
                return _fail(tpl, "fail_door_closed", name=door.qualified_name,
                             target=door.id)
        world.player_at = exit_.to
        return Feedback(tpl.feedback("moved", direction=direction), True,
                        "moved", direction=direction)

    if command.obj is None:
        return _fail(tpl, "fail_missing_object", verb=action)

    found = resolve_entity(world, command.modifier, command.obj)
    if isinstance(found, Feedback):
        return found
    ent = found
    name = ent.qualified_name

    if action == "examine":
        state = ""
        if ent.open_state in ("open", "closed"):
            state = f" It is {ent.open_state}."
        return Feedback(tpl.feedback("examined", name=name, state=state), True,
                        "examined", target=ent.id)

    if action == "open":
        if not ent.attributes.openable:
            return _fail(tpl, "fail_not_openable", name=name, target=ent.id)
        if ent.open_state == "open":
            return _fail(tpl, "fail_already_open", name=name, target=ent.id)
        ent.open_state = "open"
        contents = world.contents(ent.id)
        if contents:
            text = tpl.feedback("opened_revealing", name=name,
                                list=name_list([c.qualified_name for c in contents]))
        else:
            text = tpl.feedback("opened", name=name)
        return Feedback(text, True, "opened", target=ent.id)

    if action == "close":
        if not ent.attributes.openable:
            return _fail(tpl, "fail_not_closeable", name=name, target=ent.id)
        if ent.open_state == "closed":
            return _fail(tpl, "fail_already_closed", name=name, target=ent.id)
        ent.open_state = "closed"
        return Feedback(tpl.feedback("closed", name=name), True, "closed",
                        target=ent.id)

    if action == "take":
        if world.holding(ent.id):
            return _fail(tpl, "fail_already_held", name=name, target=ent.id)
        if not ent.attributes.portable:
            return _fail(tpl, "fail_fixed", name=name, target=ent.id)
        parent = world.containment[ent.id]
        world.containment[ent.id] = INVENTORY
        if parent in world.entities:
            holder = world.entities[parent].display_name
            text = tpl.feedback("taken_from", name=name, holder=holder)
        else:
            text = tpl.feedback("taken", name=name)
        return Feedback(text, True, "taken", target=ent.id)

    if action == "drop":
        if not world.holding(ent.id):
            return _fail(tpl, "fail_not_held", name=name, target=ent.id)
        world.containment[ent.id] = world.player_at
        return Feedback(tpl.feedback("dropped", name=name), True, "dropped",
                        target=ent.id)

    if action == "eat" or action == "drink":
        if not world.holding(ent.id):
            return _fail(tpl, "fail_take_first", name=name, target=ent.id)
        wanted = ent.attributes.edible if action == "eat" else ent.attributes.drinkable
        if not wanted:
            tag = "fail_not_edible" if action == "eat" else "fail_not_drinkable"
            return _fail(tpl, tag, name=name, target=ent.id)
        del world.containment[ent.id]
        world.destroyed.add(ent.id)
        tag = "eaten" if action == "eat" else "drunk"
        return Feedback(tpl.feedback(tag, name=name), True, tag, target=ent.id)

    if action == "put" or action == "insert":
        items = world.inventory_items()
        if not items:
            return _fail(tpl, "fail_nothing_carried", destination=ent.id)
        item = items[0]
        if action == "put":
            if not ent.attributes.holder or ent.attributes.openable:
                return _fail(tpl, "fail_not_supporter", name=name, target=ent.id)
            world.containment[item.id] = ent.id
            text = tpl.feedback("put", item=item.qualified_name,
                                holder=ent.display_name)
            return Feedback(text, True, "put", target=ent.id, item=item.id,
                            destination=ent.id)
        if not ent.attributes.holder or not ent.attributes.openable:
            return _fail(tpl, "fail_not_container", name=name, target=ent.id)
        if ent.open_state == "closed":
            return _fail(tpl, "fail_container_closed", name=name, target=ent.id)
        world.containment[item.id] = ent.id
        text = tpl.feedback("inserted", item=item.qualified_name,
                            holder=ent.display_name)
        return Feedback(text, True, "inserted", target=ent.id, item=item.id,
                        destination=ent.id)

    if action == "cook":
        if not world.holding(ent.id):
            return _fail(tpl, "fail_take_first", name=name, target=ent.id)
        if not ent.attributes.cookable:
            return _fail(tpl, "fail_not_cookable", name=name, target=ent.id)
        if ent.cook_state == "cooked":
            return _fail(tpl, "fail_already_cooked", name=name, target=ent.id)
        heats = _reachable_heat_sources(world)
        if not heats:
            return _fail(tpl, "fail_no_heat", target=ent.id)
        heat = heats[0]
        word = COOK_PREFIX_BY_HEAT.get(heat.base_name, DEFAULT_COOK_PREFIX)
        ent.cook_state = "cooked"
        ent.state_prefixes.insert(0, word)
        ent.attributes = ent.attributes.replace(edible=True)
        text = tpl.feedback("cooked", name=name, heat=heat.display_name)
        return Feedback(text, True, "cooked", target=ent.id, instrument=heat.id)

    if action in CUT_WORD_BY_ACTION:
        if not world.holding(ent.id):
            return _fail(tpl, "fail_take_first", name=name, target=ent.id)
        if not ent.attributes.cuttable:
            return _fail(tpl, "fail_not_cuttable", name=name, target=ent.id)
        if ent.cut_state != "uncut":
            return _fail(tpl, "fail_already_cut", name=name, target=ent.id)
        sharps = _held_sharps(world, excluding=ent.id)
        if not sharps:
            return _fail(tpl, "fail_no_sharp", name=name, target=ent.id)
        word = CUT_WORD_BY_ACTION[action]
        ent.cut_state = word
        ent.state_prefixes.insert(0, word)
        text = tpl.feedback("cut", verb=action, name=name)
        return Feedback(text, True, "cut", target=ent.id, instrument=sharps[0].id)

    raise AssertionError(f"unhandled action {action!r}")


def parse_failure(error: ParseError) -> Feedback:
    """The feedback an unparseable input line earns."""
    tpl = load_templates()
    return Feedback(tpl.feedback(error.tag, **error.kw), False, "no-op",
                    reason=error.tag)


def apply_text(world: World, text: str) -> tuple[Command | None, Feedback]:
    """Parse and execute one raw input line."""
    try:
        command = parse(world, text)
    except ParseError as err:
        return None, parse_failure(err)
    return command, apply(world, command)


# -- valid command enumeration -------------------------------------------
#
# Built from precondition predicates rather than by running apply, so tests
# can prove the two routes agree by exhaustive application.

def _name_variants(world: World, ent: Entity) -> list[tuple[str | None, str]]:
    """(modifier, noun) pairs that resolve to exactly this entity."""
    out = []
    for modifier in [None] + sorted(ent.qualifiers):
        resolved = resolve_entity(world, modifier, ent.noun)
        if isinstance(resolved, Entity) and resolved.id == ent.id:
            out.append((modifier, ent.noun))
    return out


def _entity_actions(world: World, ent: Entity) -> list[str]:
    """Actions whose preconditions hold for this entity right now."""
    attrs = ent.attributes
    held = world.holding(ent.id)
    out = ["examine"]
    if attrs.openable and ent.open_state == "closed":
        out.append("open")
    if attrs.openable and ent.open_state == "open":
        out.append("close")
    if attrs.portable and not held and not world.is_door(ent.id):
        out.append("take")
    if held:
        out.append("drop")
        if attrs.edible:
            out.append("eat")
        if attrs.drinkable:
            out.append("drink")
        if attrs.cookable and ent.cook_state == "raw" and _reachable_heat_sources(world):
            out.append("cook")
        if attrs.cuttable and ent.cut_state == "uncut" and _held_sharps(world, ent.id):
            out.extend(["slice", "chop", "dice"])
    if world.inventory_items():
        if attrs.holder and not attrs.openable:
            out.append("put")
        if attrs.holder and attrs.openable and ent.open_state == "open":
            out.append("insert")
    return out


def valid_commands(world: World) -> list[str]:
    """Every command string apply would accept in the current state."""
    out = ["look", "inventory", "wait"]
    room = world.locations[world.player_at]
    for direction in DIRECTIONS:
        ex = room.exits.get(direction)
        if ex is None:
            continue
        if ex.door is not None and world.entities[ex.door].open_state == "closed":
            continue
        out.append(f"go {direction}")
    for ent in world.visible_entities():
        variants = _name_variants(world, ent)
        if not variants:
            continue
        for action in _entity_actions(world, ent):
            for modifier, noun in variants:
                if modifier is None:
                    out.append(f"{action} {noun}")
                else:
                    out.append(f"{action} {modifier} {noun}")
    return list(dict.fromkeys(out))
