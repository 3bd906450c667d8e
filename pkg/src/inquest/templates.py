"""Text rendering: room observations and command feedback.

All surface text comes from one versioned catalog file.  Feedback kinds
have exactly one template each; room-description sentences have two or
three variants picked by a seeded hash of the world seed and the thing
being described, so a given world always reads the same way.

Observations describe the player's current room only: its directly
contained entities, the visible contents of open holders, and its exits.
Inventory contents never appear in an observation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .rng import fnv1a64, mix64
from .world import DIRECTIONS, Entity, World

VOWELS = "aeiou"


def article_for(phrase: str) -> str:
    return "an" if phrase[:1] in VOWELS else "a"


def with_article(phrase: str) -> str:
    return f"{article_for(phrase)} {phrase}"


def name_list(phrases: list[str]) -> str:
    """'a diced potato, a red ghargh and a knife'"""
    items = [with_article(p) for p in phrases]
    if len(items) == 1:
        return items[0]
    return ", ".join(items[:-1]) + " and " + items[-1]


def stateful_name(ent: Entity) -> str:
    """Qualified name with the open/closed adjective for openables."""
    if ent.open_state in ("open", "closed"):
        return f"{ent.open_state} {ent.qualified_name}"
    return ent.qualified_name


@dataclass
class Templates:
    data: dict

    def variant(self, kind: str, seed: int, token: str) -> str:
        options = self.data[kind]
        index = mix64(seed ^ fnv1a64(f"{kind}:{token}")) % len(options)
        return options[index]

    def fixed(self, key: str) -> str:
        return self.data[key]

    def feedback(self, tag: str, **kw) -> str:
        return self.data["feedback"][tag].format(**kw)


_cached: Templates | None = None


def load_templates() -> Templates:
    global _cached
    if _cached is None:
        text = resources.files("inquest.data").joinpath("templates.json").read_text("utf-8")
        data = json.loads(text)
        if data.get("version") != 1:
            raise ValueError(f"unsupported template catalog version {data.get('version')!r}")
        _cached = Templates(data)
    return _cached


def _entity_sentences(world: World, ent: Entity, tpl: Templates) -> list[str]:
    out: list[str] = []
    if ent.attributes.holder:
        contents = [c for c in world.contents(ent.id)]
        if ent.attributes.openable:
            if ent.open_state == "closed":
                out.append(tpl.fixed("closed_holder_intro").format(
                    name=with_article(stateful_name(ent))))
                return out
            out.append(tpl.fixed("open_holder_intro").format(
                name=with_article(stateful_name(ent))))
            if contents:
                out.append(tpl.fixed("contents_in").format(
                    holder=ent.qualified_name,
                    list=name_list([c.qualified_name for c in contents])))
            else:
                out.append(tpl.fixed("container_empty"))
            return out
        intro = tpl.variant("entity_intro", world.rng_seed, ent.id)
        out.append(intro.format(name=with_article(ent.qualified_name)))
        if contents:
            out.append(tpl.fixed("contents_on").format(
                holder=ent.qualified_name,
                list=name_list([c.qualified_name for c in contents])))
        else:
            out.append(tpl.fixed("supporter_empty"))
        return out
    intro = tpl.variant("entity_intro", world.rng_seed, ent.id)
    out.append(intro.format(name=with_article(ent.qualified_name)))
    out.append(tpl.variant("entity_flavor", world.rng_seed, ent.id))
    return out


def render_observation(world: World, tpl: Templates | None = None) -> str:
    tpl = tpl or load_templates()
    room = world.locations[world.player_at]
    sentences = [
        tpl.variant("room_intro", world.rng_seed, room.name).format(
            room=room.name, a_room=with_article(room.name)),
        tpl.variant("room_survey", world.rng_seed, room.name),
    ]
    for ent in world.contents(room.id):
        sentences.extend(_entity_sentences(world, ent, tpl))
    for direction in DIRECTIONS:
        ex = room.exits.get(direction)
        if ex is None:
            continue
        if ex.door is not None:
            door = world.entities[ex.door]
            sentences.append(tpl.fixed("exit_door").format(
                name=with_article(stateful_name(door)), direction=direction))
        else:
            sentences.append(tpl.fixed("exit_plain").format(direction=direction))
    return " ".join(sentences)


def render_inventory(world: World, tpl: Templates | None = None) -> str:
    tpl = tpl or load_templates()
    items = world.inventory_items()
    if not items:
        return tpl.feedback("inventory_none")
    return tpl.feedback("inventory_some",
                        list=name_list([e.qualified_name for e in items]))
