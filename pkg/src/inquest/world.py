"""World state: attributes, entities, locations, containment, and queries.

A world is a small map of connected locations populated with entities.
Entities live in a containment forest whose roots are locations or the
player's inventory; doors are the one exception, they sit on exits shared
by two locations.  All mutation happens through the command engine; this
module only defines state, consistency rules, and read-only queries.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace as dc_replace

ACTIONS = (
    "look", "inventory", "go", "examine", "open", "close", "eat", "drink",
    "drop", "take", "put", "insert", "cook", "slice", "chop", "dice", "wait",
)

DIRECTIONS = ("north", "east", "south", "west")

OPPOSITE = {"north": "south", "south": "north", "east": "west", "west": "east"}

# Words earned through cutting and cooking; always part of the modifier
# lexicon so commands like "take diced potato" parse.
CUT_WORDS = ("sliced", "chopped", "diced")
COOK_WORDS = ("fried", "roasted", "grilled", "cooked")
STATE_WORDS = CUT_WORDS + COOK_WORDS

ATTRIBUTE_NAMES = (
    "edible", "drinkable", "portable", "openable", "cuttable", "sharp",
    "heat_source", "cookable", "holder",
)

INVENTORY = "inventory"


@dataclass(frozen=True)
class AttributeSet:
    """The nine boolean attributes an entity can possess.

    Construction enforces the physical entailments, so an inconsistent
    combination (an edible thing that cannot be carried, a carryable heat
    source) can never enter a world.
    """

    edible: bool = False
    drinkable: bool = False
    portable: bool = False
    openable: bool = False
    cuttable: bool = False
    sharp: bool = False
    heat_source: bool = False
    cookable: bool = False
    holder: bool = False

    def __post_init__(self):
        for attr in ("sharp", "edible", "drinkable", "cookable", "cuttable"):
            if getattr(self, attr) and not self.portable:
                raise ValueError(f"{attr} entities must be portable")
        for attr in ("heat_source", "holder"):
            if getattr(self, attr) and self.portable:
                raise ValueError(f"{attr} entities must not be portable")

    def value(self, name: str) -> bool:
        if name not in ATTRIBUTE_NAMES:
            raise KeyError(f"unknown attribute {name!r}")
        return getattr(self, name)

    def replace(self, **changes) -> "AttributeSet":
        return dc_replace(self, **changes)

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in ATTRIBUTE_NAMES}

    @classmethod
    def from_dict(cls, data: dict) -> "AttributeSet":
        return cls(**{name: bool(data.get(name, False)) for name in ATTRIBUTE_NAMES})


@dataclass
class Entity:
    """One interactive object.

    base_name is the catalog noun; when a made-up word hides the entity's
    identity, made_up_name replaces it everywhere the entity is rendered or
    referenced.  state_prefixes collect words earned through cutting and
    cooking ("diced", "fried"), newest first.
    """

    id: str
    base_name: str
    attributes: AttributeSet
    modifier: str | None = None
    made_up_name: str | None = None
    open_state: str = "not-openable"
    cook_state: str = "not-cookable"
    cut_state: str = "not-cuttable"
    state_prefixes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if (self.open_state != "not-openable") != self.attributes.openable:
            raise ValueError(f"{self.id}: open_state inconsistent with openable")
        if (self.cook_state != "not-cookable") != self.attributes.cookable:
            raise ValueError(f"{self.id}: cook_state inconsistent with cookable")
        if (self.cut_state != "not-cuttable") != self.attributes.cuttable:
            raise ValueError(f"{self.id}: cut_state inconsistent with cuttable")

    @property
    def noun(self) -> str:
        """The single token commands use to name this entity."""
        return self.made_up_name or self.base_name

    @property
    def display_name(self) -> str:
        """Noun plus earned state prefixes: 'diced potato', 'fried chicken'."""
        return " ".join(self.state_prefixes + [self.noun])

    @property
    def qualified_name(self) -> str:
        """Display name with the modifier in front, as rendered in text.

        The modifier comes first so the display name stays one contiguous
        phrase: 'rusty sliced onion' contains 'sliced onion' verbatim.
        """
        if self.modifier:
            return " ".join([self.modifier] + self.state_prefixes + [self.noun])
        return self.display_name

    @property
    def qualifiers(self) -> set[str]:
        """Words accepted as the modifier slot when resolving this entity."""
        words = set(self.state_prefixes)
        if self.modifier:
            words.add(self.modifier)
        return words

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "base_name": self.base_name,
            "attributes": self.attributes.to_dict(),
            "modifier": self.modifier,
            "made_up_name": self.made_up_name,
            "open_state": self.open_state,
            "cook_state": self.cook_state,
            "cut_state": self.cut_state,
            "state_prefixes": list(self.state_prefixes),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Entity":
        return cls(
            id=data["id"],
            base_name=data["base_name"],
            attributes=AttributeSet.from_dict(data["attributes"]),
            modifier=data.get("modifier"),
            made_up_name=data.get("made_up_name"),
            open_state=data["open_state"],
            cook_state=data["cook_state"],
            cut_state=data["cut_state"],
            state_prefixes=list(data.get("state_prefixes", [])),
        )


@dataclass
class Exit:
    to: str
    door: str | None = None


@dataclass
class Location:
    id: str
    name: str
    exits: dict[str, Exit] = field(default_factory=dict)


@dataclass
class Lexicons:
    """The per-game vocabulary, split into the three command slots."""

    actions: list[str]
    modifiers: list[str]
    objects: list[str]

    def to_dict(self) -> dict:
        return {
            "actions": list(self.actions),
            "modifiers": list(self.modifiers),
            "objects": list(self.objects),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Lexicons":
        return cls(list(data["actions"]), list(data["modifiers"]), list(data["objects"]))


@dataclass
class World:
    locations: dict[str, Location]
    entities: dict[str, Entity]
    containment: dict[str, str]
    player_at: str
    lexicons: Lexicons
    rng_seed: int
    destroyed: set[str] = field(default_factory=set)

    # -- structure queries ------------------------------------------------

    def location_named(self, name: str) -> Location | None:
        for loc in self.locations.values():
            if loc.name == name:
                return loc
        return None

    def contents(self, parent_id: str) -> list[Entity]:
        """Entities whose immediate containment parent is parent_id."""
        return [
            self.entities[eid]
            for eid, pid in self.containment.items()
            if pid == parent_id
        ]

    def inventory_items(self) -> list[Entity]:
        return self.contents(INVENTORY)

    def doors_at(self, loc_id: str) -> list[Entity]:
        """Doors on the exits of a location, in direction order."""
        loc = self.locations[loc_id]
        out = []
        for direction in DIRECTIONS:
            ex = loc.exits.get(direction)
            if ex is not None and ex.door is not None:
                out.append(self.entities[ex.door])
        return out

    def is_door(self, eid: str) -> bool:
        return eid in self.entities and eid not in self.containment and eid not in self.destroyed

    def room_of(self, eid: str) -> str | None:
        """Location id at the root of an entity's containment chain.

        None for inventory items, doors, and destroyed entities.
        """
        seen = set()
        cur = eid
        while cur in self.containment:
            if cur in seen:
                raise ValueError(f"containment cycle at {cur}")
            seen.add(cur)
            cur = self.containment[cur]
            if cur == INVENTORY:
                return None
            if cur in self.locations:
                return cur
        return None

    def direct_holder_id(self, eid: str) -> str:
        if eid not in self.entities:
            raise KeyError(f"unknown entity {eid!r}")
        if eid not in self.containment:
            raise LookupError(f"{eid} is not in the containment forest")
        return self.containment[eid]

    def direct_holder(self, eid: str) -> str:
        """Name of the immediate holder: a holder entity's noun, a location
        name, or 'inventory'."""
        parent = self.direct_holder_id(eid)
        if parent == INVENTORY:
            return INVENTORY
        if parent in self.locations:
            return self.locations[parent].name
        return self.entities[parent].noun

    def holding(self, eid: str) -> bool:
        return self.containment.get(eid) == INVENTORY

    # -- visibility -------------------------------------------------------

    def _contents_visible(self, holder: Entity) -> bool:
        return holder.attributes.holder and holder.open_state != "closed"

    def visible_entities(self) -> list[Entity]:
        """Entities the player can currently refer to.

        Everything in the current room except the contents of closed
        containers, plus doors on the room's exits, plus inventory items.
        """
        out: list[Entity] = []

        def walk(parent_id: str):
            for ent in self.contents(parent_id):
                out.append(ent)
                if self._contents_visible(ent):
                    walk(ent.id)

        walk(self.player_at)
        out.extend(self.doors_at(self.player_at))
        out.extend(self.inventory_items())
        return out

    def visible(self, eid: str) -> bool:
        return any(ent.id == eid for ent in self.visible_entities())

    def reachable(self, eid: str) -> bool:
        """Visible and physically at the player's location.

        Inventory items are held, not reachable; doors count as reachable
        from either side.
        """
        if eid in self.destroyed:
            return False
        if self.is_door(eid):
            return any(door.id == eid for door in self.doors_at(self.player_at))
        return self.visible(eid) and self.room_of(eid) == self.player_at

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "version": 1,
            "rng_seed": self.rng_seed,
            "player_at": self.player_at,
            "locations": [
                {
                    "id": loc.id,
                    "name": loc.name,
                    "exits": {
                        d: {"to": ex.to, "door": ex.door}
                        for d, ex in sorted(loc.exits.items())
                    },
                }
                for loc in self.locations.values()
            ],
            "entities": [ent.to_dict() for ent in self.entities.values()],
            "containment": dict(self.containment),
            "destroyed": sorted(self.destroyed),
            "lexicons": self.lexicons.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "World":
        if data.get("version") != 1:
            raise ValueError(f"unsupported world snapshot version {data.get('version')!r}")
        locations = {}
        for raw in data["locations"]:
            exits = {d: Exit(to=e["to"], door=e.get("door")) for d, e in raw["exits"].items()}
            locations[raw["id"]] = Location(id=raw["id"], name=raw["name"], exits=exits)
        entities = {raw["id"]: Entity.from_dict(raw) for raw in data["entities"]}
        world = cls(
            locations=locations,
            entities=entities,
            containment=dict(data["containment"]),
            player_at=data["player_at"],
            lexicons=Lexicons.from_dict(data["lexicons"]),
            rng_seed=data["rng_seed"],
            destroyed=set(data.get("destroyed", [])),
        )
        world.validate()
        return world

    @classmethod
    def from_json(cls, text: str) -> "World":
        return cls.from_dict(json.loads(text))

    # -- consistency ------------------------------------------------------

    def validate(self) -> None:
        """Check every structural invariant; raises ValueError on the first
        violation.  Cheap enough to run after generation and in tests."""
        if self.player_at not in self.locations:
            raise ValueError(f"player_at {self.player_at!r} is not a location")
        names = [loc.name for loc in self.locations.values()]
        if len(set(names)) != len(names):
            raise ValueError("location names must be unique")
        for loc in self.locations.values():
            for direction, ex in loc.exits.items():
                if direction not in DIRECTIONS:
                    raise ValueError(f"bad direction {direction!r} in {loc.id}")
                other = self.locations.get(ex.to)
                if other is None:
                    raise ValueError(f"exit {loc.id}->{ex.to} dangles")
                back = other.exits.get(OPPOSITE[direction])
                if back is None or back.to != loc.id:
                    raise ValueError(f"exit {loc.id} {direction} is not symmetric")
                if back.door != ex.door:
                    raise ValueError(f"door mismatch on {loc.id} {direction}")
                if ex.door is not None:
                    door = self.entities.get(ex.door)
                    if door is None or not door.attributes.openable:
                        raise ValueError(f"exit {loc.id} {direction} has a bad door")
        for eid, parent in self.containment.items():
            ent = self.entities.get(eid)
            if ent is None:
                raise ValueError(f"containment references unknown entity {eid}")
            if eid in self.destroyed:
                raise ValueError(f"destroyed entity {eid} still contained")
            if parent == INVENTORY:
                if not ent.attributes.portable:
                    raise ValueError(f"{eid} in inventory but not portable")
                continue
            if parent in self.locations:
                continue
            holder = self.entities.get(parent)
            if holder is None:
                raise ValueError(f"{eid} held by unknown parent {parent}")
            if not holder.attributes.holder:
                raise ValueError(f"{eid} held by non-holder {parent}")
            if self.room_of(eid) is None:
                raise ValueError(f"{eid} containment chain reaches no location")
        for ent in self.entities.values():
            in_forest = ent.id in self.containment
            is_destroyed = ent.id in self.destroyed
            door_like = not in_forest and not is_destroyed
            if door_like and not ent.attributes.openable:
                raise ValueError(f"{ent.id} is outside containment but not a door")
            noun_source = ent.made_up_name or ent.base_name
            if noun_source not in self.lexicons.objects:
                raise ValueError(f"{ent.id} noun {noun_source!r} missing from object lexicon")
            if ent.base_name not in self.lexicons.objects:
                raise ValueError(f"{ent.id} base {ent.base_name!r} missing from object lexicon")
            if ent.modifier and ent.modifier not in self.lexicons.modifiers:
                raise ValueError(f"{ent.id} modifier {ent.modifier!r} missing from lexicon")
        # Same-base entities must be told apart by their modifiers.
        by_base: dict[str, list[Entity]] = {}
        for ent in self.entities.values():
            if ent.id in self.destroyed:
                continue
            by_base.setdefault(ent.noun, []).append(ent)
        for noun, group in by_base.items():
            mods = [ent.modifier for ent in group]
            if len(mods) != len(set(mods)):
                raise ValueError(f"entities named {noun!r} share a modifier")


class WorldBuilder:
    """Hand-assembly of small worlds for tests and transcripts."""

    def __init__(self, rng_seed: int = 0):
        self.rng_seed = rng_seed
        self._locations: dict[str, Location] = {}
        self._entities: dict[str, Entity] = {}
        self._containment: dict[str, str] = {}
        self._player_at: str | None = None
        self._next = 0

    def _fresh_id(self, prefix: str) -> str:
        self._next += 1
        return f"{prefix}{self._next}"

    def room(self, name: str) -> str:
        loc_id = f"loc_{name}"
        self._locations[loc_id] = Location(id=loc_id, name=name)
        if self._player_at is None:
            self._player_at = loc_id
        return loc_id

    def connect(self, a: str, direction: str, b: str, door: str | None = None) -> None:
        self._locations[a].exits[direction] = Exit(to=b, door=door)
        self._locations[b].exits[OPPOSITE[direction]] = Exit(to=a, door=door)

    def door(self, between: tuple[str, str, str], modifier: str | None = None,
             base_name: str = "door", is_open: bool = False) -> str:
        """Create a door on the exit (room_a, direction, room_b)."""
        eid = self._fresh_id("d")
        self._entities[eid] = Entity(
            id=eid,
            base_name=base_name,
            attributes=AttributeSet(openable=True),
            modifier=modifier,
            open_state="open" if is_open else "closed",
        )
        a, direction, b = between
        self.connect(a, direction, b, door=eid)
        return eid

    def entity(self, base_name: str, attributes: AttributeSet, at: str,
               modifier: str | None = None, made_up_name: str | None = None,
               is_open: bool = False, cut: str | None = None) -> str:
        eid = self._fresh_id("e")
        open_state = "not-openable"
        if attributes.openable:
            open_state = "open" if is_open else "closed"
        cook_state = "raw" if attributes.cookable else "not-cookable"
        cut_state = "not-cuttable"
        prefixes = []
        if attributes.cuttable:
            cut_state = cut or "uncut"
            if cut:
                prefixes = [cut]
        self._entities[eid] = Entity(
            id=eid,
            base_name=base_name,
            attributes=attributes,
            modifier=modifier,
            made_up_name=made_up_name,
            open_state=open_state,
            cook_state=cook_state,
            cut_state=cut_state,
            state_prefixes=prefixes,
        )
        self._containment[eid] = at
        return eid

    def player(self, loc_id: str) -> None:
        self._player_at = loc_id

    def build(self) -> World:
        modifiers = sorted(
            {e.modifier for e in self._entities.values() if e.modifier}
        ) + list(STATE_WORDS)
        objects = sorted(
            {e.base_name for e in self._entities.values()}
            | {e.made_up_name for e in self._entities.values() if e.made_up_name}
        ) + list(DIRECTIONS)
        world = World(
            locations=self._locations,
            entities=self._entities,
            containment=self._containment,
            player_at=self._player_at,
            lexicons=Lexicons(list(ACTIONS), modifiers, objects),
            rng_seed=self.rng_seed,
        )
        world.validate()
        return world
