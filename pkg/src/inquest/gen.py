"""Procedural world generation.

Two difficulty settings share one pipeline.  fixed_map always produces the
same six rooms and exits; random_map grows a connected grid layout with
between 2 and 12 rooms.  Entity count scales with room count: between 3
and 6 entities per room, doors included.

Every draw flows through labeled SplitMix64 streams derived from the config
seed, so an identical config always yields a bit-identical world.  Streams,
in order of use: layout, player, entities, doors, naming, placement.

A generated world always contains a probe kit: one sharp tool, one uncut
cuttable food, one raw cookable food, and one heat source, so any attribute
can be tested by interaction.  At most one heat source sits in any room,
which makes cooking outcomes attributable to a single appliance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .names import NameTable, load_catalog
from .rng import SplitMix64
from .world import (
    ACTIONS, DIRECTIONS, OPPOSITE, STATE_WORDS, CUT_WORDS,
    Entity, Exit, Lexicons, Location, World,
)


class GenerationError(Exception):
    """Raised when a config cannot produce a well-formed world."""


DIFFICULTIES = ("fixed_map", "random_map")


@dataclass(frozen=True)
class GenConfig:
    difficulty: str = "fixed_map"
    seed: int = 0
    n_locations_override: int | None = None
    made_up_names: bool = False

    def __post_init__(self):
        if self.difficulty not in DIFFICULTIES:
            raise GenerationError(f"unknown difficulty {self.difficulty!r}")
        if self.n_locations_override is not None:
            if self.difficulty == "fixed_map":
                raise GenerationError("fixed_map worlds always have 6 locations")
            if self.n_locations_override < 1:
                raise GenerationError("need at least one location")


# Canonical six-room house.  Coordinates are (x, y) with north = +y; the
# exits below are the only edges, identical across every fixed_map seed.
FIXED_ROOM_ORDER = ("kitchen", "backyard", "bedroom", "bathroom", "livingroom", "corridor")
FIXED_EDGES = (
    ("corridor", "north", "livingroom"),
    ("corridor", "west", "bedroom"),
    ("corridor", "east", "bathroom"),
    ("corridor", "south", "kitchen"),
    ("kitchen", "east", "backyard"),
)

_DELTA = {"north": (0, 1), "east": (1, 0), "south": (0, -1), "west": (-1, 0)}

CONSONANTS = "bdfgjklmnprstvwz"
VOWELS = "aeiou"

MADE_UP_PATTERN = r"^[a-z]{3,12}$"

P_EXTRA_EDGE = 0.15
P_DOOR_PER_EDGE = 0.3
P_MODIFIER = 0.3
P_IN_HOLDER = 0.55
P_START_IN_INVENTORY = 0.05
P_PRE_CUT = 0.12
P_CONTAINER_OPEN = 0.5


def generate_made_up_word(rng: SplitMix64, forbidden: set[str]) -> str:
    """A pronounceable 2-3 syllable nonsense word avoiding every known token."""
    for _ in range(1000):
        word = "".join(
            rng.choice(CONSONANTS) + rng.choice(VOWELS)
            for _ in range(rng.randint(2, 3))
        )
        if word not in forbidden:
            return word
    raise GenerationError("could not find a fresh made-up word")


def generate_map_layout(n: int, rng: SplitMix64) -> tuple[list[tuple[int, int]], list[tuple[int, str, int]]]:
    """Grow n rooms on a grid; returns room coordinates and directed edges.

    Room 0 sits at the origin; each later room attaches to a uniformly
    chosen free cell bordering the placed set (a spanning tree), then each
    remaining adjacency becomes an extra edge with probability 0.15.
    """
    if n < 1:
        raise GenerationError("need at least one room")
    coords: list[tuple[int, int]] = [(0, 0)]
    occupied: dict[tuple[int, int], int] = {(0, 0): 0}
    edges: list[tuple[int, str, int]] = []
    for i in range(1, n):
        candidates: list[tuple[tuple[int, int], int, str]] = []
        for idx, (x, y) in enumerate(coords):
            for direction in DIRECTIONS:
                dx, dy = _DELTA[direction]
                cell = (x + dx, y + dy)
                if cell not in occupied:
                    candidates.append((cell, idx, direction))
        cell, parent, direction = rng.choice(candidates)
        coords.append(cell)
        occupied[cell] = i
        edges.append((parent, direction, i))
    linked = {(min(a, b), max(a, b)) for a, _, b in edges}
    for idx, (x, y) in enumerate(coords):
        for direction in ("north", "east"):
            dx, dy = _DELTA[direction]
            other = occupied.get((x + dx, y + dy))
            if other is None:
                continue
            key = (min(idx, other), max(idx, other))
            if key not in linked and rng.chance(P_EXTRA_EDGE):
                linked.add(key)
                edges.append((idx, direction, other))
    return coords, edges


def _pick_rooms_and_edges(config: GenConfig, catalog: NameTable, rng: SplitMix64):
    if config.difficulty == "fixed_map":
        names = list(FIXED_ROOM_ORDER)
        index = {name: i for i, name in enumerate(names)}
        edges = [(index[a], d, index[b]) for a, d, b in FIXED_EDGES]
        return names, edges
    layout_rng = rng.split("layout")
    if config.n_locations_override is not None:
        n = config.n_locations_override
    else:
        n = layout_rng.randint(2, 12)
    if n > len(catalog.locations):
        raise GenerationError(f"catalog has too few location names for {n} rooms")
    _, edges = generate_map_layout(n, layout_rng)
    names = layout_rng.sample(catalog.locations, n)
    return names, edges


def _assign_modifiers(entities: list[Entity], catalog: NameTable, rng: SplitMix64) -> None:
    """Duplicated nouns get distinct modifiers; singles get one by chance."""
    groups: dict[str, list[Entity]] = {}
    for ent in entities:
        groups.setdefault(ent.base_name, []).append(ent)
    for name, group in groups.items():
        if len(group) == 1:
            if rng.chance(P_MODIFIER):
                group[0].modifier = rng.choice(catalog.modifiers)
            continue
        if len(group) > len(catalog.modifiers):
            raise GenerationError(f"too many duplicates of {name!r} to disambiguate")
        mods = rng.sample(catalog.modifiers, len(group))
        for ent, mod in zip(group, mods):
            ent.modifier = mod


def generate_world(config: GenConfig, catalog: NameTable | None = None) -> World:
    catalog = catalog or load_catalog()
    rng = SplitMix64(config.seed)

    room_names, edge_list = _pick_rooms_and_edges(config, catalog, rng)
    locations: dict[str, Location] = {}
    room_ids = []
    for i, name in enumerate(room_names):
        loc_id = f"r{i}"
        locations[loc_id] = Location(id=loc_id, name=name)
        room_ids.append(loc_id)

    player_at = room_ids[rng.split("player").randrange(len(room_ids))]

    n_rooms = len(room_ids)
    entity_rng = rng.split("entities")
    n_entities = entity_rng.randint(3 * n_rooms, 6 * n_rooms)

    entities: dict[str, Entity] = {}
    containment: dict[str, str] = {}
    next_id = [0]

    def new_entity(base_name: str, **overrides) -> Entity:
        attrs = catalog.attributes_of(base_name)
        ent = Entity(
            id=f"e{next_id[0]}",
            base_name=base_name,
            attributes=attrs,
            open_state="closed" if attrs.openable else "not-openable",
            cook_state="raw" if attrs.cookable else "not-cookable",
            cut_state="uncut" if attrs.cuttable else "not-cuttable",
            **overrides,
        )
        next_id[0] += 1
        entities[ent.id] = ent
        return ent

    # Doors first: they occupy map edges, not rooms.
    door_rng = rng.split("doors")
    door_budget = min(len(edge_list), len(catalog.door_modifiers), n_entities - 5)
    doors: list[tuple[Entity, tuple[int, str, int]]] = []
    if door_budget > 0:
        shuffled_edges = list(edge_list)
        door_rng.shuffle(shuffled_edges)
        door_mods = door_rng.sample(catalog.door_modifiers, door_budget)
        for edge in shuffled_edges:
            if len(doors) >= door_budget:
                break
            if door_rng.chance(P_DOOR_PER_EDGE):
                ent = new_entity(door_rng.choice(catalog.door_names))
                ent.modifier = door_mods[len(doors)]
                ent.open_state = "open" if door_rng.chance(0.5) else "closed"
                doors.append((ent, edge))

    for a, direction, b in edge_list:
        door_id = None
        for ent, (ea, _, eb) in doors:
            if (ea, eb) == (a, b):
                door_id = ent.id
                break
        locations[room_ids[a]].exits[direction] = Exit(to=room_ids[b], door=door_id)
        locations[room_ids[b]].exits[OPPOSITE[direction]] = Exit(to=room_ids[a], door=door_id)

    # Probe kit: guarantees every attribute is testable somewhere.
    kit = [
        new_entity(entity_rng.choice(catalog.sharp_names)),
        new_entity(entity_rng.choice(catalog.cuttable_names)),
        new_entity(entity_rng.choice(catalog.cookable_names)),
        new_entity(entity_rng.choice(catalog.heat_source_names)),
    ]
    kit_ids = {ent.id for ent in kit}

    heat_rooms: set[str] = set()

    fill: list[Entity] = []
    remaining = n_entities - len(doors) - len(kit)
    attempts = 0
    while len(fill) < remaining:
        attempts += 1
        if attempts > 50 * n_entities + 1000:
            raise GenerationError("entity fill did not converge")
        name = entity_rng.choice(catalog.placeable_names)
        if catalog.attributes_of(name).heat_source:
            # Heat sources are capped at one per room.
            placed_heat = 1 + sum(1 for e in fill if e.attributes.heat_source)
            if placed_heat >= n_rooms:
                continue
        fill.append(new_entity(name))

    naming_rng = rng.split("naming")
    non_door = kit + fill
    _assign_modifiers(non_door, catalog, naming_rng)

    subject_id = None
    if config.made_up_names:
        if not fill:
            raise GenerationError("no entity eligible for a made-up name")
        subject = naming_rng.choice(fill)
        forbidden = catalog.all_tokens | {e.base_name for e in entities.values()}
        subject.made_up_name = generate_made_up_word(naming_rng, forbidden)
        subject_id = subject.id

    # Placement: holders first so portables can land inside them.
    placement_rng = rng.split("placement")
    holders = [e for e in non_door if e.attributes.holder]
    portables = [e for e in non_door if e.attributes.portable]
    for ent in holders:
        if ent.attributes.heat_source:
            open_rooms = [rid for rid in room_ids if rid not in heat_rooms]
            if not open_rooms:
                raise GenerationError("no room left for a heat source")
            room = open_rooms[placement_rng.randrange(len(open_rooms))]
            heat_rooms.add(room)
        else:
            room = placement_rng.choice(room_ids)
        containment[ent.id] = room
        if ent.attributes.openable:
            ent.open_state = "open" if placement_rng.chance(P_CONTAINER_OPEN) else "closed"

    for ent in portables:
        allow_inventory = ent.id != subject_id
        if allow_inventory and placement_rng.chance(P_START_IN_INVENTORY):
            containment[ent.id] = "inventory"
        elif holders and placement_rng.chance(P_IN_HOLDER):
            containment[ent.id] = placement_rng.choice(holders).id
        else:
            containment[ent.id] = placement_rng.choice(room_ids)
        if (
            ent.attributes.cuttable
            and ent.id not in kit_ids
            and ent.id != subject_id
            and placement_rng.chance(P_PRE_CUT)
        ):
            word = placement_rng.choice(CUT_WORDS)
            ent.cut_state = word
            ent.state_prefixes = [word]

    modifiers = sorted({e.modifier for e in entities.values() if e.modifier})
    modifiers += list(STATE_WORDS)
    objects = sorted(
        {e.base_name for e in entities.values()}
        | {e.made_up_name for e in entities.values() if e.made_up_name}
    )
    objects += list(DIRECTIONS)

    world = World(
        locations=locations,
        entities=entities,
        containment=containment,
        player_at=player_at,
        lexicons=Lexicons(list(ACTIONS), modifiers, objects),
        rng_seed=config.seed,
    )
    world.validate()
    return world
