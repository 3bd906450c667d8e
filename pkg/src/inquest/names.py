"""The name catalog: every noun the generator can draw, with its attributes.

The catalog is a versioned data file so the vocabulary is stable across
runs and inspectable outside Python.  Attributes are a fixed property of
each catalog name (an apple is always edible); what varies between games
is which entities exist, where they sit, and which one hides behind a
made-up word.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .world import ACTIONS, DIRECTIONS, STATE_WORDS, AttributeSet

# Cooking renames by the heat source that did the work.
COOK_PREFIX_BY_HEAT = {"stove": "fried", "oven": "roasted", "bbq": "grilled"}
DEFAULT_COOK_PREFIX = "cooked"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    category: str
    attributes: AttributeSet


def _attributes_for(raw: dict) -> AttributeSet:
    category = raw["category"]
    if category in ("food", "tool", "prop"):
        return AttributeSet(
            portable=True,
            edible=raw.get("edible", False),
            drinkable=raw.get("drinkable", False),
            cuttable=raw.get("cuttable", False),
            cookable=raw.get("cookable", False),
            sharp=raw.get("sharp", False),
        )
    if category == "supporter":
        return AttributeSet(holder=True)
    if category == "container":
        return AttributeSet(holder=True, openable=True)
    if category == "appliance":
        return AttributeSet(heat_source=True, holder=True,
                            openable=raw.get("openable", False))
    if category == "door":
        return AttributeSet(openable=True)
    raise ValueError(f"unknown category {category!r}")


class NameTable:
    """Indexed view over the catalog data file."""

    def __init__(self, data: dict):
        if data.get("version") != 1:
            raise ValueError(f"unsupported catalog version {data.get('version')!r}")
        self.locations: list[str] = list(data["locations"])
        self.fixed_map_rooms: list[str] = list(data["fixed_map_rooms"])
        self.modifiers: list[str] = list(data["modifiers"])
        self.door_modifiers: list[str] = list(data["door_modifiers"])
        self.entries: dict[str, CatalogEntry] = {}
        for raw in data["entities"]:
            entry = CatalogEntry(raw["name"], raw["category"], _attributes_for(raw))
            if entry.name in self.entries:
                raise ValueError(f"duplicate catalog name {entry.name!r}")
            self.entries[entry.name] = entry
        self._check_tokens()

    def _check_tokens(self) -> None:
        reserved = set(ACTIONS) | set(DIRECTIONS) | set(STATE_WORDS) | {"inventory"}
        for token in list(self.entries) + self.locations + self.modifiers:
            if not token.isalpha() or token != token.lower() or " " in token:
                raise ValueError(f"catalog token {token!r} is not a single lowercase word")
            if token in reserved:
                raise ValueError(f"catalog token {token!r} collides with a reserved word")
        overlap = set(self.entries) & set(self.modifiers)
        if overlap:
            raise ValueError(f"names double as modifiers: {sorted(overlap)}")

    # -- category views ---------------------------------------------------

    def names(self, *categories: str) -> list[str]:
        return [e.name for e in self.entries.values() if e.category in categories]

    @property
    def placeable_names(self) -> list[str]:
        """Everything the generator can drop into a room (doors excluded)."""
        return [e.name for e in self.entries.values() if e.category != "door"]

    @property
    def door_names(self) -> list[str]:
        return self.names("door")

    @property
    def sharp_names(self) -> list[str]:
        return [e.name for e in self.entries.values() if e.attributes.sharp]

    @property
    def cuttable_names(self) -> list[str]:
        return [e.name for e in self.entries.values() if e.attributes.cuttable]

    @property
    def cookable_names(self) -> list[str]:
        return [e.name for e in self.entries.values() if e.attributes.cookable]

    @property
    def heat_source_names(self) -> list[str]:
        return [e.name for e in self.entries.values() if e.attributes.heat_source]

    @property
    def all_tokens(self) -> set[str]:
        """Every token a made-up word must avoid colliding with."""
        return (
            set(self.entries) | set(self.locations) | set(self.modifiers)
            | set(ACTIONS) | set(DIRECTIONS) | set(STATE_WORDS) | {"inventory"}
        )

    def attributes_of(self, name: str) -> AttributeSet:
        return self.entries[name].attributes


_cached: NameTable | None = None


def load_catalog() -> NameTable:
    """Load the packaged catalog (cached; the table is immutable in use)."""
    global _cached
    if _cached is None:
        text = resources.files("inquest.data").joinpath("catalog.json").read_text("utf-8")
        _cached = NameTable(json.loads(text))
    return _cached
