"""Built-in baseline agents.

All baselines speak plain text: they read the observation and feedback
strings and emit command lines, exactly like an external agent would over
the wire.  The heuristic explorer in particular never touches engine
internals; everything it knows comes from parsing the text it was shown.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .names import NameTable, load_catalog
from .rng import SplitMix64
from .world import CUT_WORDS, OPPOSITE

_DIRS = ("north", "east", "south", "west")

_ROOM_RES = (
    re.compile(r"You find yourself in an? (\w+)\."),
    re.compile(r"You've just entered an? (\w+)\."),
    re.compile(r"This is the (\w+)\."),
)
_EXIT_PLAIN_RE = re.compile(r"There is an unguarded exit leading (\w+)\.")
_EXIT_DOOR_RE = re.compile(r"There is an? (open|closed) ([\w ]+?) leading (\w+)\.")
_ENTITY_RES = (
    re.compile(r"You can see an? ([\w ]+?) here\."),
    re.compile(r"You see an? ([\w ]+?)\."),
    re.compile(r"You make out an? ([\w ]+?)\."),
)
_CONTENTS_RE = re.compile(r"(?:On|In) the ([\w ]+?) you can see ([\w ,]+?)\.")
_CARRYING_RE = re.compile(r"You are carrying: (.+?)\.$")
_COOKED_WITH_RE = re.compile(r"You cook the [\w ]+ with the ([\w ]+)\.")

_COOK_PREFIXES = ("fried", "roasted", "grilled", "cooked")


def _strip_article(phrase: str) -> tuple[str, ...]:
    tokens = tuple(phrase.split())
    if tokens and tokens[0] in ("a", "an"):
        tokens = tokens[1:]
    return tokens


def _split_list(text: str) -> list[tuple[str, ...]]:
    parts = re.split(r", | and ", text)
    return [_strip_article(part) for part in parts if part.strip()]


def _seq_in(tokens: tuple[str, ...], want: tuple[str, ...]) -> bool:
    span = len(want)
    if span == 0:
        return False
    return any(tokens[i : i + span] == want for i in range(len(tokens) - span + 1))


class Agent:
    """Interface every baseline implements; external agents mirror it."""

    def start(self, question: str, qtype: str, mode: str,
              candidates: list[str], lexicons: dict) -> None:
        raise NotImplementedError

    def act(self, view: dict) -> str:
        raise NotImplementedError

    def answer(self) -> str:
        raise NotImplementedError


class RandomAnswerAgent(Agent):
    """Waits immediately and answers uniformly from the candidate set."""

    def __init__(self, seed: int = 0) -> None:
        self._rng = SplitMix64(seed)
        self._candidates: list[str] = []

    def start(self, question, qtype, mode, candidates, lexicons) -> None:
        self._candidates = list(candidates)

    def act(self, view: dict) -> str:
        return "wait"

    def answer(self) -> str:
        return self._rng.choice(self._candidates)


class RandomCommandAgent(Agent):
    """Samples commands from the lexicons, then answers at random."""

    def __init__(self, seed: int = 0, p_wait: float = 0.0,
                 p_modifier: float = 0.5) -> None:
        self._rng = SplitMix64(seed)
        self.p_wait = p_wait
        self.p_modifier = p_modifier
        self._candidates: list[str] = []
        self._actions: list[str] = []
        self._modifiers: list[str] = []
        self._objects: list[str] = []

    def start(self, question, qtype, mode, candidates, lexicons) -> None:
        self._candidates = list(candidates)
        self._actions = [a for a in lexicons["actions"] if a != "wait"]
        self._modifiers = list(lexicons["modifiers"])
        self._objects = list(lexicons["objects"])

    def act(self, view: dict) -> str:
        if self.p_wait > 0 and self._rng.chance(self.p_wait):
            return "wait"
        action = self._rng.choice(self._actions)
        parts = [action]
        if self._modifiers and self._rng.chance(self.p_modifier):
            parts.append(self._rng.choice(self._modifiers))
        parts.append(self._rng.choice(self._objects))
        return " ".join(parts)

    def answer(self) -> str:
        return self._rng.choice(self._candidates)


@dataclass
class _ExitInfo:
    door_phrase: Optional[tuple[str, ...]] = None
    door_open: bool = True
    target: Optional[str] = None


@dataclass
class _RoomInfo:
    exits: dict[str, _ExitInfo] = field(default_factory=dict)
    closed_things: list[tuple[str, ...]] = field(default_factory=list)


@dataclass
class _Sighting:
    noun: str
    quals: tuple[str, ...]
    room: str
    holder: Optional[str] = None

    @property
    def phrase(self) -> tuple[str, ...]:
        return self.quals + (self.noun,)


def _command_phrase(phrase: tuple[str, ...]) -> str:
    """Pick 'modifier noun' or bare noun from a sighted phrase."""

    noun = phrase[-1]
    quals = [q for q in phrase[:-1] if q not in ("open", "closed")]
    if not quals:
        return noun
    for qual in quals:
        if qual not in CUT_WORDS and qual not in _COOK_PREFIXES:
            return f"{qual} {noun}"
    return f"{quals[0]} {noun}"


class HeuristicExplorer(Agent):
    """Map-building searcher with scripted attribute probes.

    It sweeps the world depth-first, opening every closed door and container
    it passes, and stops as soon as the question can be settled.  Attribute
    questions trigger a command probe chosen for the asked attribute, built
    only from things the explorer has read off the screen.
    """

    def __init__(self, seed: int = 0, catalog: Optional[NameTable] = None) -> None:
        self._rng = SplitMix64(seed)
        self._catalog = catalog or load_catalog()
        self.question = ""
        self.qtype = ""
        self.subject: tuple[str, ...] = ()
        self.final_answer: Optional[str] = None
        self.last_command: Optional[str] = None
        self.current_room: Optional[str] = None
        self.rooms: dict[str, _RoomInfo] = {}
        self.sightings: dict[tuple, _Sighting] = {}
        self.held: list[tuple[str, ...]] = []
        self.script: list[str] = []
        self.route: list[str] = []
        self.probe: dict = {}
        self._inventory_checked = False
        self._opens_tried: set[str] = set()
        self._last_state: Optional[tuple] = None
        self._repeat_count = 0

    # ------------------------------------------------------------------
    # protocol

    def start(self, question, qtype, mode, candidates, lexicons) -> None:
        self.question = question
        self.qtype = qtype
        self.subject = tuple(self._extract_subject(question, qtype))
        self.probe = {"stage": "find_subject"}

    def answer(self) -> str:
        if self.final_answer is not None:
            return self.final_answer
        return self._best_guess()

    def act(self, view: dict) -> str:
        observation = view["observation"]
        feedback = view.get("feedback", "")
        self._digest_feedback(feedback)
        previous_room = self.current_room
        self._parse_observation(observation)
        self._link_rooms(previous_room)

        state = (self.last_command, feedback, observation)
        if state == self._last_state:
            self._repeat_count += 1
        else:
            self._last_state = state
            self._repeat_count = 0

        if self.script:
            return self._emit(self.script.pop(0))
        if self.final_answer is not None:
            return self._emit("wait")
        if self._repeat_count >= 3 or view.get("steps_remaining", 99) <= 2:
            self.final_answer = self._best_guess()
            return self._emit("wait")
        if not self._inventory_checked:
            self._inventory_checked = True
            return self._emit("inventory")

        settled = self._try_settle(observation)
        if settled is not None:
            return self._emit(settled)

        if self.qtype == "attribute" and self._subject_sighting() is not None:
            move = self._probe_step()
            if move is not None:
                return self._emit(move)

        move = self._explore_move()
        if move is not None:
            return self._emit(move)

        self.final_answer = self._best_guess()
        return self._emit("wait")

    # ------------------------------------------------------------------
    # question plumbing

    def _extract_subject(self, question: str, qtype: str) -> list[str]:
        tokens = re.findall(r"[a-z0-9]+", question.lower())
        if qtype == "location":
            return tokens[3:]
        if qtype == "existence":
            return tokens[3 : len(tokens) - 3]
        return [tokens[1]]

    def _best_guess(self) -> str:
        if self.qtype == "existence":
            return "no"
        if self.qtype == "attribute":
            return self.probe.get("verdict", "no")
        guess = self.probe.get("location_guess")
        if guess:
            return guess
        return self.current_room or "inventory"

    def _emit(self, command: str) -> str:
        self.last_command = command
        return command

    # ------------------------------------------------------------------
    # text digestion

    def _parse_observation(self, observation: str) -> None:
        room_name = None
        for pattern in _ROOM_RES:
            match = pattern.search(observation)
            if match:
                room_name = match.group(1)
                break
        if room_name is None:
            return
        self.current_room = room_name
        info = self.rooms.setdefault(room_name, _RoomInfo())

        seen_dirs = set()
        for match in _EXIT_PLAIN_RE.finditer(observation):
            direction = match.group(1)
            seen_dirs.add(direction)
            exit_info = info.exits.setdefault(direction, _ExitInfo())
            exit_info.door_phrase = None
            exit_info.door_open = True
        for match in _EXIT_DOOR_RE.finditer(observation):
            state, phrase, direction = match.groups()
            seen_dirs.add(direction)
            exit_info = info.exits.setdefault(direction, _ExitInfo())
            exit_info.door_phrase = tuple(phrase.split())
            exit_info.door_open = state == "open"
        for direction in list(info.exits):
            if direction not in seen_dirs:
                del info.exits[direction]

        info.closed_things = []
        phrases: list[tuple[str, ...]] = []
        for pattern in _ENTITY_RES:
            phrases.extend(tuple(p.split()) for p in pattern.findall(observation))
        for phrase in phrases:
            if not phrase:
                continue
            if phrase[0] == "closed":
                info.closed_things.append(phrase)
            self._note_sighting(phrase, room_name, holder=None)
        for match in _CONTENTS_RE.finditer(observation):
            holder_phrase = tuple(match.group(1).split())
            for item in _split_list(match.group(2)):
                self._note_sighting(item, room_name, holder=holder_phrase[-1])

    def _note_sighting(self, phrase: tuple[str, ...], room: str,
                       holder: Optional[str]) -> None:
        noun = phrase[-1]
        quals = tuple(q for q in phrase[:-1])
        bare = tuple(q for q in quals if q not in ("open", "closed"))
        key = (noun, bare)
        self.sightings[key] = _Sighting(noun=noun, quals=quals, room=room,
                                        holder=holder)

    def _digest_feedback(self, feedback: str) -> None:
        if not feedback or not self.last_command:
            return
        carrying = _CARRYING_RE.search(feedback)
        if carrying:
            self.held = _split_list(carrying.group(1))
            self._after_inventory()
            return
        if feedback.startswith("You take the "):
            name = re.match(r"You take the ([\w ]+?)(?: from the [\w ]+)?\.",
                            feedback)
            if name:
                self.held.append(tuple(name.group(1).split()))
        elif feedback.startswith("You drop the "):
            name = re.match(r"You drop the ([\w ]+?)\.", feedback)
            if name:
                self._unhold(tuple(name.group(1).split()))
        elif feedback.startswith(("You eat the ", "You drink the ")):
            name = re.match(r"You (?:eat|drink) the ([\w ]+?)\.", feedback)
            if name:
                self._unhold(tuple(name.group(1).split()))
        elif feedback.startswith(("You put the ", "You insert the ")):
            name = re.match(r"You (?:put|insert) the ([\w ]+?) (?:on|into) the",
                            feedback)
            if name:
                self._unhold(tuple(name.group(1).split()))
        if self.probe.get("awaiting"):
            self._probe_feedback(feedback)

    def _unhold(self, phrase: tuple[str, ...]) -> None:
        if phrase in self.held:
            self.held.remove(phrase)
            return
        for held in list(self.held):
            if held[-1] == phrase[-1]:
                self.held.remove(held)
                return

    def _after_inventory(self) -> None:
        """Held subjects never show up in room text, so surface them now."""

        if self.qtype not in ("location", "existence"):
            return
        for phrase in self.held:
            if _seq_in(phrase, self.subject):
                command = _command_phrase(phrase)
                self.script = [f"drop {command}"]
                self.final_answer = (
                    "inventory" if self.qtype == "location" else "yes"
                )
                return

    def _link_rooms(self, previous_room: Optional[str]) -> None:
        if (
            self.last_command
            and self.last_command.startswith("go ")
            and previous_room is not None
            and self.current_room is not None
            and self.current_room != previous_room
        ):
            direction = self.last_command.split()[1]
            prev = self.rooms.setdefault(previous_room, _RoomInfo())
            prev.exits.setdefault(direction, _ExitInfo()).target = self.current_room
            here = self.rooms.setdefault(self.current_room, _RoomInfo())
            back = OPPOSITE[direction]
            here.exits.setdefault(back, _ExitInfo()).target = previous_room

    # ------------------------------------------------------------------
    # settling the question from what is on screen

    def _try_settle(self, observation: str) -> Optional[str]:
        if self.qtype == "location":
            holder = self._locate_subject(observation)
            if holder is not None:
                self.final_answer = holder
                return "wait"
        elif self.qtype == "existence":
            obs_tokens = tuple(re.findall(r"[a-z0-9]+", observation.lower()))
            if _seq_in(obs_tokens, self.subject):
                self.final_answer = "yes"
                return "wait"
        return None

    def _locate_subject(self, observation: str) -> Optional[str]:
        exact: Optional[str] = None
        loose: Optional[str] = None
        for match in _CONTENTS_RE.finditer(observation):
            holder_noun = tuple(match.group(1).split())[-1]
            for item in _split_list(match.group(2)):
                if item == self.subject:
                    exact = holder_noun
                elif _seq_in(item, self.subject):
                    loose = holder_noun
        for pattern in _ENTITY_RES:
            for phrase in pattern.findall(observation):
                tokens = _strip_article("a " + phrase)
                if tokens == self.subject:
                    exact = exact or self.current_room
                elif _seq_in(tokens, self.subject):
                    loose = loose or self.current_room
        found = exact or loose
        if found:
            self.probe["location_guess"] = found
        return found

    # ------------------------------------------------------------------
    # exploration

    def _explore_move(self) -> Optional[str]:
        if self.route:
            return f"go {self.route.pop(0)}"
        if self.current_room is None:
            return "look"
        info = self.rooms[self.current_room]
        for direction in _DIRS:
            exit_info = info.exits.get(direction)
            if exit_info is None or exit_info.door_phrase is None:
                continue
            key = f"{self.current_room}:{direction}"
            if not exit_info.door_open and key not in self._opens_tried:
                self._opens_tried.add(key)
                return f"open {_command_phrase(exit_info.door_phrase)}"
        for phrase in info.closed_things:
            key = f"{self.current_room}:{' '.join(phrase)}"
            if key not in self._opens_tried:
                self._opens_tried.add(key)
                return f"open {_command_phrase(phrase)}"
        for direction in _DIRS:
            exit_info = info.exits.get(direction)
            if exit_info is not None and exit_info.target is None:
                return f"go {direction}"
        route = self._route_to_unfinished()
        if route:
            self.route = route[1:]
            return f"go {route[0]}"
        return None

    def _unfinished(self, room: str) -> bool:
        info = self.rooms.get(room)
        if info is None:
            return True
        if any(e.target is None for e in info.exits.values()):
            return True
        return False

    def _route_to(self, goal: str) -> Optional[list[str]]:
        """Breadth-first route over explored links; None when unreachable."""

        if self.current_room is None or goal == self.current_room:
            return []
        frontier = [(self.current_room, [])]
        visited = {self.current_room}
        while frontier:
            room, path = frontier.pop(0)
            info = self.rooms.get(room)
            if info is None:
                continue
            for direction in _DIRS:
                exit_info = info.exits.get(direction)
                if exit_info is None or exit_info.target is None:
                    continue
                nxt = exit_info.target
                if nxt in visited:
                    continue
                new_path = path + [direction]
                if nxt == goal:
                    return new_path
                visited.add(nxt)
                frontier.append((nxt, new_path))
        return None

    def _route_to_unfinished(self) -> Optional[list[str]]:
        if self.current_room is None:
            return None
        frontier = [(self.current_room, [])]
        visited = {self.current_room}
        while frontier:
            room, path = frontier.pop(0)
            info = self.rooms.get(room)
            if info is None:
                continue
            for direction in _DIRS:
                exit_info = info.exits.get(direction)
                if exit_info is None or exit_info.target is None:
                    continue
                nxt = exit_info.target
                if nxt in visited:
                    continue
                new_path = path + [direction]
                if self._unfinished(nxt):
                    return new_path
                visited.add(nxt)
                frontier.append((nxt, new_path))
        return None

    # ------------------------------------------------------------------
    # attribute probes

    def _subject_sighting(self) -> Optional[_Sighting]:
        for sighting in self.sightings.values():
            if sighting.noun == self.subject[-1]:
                return sighting
        return None

    def _subject_cmd(self) -> str:
        return self.subject[-1]

    def _holding_subject(self) -> bool:
        return any(phrase[-1] == self.subject[-1] for phrase in self.held)

    def _held_sharps(self) -> list[tuple[str, ...]]:
        sharp_names = set(self._catalog.sharp_names)
        return [p for p in self.held if p[-1] in sharp_names]

    def _find_prop(self, names: set[str], exclude_cut: bool = False,
                   exclude_cooked: bool = False) -> Optional[_Sighting]:
        best = None
        for sighting in self.sightings.values():
            if sighting.noun not in names:
                continue
            if exclude_cut and any(q in CUT_WORDS for q in sighting.quals):
                continue
            if exclude_cooked and any(q in _COOK_PREFIXES for q in sighting.quals):
                continue
            if sighting.room == self.current_room:
                return sighting
            best = best or sighting
        return best

    def _goto(self, room: str) -> Optional[str]:
        if room == self.current_room:
            return None
        route = self._route_to(room)
        if not route:
            return None
        self.route = route[1:]
        return f"go {route[0]}"

    def _finish_probe(self, verdict: str) -> str:
        self.probe["verdict"] = verdict
        self.final_answer = verdict
        return "wait"

    def _await(self, command: str, expect: str) -> str:
        self.probe["awaiting"] = expect
        return command

    def _probe_feedback(self, feedback: str) -> None:
        expect = self.probe.pop("awaiting", None)
        if expect is None:
            return
        self.probe["outcome"] = feedback
        if expect in ("take-prop", "take-tool") and not feedback.startswith("You take"):
            self.probe["prop_failed"] = True

    def _drop_failed_prop(self) -> None:
        """Forget a prop we could not pick up so the search moves on."""

        if not self.probe.pop("prop_failed", False):
            return
        prop = self.probe.pop("prop", None)
        if prop is not None:
            bare = tuple(q for q in prop.quals if q not in ("open", "closed"))
            self.sightings.pop((prop.noun, bare), None)

    def _probe_step(self) -> Optional[str]:
        if self.qtype != "attribute":
            return None
        attr = self._question_attribute()
        outcome = self.probe.pop("outcome", "")
        stage = self.probe.get("stage", "find_subject")

        if stage == "find_subject":
            sighting = self._subject_sighting()
            if sighting is None:
                return None
            self.probe["subject_room"] = sighting.room
            self.probe["stage"] = "approach"
            stage = "approach"

        if stage == "approach":
            move = self._goto(self.probe["subject_room"])
            if move is not None:
                return move
            sighting = self._subject_sighting()
            if sighting is not None and sighting.room == self.current_room:
                self.probe["subject_room"] = sighting.room
            if attr == "openable":
                self.probe["stage"] = "toggle"
                return self._toggle_step()
            self.probe["stage"] = "grab"
            return self._await(f"take {self._subject_cmd()}", "take")

        if stage == "toggle":
            return self._toggle_result(outcome)

        if stage == "grab":
            took = outcome.startswith("You take the")
            fixed = "fixed in place" in outcome
            already = outcome.startswith("You already have")
            held = took or already or self._holding_subject()
            if attr == "portable":
                return self._finish_probe("yes" if held else "no")
            if attr in ("edible", "drinkable", "sharp", "cuttable", "cookable"):
                if fixed:
                    return self._finish_probe("no")
                self.probe["stage"] = f"{attr}_next"
                return self._probe_step()
            if attr in ("holder", "heat_source"):
                if held:
                    return self._finish_probe("no")
                self.probe["stage"] = f"{attr}_next"
                return self._probe_step()
            return self._finish_probe("no")

        handler = getattr(self, f"_probe_{attr}", None)
        if handler is None:
            return self._finish_probe("no")
        return handler(stage, outcome)

    def _question_attribute(self) -> str:
        text = self.question.lower()
        if "heat source" in text:
            return "heat_source"
        if "a holder" in text:
            return "holder"
        for attr in ("edible", "drinkable", "portable", "openable",
                     "cuttable", "sharp", "cookable"):
            if attr in text:
                return attr
        return "portable"

    def _toggle_step(self) -> str:
        sighting = self._subject_sighting()
        quals = sighting.quals if sighting else ()
        if "open" in quals:
            self.probe["toggled"] = "close"
            return self._await(f"close {self._subject_cmd()}", "close")
        self.probe["toggled"] = "open"
        return self._await(f"open {self._subject_cmd()}", "open")

    def _toggle_result(self, outcome: str) -> str:
        if outcome.startswith(("You open the", "You close the")):
            return self._finish_probe("yes")
        if outcome.startswith(("You can't open", "You can't close")):
            return self._finish_probe("no")
        return self._finish_probe("no")

    def _probe_edible(self, stage: str, outcome: str) -> Optional[str]:
        if stage == "edible_next":
            self.probe["stage"] = "edible_done"
            return self._await(f"eat {self._subject_cmd()}", "eat")
        if outcome.startswith("You eat the"):
            return self._finish_probe("yes")
        return self._finish_probe("no")

    def _probe_drinkable(self, stage: str, outcome: str) -> Optional[str]:
        if stage == "drinkable_next":
            self.probe["stage"] = "drinkable_done"
            return self._await(f"drink {self._subject_cmd()}", "drink")
        if outcome.startswith("You drink the"):
            return self._finish_probe("yes")
        return self._finish_probe("no")

    def _probe_cuttable(self, stage: str, outcome: str) -> Optional[str]:
        if stage == "cuttable_next":
            self._drop_failed_prop()
            if self._held_sharps():
                self.probe["stage"] = "cuttable_cut"
                return self._await(f"slice {self._subject_cmd()}", "cut")
            prop = self.probe.get("prop")
            if prop is None:
                prop = self._find_prop(set(self._catalog.sharp_names))
                if prop is None:
                    return None
                self.probe["prop"] = prop
            move = self._goto(prop.room)
            if move is not None:
                return move
            return self._await(f"take {_command_phrase(prop.phrase)}", "take-tool")
        if stage == "cuttable_cut":
            if outcome.startswith("You slice the"):
                return self._finish_probe("yes")
            if "has already been cut" in outcome:
                return self._finish_probe("yes")
            return self._finish_probe("no")
        self.probe["stage"] = "cuttable_next"
        return self._probe_step()

    def _probe_sharp(self, stage: str, outcome: str) -> Optional[str]:
        if stage == "sharp_next":
            self._drop_failed_prop()
            extra = [p for p in self._held_sharps()
                     if p[-1] != self.subject[-1]]
            if extra:
                return self._await(f"drop {_command_phrase(extra[0])}", "drop")
            prop = self.probe.get("prop")
            if prop is None:
                found = self._find_prop(set(self._catalog.cuttable_names),
                                        exclude_cut=True)
                if found is None:
                    return None
                self.probe["prop"] = found
                prop = found
            if not any(p[-1] == prop.noun for p in self.held):
                move = self._goto(prop.room)
                if move is not None:
                    return move
                return self._await(f"take {_command_phrase(prop.phrase)}",
                                   "take-prop")
            self.probe["stage"] = "sharp_cut"
            return self._await(f"slice {_command_phrase(prop.phrase)}", "cut")
        if stage == "sharp_cut":
            if outcome.startswith("You slice the"):
                return self._finish_probe("yes")
            if "something sharp" in outcome:
                return self._finish_probe("no")
            return self._finish_probe("no")
        self.probe["stage"] = "sharp_next"
        return self._probe_step()

    def _probe_cookable(self, stage: str, outcome: str) -> Optional[str]:
        if stage == "cookable_next":
            heat = self._find_prop(set(self._catalog.heat_source_names))
            if heat is None:
                return None
            move = self._goto(heat.room)
            if move is not None:
                return move
            self.probe["stage"] = "cookable_done"
            return self._await(f"cook {self._subject_cmd()}", "cook")
        if outcome.startswith("You cook the"):
            return self._finish_probe("yes")
        return self._finish_probe("no")

    def _probe_heat_source(self, stage: str, outcome: str) -> Optional[str]:
        if stage == "heat_source_next":
            self._drop_failed_prop()
            prop = self.probe.get("prop")
            if prop is None:
                found = self._find_prop(set(self._catalog.cookable_names),
                                        exclude_cooked=True)
                if found is None:
                    return None
                self.probe["prop"] = found
                prop = found
            if not any(p[-1] == prop.noun for p in self.held):
                move = self._goto(prop.room)
                if move is not None:
                    return move
                return self._await(f"take {_command_phrase(prop.phrase)}",
                                   "take-prop")
            move = self._goto(self.probe["subject_room"])
            if move is not None:
                return move
            self.probe["stage"] = "heat_source_done"
            return self._await(f"cook {_command_phrase(prop.phrase)}", "cook")
        match = _COOKED_WITH_RE.match(outcome)
        if match:
            heat_tokens = tuple(match.group(1).split())
            verdict = "yes" if self.subject[-1] in heat_tokens else "no"
            return self._finish_probe(verdict)
        return self._finish_probe("no")

    def _probe_holder(self, stage: str, outcome: str) -> Optional[str]:
        if stage == "holder_next":
            for sighting in self.sightings.values():
                if sighting.holder == self.subject[-1]:
                    return self._finish_probe("yes")
            subject = self._subject_sighting()
            if (
                subject is not None
                and "closed" in subject.quals
                and not self.probe.get("opened_subject")
            ):
                self.probe["opened_subject"] = True
                return self._await(f"open {self._subject_cmd()}", "open-subject")
            self._drop_failed_prop()
            if not self.held:
                prop = self.probe.get("prop")
                if prop is None:
                    prop = self._find_portable_prop()
                    if prop is None:
                        return None
                    self.probe["prop"] = prop
                move = self._goto(prop.room)
                if move is not None:
                    return move
                return self._await(f"take {_command_phrase(prop.phrase)}",
                                   "take-prop")
            move = self._goto(self.probe["subject_room"])
            if move is not None:
                return move
            self.probe["stage"] = "holder_put"
            return self._await(f"put {self._subject_cmd()}", "put")
        if stage == "holder_put":
            if outcome.startswith("You put the"):
                return self._finish_probe("yes")
            self.probe["stage"] = "holder_insert"
            return self._await(f"insert {self._subject_cmd()}", "insert")
        if stage == "holder_insert":
            if outcome.startswith("You insert the"):
                return self._finish_probe("yes")
            return self._finish_probe("no")
        self.probe["stage"] = "holder_next"
        return self._probe_step()

    def _find_portable_prop(self) -> Optional[_Sighting]:
        names = set()
        for name in self._catalog.placeable_names:
            if self._catalog.attributes_of(name).portable:
                names.add(name)
        return self._find_prop(names)
