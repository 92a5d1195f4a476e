"""Smart-environment flows over the packaged seed world.

The seed ontology (data/seed_world.onto) models an indoor map: two rooms
joined to a corridor by shared doors, and a robot standing in the
corridor.  Three flows run on top of it:

* categorize_new_location - attach a fresh location to the map through
  a shared door and report how the reasoner classifies it;
* reachable_leaf_places   - from the robot's position, list connected
  locations with their most specific (leaf) class;
* patrol                  - a seeded random walk: perceive door states,
  write them, cross an open door, re-reason, repeat.

All randomness comes from PatrolRng, a fixed 64-bit linear congruential
generator, so identical (seed, steps) always yield identical traces.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .compound import CompoundDescriptor, full_class, full_individual
from .descriptor import DescriptorState, DescriptorTag, Link, Ref
from .model import Entity, Kind, Ontology, OntologyError
from .reasoner import Closure, reason
from .syntax import parse, parse_file


class ScenarioError(OntologyError):
    """A flow precondition does not hold in the current world."""


class NoFiller(ScenarioError):
    """An expected property filler (position, door) is missing."""


# seed-world names the flows rely on
DOOR_CLASS = "DOOR"
OPEN_CLASS = "OPEN"
CLOSE_CLASS = "CLOSE"
HAS_DOOR = "hasDoor"
IS_IN = "isIn"
IS_CONNECTED_TO = "isConnectedTo"
ROBOT = "Robot1"


def seed_path():
    return resources.files("ontodesc.data") / "seed_world.onto"


def load_seed() -> Ontology:
    return parse(seed_path().read_text(encoding="utf-8"))


def load_world(path: str | None) -> Ontology:
    """Parse the ontology at `path`, or the packaged seed when None."""
    if path is None:
        return load_seed()
    return parse_file(path)


# ---------------------------------------------------------------------------
# deterministic randomness

_MASK = (1 << 64) - 1
_MUL = 6364136223846793005
_INC = 1442695040888963407


class PatrolRng:
    """64-bit linear congruential generator with fixed constants.

    state' = state * 6364136223846793005 + 1442695040888963407 (mod 2^64)

    Coin flips take the advanced state's top bit; bounded draws take the
    top 31 bits modulo the bound.  No platform-dependent machinery, so
    traces are byte-identical everywhere.
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def _next(self) -> int:
        self._state = (self._state * _MUL + _INC) & _MASK
        return self._state

    def coin(self) -> bool:
        return bool(self._next() >> 63)

    def below(self, bound: int) -> int:
        return (self._next() >> 33) % bound


# ---------------------------------------------------------------------------
# example flows


def _fresh_closure(onto: Ontology) -> Closure:
    return reason(onto) if onto.stale else onto.current_closure()


def categorize_new_location(
    onto: Ontology, new_location: str, connected_location: str, shared_door: str
) -> list[str]:
    """Join a new location to a known one through a shared door.

    Both locations receive a hasDoor link to the door (the known one by
    read-edit-write, so its existing links survive), the reasoner runs,
    and the new location's entailed types come back sorted.
    """
    known = onto.lookup(connected_location)
    has_door = onto.lookup(HAS_DOOR)
    fresh = onto.declare(Kind.INDIVIDUAL, new_location)
    door = onto.declare(Kind.INDIVIDUAL, shared_door)

    _fresh_closure(onto)
    here = full_individual(onto, fresh)
    there = full_individual(onto, known)
    here.read()
    there.read()
    here.part(DescriptorTag.LINKS).add(Link(has_door, door))
    there.part(DescriptorTag.LINKS).add(Link(has_door, door))
    here.part(DescriptorTag.LINKS).write()
    there.part(DescriptorTag.LINKS).write()

    closure = reason(onto)
    if not closure.consistent:
        raise ScenarioError("the extended world is inconsistent")
    here.read()
    return sorted(r.entity.iri for r in here.part(DescriptorTag.TYPES).items)


def _is_leaf(onto: Ontology, cls: Entity) -> bool:
    descriptor = full_class(onto, cls)
    descriptor.part(DescriptorTag.SUB_CLASSES).read()
    subs = [r.entity.iri for r in descriptor.part(DescriptorTag.SUB_CLASSES).items]
    return subs == ["NOTHING"]


def reachable_leaf_places(onto: Ontology, robot: str = ROBOT) -> list[tuple[str, str]]:
    """Locations connected to the robot's own, tagged by leaf class.

    Follows the robot's isIn filler, builds descriptors for every
    isConnectedTo neighbour, and keeps the (individual, class) pairs
    whose class has no subclass but NOTHING.
    """
    robot_entity = onto.lookup(robot)
    is_in = onto.lookup(IS_IN)
    is_connected = onto.lookup(IS_CONNECTED_TO)

    closure = _fresh_closure(onto)
    if not closure.consistent:
        raise ScenarioError("the world is inconsistent")
    whoami = full_individual(onto, robot_entity)
    whoami.read()
    positions = whoami.part(DescriptorTag.LINKS).build_individuals_by_property(is_in)
    if not positions:
        raise NoFiller(f"{robot} has no {IS_IN} filler")
    here = positions[0]
    neighbours = here.part(DescriptorTag.LINKS).build_individuals_by_property(is_connected)
    pairs = []
    for neighbour in neighbours:
        classes = neighbour.part(DescriptorTag.TYPES).build()
        for cls in classes:
            subs = [r.entity.iri for r in cls.part(DescriptorTag.SUB_CLASSES).items]
            if subs == ["NOTHING"]:
                pairs.append((neighbour.ground.iri, cls.ground.iri))
    return sorted(pairs)


# ---------------------------------------------------------------------------
# patrol


class DoorDescriptor(CompoundDescriptor):
    """Individual descriptor specialised for doors: swaps the open or
    closed state class in its types part (the caller writes)."""

    def set_state(self, state: Entity, alternatives: tuple[Entity, ...]):
        types = self.part(DescriptorTag.TYPES)
        for alternative in alternatives:
            if alternative != state:
                types.remove(Ref(alternative))
        types.add(Ref(state))


def door_factory(onto: Ontology, door_class: Entity):
    """Build DoorDescriptor for DOOR-typed grounds, plain descriptors
    otherwise (dispatch by entailed type)."""

    def make(entity: Entity) -> CompoundDescriptor:
        closure = onto.current_closure()
        if entity.kind is Kind.INDIVIDUAL and door_class in closure.types_of(entity):
            parts = [
                DescriptorState(tag, entity, onto)
                for tag in (
                    DescriptorTag.TYPES,
                    DescriptorTag.LINKS,
                    DescriptorTag.SAME_AS,
                    DescriptorTag.DIFFERENT_FROM,
                )
            ]
            return DoorDescriptor(onto, entity, parts)
        return full_individual(onto, entity)

    return make


def setup_door_state_classes(onto: Ontology) -> None:
    """Introduce OPEN and CLOSE as disjoint subclasses of DOOR.

    One class descriptor does all three writes: grounded on CLOSE it
    writes the superclass, then it is re-grounded on OPEN, keeps DOOR in
    its superclass part, gains CLOSE as a disjoint, and writes both.
    """
    door = onto.lookup(DOOR_CLASS)
    close = onto.declare(Kind.CLASS, CLOSE_CLASS)
    opened = onto.declare(Kind.CLASS, OPEN_CLASS)

    descriptor = full_class(onto, close)
    descriptor.part(DescriptorTag.SUPER_CLASSES).add(Ref(door))
    descriptor.part(DescriptorTag.SUPER_CLASSES).write()
    descriptor.set_ground(opened)
    descriptor.part(DescriptorTag.DISJOINT_CLASSES).add(Ref(close))
    descriptor.part(DescriptorTag.SUPER_CLASSES).write()
    descriptor.part(DescriptorTag.DISJOINT_CLASSES).write()
    reason(onto)


@dataclass(frozen=True)
class PatrolStep:
    index: int
    location: str
    door_states: tuple[tuple[str, str], ...]  # (door, "open" | "closed")
    crossed: str
    destination: str
    consistent: bool
    position_count: int

    def line(self) -> str:
        states = " ".join(f"{door}={state}" for door, state in self.door_states)
        return (
            f"step={self.index} at={self.location} {states} "
            f"crossed={self.crossed} to={self.destination}"
        )


@dataclass(frozen=True)
class PatrolConfig:
    steps: int = 20
    seed: int = 7
    robot: str = ROBOT

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be positive")
        if self.seed < 0:
            raise ValueError("seed must be unsigned")


def patrol(onto: Ontology, config: PatrolConfig = PatrolConfig()) -> list[PatrolStep]:
    """Walk the robot for config.steps steps.

    Each step reads the robot, builds door descriptors for its location,
    draws every door's state from the RNG (redrawing the whole round
    until at least one door is open), writes the states, picks an open
    door uniformly, moves the robot to the lexicographically first other
    location at that door, and re-runs the reasoner.
    """
    setup_door_state_classes(onto)
    door_class = onto.lookup(DOOR_CLASS)
    opened = onto.lookup(OPEN_CLASS)
    close = onto.lookup(CLOSE_CLASS)
    has_door = onto.lookup(HAS_DOOR)
    is_in = onto.lookup(IS_IN)
    robot = onto.lookup(config.robot)
    rng = PatrolRng(config.seed)
    make_door = door_factory(onto, door_class)

    trace: list[PatrolStep] = []
    for index in range(1, config.steps + 1):
        closure = _fresh_closure(onto)
        whoami = full_individual(onto, robot)
        whoami.read()
        positions = whoami.part(DescriptorTag.LINKS).build_individuals_by_property(is_in)
        if not positions:
            raise NoFiller(f"{config.robot} has no {IS_IN} filler")
        here = positions[0]
        doors = here.part(DescriptorTag.LINKS).build_individuals_by_property(
            has_door, factory=make_door
        )
        doors = sorted(
            (d for d in doors if isinstance(d, DoorDescriptor)),
            key=lambda d: d.ground.iri,
        )
        if not doors:
            raise NoFiller(f"no door at {here.ground.iri}")
        across = {
            door.ground: _across(onto, closure, door.ground, here.ground, has_door)
            for door in doors
        }

        while True:
            drawn = [rng.coin() for _ in doors]
            if any(drawn):
                break
        for door, is_open in zip(doors, drawn):
            door.set_state(opened if is_open else close, (opened, close))
            door.part(DescriptorTag.TYPES).write()

        open_doors = [door for door, is_open in zip(doors, drawn) if is_open]
        crossed = open_doors[rng.below(len(open_doors))]
        destination = across[crossed.ground]

        moving = whoami.part(DescriptorTag.LINKS)
        moving.remove(Link(is_in, here.ground))
        moving.add(Link(is_in, destination))
        moving.write()

        closure = reason(onto)
        states = tuple(
            (door.ground.iri, "open" if is_open else "closed")
            for door, is_open in zip(doors, drawn)
        )
        trace.append(
            PatrolStep(
                index=index,
                location=here.ground.iri,
                door_states=states,
                crossed=crossed.ground.iri,
                destination=destination.iri,
                consistent=closure.consistent,
                position_count=len(closure.fillers(robot, is_in)),
            )
        )
    return trace


def _across(onto, closure, door: Entity, here: Entity, has_door: Entity) -> Entity:
    """The lexicographically first other location sharing the door."""
    holders = sorted(
        ind.iri
        for ind in onto.individuals()
        if ind != here and door in closure.fillers(ind, has_door)
    )
    if not holders:
        raise NoFiller(f"{door.iri} leads nowhere from {here.iri}")
    return onto.lookup(holders[0])
