"""Compound descriptors: one descriptor per tag, sharing a ground.

A compound bundles several DescriptorState parts for the same ground
entity, all from the same partition, at most one per tag.  read and
write run the parts in order and stop at the first failing part,
reporting the intents accumulated so far.  Three stock layouts cover
the usual shapes:

* full_property   - the property tags legal for the ground's kind,
* full_class      - definition, taxonomy neighbours, equivalents,
                    disjoints and instances,
* full_individual - types, links, sameness and distinctness.

default_factory(onto) builds whichever layout fits an entity's kind;
descriptor build() falls back to it when no factory is wired in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .descriptor import DescriptorState, DescriptorTag, Intent, Partition, _META
from .model import Entity, Kind, Ontology, OntologyError


class PartitionClash(OntologyError):
    """Compound parts must all come from one partition."""


class MissingTag(OntologyError):
    """The compound has no part for the requested tag."""


@dataclass
class PartFailure(OntologyError):
    """A part's read or write raised; carries what had happened so far."""

    tag: DescriptorTag
    intents: list
    cause: Exception

    def __str__(self):
        return f"{self.tag.value} failed after {len(self.intents)} intents: {self.cause}"


class CompoundDescriptor:
    def __init__(self, ontology: Ontology, ground: Entity, parts: list[DescriptorState]):
        if not parts:
            raise PartitionClash("a compound needs at least one part")
        partitions = {p.tag.partition for p in parts}
        if len(partitions) > 1:
            names = ", ".join(sorted(p.value for p in partitions))
            raise PartitionClash(f"parts span partitions {names}")
        tags = [p.tag for p in parts]
        if len(set(tags)) != len(tags):
            raise PartitionClash("duplicate part tags")
        for p in parts:
            if p.ground != ground:
                raise PartitionClash(f"part {p.tag.value} grounded on {p.ground.iri}, not {ground.iri}")
            if p.ontology is not ontology:
                raise PartitionClash("parts must share the compound's ontology")
        self.ontology = ontology
        self.ground = ground
        self.parts = list(parts)

    @property
    def partition(self) -> Partition:
        return self.parts[0].tag.partition

    def part(self, tag: DescriptorTag) -> DescriptorState:
        for p in self.parts:
            if p.tag is tag:
                return p
        raise MissingTag(f"no {tag.value} part on this compound")

    def set_ground(self, entity: Entity) -> None:
        """Re-point every part at a new ground (kind-checked first)."""
        for p in self.parts:
            p._check_ground(entity)
        for p in self.parts:
            p.set_ground(entity)
        self.ground = entity

    def _run(self, op: str) -> list[Intent]:
        intents: list[Intent] = []
        for p in self.parts:
            try:
                intents.extend(getattr(p, op)())
            except OntologyError as exc:
                raise PartFailure(p.tag, intents, exc) from exc
        return intents

    def read(self) -> list[Intent]:
        return self._run("read")

    def write(self) -> list[Intent]:
        return self._run("write")


_PROPERTY_TAGS = [
    DescriptorTag.SUPER_PROPERTIES,
    DescriptorTag.EQUIVALENT_PROPERTIES,
    DescriptorTag.DISJOINT_PROPERTIES,
    DescriptorTag.INVERSE_PROPERTIES,
    DescriptorTag.DOMAIN,
    DescriptorTag.RANGE,
    DescriptorTag.FUNCTIONAL,
    DescriptorTag.REFLEXIVE,
    DescriptorTag.SYMMETRIC,
    DescriptorTag.TRANSITIVE,
]

_CLASS_TAGS = [
    DescriptorTag.DEFINITION,
    DescriptorTag.SUB_CLASSES,
    DescriptorTag.SUPER_CLASSES,
    DescriptorTag.EQUIVALENT_CLASSES,
    DescriptorTag.DISJOINT_CLASSES,
    DescriptorTag.INSTANCES,
]

_INDIVIDUAL_TAGS = [
    DescriptorTag.TYPES,
    DescriptorTag.LINKS,
    DescriptorTag.SAME_AS,
    DescriptorTag.DIFFERENT_FROM,
]


def full_property(ontology: Ontology, ground: Entity) -> CompoundDescriptor:
    """Every property tag legal for the ground's kind (data properties
    skip the object-only characteristics)."""
    parts = [
        DescriptorState(tag, ground, ontology)
        for tag in _PROPERTY_TAGS
        if ground.kind in _META[tag].ground_kinds
    ]
    return CompoundDescriptor(ontology, ground, parts)


def full_class(ontology: Ontology, ground: Entity) -> CompoundDescriptor:
    parts = [DescriptorState(tag, ground, ontology) for tag in _CLASS_TAGS]
    return CompoundDescriptor(ontology, ground, parts)


def full_individual(ontology: Ontology, ground: Entity) -> CompoundDescriptor:
    parts = [DescriptorState(tag, ground, ontology) for tag in _INDIVIDUAL_TAGS]
    return CompoundDescriptor(ontology, ground, parts)


def default_factory(ontology: Ontology) -> Callable[[Entity], CompoundDescriptor]:
    """Factory dispatching on entity kind, for descriptor build()."""

    def make(entity: Entity) -> CompoundDescriptor:
        if entity.kind is Kind.CLASS:
            return full_class(ontology, entity)
        if entity.kind is Kind.INDIVIDUAL:
            return full_individual(ontology, entity)
        if entity.kind in (Kind.OBJECT_PROPERTY, Kind.DATA_PROPERTY):
            return full_property(ontology, entity)
        raise OntologyError(f"no descriptor layout for {entity.kind.value}")

    return make
