"""Ontology toolkit with object-like descriptors.

An in-memory axiom store over a small description-logic dialect, a
plain-text format with parser and canonical serializer, a saturation
reasoner, and a descriptor layer that mirrors axioms into object-style
states with read / write / build semantics.  A CLI drives the packaged
smart-environment seed world.
"""

from .model import (
    And,
    Axiom,
    AxiomTag,
    Box,
    Entity,
    Kind,
    KindClash,
    KindMismatch,
    Literal,
    Max,
    Min,
    Named,
    NOTHING,
    Only,
    Ontology,
    OntologyError,
    Or,
    Some,
    StaleClosure,
    THING,
    UnknownEntity,
)
from .syntax import ParseError, parse, parse_file, serialize
from .reasoner import Closure, Violation, reason
from .descriptor import (
    Connective,
    DescriptorState,
    DescriptorTag,
    Form,
    Intent,
    Link,
    MappingError,
    Partition,
    Ref,
    Restriction,
    UndefinedBuild,
    Void,
    from_axiom,
    from_definition,
    to_axiom,
    to_axioms,
)
from .compound import (
    CompoundDescriptor,
    MissingTag,
    PartFailure,
    PartitionClash,
    default_factory,
    full_class,
    full_individual,
    full_property,
)
from .scenarios import (
    PatrolConfig,
    PatrolRng,
    PatrolStep,
    categorize_new_location,
    load_seed,
    patrol,
    reachable_leaf_places,
    seed_path,
    setup_door_state_classes,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "Axiom",
    "AxiomTag",
    "Box",
    "Closure",
    "CompoundDescriptor",
    "Connective",
    "DescriptorState",
    "DescriptorTag",
    "Entity",
    "Form",
    "Intent",
    "Kind",
    "KindClash",
    "KindMismatch",
    "Link",
    "Literal",
    "MappingError",
    "Max",
    "Min",
    "MissingTag",
    "NOTHING",
    "Named",
    "Only",
    "Ontology",
    "OntologyError",
    "Or",
    "ParseError",
    "PartFailure",
    "Partition",
    "PartitionClash",
    "PatrolConfig",
    "PatrolRng",
    "PatrolStep",
    "Ref",
    "Restriction",
    "Some",
    "StaleClosure",
    "THING",
    "UndefinedBuild",
    "UnknownEntity",
    "Violation",
    "Void",
    "categorize_new_location",
    "default_factory",
    "from_axiom",
    "from_definition",
    "full_class",
    "full_individual",
    "full_property",
    "load_seed",
    "parse",
    "parse_file",
    "patrol",
    "reachable_leaf_places",
    "reason",
    "seed_path",
    "serialize",
    "setup_door_state_classes",
    "to_axiom",
    "to_axioms",
]
