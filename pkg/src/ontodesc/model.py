"""Core ontology data model.

Entities (classes, properties, individuals), typed literals, class
expressions, axioms, and the in-memory axiom store.  The store keeps a
vocabulary (IRI -> entity), an asserted axiom set partitioned into RBox,
TBox and ABox, and an inferred partition that is owned by the reasoner.
Any mutation bumps a generation counter; entailed-view reads made against
an outdated closure raise StaleClosure.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Union


# ---------------------------------------------------------------------------
# errors


class OntologyError(Exception):
    """Base class for errors raised by this package."""


class KindClash(OntologyError):
    """An IRI is already declared with a different entity kind."""


class KindMismatch(OntologyError):
    """An axiom or expression received an entity of the wrong kind."""


class UnknownEntity(OntologyError):
    """A referenced IRI is not present in the vocabulary."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        super().__init__(message)
        self.line = line
        self.col = col


class StaleClosure(OntologyError):
    """The entailed view was requested after mutations without re-reasoning."""


# ---------------------------------------------------------------------------
# entities


class Kind(Enum):
    CLASS = "class"
    OBJECT_PROPERTY = "object-property"
    DATA_PROPERTY = "data-property"
    INDIVIDUAL = "individual"
    LITERAL = "literal"


@dataclass(frozen=True)
class Entity:
    """A named term of the vocabulary.  IRIs compare byte-for-byte."""

    kind: Kind
    iri: str

    def __post_init__(self):
        if self.kind is Kind.LITERAL:
            raise KindMismatch("literals carry a value, not an IRI; use Literal")
        if not isinstance(self.iri, str) or not self.iri:
            raise OntologyError("IRI must be a non-empty string")
        if any(ch.isspace() for ch in self.iri):
            raise OntologyError(f"IRI may not contain whitespace: {self.iri!r}")

    def __repr__(self):
        return f"{self.kind.value}:{self.iri}"


class Literal:
    """A typed literal value: string, integer, boolean or double.

    Equality is by exact type and value, so Literal(1), Literal(True) and
    Literal(1.0) are three distinct literals.
    """

    __slots__ = ("value",)
    _TYPES = (str, bool, int, float)

    def __init__(self, value: str | int | bool | float):
        if not isinstance(value, self._TYPES):
            raise KindMismatch(f"unsupported literal value: {value!r}")
        if isinstance(value, float) and (value != value or value in (float("inf"), float("-inf"))):
            raise OntologyError("non-finite doubles are not supported")
        self.value = value

    @property
    def kind(self) -> Kind:
        return Kind.LITERAL

    def _key(self):
        return (type(self.value).__name__, self.value)

    def __eq__(self, other):
        return isinstance(other, Literal) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"literal:{self.value!r}"


Term = Union[Entity, Literal]

# Builtin vocabulary: the universal and empty classes plus the four literal
# datatypes.  Datatypes are class-kind entities with reserved names so that
# the range of a data property can be stated with the same axiom shape.
THING = Entity(Kind.CLASS, "THING")
NOTHING = Entity(Kind.CLASS, "NOTHING")
DT_STRING = Entity(Kind.CLASS, "string")
DT_INTEGER = Entity(Kind.CLASS, "integer")
DT_BOOLEAN = Entity(Kind.CLASS, "boolean")
DT_DOUBLE = Entity(Kind.CLASS, "double")
DATATYPES = frozenset({DT_STRING, DT_INTEGER, DT_BOOLEAN, DT_DOUBLE})
BUILTINS = (THING, NOTHING, DT_STRING, DT_INTEGER, DT_BOOLEAN, DT_DOUBLE)


def _require(entity, kind: Kind, role: str) -> None:
    if not isinstance(entity, Entity) or entity.kind is not kind:
        raise KindMismatch(f"{role} must be a {kind.value}, got {entity!r}")


def _require_class(entity, role: str) -> None:
    # datatype builtins are range markers, not members of the class taxonomy
    _require(entity, Kind.CLASS, role)
    if entity in DATATYPES:
        raise KindMismatch(f"{role} may not be a datatype: {entity.iri}")


def _require_property(entity, role: str) -> None:
    if not isinstance(entity, Entity) or entity.kind not in (
        Kind.OBJECT_PROPERTY,
        Kind.DATA_PROPERTY,
    ):
        raise KindMismatch(f"{role} must be a property, got {entity!r}")


# ---------------------------------------------------------------------------
# class expressions


@dataclass(frozen=True)
class Named:
    cls: Entity

    def __post_init__(self):
        _require_class(self.cls, "named expression")


@dataclass(frozen=True)
class And:
    members: tuple

    def __post_init__(self):
        _check_members(self.members, "And")


@dataclass(frozen=True)
class Or:
    members: tuple

    def __post_init__(self):
        _check_members(self.members, "Or")


@dataclass(frozen=True)
class Some:
    prop: Entity
    filler: Entity

    def __post_init__(self):
        _check_quantifier(self.prop, self.filler)


@dataclass(frozen=True)
class Only:
    prop: Entity
    filler: Entity

    def __post_init__(self):
        _check_quantifier(self.prop, self.filler)


@dataclass(frozen=True)
class Min:
    count: int
    prop: Entity
    filler: Entity

    def __post_init__(self):
        _check_quantifier(self.prop, self.filler)
        if not isinstance(self.count, int) or self.count < 1:
            raise OntologyError("Min cardinality must be an integer >= 1")


@dataclass(frozen=True)
class Max:
    count: int
    prop: Entity
    filler: Entity

    def __post_init__(self):
        _check_quantifier(self.prop, self.filler)
        if not isinstance(self.count, int) or self.count < 0:
            raise OntologyError("Max cardinality must be an integer >= 0")


ClassExpression = Union[Named, And, Or, Some, Only, Min, Max]


def _check_members(members, label: str) -> None:
    if not isinstance(members, tuple) or len(members) < 2:
        raise OntologyError(f"{label} needs a tuple of at least two members")
    for m in members:
        if not isinstance(m, (Named, And, Or, Some, Only, Min, Max)):
            raise KindMismatch(f"{label} member is not a class expression: {m!r}")


def _check_quantifier(prop, filler) -> None:
    # quantified restrictions range over object properties and named fillers
    _require(prop, Kind.OBJECT_PROPERTY, "restriction property")
    _require_class(filler, "restriction filler")


def expression_entities(expr: ClassExpression) -> Iterator[Entity]:
    if isinstance(expr, Named):
        yield expr.cls
    elif isinstance(expr, (And, Or)):
        for m in expr.members:
            yield from expression_entities(m)
    else:
        yield expr.prop
        yield expr.filler


# ---------------------------------------------------------------------------
# axioms


class Box(Enum):
    RBOX = "rbox"
    TBOX = "tbox"
    ABOX = "abox"


class AxiomTag(Enum):
    SUB_PROPERTY = "SubPropertyOf"
    EQUIVALENT_PROPERTIES = "EquivalentProperties"
    DISJOINT_PROPERTIES = "DisjointProperties"
    INVERSE_PROPERTIES = "InverseProperties"
    PROPERTY_DOMAIN = "PropertyDomain"
    PROPERTY_RANGE = "PropertyRange"
    FUNCTIONAL_PROPERTY = "FunctionalProperty"
    REFLEXIVE_PROPERTY = "ReflexiveProperty"
    SYMMETRIC_PROPERTY = "SymmetricProperty"
    TRANSITIVE_PROPERTY = "TransitiveProperty"
    IRREFLEXIVE_PROPERTY = "IrreflexiveProperty"
    PROPERTY_CHAIN = "SubPropertyChain"
    SUB_CLASS = "SubClassOf"
    EQUIVALENT_CLASSES = "EquivalentClasses"
    DISJOINT_CLASSES = "DisjointClasses"
    CLASS_DEFINITION = "DefineClass"
    CLASS_ASSERTION = "ClassAssertion"
    PROPERTY_ASSERTION = "PropertyAssertion"
    SAME_INDIVIDUAL = "SameIndividual"
    DIFFERENT_INDIVIDUALS = "DifferentIndividuals"

    @property
    def box(self) -> Box:
        return _BOX_OF[self]


_RBOX_TAGS = {
    AxiomTag.SUB_PROPERTY,
    AxiomTag.EQUIVALENT_PROPERTIES,
    AxiomTag.DISJOINT_PROPERTIES,
    AxiomTag.INVERSE_PROPERTIES,
    AxiomTag.PROPERTY_DOMAIN,
    AxiomTag.PROPERTY_RANGE,
    AxiomTag.FUNCTIONAL_PROPERTY,
    AxiomTag.REFLEXIVE_PROPERTY,
    AxiomTag.SYMMETRIC_PROPERTY,
    AxiomTag.TRANSITIVE_PROPERTY,
    AxiomTag.IRREFLEXIVE_PROPERTY,
    AxiomTag.PROPERTY_CHAIN,
}
_TBOX_TAGS = {
    AxiomTag.SUB_CLASS,
    AxiomTag.EQUIVALENT_CLASSES,
    AxiomTag.DISJOINT_CLASSES,
    AxiomTag.CLASS_DEFINITION,
}
_BOX_OF = {}
for _tag in AxiomTag:
    if _tag in _RBOX_TAGS:
        _BOX_OF[_tag] = Box.RBOX
    elif _tag in _TBOX_TAGS:
        _BOX_OF[_tag] = Box.TBOX
    else:
        _BOX_OF[_tag] = Box.ABOX

# Tags whose two arguments form an unordered pair: the axiom with swapped
# arguments is the same axiom.  Canonicalised at construction time.
ORDERLESS_TAGS = frozenset(
    {
        AxiomTag.EQUIVALENT_PROPERTIES,
        AxiomTag.DISJOINT_PROPERTIES,
        AxiomTag.INVERSE_PROPERTIES,
        AxiomTag.EQUIVALENT_CLASSES,
        AxiomTag.DISJOINT_CLASSES,
        AxiomTag.SAME_INDIVIDUAL,
        AxiomTag.DIFFERENT_INDIVIDUALS,
    }
)


@dataclass(frozen=True)
class Axiom:
    tag: AxiomTag
    args: tuple

    def __repr__(self):
        inner = " ".join(repr(a) for a in self.args)
        return f"{self.tag.value}({inner})"


def _pair(tag: AxiomTag, a: Entity, b: Entity) -> Axiom:
    first, second = sorted((a, b), key=lambda e: e.iri)
    return Axiom(tag, (first, second))


def _same_property_kind(a: Entity, b: Entity, label: str) -> None:
    _require_property(a, label)
    _require_property(b, label)
    if a.kind is not b.kind:
        raise KindMismatch(f"{label} may not mix object and data properties")


def sub_property(sub: Entity, sup: Entity) -> Axiom:
    _same_property_kind(sub, sup, "SubPropertyOf")
    return Axiom(AxiomTag.SUB_PROPERTY, (sub, sup))


def equivalent_properties(a: Entity, b: Entity) -> Axiom:
    _same_property_kind(a, b, "EquivalentProperties")
    return _pair(AxiomTag.EQUIVALENT_PROPERTIES, a, b)


def disjoint_properties(a: Entity, b: Entity) -> Axiom:
    _same_property_kind(a, b, "DisjointProperties")
    return _pair(AxiomTag.DISJOINT_PROPERTIES, a, b)


def inverse_properties(a: Entity, b: Entity) -> Axiom:
    _require(a, Kind.OBJECT_PROPERTY, "InverseProperties argument")
    _require(b, Kind.OBJECT_PROPERTY, "InverseProperties argument")
    return _pair(AxiomTag.INVERSE_PROPERTIES, a, b)


def property_domain(prop: Entity, cls: Entity) -> Axiom:
    _require_property(prop, "PropertyDomain property")
    _require_class(cls, "PropertyDomain class")
    return Axiom(AxiomTag.PROPERTY_DOMAIN, (prop, cls))


def property_range(prop: Entity, cls: Entity) -> Axiom:
    _require_property(prop, "PropertyRange property")
    _require(cls, Kind.CLASS, "PropertyRange class")
    if prop.kind is Kind.DATA_PROPERTY and cls not in DATATYPES:
        raise KindMismatch("the range of a data property must be a datatype")
    if prop.kind is Kind.OBJECT_PROPERTY and cls in DATATYPES:
        raise KindMismatch("the range of an object property must be a class")
    return Axiom(AxiomTag.PROPERTY_RANGE, (prop, cls))


def functional(prop: Entity) -> Axiom:
    _require_property(prop, "FunctionalProperty argument")
    return Axiom(AxiomTag.FUNCTIONAL_PROPERTY, (prop,))


def _object_unary(tag: AxiomTag, prop: Entity) -> Axiom:
    _require(prop, Kind.OBJECT_PROPERTY, f"{tag.value} argument")
    return Axiom(tag, (prop,))


def reflexive(prop: Entity) -> Axiom:
    return _object_unary(AxiomTag.REFLEXIVE_PROPERTY, prop)


def symmetric(prop: Entity) -> Axiom:
    return _object_unary(AxiomTag.SYMMETRIC_PROPERTY, prop)


def transitive(prop: Entity) -> Axiom:
    return _object_unary(AxiomTag.TRANSITIVE_PROPERTY, prop)


def irreflexive(prop: Entity) -> Axiom:
    return _object_unary(AxiomTag.IRREFLEXIVE_PROPERTY, prop)


def property_chain(sup: Entity, first: Entity, second: Entity) -> Axiom:
    for e in (sup, first, second):
        _require(e, Kind.OBJECT_PROPERTY, "SubPropertyChain argument")
    return Axiom(AxiomTag.PROPERTY_CHAIN, (sup, first, second))


def sub_class(sub: Entity, sup: Entity) -> Axiom:
    _require_class(sub, "SubClassOf argument")
    _require_class(sup, "SubClassOf argument")
    return Axiom(AxiomTag.SUB_CLASS, (sub, sup))


def equivalent_classes(a: Entity, b: Entity) -> Axiom:
    _require_class(a, "EquivalentClasses argument")
    _require_class(b, "EquivalentClasses argument")
    return _pair(AxiomTag.EQUIVALENT_CLASSES, a, b)


def disjoint_classes(a: Entity, b: Entity) -> Axiom:
    _require_class(a, "DisjointClasses argument")
    _require_class(b, "DisjointClasses argument")
    return _pair(AxiomTag.DISJOINT_CLASSES, a, b)


def class_definition(cls: Entity, expr: ClassExpression) -> Axiom:
    _require_class(cls, "DefineClass subject")
    if not isinstance(expr, (Named, And, Or, Some, Only, Min, Max)):
        raise KindMismatch(f"DefineClass body is not a class expression: {expr!r}")
    return Axiom(AxiomTag.CLASS_DEFINITION, (cls, expr))


def class_assertion(individual: Entity, cls: Entity) -> Axiom:
    _require(individual, Kind.INDIVIDUAL, "ClassAssertion individual")
    _require_class(cls, "ClassAssertion class")
    return Axiom(AxiomTag.CLASS_ASSERTION, (individual, cls))


def property_assertion(subject: Entity, prop: Entity, filler: Term) -> Axiom:
    _require(subject, Kind.INDIVIDUAL, "PropertyAssertion subject")
    _require_property(prop, "PropertyAssertion property")
    if prop.kind is Kind.OBJECT_PROPERTY:
        _require(filler, Kind.INDIVIDUAL, "object property filler")
    elif not isinstance(filler, Literal):
        raise KindMismatch(f"data property filler must be a literal, got {filler!r}")
    return Axiom(AxiomTag.PROPERTY_ASSERTION, (subject, prop, filler))


def same_individual(a: Entity, b: Entity) -> Axiom:
    _require(a, Kind.INDIVIDUAL, "SameIndividual argument")
    _require(b, Kind.INDIVIDUAL, "SameIndividual argument")
    return _pair(AxiomTag.SAME_INDIVIDUAL, a, b)


def different_individuals(a: Entity, b: Entity) -> Axiom:
    _require(a, Kind.INDIVIDUAL, "DifferentIndividuals argument")
    _require(b, Kind.INDIVIDUAL, "DifferentIndividuals argument")
    return _pair(AxiomTag.DIFFERENT_INDIVIDUALS, a, b)


def axiom_entities(axiom: Axiom) -> Iterator[Entity]:
    """Every named entity mentioned by the axiom (literals are skipped)."""
    for arg in axiom.args:
        if isinstance(arg, Entity):
            yield arg
        elif isinstance(arg, (Named, And, Or, Some, Only, Min, Max)):
            yield from expression_entities(arg)


def canonical(axiom: Axiom) -> Axiom:
    """Normalise an unordered pair's argument order; others pass through.

    Factory-built axioms are already canonical; this guards hand-built
    ones so the store answers the same for either argument order.
    """
    if axiom.tag in ORDERLESS_TAGS:
        a, b = axiom.args
        if b.iri < a.iri:
            return Axiom(axiom.tag, (b, a))
    return axiom


def tautological(axiom: Axiom) -> bool:
    """True for axioms that hold in every world.

    Reflexive subsumptions, equivalences and self-identity, the class
    lattice bounds (NOTHING below, THING above) and THING membership.
    The reasoner treats these as entailed without materialising them,
    so asserting or retracting one never changes what is entailed.
    """
    tag = axiom.tag
    if tag is AxiomTag.SUB_CLASS:
        sub, sup = axiom.args
        return sub == sup or sub == NOTHING or sup == THING
    if tag in (
        AxiomTag.SUB_PROPERTY,
        AxiomTag.EQUIVALENT_PROPERTIES,
        AxiomTag.EQUIVALENT_CLASSES,
        AxiomTag.SAME_INDIVIDUAL,
    ):
        return axiom.args[0] == axiom.args[1]
    if tag is AxiomTag.CLASS_ASSERTION:
        return axiom.args[1] == THING
    return False


def mentions_at_ground(axiom: Axiom, ground: Entity) -> bool:
    """True when `ground` sits in the axiom's ground position.

    The ground position is the first argument; for unordered pair tags
    either argument counts.
    """
    if axiom.tag in ORDERLESS_TAGS:
        return ground in axiom.args[:2]
    return axiom.args[0] == ground


# ---------------------------------------------------------------------------
# the store


class Ontology:
    """Vocabulary plus asserted and inferred axiom partitions.

    The asserted set is only changed through assert_axiom / retract_axiom.
    The inferred partition belongs to the reasoner; it is read through the
    "entailed" view, which is the union of both partitions and is guarded
    by a staleness check.
    """

    def __init__(self):
        self._vocab: dict[str, Entity] = {e.iri: e for e in BUILTINS}
        self._asserted: set[Axiom] = set()
        self._inferred: frozenset[Axiom] = frozenset()
        self._generation = 0
        self._closure_generation = -1
        self._closure = None

    # -- vocabulary

    def lookup(self, iri: str) -> Entity:
        try:
            return self._vocab[iri]
        except KeyError:
            raise UnknownEntity(f"{iri!r} is not declared") from None

    def maybe_lookup(self, iri: str) -> Entity | None:
        return self._vocab.get(iri)

    def declare(self, kind: Kind, iri: str) -> Entity:
        if kind is Kind.LITERAL:
            raise KindMismatch("literals are values and are never declared")
        existing = self._vocab.get(iri)
        if existing is not None:
            if existing.kind is not kind:
                raise KindClash(
                    f"{iri!r} is already a {existing.kind.value}, cannot redeclare as {kind.value}"
                )
            return existing
        entity = Entity(kind, iri)
        self._vocab[iri] = entity
        self._generation += 1
        return entity

    def ensure(self, entity: Entity) -> Entity:
        """Declare the entity's IRI with its kind if not present."""
        return self.declare(entity.kind, entity.iri)

    def vocabulary(self) -> Iterator[Entity]:
        return iter(self._vocab.values())

    def entities_of_kind(self, kind: Kind) -> list[Entity]:
        return [e for e in self._vocab.values() if e.kind is kind]

    def individuals(self) -> list[Entity]:
        return self.entities_of_kind(Kind.INDIVIDUAL)

    # -- axioms

    def _check_vocabulary(self, axiom: Axiom) -> None:
        for entity in axiom_entities(axiom):
            known = self._vocab.get(entity.iri)
            if known is None:
                raise UnknownEntity(f"axiom mentions undeclared entity: {entity.iri!r}")
            if known != entity:
                raise KindClash(
                    f"{entity.iri!r} is declared as {known.kind.value}, axiom uses {entity.kind.value}"
                )

    def assert_axiom(self, axiom: Axiom) -> bool:
        """Add to the asserted set.  Returns True when the set changed."""
        if not isinstance(axiom, Axiom):
            raise OntologyError(f"not an axiom: {axiom!r}")
        axiom = canonical(axiom)
        self._check_vocabulary(axiom)
        if axiom in self._asserted:
            return False
        self._asserted.add(axiom)
        self._generation += 1
        return True

    def retract_axiom(self, axiom: Axiom) -> bool:
        """Remove from the asserted set.  Returns True when the set changed."""
        axiom = canonical(axiom)
        if axiom not in self._asserted:
            return False
        self._asserted.remove(axiom)
        self._generation += 1
        return True

    @property
    def generation(self) -> int:
        return self._generation

    @property
    def stale(self) -> bool:
        return self._closure_generation != self._generation

    def _install_closure(self, closure, inferred: frozenset) -> None:
        # called by the reasoner only
        self._inferred = inferred
        self._closure = closure
        self._closure_generation = self._generation

    def current_closure(self):
        if self._closure is None or self.stale:
            raise StaleClosure("reason() must run before entailed reads")
        return self._closure

    def axioms(self, view: str = "asserted") -> frozenset[Axiom]:
        if view == "asserted":
            return frozenset(self._asserted)
        if view == "entailed":
            if self.stale:
                raise StaleClosure("entailed view requested after mutations; run reason()")
            return frozenset(self._asserted) | self._inferred
        raise ValueError(f"view must be 'asserted' or 'entailed', got {view!r}")

    def inferred_axioms(self) -> frozenset[Axiom]:
        if self.stale:
            raise StaleClosure("inferred partition requested after mutations; run reason()")
        return self._inferred

    def axioms_about(self, tag: AxiomTag, ground: Entity, view: str = "asserted") -> set[Axiom]:
        return {
            a
            for a in self.axioms(view)
            if a.tag is tag and mentions_at_ground(a, ground)
        }

    def contains(self, axiom: Axiom, view: str = "asserted") -> bool:
        return canonical(axiom) in self.axioms(view)

    def assert_all(self, axioms: Iterable[Axiom]) -> None:
        for a in axioms:
            self.assert_axiom(a)
