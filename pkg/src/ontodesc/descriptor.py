"""Object-like descriptors over the axiom store.

A descriptor is a triple of a tag, a ground entity x and an ordered,
duplicate-free item list Y.  The tag fixes which axiom shape the items
map to; the ground is the entity the axioms are about.  Mapping is
bidirectional and lossless:

* to_axioms(tag, x, Y) renders the items as axioms,
* from_axiom(tag, x, a) recovers the item encoded by one axiom,

and the two are exact inverses on legal descriptors.  The DEFINITION tag
is special: its whole item list encodes the single class-definition
axiom, each item a restriction carrying the connective to its successor
(intersection binds tighter than union; the last connective is END).

Operations:

* query   - the entailed axioms of the descriptor's tag about its ground
            (unstable surface, exposed for tests),
* read    - replace Y with the query result, mapped through from_axiom,
* write   - make the asserted axioms for (tag, x) exactly to_axioms(Y),
* build   - for every item, create a descriptor grounded on the item's
            entity via a factory and read it.

read and write return Intent records, one per changed element; they give
the operation's observable effect and are never rolled back.  write only
touches the asserted partition and leaves the closure stale; read
requires a current closure.

Reading SUB_CLASSES / SUPER_CLASSES lists the direct taxonomy neighbours
(so a leaf class reads {NOTHING} and a root reads {THING}); TYPES,
INSTANCES and LINKS list everything entailed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Union

from . import model
from .model import (
    And,
    Axiom,
    AxiomTag,
    ClassExpression,
    Entity,
    Kind,
    Literal,
    Max,
    Min,
    Named,
    Only,
    Ontology,
    OntologyError,
    Or,
    Some,
    Term,
)


class MappingError(OntologyError):
    """A descriptor state that cannot be mapped to or from axioms."""


class IllegalItem(MappingError):
    """An item variant the descriptor's tag does not accept."""


class UnsupportedRestriction(MappingError):
    """A restriction form not representable for this tag."""


class GroundMismatch(MappingError):
    """The axiom is not about the descriptor's ground."""


class TagMismatch(MappingError):
    """The axiom's tag differs from the descriptor's axiom tag."""


class UndefinedBuild(OntologyError):
    """build() has no meaning for this tag or item."""


# ---------------------------------------------------------------------------
# items


@dataclass(frozen=True)
class Void:
    """Marker item for unary property characteristics."""


@dataclass(frozen=True)
class Ref:
    entity: Entity


class Connective(Enum):
    INTERSECT = "intersect"
    UNION = "union"
    END = "end"


class Form(Enum):
    NAMED = "named"
    SOME = "some"
    ONLY = "only"
    AT_LEAST = "at-least"
    AT_MOST = "at-most"


@dataclass(frozen=True)
class Restriction:
    connective: Connective
    form: Form
    cls: Entity | None = None
    count: int | None = None
    prop: Entity | None = None
    filler: Entity | None = None

    def __post_init__(self):
        if self.form is Form.NAMED:
            ok = self.cls is not None and self.count is None and self.prop is None and self.filler is None
        elif self.form in (Form.SOME, Form.ONLY):
            ok = self.cls is None and self.count is None and self.prop is not None and self.filler is not None
        else:
            ok = self.cls is None and self.count is not None and self.prop is not None and self.filler is not None
        if not ok:
            raise MappingError(f"malformed restriction payload for form {self.form.value}")


@dataclass(frozen=True)
class Link:
    prop: Entity
    filler: Term


Item = Union[Void, Ref, Restriction, Link]


def named_restriction(cls: Entity, connective: Connective = Connective.END) -> Restriction:
    return Restriction(connective, Form.NAMED, cls=cls)


def item_sort_key(item: Item):
    if isinstance(item, Void):
        return (0, "", "")
    if isinstance(item, Ref):
        return (1, item.entity.iri, "")
    if isinstance(item, Restriction):
        name = item.cls.iri if item.form is Form.NAMED else item.prop.iri
        return (2, name, item.form.value)
    return (3, item.prop.iri, _term_sort_key(item.filler))


def _term_sort_key(term: Term) -> str:
    if isinstance(term, Entity):
        return "e:" + term.iri
    return f"l:{type(term.value).__name__}:{term.value!r}"


# ---------------------------------------------------------------------------
# tags

class Partition(Enum):
    PROPERTY = "property"
    CLASS = "class"
    INDIVIDUAL = "individual"


class DescriptorTag(Enum):
    SUPER_PROPERTIES = "SuperProperties"
    DISJOINT_PROPERTIES = "DisjointProperties"
    EQUIVALENT_PROPERTIES = "EquivalentProperties"
    INVERSE_PROPERTIES = "InverseProperties"
    DOMAIN = "Domain"
    RANGE = "Range"
    FUNCTIONAL = "Functional"
    REFLEXIVE = "Reflexive"
    SYMMETRIC = "Symmetric"
    TRANSITIVE = "Transitive"
    SUB_CLASSES = "SubClasses"
    SUPER_CLASSES = "SuperClasses"
    EQUIVALENT_CLASSES = "EquivalentClasses"
    DISJOINT_CLASSES = "DisjointClasses"
    DEFINITION = "Definition"
    INSTANCES = "Instances"
    TYPES = "Types"
    LINKS = "Links"
    SAME_AS = "SameAs"
    DIFFERENT_FROM = "DifferentFrom"

    @property
    def partition(self) -> Partition:
        return _META[self].partition


@dataclass(frozen=True)
class _TagMeta:
    partition: Partition
    axiom_tag: AxiomTag
    ground_kinds: tuple
    item_type: type


_PROP_KINDS = (Kind.OBJECT_PROPERTY, Kind.DATA_PROPERTY)
_OBJ = (Kind.OBJECT_PROPERTY,)
_META = {
    DescriptorTag.SUPER_PROPERTIES: _TagMeta(Partition.PROPERTY, AxiomTag.SUB_PROPERTY, _PROP_KINDS, Ref),
    DescriptorTag.DISJOINT_PROPERTIES: _TagMeta(Partition.PROPERTY, AxiomTag.DISJOINT_PROPERTIES, _PROP_KINDS, Ref),
    DescriptorTag.EQUIVALENT_PROPERTIES: _TagMeta(Partition.PROPERTY, AxiomTag.EQUIVALENT_PROPERTIES, _PROP_KINDS, Ref),
    DescriptorTag.INVERSE_PROPERTIES: _TagMeta(Partition.PROPERTY, AxiomTag.INVERSE_PROPERTIES, _OBJ, Ref),
    DescriptorTag.DOMAIN: _TagMeta(Partition.PROPERTY, AxiomTag.PROPERTY_DOMAIN, _PROP_KINDS, Restriction),
    DescriptorTag.RANGE: _TagMeta(Partition.PROPERTY, AxiomTag.PROPERTY_RANGE, _PROP_KINDS, Restriction),
    DescriptorTag.FUNCTIONAL: _TagMeta(Partition.PROPERTY, AxiomTag.FUNCTIONAL_PROPERTY, _PROP_KINDS, Void),
    DescriptorTag.REFLEXIVE: _TagMeta(Partition.PROPERTY, AxiomTag.REFLEXIVE_PROPERTY, _OBJ, Void),
    DescriptorTag.SYMMETRIC: _TagMeta(Partition.PROPERTY, AxiomTag.SYMMETRIC_PROPERTY, _OBJ, Void),
    DescriptorTag.TRANSITIVE: _TagMeta(Partition.PROPERTY, AxiomTag.TRANSITIVE_PROPERTY, _OBJ, Void),
    DescriptorTag.SUB_CLASSES: _TagMeta(Partition.CLASS, AxiomTag.SUB_CLASS, (Kind.CLASS,), Ref),
    DescriptorTag.SUPER_CLASSES: _TagMeta(Partition.CLASS, AxiomTag.SUB_CLASS, (Kind.CLASS,), Ref),
    DescriptorTag.EQUIVALENT_CLASSES: _TagMeta(Partition.CLASS, AxiomTag.EQUIVALENT_CLASSES, (Kind.CLASS,), Ref),
    DescriptorTag.DISJOINT_CLASSES: _TagMeta(Partition.CLASS, AxiomTag.DISJOINT_CLASSES, (Kind.CLASS,), Ref),
    DescriptorTag.DEFINITION: _TagMeta(Partition.CLASS, AxiomTag.CLASS_DEFINITION, (Kind.CLASS,), Restriction),
    DescriptorTag.INSTANCES: _TagMeta(Partition.CLASS, AxiomTag.CLASS_ASSERTION, (Kind.CLASS,), Ref),
    DescriptorTag.TYPES: _TagMeta(Partition.INDIVIDUAL, AxiomTag.CLASS_ASSERTION, (Kind.INDIVIDUAL,), Ref),
    DescriptorTag.LINKS: _TagMeta(Partition.INDIVIDUAL, AxiomTag.PROPERTY_ASSERTION, (Kind.INDIVIDUAL,), Link),
    DescriptorTag.SAME_AS: _TagMeta(Partition.INDIVIDUAL, AxiomTag.SAME_INDIVIDUAL, (Kind.INDIVIDUAL,), Ref),
    DescriptorTag.DIFFERENT_FROM: _TagMeta(Partition.INDIVIDUAL, AxiomTag.DIFFERENT_INDIVIDUALS, (Kind.INDIVIDUAL,), Ref),
}

_UNBUILDABLE = {
    DescriptorTag.FUNCTIONAL,
    DescriptorTag.REFLEXIVE,
    DescriptorTag.SYMMETRIC,
    DescriptorTag.TRANSITIVE,
}


# ---------------------------------------------------------------------------
# item <-> axiom mapping


def _check_item(tag: DescriptorTag, item: Item) -> None:
    expected = _META[tag].item_type
    if not isinstance(item, expected):
        raise IllegalItem(
            f"{tag.value} holds {expected.__name__} items, got {type(item).__name__}"
        )


def restriction_to_atom(r: Restriction) -> ClassExpression:
    if r.form is Form.NAMED:
        return Named(r.cls)
    if r.form is Form.SOME:
        return Some(r.prop, r.filler)
    if r.form is Form.ONLY:
        return Only(r.prop, r.filler)
    if r.form is Form.AT_LEAST:
        return Min(r.count, r.prop, r.filler)
    return Max(r.count, r.prop, r.filler)


def atom_to_restriction(expr: ClassExpression, connective: Connective) -> Restriction:
    if isinstance(expr, Named):
        return Restriction(connective, Form.NAMED, cls=expr.cls)
    if isinstance(expr, Some):
        return Restriction(connective, Form.SOME, prop=expr.prop, filler=expr.filler)
    if isinstance(expr, Only):
        return Restriction(connective, Form.ONLY, prop=expr.prop, filler=expr.filler)
    if isinstance(expr, Min):
        return Restriction(connective, Form.AT_LEAST, count=expr.count, prop=expr.prop, filler=expr.filler)
    if isinstance(expr, Max):
        return Restriction(connective, Form.AT_MOST, count=expr.count, prop=expr.prop, filler=expr.filler)
    raise UnsupportedRestriction(f"not an atomic restriction: {expr!r}")


def restrictions_to_expression(items: list[Restriction]) -> ClassExpression:
    """Assemble the ordered restriction list into one class expression.

    Runs of INTERSECT-connected restrictions group into intersections;
    UNION joins the groups.  The last connective must be END.
    """
    for i, r in enumerate(items):
        if not isinstance(r, Restriction):
            raise IllegalItem(f"definition items must be restrictions, got {type(r).__name__}")
        last = i == len(items) - 1
        if last and r.connective is not Connective.END:
            raise MappingError("the last restriction must carry the END connective")
        if not last and r.connective is Connective.END:
            raise MappingError("only the last restriction may carry the END connective")
    groups: list[list[Restriction]] = [[]]
    for r in items:
        groups[-1].append(r)
        if r.connective is Connective.UNION:
            groups.append([])
    exprs = []
    for group in groups:
        atoms = tuple(restriction_to_atom(r) for r in group)
        exprs.append(atoms[0] if len(atoms) == 1 else And(atoms))
    return exprs[0] if len(exprs) == 1 else Or(tuple(exprs))


def expression_to_restrictions(expr: ClassExpression) -> list[Restriction]:
    """Flatten a class expression back into an ordered restriction list."""
    if isinstance(expr, Or):
        groups = [_group_atoms(m) for m in expr.members]
    else:
        groups = [_group_atoms(expr)]
    items: list[Restriction] = []
    for gi, atoms in enumerate(groups):
        last_group = gi == len(groups) - 1
        for ai, atom in enumerate(atoms):
            if ai < len(atoms) - 1:
                connective = Connective.INTERSECT
            elif last_group:
                connective = Connective.END
            else:
                connective = Connective.UNION
            items.append(atom_to_restriction(atom, connective))
    return items


def _group_atoms(expr: ClassExpression) -> list[ClassExpression]:
    if isinstance(expr, And):
        for m in expr.members:
            if isinstance(m, (And, Or)):
                raise UnsupportedRestriction("intersection members must be atomic")
        return list(expr.members)
    if isinstance(expr, Or):
        raise UnsupportedRestriction("a union may not nest inside another expression")
    return [expr]


def to_axiom(tag: DescriptorTag, ground: Entity, item: Item) -> Axiom:
    """Render one item as the axiom it stands for.  Not for DEFINITION."""
    _check_item(tag, item)
    if tag is DescriptorTag.DEFINITION:
        return model.class_definition(ground, restriction_to_atom(item))
    if tag is DescriptorTag.SUPER_PROPERTIES:
        return model.sub_property(ground, item.entity)
    if tag is DescriptorTag.DISJOINT_PROPERTIES:
        return model.disjoint_properties(ground, item.entity)
    if tag is DescriptorTag.EQUIVALENT_PROPERTIES:
        return model.equivalent_properties(ground, item.entity)
    if tag is DescriptorTag.INVERSE_PROPERTIES:
        return model.inverse_properties(ground, item.entity)
    if tag in (DescriptorTag.DOMAIN, DescriptorTag.RANGE):
        if item.form is not Form.NAMED:
            raise UnsupportedRestriction(f"{tag.value} accepts named-class restrictions only")
        maker = model.property_domain if tag is DescriptorTag.DOMAIN else model.property_range
        return maker(ground, item.cls)
    if tag is DescriptorTag.FUNCTIONAL:
        return model.functional(ground)
    if tag is DescriptorTag.REFLEXIVE:
        return model.reflexive(ground)
    if tag is DescriptorTag.SYMMETRIC:
        return model.symmetric(ground)
    if tag is DescriptorTag.TRANSITIVE:
        return model.transitive(ground)
    if tag is DescriptorTag.SUB_CLASSES:
        return model.sub_class(item.entity, ground)
    if tag is DescriptorTag.SUPER_CLASSES:
        return model.sub_class(ground, item.entity)
    if tag is DescriptorTag.EQUIVALENT_CLASSES:
        return model.equivalent_classes(ground, item.entity)
    if tag is DescriptorTag.DISJOINT_CLASSES:
        return model.disjoint_classes(ground, item.entity)
    if tag is DescriptorTag.INSTANCES:
        return model.class_assertion(item.entity, ground)
    if tag is DescriptorTag.TYPES:
        return model.class_assertion(ground, item.entity)
    if tag is DescriptorTag.LINKS:
        return model.property_assertion(ground, item.prop, item.filler)
    if tag is DescriptorTag.SAME_AS:
        return model.same_individual(ground, item.entity)
    return model.different_individuals(ground, item.entity)


def to_axioms(tag: DescriptorTag, ground: Entity, items: list) -> list[Axiom]:
    """Render the whole item list; DEFINITION consumes it as one axiom."""
    if tag is DescriptorTag.DEFINITION:
        if not items:
            return []
        return [model.class_definition(ground, restrictions_to_expression(items))]
    return [to_axiom(tag, ground, item) for item in items]


def _other_of_pair(ground: Entity, axiom: Axiom) -> Entity:
    a, b = axiom.args
    if ground == a:
        return b
    if ground == b:
        return a
    raise GroundMismatch(f"{axiom!r} is not about {ground.iri}")


def _expect_first(ground: Entity, axiom: Axiom):
    if axiom.args[0] != ground:
        raise GroundMismatch(f"{axiom!r} is not grounded on {ground.iri}")


def from_axiom(tag: DescriptorTag, ground: Entity, axiom: Axiom) -> Item:
    """Recover the item one axiom encodes for a descriptor on `ground`."""
    meta = _META[tag]
    if axiom.tag is not meta.axiom_tag:
        raise TagMismatch(f"{tag.value} maps {meta.axiom_tag.value} axioms, got {axiom.tag.value}")
    if tag is DescriptorTag.DEFINITION:
        _expect_first(ground, axiom)
        raise MappingError("definitions map through from_definition, not from_axiom")
    if tag is DescriptorTag.SUPER_PROPERTIES:
        _expect_first(ground, axiom)
        return Ref(axiom.args[1])
    if tag in (
        DescriptorTag.DISJOINT_PROPERTIES,
        DescriptorTag.EQUIVALENT_PROPERTIES,
        DescriptorTag.INVERSE_PROPERTIES,
        DescriptorTag.EQUIVALENT_CLASSES,
        DescriptorTag.DISJOINT_CLASSES,
        DescriptorTag.SAME_AS,
        DescriptorTag.DIFFERENT_FROM,
    ):
        return Ref(_other_of_pair(ground, axiom))
    if tag in (DescriptorTag.DOMAIN, DescriptorTag.RANGE):
        _expect_first(ground, axiom)
        return named_restriction(axiom.args[1])
    if tag in (
        DescriptorTag.FUNCTIONAL,
        DescriptorTag.REFLEXIVE,
        DescriptorTag.SYMMETRIC,
        DescriptorTag.TRANSITIVE,
    ):
        _expect_first(ground, axiom)
        return Void()
    if tag is DescriptorTag.SUB_CLASSES:
        if axiom.args[1] != ground:
            raise GroundMismatch(f"{axiom!r} is not a subclass axiom under {ground.iri}")
        return Ref(axiom.args[0])
    if tag is DescriptorTag.SUPER_CLASSES:
        _expect_first(ground, axiom)
        return Ref(axiom.args[1])
    if tag is DescriptorTag.INSTANCES:
        if axiom.args[1] != ground:
            raise GroundMismatch(f"{axiom!r} does not assert membership in {ground.iri}")
        return Ref(axiom.args[0])
    if tag is DescriptorTag.TYPES:
        _expect_first(ground, axiom)
        return Ref(axiom.args[1])
    if tag is DescriptorTag.LINKS:
        _expect_first(ground, axiom)
        return Link(axiom.args[1], axiom.args[2])
    raise TagMismatch(f"unhandled tag {tag!r}")  # pragma: no cover


def from_definition(ground: Entity, axiom: Axiom) -> list[Restriction]:
    if axiom.tag is not AxiomTag.CLASS_DEFINITION:
        raise TagMismatch(f"expected a class definition, got {axiom.tag.value}")
    _expect_first(ground, axiom)
    return expression_to_restrictions(axiom.args[1])


# ---------------------------------------------------------------------------
# intents and descriptor state


@dataclass(frozen=True)
class Intent:
    direction: str  # "read" | "write"
    change: str  # "add" | "remove"
    axiom: Axiom
    target: str  # "descriptor" | "ontology"
    succeeded: bool = True


@dataclass
class DescriptorState:
    tag: DescriptorTag
    ground: Entity
    ontology: Ontology
    items: list = field(default_factory=list)
    build_factory: Callable | None = None

    def __post_init__(self):
        self._check_ground(self.ground)
        deduped = []
        for item in self.items:
            _check_item(self.tag, item)
            if item not in deduped:
                deduped.append(item)
        self.items = deduped

    def _check_ground(self, entity: Entity) -> None:
        meta = _META[self.tag]
        if not isinstance(entity, Entity) or entity.kind not in meta.ground_kinds:
            wanted = " or ".join(k.value for k in meta.ground_kinds)
            raise model.KindMismatch(f"{self.tag.value} descriptors ground on a {wanted}")

    def set_ground(self, entity: Entity) -> None:
        self._check_ground(entity)
        self.ground = entity

    # -- item edits

    def add(self, item: Item) -> bool:
        _check_item(self.tag, item)
        if item in self.items:
            return False
        self.items.append(item)
        return True

    def remove(self, item: Item) -> bool:
        if item in self.items:
            self.items.remove(item)
            return True
        return False

    def refs(self) -> list[Entity]:
        return [i.entity for i in self.items if isinstance(i, Ref)]

    # -- the four operations

    def query(self) -> set[Axiom]:
        """Entailed axioms of this tag about the ground.  Unstable surface."""
        closure = self.ontology.current_closure()
        tag, g = self.tag, self.ground
        if tag is DescriptorTag.SUB_CLASSES:
            return {model.sub_class(c, g) for c in closure.direct_subclasses(g)}
        if tag is DescriptorTag.SUPER_CLASSES:
            return {model.sub_class(g, c) for c in closure.direct_superclasses(g)}
        if tag is DescriptorTag.INSTANCES:
            return {model.class_assertion(i, g) for i in closure.instances_of(g)}
        return self.ontology.axioms_about(_META[tag].axiom_tag, g, "entailed")

    def _items_from_query(self, result: set[Axiom]) -> list[Item]:
        if self.tag is DescriptorTag.DEFINITION:
            if len(result) > 1:
                raise MappingError(
                    f"{self.ground.iri} has {len(result)} definitions; a descriptor holds one"
                )
            return from_definition(self.ground, next(iter(result))) if result else []
        items = [from_axiom(self.tag, self.ground, a) for a in result]
        return sorted(set(items), key=item_sort_key)

    def _intent_axiom(self, item: Item) -> Axiom:
        if self.tag is DescriptorTag.DEFINITION:
            return model.class_definition(self.ground, restriction_to_atom(item))
        return to_axiom(self.tag, self.ground, item)

    def read(self) -> list[Intent]:
        """Synchronise Y with the ontology's entailed view."""
        new_items = self._items_from_query(self.query())
        old, new = set(self.items), set(new_items)
        intents = [
            Intent("read", "remove", self._intent_axiom(i), "descriptor") for i in self.items if i not in new
        ] + [
            Intent("read", "add", self._intent_axiom(i), "descriptor") for i in new_items if i not in old
        ]
        self.items = new_items
        return intents

    def _asserted_projection(self) -> set[Axiom]:
        tag, g = self.tag, self.ground
        axiom_tag = _META[tag].axiom_tag
        asserted = [a for a in self.ontology.axioms("asserted") if a.tag is axiom_tag]
        if tag in (DescriptorTag.SUB_CLASSES, DescriptorTag.INSTANCES):
            return {a for a in asserted if a.args[1] == g}
        if axiom_tag in model.ORDERLESS_TAGS:
            return {a for a in asserted if g in a.args[:2]}
        return {a for a in asserted if a.args[0] == g}

    def write(self) -> list[Intent]:
        """Make the asserted axioms for (tag, ground) exactly match Y.

        Entities mentioned by Y are declared on the fly; the inferred
        partition is never touched.
        """
        self.ontology.ensure(self.ground)
        for item in self.items:
            for entity in _item_entities(item):
                self.ontology.ensure(entity)
        target = set(to_axioms(self.tag, self.ground, self.items))
        current = self._asserted_projection()
        intents = []
        for axiom in sorted(target - current, key=repr):
            self.ontology.assert_axiom(axiom)
            intents.append(Intent("write", "add", axiom, "ontology"))
        for axiom in sorted(current - target, key=repr):
            self.ontology.retract_axiom(axiom)
            intents.append(Intent("write", "remove", axiom, "ontology"))
        return intents

    # -- building

    def _build_grounds(self) -> list[Entity]:
        grounds: list[Entity] = []
        for item in self.items:
            if isinstance(item, Void):
                raise UndefinedBuild(f"build is undefined for {self.tag.value}")
            if isinstance(item, Ref):
                candidate = item.entity
            elif isinstance(item, Restriction):
                if item.form is not Form.NAMED:
                    raise UndefinedBuild("build is undefined for quantified restrictions")
                candidate = item.cls
            else:  # Link
                if not isinstance(item.filler, Entity):
                    continue  # literal fillers name no entity to build on
                candidate = item.filler
            if candidate not in grounds:
                grounds.append(candidate)
        return grounds

    def _resolve_factory(self, factory):
        if factory is not None:
            return factory
        if self.build_factory is not None:
            return self.build_factory
        from . import compound

        return compound.default_factory(self.ontology)

    def build(self, factory: Callable | None = None) -> list:
        """One read-initialised descriptor per distinct item entity."""
        if self.tag in _UNBUILDABLE:
            raise UndefinedBuild(f"build is undefined for {self.tag.value}")
        factory = self._resolve_factory(factory)
        built = []
        for ground in self._build_grounds():
            descriptor = factory(ground)
            descriptor.read()
            built.append(descriptor)
        return built

    def build_property(self, factory: Callable | None = None) -> list:
        """For LINKS: one property descriptor per distinct link property."""
        if self.tag is not DescriptorTag.LINKS:
            raise TagMismatch("build_property applies to LINKS descriptors only")
        factory = self._resolve_factory(factory)
        built, seen = [], []
        for item in self.items:
            if item.prop not in seen:
                seen.append(item.prop)
                descriptor = factory(item.prop)
                descriptor.read()
                built.append(descriptor)
        return built

    def build_individuals_by_property(self, prop: Entity, factory: Callable | None = None) -> list:
        """For LINKS: descriptors for the fillers reached through `prop`."""
        if self.tag is not DescriptorTag.LINKS:
            raise TagMismatch("build_individuals_by_property applies to LINKS descriptors only")
        factory = self._resolve_factory(factory)
        built, seen = [], []
        for item in self.items:
            if item.prop == prop and isinstance(item.filler, Entity) and item.filler not in seen:
                seen.append(item.filler)
                descriptor = factory(item.filler)
                descriptor.read()
                built.append(descriptor)
        return built


def _item_entities(item: Item):
    if isinstance(item, Ref):
        yield item.entity
    elif isinstance(item, Link):
        yield item.prop
        if isinstance(item.filler, Entity):
            yield item.filler
    elif isinstance(item, Restriction):
        for e in (item.cls, item.prop, item.filler):
            if e is not None:
                yield e
