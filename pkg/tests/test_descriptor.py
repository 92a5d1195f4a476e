import random

import pytest

from generators import random_ontology, random_triple, vocabulary
from ontodesc import model
from ontodesc.descriptor import (
    Connective,
    DescriptorState,
    DescriptorTag,
    Form,
    GroundMismatch,
    IllegalItem,
    Link,
    MappingError,
    Ref,
    Restriction,
    TagMismatch,
    UndefinedBuild,
    UnsupportedRestriction,
    Void,
    expression_to_restrictions,
    from_axiom,
    from_definition,
    named_restriction,
    restrictions_to_expression,
    to_axiom,
    to_axioms,
)
from ontodesc.model import And, Kind, Literal, Max, Min, Named, Only, Ontology, Or, Some
from ontodesc.reasoner import reason
from ontodesc.syntax import parse


def small_world():
    onto = parse(
        "Class(A) Class(B) Class(C) ObjectProperty(p) ObjectProperty(q) "
        "DataProperty(d) Individual(x) Individual(y)"
    )
    return onto


class TestMappingPerTag:
    def test_every_tag_round_trips_one_item(self):
        onto = small_world()
        a, b = onto.lookup("A"), onto.lookup("B")
        p, q = onto.lookup("p"), onto.lookup("q")
        x, y = onto.lookup("x"), onto.lookup("y")
        cases = [
            (DescriptorTag.SUPER_PROPERTIES, p, Ref(q)),
            (DescriptorTag.EQUIVALENT_PROPERTIES, p, Ref(q)),
            (DescriptorTag.DISJOINT_PROPERTIES, p, Ref(q)),
            (DescriptorTag.INVERSE_PROPERTIES, p, Ref(q)),
            (DescriptorTag.DOMAIN, p, named_restriction(a)),
            (DescriptorTag.RANGE, p, named_restriction(b)),
            (DescriptorTag.FUNCTIONAL, p, Void()),
            (DescriptorTag.REFLEXIVE, p, Void()),
            (DescriptorTag.SYMMETRIC, p, Void()),
            (DescriptorTag.TRANSITIVE, p, Void()),
            (DescriptorTag.SUB_CLASSES, a, Ref(b)),
            (DescriptorTag.SUPER_CLASSES, a, Ref(b)),
            (DescriptorTag.EQUIVALENT_CLASSES, a, Ref(b)),
            (DescriptorTag.DISJOINT_CLASSES, a, Ref(b)),
            (DescriptorTag.INSTANCES, a, Ref(x)),
            (DescriptorTag.TYPES, x, Ref(a)),
            (DescriptorTag.LINKS, x, Link(p, y)),
            (DescriptorTag.SAME_AS, x, Ref(y)),
            (DescriptorTag.DIFFERENT_FROM, x, Ref(y)),
        ]
        assert len(cases) == 19
        for tag, ground, item in cases:
            axiom = to_axiom(tag, ground, item)
            assert from_axiom(tag, ground, axiom) == item

    def test_sub_and_super_class_tags_orient_the_same_axiom(self):
        onto = small_world()
        a, b = onto.lookup("A"), onto.lookup("B")
        below = to_axiom(DescriptorTag.SUB_CLASSES, a, Ref(b))
        above = to_axiom(DescriptorTag.SUPER_CLASSES, a, Ref(b))
        assert below == model.sub_class(b, a)
        assert above == model.sub_class(a, b)

    def test_instances_and_types_orient_the_same_axiom(self):
        onto = small_world()
        a, x = onto.lookup("A"), onto.lookup("x")
        axiom = model.class_assertion(x, a)
        assert to_axiom(DescriptorTag.INSTANCES, a, Ref(x)) == axiom
        assert to_axiom(DescriptorTag.TYPES, x, Ref(a)) == axiom
        assert from_axiom(DescriptorTag.INSTANCES, a, axiom) == Ref(x)
        assert from_axiom(DescriptorTag.TYPES, x, axiom) == Ref(a)

    def test_link_with_literal_filler(self):
        onto = small_world()
        d, x = onto.lookup("d"), onto.lookup("x")
        item = Link(d, Literal(3))
        axiom = to_axiom(DescriptorTag.LINKS, x, item)
        assert from_axiom(DescriptorTag.LINKS, x, axiom) == item

    def test_wrong_item_variant_rejected(self):
        onto = small_world()
        a, p, x = onto.lookup("A"), onto.lookup("p"), onto.lookup("x")
        with pytest.raises(IllegalItem):
            to_axiom(DescriptorTag.LINKS, x, Ref(a))
        with pytest.raises(IllegalItem):
            to_axiom(DescriptorTag.TYPES, x, Link(p, x))
        with pytest.raises(IllegalItem):
            to_axiom(DescriptorTag.FUNCTIONAL, p, Ref(a))

    def test_domain_range_need_named_restrictions(self):
        onto = small_world()
        a, p = onto.lookup("A"), onto.lookup("p")
        quantified = Restriction(Connective.END, Form.SOME, prop=p, filler=a)
        with pytest.raises(UnsupportedRestriction):
            to_axiom(DescriptorTag.DOMAIN, p, quantified)

    def test_tag_and_ground_mismatches(self):
        onto = small_world()
        a, b, c = onto.lookup("A"), onto.lookup("B"), onto.lookup("C")
        x = onto.lookup("x")
        with pytest.raises(TagMismatch):
            from_axiom(DescriptorTag.TYPES, x, model.sub_class(a, b))
        with pytest.raises(GroundMismatch):
            from_axiom(DescriptorTag.EQUIVALENT_CLASSES, c, model.equivalent_classes(a, b))
        with pytest.raises(GroundMismatch):
            from_axiom(DescriptorTag.TYPES, x, model.class_assertion(onto.lookup("y"), a))


class TestDefinitionMapping:
    def test_intersection_binds_tighter_than_union(self):
        onto = small_world()
        a, b, c = onto.lookup("A"), onto.lookup("B"), onto.lookup("C")
        p = onto.lookup("p")
        items = [
            Restriction(Connective.INTERSECT, Form.NAMED, cls=b),
            Restriction(Connective.UNION, Form.SOME, prop=p, filler=c),
            Restriction(Connective.END, Form.AT_LEAST, count=2, prop=p, filler=b),
        ]
        expr = restrictions_to_expression(items)
        assert expr == Or((And((Named(b), Some(p, c))), Min(2, p, b)))
        assert expression_to_restrictions(expr) == items

    def test_whole_list_maps_to_one_axiom(self):
        onto = small_world()
        a, b = onto.lookup("A"), onto.lookup("B")
        items = [
            Restriction(Connective.INTERSECT, Form.NAMED, cls=b),
            Restriction(Connective.END, Form.AT_MOST, count=1, prop=onto.lookup("p"), filler=b),
        ]
        axioms = to_axioms(DescriptorTag.DEFINITION, a, items)
        assert len(axioms) == 1
        assert from_definition(a, axioms[0]) == items

    def test_empty_definition_maps_to_no_axioms(self):
        onto = small_world()
        assert to_axioms(DescriptorTag.DEFINITION, onto.lookup("A"), []) == []

    def test_connective_discipline(self):
        onto = small_world()
        b = onto.lookup("B")
        with pytest.raises(MappingError):
            restrictions_to_expression([Restriction(Connective.INTERSECT, Form.NAMED, cls=b)])
        with pytest.raises(MappingError):
            restrictions_to_expression([
                Restriction(Connective.END, Form.NAMED, cls=b),
                Restriction(Connective.END, Form.NAMED, cls=b),
            ])

    def test_malformed_restriction_payload(self):
        onto = small_world()
        with pytest.raises(MappingError):
            Restriction(Connective.END, Form.NAMED)
        with pytest.raises(MappingError):
            Restriction(Connective.END, Form.SOME, cls=onto.lookup("A"))

    def test_single_atom_definition(self):
        onto = small_world()
        a, b = onto.lookup("A"), onto.lookup("B")
        items = [named_restriction(b)]
        [axiom] = to_axioms(DescriptorTag.DEFINITION, a, items)
        assert axiom == model.class_definition(a, Named(b))
        assert from_definition(a, axiom) == items


class TestBijectionSweep:
    @pytest.mark.parametrize("seed", range(10))
    def test_random_triples_round_trip(self, seed):
        rng = random.Random(seed)
        onto = vocabulary(rng)
        for _ in range(200):
            tag, ground, payload = random_triple(rng, onto)
            if tag is DescriptorTag.DEFINITION:
                axioms = to_axioms(tag, ground, payload)
                assert len(axioms) == 1
                assert from_definition(ground, axioms[0]) == payload
            else:
                axiom = to_axiom(tag, ground, payload)
                assert from_axiom(tag, ground, axiom) == payload


class TestReadWrite:
    def test_types_read_lists_every_entailed_class(self, reasoned_seed):
        room1 = reasoned_seed.lookup("Room1")
        d = DescriptorState(DescriptorTag.TYPES, room1, reasoned_seed)
        intents = d.read()
        got = {r.entity.iri for r in d.items}
        assert got == {"THING", "LOCATION", "INDOOR", "ROOM"}
        assert all(i.direction == "read" and i.change == "add" for i in intents)
        assert len(intents) == 4
        assert d.read() == []  # idempotent

    def test_read_replaces_wrong_prepopulation(self, reasoned_seed):
        room1 = reasoned_seed.lookup("Room1")
        wrong = reasoned_seed.lookup("CORRIDOR")
        d = DescriptorState(DescriptorTag.TYPES, room1, reasoned_seed, items=[Ref(wrong)])
        intents = d.read()
        removes = [i for i in intents if i.change == "remove"]
        assert len(removes) == 1 and removes[0].axiom == model.class_assertion(room1, wrong)
        assert Ref(wrong) not in d.items

    def test_sub_classes_read_uses_direct_neighbours_and_sentinels(self, reasoned_seed):
        indoor = reasoned_seed.lookup("INDOOR")
        d = DescriptorState(DescriptorTag.SUB_CLASSES, indoor, reasoned_seed)
        d.read()
        assert {r.entity.iri for r in d.items} == {"ROOM", "CORRIDOR"}
        leaf = DescriptorState(DescriptorTag.SUB_CLASSES, reasoned_seed.lookup("ROOM"), reasoned_seed)
        leaf.read()
        assert [r.entity.iri for r in leaf.items] == ["NOTHING"]
        root = DescriptorState(DescriptorTag.SUPER_CLASSES, reasoned_seed.lookup("LOCATION"), reasoned_seed)
        root.read()
        assert [r.entity.iri for r in root.items] == ["THING"]
        bottom = DescriptorState(DescriptorTag.SUB_CLASSES, model.NOTHING, reasoned_seed)
        bottom.read()
        assert bottom.items == []

    def test_read_requires_fresh_closure(self):
        onto = small_world()
        d = DescriptorState(DescriptorTag.TYPES, onto.lookup("x"), onto)
        with pytest.raises(model.StaleClosure):
            d.read()

    def test_write_makes_asserted_projection_exact(self):
        onto = small_world()
        a, b, x = onto.lookup("A"), onto.lookup("B"), onto.lookup("x")
        onto.assert_axiom(model.class_assertion(x, a))
        d = DescriptorState(DescriptorTag.TYPES, x, onto, items=[Ref(b)])
        intents = d.write()
        assert {(i.change, i.axiom) for i in intents} == {
            ("add", model.class_assertion(x, b)),
            ("remove", model.class_assertion(x, a)),
        }
        asserted = set(onto.axioms("asserted"))
        assert model.class_assertion(x, b) in asserted
        assert model.class_assertion(x, a) not in asserted
        assert d.write() == []  # idempotent

    def test_write_only_touches_its_own_projection(self):
        onto = small_world()
        a, x, y = onto.lookup("A"), onto.lookup("x"), onto.lookup("y")
        other = model.class_assertion(y, a)
        onto.assert_axiom(other)
        d = DescriptorState(DescriptorTag.TYPES, x, onto, items=[Ref(a)])
        d.write()
        assert other in set(onto.axioms("asserted"))

    def test_write_auto_declares_entities(self):
        onto = Ontology()
        cls = model.Entity(Kind.CLASS, "Fresh")
        ind = model.Entity(Kind.INDIVIDUAL, "newcomer")
        d = DescriptorState(DescriptorTag.TYPES, ind, onto, items=[Ref(cls)])
        d.write()
        assert onto.lookup("Fresh").kind is Kind.CLASS
        assert onto.lookup("newcomer").kind is Kind.INDIVIDUAL

    def test_write_marks_closure_stale(self):
        onto = small_world()
        reason(onto)
        d = DescriptorState(DescriptorTag.TYPES, onto.lookup("x"), onto, items=[Ref(onto.lookup("A"))])
        d.write()
        assert onto.stale

    def test_definition_read_write_round_trip(self):
        onto = parse(
            "Class(A) Class(B) ObjectProperty(p) DefineClass(A Or(B Min(2 p B)))"
        )
        reason(onto)
        a = onto.lookup("A")
        d = DescriptorState(DescriptorTag.DEFINITION, a, onto)
        d.read()
        assert [r.form for r in d.items] == [Form.NAMED, Form.AT_LEAST]
        assert [r.connective for r in d.items] == [Connective.UNION, Connective.END]
        before = set(onto.axioms("asserted"))
        assert d.write() == []
        assert set(onto.axioms("asserted")) == before

    def test_definition_read_rejects_two_definitions(self):
        onto = parse(
            "Class(A) Class(B) Class(C) ObjectProperty(p) "
            "DefineClass(A Some(p B)) DefineClass(A Some(p C))"
        )
        reason(onto)
        d = DescriptorState(DescriptorTag.DEFINITION, onto.lookup("A"), onto)
        with pytest.raises(MappingError):
            d.read()

    def test_ground_kind_checked(self):
        onto = small_world()
        with pytest.raises(model.KindMismatch):
            DescriptorState(DescriptorTag.TYPES, onto.lookup("A"), onto)
        with pytest.raises(model.KindMismatch):
            DescriptorState(DescriptorTag.INVERSE_PROPERTIES, onto.lookup("d"), onto)

    def test_items_deduplicate_preserving_order(self):
        onto = small_world()
        a, b, x = onto.lookup("A"), onto.lookup("B"), onto.lookup("x")
        d = DescriptorState(DescriptorTag.TYPES, x, onto, items=[Ref(b), Ref(a), Ref(b)])
        assert d.items == [Ref(b), Ref(a)]
        assert d.add(Ref(a)) is False
        assert d.remove(Ref(a)) is True
        assert d.remove(Ref(a)) is False


class TestIntentCompleteness:
    @pytest.mark.parametrize("seed", range(12))
    def test_read_intents_equal_symmetric_difference(self, seed):
        rng = random.Random(4000 + seed)
        onto = random_ontology(rng)
        reason(onto)
        individuals = onto.individuals()
        ind = rng.choice(individuals)
        d = DescriptorState(DescriptorTag.TYPES, ind, onto)
        before = set(d.items)
        intents = d.read()
        after = set(d.items)
        assert len(intents) == len(before ^ after)


class TestBuild:
    def test_build_returns_read_descriptors(self, reasoned_seed):
        room1 = reasoned_seed.lookup("Room1")
        d = DescriptorState(DescriptorTag.TYPES, room1, reasoned_seed)
        d.read()
        built = d.build()
        grounds = {b.ground.iri for b in built}
        assert grounds == {"THING", "LOCATION", "INDOOR", "ROOM"}
        for b in built:
            assert b.read() == []  # build-read coherence

    def test_build_undefined_for_feature_tags(self):
        onto = small_world()
        p = onto.lookup("p")
        for tag in (DescriptorTag.FUNCTIONAL, DescriptorTag.REFLEXIVE,
                    DescriptorTag.SYMMETRIC, DescriptorTag.TRANSITIVE):
            d = DescriptorState(tag, p, onto, items=[Void()])
            with pytest.raises(UndefinedBuild):
                d.build()

    def test_build_undefined_for_quantified_restrictions(self):
        onto = small_world()
        reason(onto)
        a, p = onto.lookup("A"), onto.lookup("p")
        d = DescriptorState(
            DescriptorTag.DEFINITION, a, onto,
            items=[Restriction(Connective.END, Form.SOME, prop=p, filler=onto.lookup("B"))],
        )
        with pytest.raises(UndefinedBuild):
            d.build()

    def test_build_skips_literal_fillers(self):
        onto = small_world()
        reason(onto)
        x, d_prop = onto.lookup("x"), onto.lookup("d")
        d = DescriptorState(
            DescriptorTag.LINKS, x, onto,
            items=[Link(d_prop, Literal(7)), Link(onto.lookup("p"), onto.lookup("y"))],
        )
        built = d.build()
        assert [b.ground.iri for b in built] == ["y"]

    def test_build_property_collapses_duplicates(self, reasoned_seed):
        corridor = reasoned_seed.lookup("Corridor1")
        d = DescriptorState(DescriptorTag.LINKS, corridor, reasoned_seed)
        d.read()
        properties = [b.ground.iri for b in d.build_property()]
        assert sorted(properties) == ["hasDoor", "isConnectedTo"]

    def test_build_property_requires_links(self):
        onto = small_world()
        d = DescriptorState(DescriptorTag.TYPES, onto.lookup("x"), onto)
        with pytest.raises(TagMismatch):
            d.build_property()
        with pytest.raises(TagMismatch):
            d.build_individuals_by_property(onto.lookup("p"))

    def test_build_individuals_by_property_filters(self, reasoned_seed):
        corridor = reasoned_seed.lookup("Corridor1")
        has_door = reasoned_seed.lookup("hasDoor")
        d = DescriptorState(DescriptorTag.LINKS, corridor, reasoned_seed)
        d.read()
        built = d.build_individuals_by_property(has_door)
        assert sorted(b.ground.iri for b in built) == ["Door1", "Door2"]
        absent = d.build_individuals_by_property(reasoned_seed.lookup("isIn"))
        assert absent == []

    def test_build_on_empty_items(self, reasoned_seed):
        d = DescriptorState(DescriptorTag.TYPES, reasoned_seed.lookup("Room1"), reasoned_seed)
        assert d.build() == []


class TestCalculusLaws:
    """Read/write laws on randomized worlds; tags sampled per partition."""

    TAGS = [
        DescriptorTag.SUPER_PROPERTIES,
        DescriptorTag.DOMAIN,
        DescriptorTag.SUB_CLASSES,
        DescriptorTag.EQUIVALENT_CLASSES,
        DescriptorTag.DISJOINT_CLASSES,
        DescriptorTag.INSTANCES,
        DescriptorTag.TYPES,
        DescriptorTag.LINKS,
        DescriptorTag.SAME_AS,
    ]

    def _descriptor(self, rng, onto, tag):
        if tag.partition.value == "property":
            pool = onto.entities_of_kind(Kind.OBJECT_PROPERTY)
        elif tag.partition.value == "class":
            pool = [c for c in onto.entities_of_kind(Kind.CLASS) if c not in model.DATATYPES]
        else:
            pool = onto.individuals()
        return DescriptorState(tag, rng.choice(pool), onto)

    @pytest.mark.parametrize("seed", range(15))
    def test_read_and_write_idempotence(self, seed):
        rng = random.Random(5000 + seed)
        onto = random_ontology(rng)
        for tag in self.TAGS:
            reason(onto)
            d = self._descriptor(rng, onto, tag)
            d.read()
            assert d.read() == []
            d.write()
            assert d.write() == []

    @pytest.mark.parametrize("seed", range(15))
    def test_write_after_read_preserves_entailments(self, seed):
        # stability is judged on informative axioms: a write may promote or
        # retract a tautology (say, an asserted SubClassOf(A A)) freely
        def informative(axioms):
            return {a for a in axioms if not model.tautological(a)}

        rng = random.Random(6000 + seed)
        onto = random_ontology(rng, monotone=True)
        reason(onto)
        before = informative(onto.axioms("entailed"))
        tag = rng.choice(self.TAGS)
        d = self._descriptor(rng, onto, tag)
        d.read()
        d.write()
        reason(onto)
        assert informative(onto.axioms("entailed")) == before
