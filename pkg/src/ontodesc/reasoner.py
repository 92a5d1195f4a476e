"""Forward-chaining saturation reasoner.

reason() computes the deductive closure of the asserted axioms, installs
the derived axioms as the ontology's inferred partition, and returns a
Closure handle for entailment queries.  Derived axioms never repeat
asserted ones and the asserted set is never touched.

Rule set
--------
Schema rules (phase one):

* class subsumption is closed reflexively and transitively over asserted
  SubClassOf edges, the two directions of every EquivalentClasses axiom,
  and one edge per named top-level conjunct of a DefineClass body
  (a definition whose body is a bare name counts as a single conjunct);
  every class is below THING and above NOTHING.  Self-subsumptions are
  entailed but not materialized as stored axioms.
* property subsumption is closed the same way over SubPropertyOf and
  EquivalentProperties; there is no builtin top property.
* SameIndividual is closed as an equivalence relation.

Property-assertion rules (phase two, run to fixpoint):

* super-property: a filler of p is a filler of every super-property of p.
* inverse: InverseProperties(p, r) swaps subject and filler, in both
  directions of the declaration.
* symmetric: SymmetricProperty(p) swaps subject and filler.
* transitive: TransitiveProperty(p) joins p-assertions end to end.
* reflexive: ReflexiveProperty(p) relates every named individual to
  itself.
* chain: SubPropertyChain(r, p1, p2) composes a p1-assertion with a
  p2-assertion into an r-assertion.
* same-individual sharing: equivalent individuals exchange both subject
  and filler positions.
* irreflexive suppression: no rule may derive a self-assertion on an
  IrreflexiveProperty (asserted self-assertions are left alone).

Membership rules (phase three, iterated over full snapshots of the
membership set until stable, so the outcome is independent of rule
order):

* every named individual is an instance of THING.
* inheritance: an instance of a class is an instance of its entailed
  superclasses.
* domain and range: a property assertion types its subject with every
  declared domain and its (non-literal) filler with every declared range.
* same-individual sharing of memberships.
* definition recognition: DefineClass(c, body) makes an instance of the
  body an instance of c.  Satisfaction is local closed-world over the
  phase-two fillers: Some needs one filler in the filler class, Only
  needs every filler in it, Min/Max count fillers in it that are
  pairwise distinct (two fillers are the same only when SameIndividual
  relates them).  And/Or are conjunction and disjunction.

Consistency checks (reported as violations, never derived from):

* an instance of two DisjointClasses classes;
* a subject-filler pair carried by both DisjointProperties properties;
* a FunctionalProperty subject with two fillers not related by
  SameIndividual;
* a SameIndividual pair also related by DifferentIndividuals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .model import (
    DATATYPES,
    NOTHING,
    THING,
    And,
    Axiom,
    AxiomTag,
    Entity,
    Kind,
    Literal,
    Max,
    Min,
    Named,
    Only,
    Ontology,
    Or,
    Some,
    StaleClosure,
    canonical,
    class_assertion,
    property_assertion,
    same_individual,
    sub_class,
    sub_property,
    tautological,
)


@dataclass(frozen=True)
class Violation:
    rule: str
    axioms: frozenset


@dataclass
class Closure:
    """Entailment interface over one saturation run.

    All query methods re-check that the underlying ontology has not been
    mutated since the run; if it has, they raise StaleClosure.
    """

    ontology: Ontology
    generation: int
    inferred: frozenset = field(default_factory=frozenset)
    consistent: bool = True
    violations: tuple = ()
    _class_reach: dict = field(default_factory=dict, repr=False)
    _prop_reach: dict = field(default_factory=dict, repr=False)
    _same_rep: dict = field(default_factory=dict, repr=False)
    _types: dict = field(default_factory=dict, repr=False)
    _links: dict = field(default_factory=dict, repr=False)

    # -- guards

    def _check_fresh(self):
        if self.ontology.generation != self.generation:
            raise StaleClosure("the ontology changed after this closure was computed")

    # -- entailment

    def is_entailed(self, axiom: Axiom) -> bool:
        self._check_fresh()
        if canonical(axiom) in self.ontology.axioms("entailed"):
            return True
        # tautologies (reflexive subsumption, lattice bounds, ...) hold
        # everywhere but are never materialised
        return tautological(axiom)

    def subsumed_by(self, sub: Entity, sup: Entity) -> bool:
        """Entailed class subsumption, reflexivity included."""
        self._check_fresh()
        return sub == sup or sup in self._class_reach.get(sub, ())

    def equivalent(self, a: Entity, b: Entity) -> bool:
        return self.subsumed_by(a, b) and self.subsumed_by(b, a)

    # -- taxonomy

    def _named_classes(self):
        return [
            c
            for c in self.ontology.entities_of_kind(Kind.CLASS)
            if c not in DATATYPES
        ]

    def direct_subclasses(self, cls: Entity) -> set[Entity]:
        """Named strict subclasses with nothing strictly in between.

        A class with no named strict subclass reports {NOTHING}; NOTHING
        itself reports the empty set.
        """
        self._check_fresh()
        candidates = [
            c
            for c in self._named_classes()
            if c != cls and self.subsumed_by(c, cls) and not self.subsumed_by(cls, c)
        ]
        return {
            c
            for c in candidates
            if not any(
                m != c
                and self.subsumed_by(c, m)
                and not self.equivalent(c, m)
                and not self.equivalent(m, cls)
                for m in candidates
            )
        }

    def direct_superclasses(self, cls: Entity) -> set[Entity]:
        self._check_fresh()
        candidates = [
            c
            for c in self._named_classes()
            if c != cls and self.subsumed_by(cls, c) and not self.subsumed_by(c, cls)
        ]
        return {
            c
            for c in candidates
            if not any(
                m != c
                and self.subsumed_by(m, c)
                and not self.equivalent(m, c)
                and not self.equivalent(m, cls)
                for m in candidates
            )
        }

    # -- individuals

    def types_of(self, individual: Entity, most_specific_only: bool = False) -> set[Entity]:
        self._check_fresh()
        types = set(self._types.get(individual, ()))
        if not most_specific_only:
            return types
        return {
            t
            for t in types
            if not any(
                o != t and self.subsumed_by(o, t) and not self.equivalent(o, t)
                for o in types
            )
        }

    def instances_of(self, cls: Entity) -> set[Entity]:
        self._check_fresh()
        return {ind for ind, types in self._types.items() if cls in types}

    def fillers(self, individual: Entity, prop: Entity) -> set:
        self._check_fresh()
        return {f for s, p, f in self._links if s == individual and p == prop}

    def links_of(self, individual: Entity) -> set:
        self._check_fresh()
        return {(p, f) for s, p, f in self._links if s == individual}

    def same_as(self, a: Entity, b: Entity) -> bool:
        self._check_fresh()
        return a == b or self._same_rep.get(a, a) == self._same_rep.get(b, b)


# ---------------------------------------------------------------------------
# saturation


def _reach_map(nodes, edges) -> dict:
    """Strict reachability per node over an edge dict, self excluded."""
    adjacency = {n: set() for n in nodes}
    for src, dst in edges:
        adjacency.setdefault(src, set()).add(dst)
        adjacency.setdefault(dst, set())
    reach = {}
    for start in adjacency:
        seen = set()
        stack = list(adjacency[start])
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(adjacency[node])
        seen.discard(start)
        reach[start] = seen
    return reach


def _definition_conjuncts(expr):
    return expr.members if isinstance(expr, And) else (expr,)


def _union_find(pairs, items):
    rep = {i: i for i in items}

    def find(x):
        while rep[x] != x:
            rep[x] = rep[rep[x]]
            x = rep[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            # keep the lexicographically smaller representative for determinism
            if rb.iri < ra.iri:
                ra, rb = rb, ra
            rep[rb] = ra
    return {i: find(i) for i in items}


def _satisfies(expr, ind, types, link_index, rep) -> bool:
    if isinstance(expr, Named):
        return expr.cls in types.get(ind, ())
    if isinstance(expr, And):
        return all(_satisfies(m, ind, types, link_index, rep) for m in expr.members)
    if isinstance(expr, Or):
        return any(_satisfies(m, ind, types, link_index, rep) for m in expr.members)
    fillers = link_index.get((ind, expr.prop), ())
    named = [f for f in fillers if isinstance(f, Entity)]
    if isinstance(expr, Some):
        return any(expr.filler in types.get(f, ()) for f in named)
    if isinstance(expr, Only):
        return all(expr.filler in types.get(f, ()) for f in named)
    matching = {rep.get(f, f) for f in named if expr.filler in types.get(f, ())}
    if isinstance(expr, Min):
        return len(matching) >= expr.count
    return len(matching) <= expr.count  # Max


def reason(onto: Ontology) -> Closure:
    asserted = onto.axioms("asserted")
    by_tag: dict[AxiomTag, list[Axiom]] = {}
    for a in asserted:
        by_tag.setdefault(a.tag, []).append(a)

    def tagged(tag):
        return by_tag.get(tag, [])

    classes = [c for c in onto.entities_of_kind(Kind.CLASS) if c not in DATATYPES]
    individuals = onto.individuals()
    properties = onto.entities_of_kind(Kind.OBJECT_PROPERTY) + onto.entities_of_kind(
        Kind.DATA_PROPERTY
    )

    # phase one: schema closures -------------------------------------------
    class_edges = [tuple(a.args) for a in tagged(AxiomTag.SUB_CLASS)]
    for a in tagged(AxiomTag.EQUIVALENT_CLASSES):
        x, y = a.args
        class_edges += [(x, y), (y, x)]
    for a in tagged(AxiomTag.CLASS_DEFINITION):
        cls, expr = a.args
        for conjunct in _definition_conjuncts(expr):
            if isinstance(conjunct, Named):
                class_edges.append((cls, conjunct.cls))
    for c in classes:
        if c != THING:
            class_edges.append((c, THING))
        if c != NOTHING:
            class_edges.append((NOTHING, c))
    class_reach = _reach_map(classes, class_edges)

    prop_edges = [tuple(a.args) for a in tagged(AxiomTag.SUB_PROPERTY)]
    for a in tagged(AxiomTag.EQUIVALENT_PROPERTIES):
        x, y = a.args
        prop_edges += [(x, y), (y, x)]
    prop_reach = _reach_map(properties, prop_edges)

    same_pairs = [tuple(a.args) for a in tagged(AxiomTag.SAME_INDIVIDUAL)]
    rep = _union_find(same_pairs, individuals)
    groups: dict[Entity, list[Entity]] = {}
    for ind in individuals:
        groups.setdefault(rep[ind], []).append(ind)

    # phase two: property assertions ----------------------------------------
    inverses: dict[Entity, set[Entity]] = {}
    for a in tagged(AxiomTag.INVERSE_PROPERTIES):
        p, r = a.args
        inverses.setdefault(p, set()).add(r)
        inverses.setdefault(r, set()).add(p)
    symmetric_props = {a.args[0] for a in tagged(AxiomTag.SYMMETRIC_PROPERTY)}
    transitive_props = {a.args[0] for a in tagged(AxiomTag.TRANSITIVE_PROPERTY)}
    reflexive_props = {a.args[0] for a in tagged(AxiomTag.REFLEXIVE_PROPERTY)}
    irreflexive_props = {a.args[0] for a in tagged(AxiomTag.IRREFLEXIVE_PROPERTY)}
    chains = [tuple(a.args) for a in tagged(AxiomTag.PROPERTY_CHAIN)]

    links: set[tuple] = set()
    pending: list[tuple] = []

    def put(subject, prop, filler):
        if prop in irreflexive_props and subject == filler:
            return
        fact = (subject, prop, filler)
        if fact not in links:
            links.add(fact)
            pending.append(fact)

    for a in tagged(AxiomTag.PROPERTY_ASSERTION):
        s, p, f = a.args
        fact = (s, p, f)
        if fact not in links:
            links.add(fact)
            pending.append(fact)
    for p in reflexive_props:
        for ind in individuals:
            put(ind, p, ind)

    by_subject: dict[Entity, set[tuple]] = {}
    by_filler: dict[Entity, set[tuple]] = {}
    processed: set[tuple] = set()
    while pending:
        fact = pending.pop()
        if fact in processed:
            continue
        processed.add(fact)
        s, p, f = fact
        # index first so a fact can compose with itself (a self-loop feeding
        # a chain whose two links are the same property)
        by_subject.setdefault(s, set()).add(fact)
        if isinstance(f, Entity):
            by_filler.setdefault(f, set()).add(fact)
        for sup in prop_reach.get(p, ()):
            put(s, sup, f)
        if isinstance(f, Entity):
            for inv in inverses.get(p, ()):
                put(f, inv, s)
            if p in symmetric_props:
                put(f, p, s)
            if p in transitive_props:
                for s2, p2, f2 in by_subject.get(f, set()):
                    if p2 == p:
                        put(s, p, f2)
                for s0, p0, f0 in by_filler.get(s, set()):
                    if p0 == p:
                        put(s0, p, f)
            for sup, p1, p2 in chains:
                if p == p1:
                    for s2, q, f2 in by_subject.get(f, set()):
                        if q == p2:
                            put(s, sup, f2)
                if p == p2:
                    for s0, q, f0 in by_filler.get(s, set()):
                        if q == p1:
                            put(s0, sup, f)
        for other in groups.get(rep.get(s), ()):
            if other != s:
                put(other, p, f)
        if isinstance(f, Entity):
            for other in groups.get(rep.get(f), ()):
                if other != f:
                    put(s, p, other)

    link_index: dict[tuple, set] = {}
    for s, p, f in links:
        link_index.setdefault((s, p), set()).add(f)

    # phase three: memberships in snapshot rounds ----------------------------
    domains: dict[Entity, set[Entity]] = {}
    for a in tagged(AxiomTag.PROPERTY_DOMAIN):
        p, c = a.args
        domains.setdefault(p, set()).add(c)
    ranges: dict[Entity, set[Entity]] = {}
    for a in tagged(AxiomTag.PROPERTY_RANGE):
        p, c = a.args
        if c not in DATATYPES:
            ranges.setdefault(p, set()).add(c)
    definitions = [tuple(a.args) for a in tagged(AxiomTag.CLASS_DEFINITION)]

    types: dict[Entity, set[Entity]] = {ind: {THING} for ind in individuals}
    for a in tagged(AxiomTag.CLASS_ASSERTION):
        ind, cls = a.args
        types[ind].add(cls)
    for s, p, f in links:
        for c in domains.get(p, ()):
            types[s].add(c)
        if isinstance(f, Entity):
            for c in ranges.get(p, ()):
                types[f].add(c)

    while True:
        fresh: list[tuple] = []
        for ind, ts in types.items():
            for cls in ts:
                for sup in class_reach.get(cls, ()):
                    if sup not in ts:
                        fresh.append((ind, sup))
            for other in groups.get(rep.get(ind), ()):
                others = types[other]
                for cls in ts:
                    if cls not in others:
                        fresh.append((other, cls))
        for cls, expr in definitions:
            for ind in individuals:
                if cls not in types[ind] and _satisfies(expr, ind, types, link_index, rep):
                    fresh.append((ind, cls))
        if not fresh:
            break
        for ind, cls in fresh:
            types[ind].add(cls)

    # violations -------------------------------------------------------------
    violations: set[Violation] = set()
    for a in tagged(AxiomTag.DISJOINT_CLASSES):
        x, y = a.args
        for ind, ts in types.items():
            if x in ts and y in ts:
                violations.add(
                    Violation(
                        "disjoint-classes",
                        frozenset({a, class_assertion(ind, x), class_assertion(ind, y)}),
                    )
                )
    for a in tagged(AxiomTag.DISJOINT_PROPERTIES):
        p, r = a.args
        for s, q, f in links:
            if q == p and (s, r, f) in links:
                violations.add(
                    Violation(
                        "disjoint-properties",
                        frozenset(
                            {a, property_assertion(s, p, f), property_assertion(s, r, f)}
                        ),
                    )
                )
    for a in tagged(AxiomTag.FUNCTIONAL_PROPERTY):
        p = a.args[0]
        for (s, q), fs in link_index.items():
            if q != p:
                continue
            distinct = {
                rep.get(f, f) if isinstance(f, Entity) else f for f in fs
            }
            if len(distinct) > 1:
                for f1, f2 in combinations(sorted(fs, key=_term_key), 2):
                    k1 = rep.get(f1, f1) if isinstance(f1, Entity) else f1
                    k2 = rep.get(f2, f2) if isinstance(f2, Entity) else f2
                    if k1 != k2:
                        violations.add(
                            Violation(
                                "functional-property",
                                frozenset(
                                    {a, property_assertion(s, p, f1), property_assertion(s, p, f2)}
                                ),
                            )
                        )
    for a in tagged(AxiomTag.DIFFERENT_INDIVIDUALS):
        x, y = a.args
        if rep.get(x, x) == rep.get(y, y):
            violations.add(Violation("same-and-different", frozenset({a, same_individual(x, y)})))

    # materialize ------------------------------------------------------------
    derived: set[Axiom] = set()
    for cls, sups in class_reach.items():
        for sup in sups:
            derived.add(sub_class(cls, sup))
    for prop, sups in prop_reach.items():
        for sup in sups:
            derived.add(sub_property(prop, sup))
    for members in groups.values():
        if len(members) > 1:
            for a, b in combinations(members, 2):
                derived.add(same_individual(a, b))
    for s, p, f in links:
        derived.add(property_assertion(s, p, f))
    for ind, ts in types.items():
        for cls in ts:
            derived.add(class_assertion(ind, cls))
    inferred = frozenset(derived - asserted)

    closure = Closure(
        ontology=onto,
        generation=onto.generation,
        inferred=inferred,
        consistent=not violations,
        violations=tuple(sorted(violations, key=_violation_key)),
        _class_reach=class_reach,
        _prop_reach=prop_reach,
        _same_rep=rep,
        _types=types,
        _links=links,
    )
    onto._install_closure(closure, inferred)
    return closure


def _term_key(term):
    if isinstance(term, Entity):
        return (0, term.iri, "")
    return (1, type(term.value).__name__, repr(term.value))


def _violation_key(v: Violation):
    return (v.rule, sorted(repr(a) for a in v.axioms))
