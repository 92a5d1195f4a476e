"""Command line front end.

Subcommands:

* reason     - saturate and report consistency, inferred counts, violations
* query      - list entailed types / instances / property fillers
* serialize  - print the world in canonical text form (--entailed adds
               inferred axioms as comment lines)
* example1   - categorize a new location joined through a shared door
* reachable  - leaf-classed locations connected to the robot's own
* patrol     - seeded random walk writing door states and robot moves

Every command reads the packaged seed world unless --ontology points at
a file.  example1 additionally saves the updated world back to that
file, so flows can be chained.  Output is plain text, one record per
line, deterministic for a fixed (file, flags, seed).

Exit codes: 0 ok, 1 parse error, 2 unknown entity, 3 inconsistent
world, 4 missing filler (no position or no door).
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path

from . import scenarios
from .model import Kind, KindMismatch, OntologyError, UnknownEntity
from .reasoner import reason
from .syntax import ParseError, render_axiom, render_term, serialize

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_UNKNOWN = 2
EXIT_INCONSISTENT = 3
EXIT_NO_FILLER = 4


def _cmd_reason(args) -> int:
    onto = scenarios.load_world(args.ontology)
    closure = reason(onto)
    print("consistent" if closure.consistent else "inconsistent")
    counts = Counter(a.tag.value for a in closure.inferred)
    for tag, count in sorted(counts.items()):
        print(f"inferred {tag} {count}")
    for violation in closure.violations:
        axioms = "; ".join(render_axiom(a) for a in violation.axioms)
        print(f"violation {violation.rule}: {axioms}")
    return EXIT_OK if closure.consistent else EXIT_INCONSISTENT


def _cmd_query(args) -> int:
    onto = scenarios.load_world(args.ontology)
    closure = reason(onto)
    if args.what == "types":
        entity = onto.lookup(args.names[0])
        _expect_kind(entity, Kind.INDIVIDUAL)
        lines = sorted(c.iri for c in closure.types_of(entity))
    elif args.what == "instances":
        entity = onto.lookup(args.names[0])
        _expect_kind(entity, Kind.CLASS)
        lines = sorted(i.iri for i in closure.instances_of(entity))
    else:
        if len(args.names) != 2:
            raise KindMismatch("fillers takes an individual and a property")
        subject = onto.lookup(args.names[0])
        prop = onto.lookup(args.names[1])
        _expect_kind(subject, Kind.INDIVIDUAL)
        if prop.kind not in (Kind.OBJECT_PROPERTY, Kind.DATA_PROPERTY):
            raise KindMismatch(f"{prop.iri} is not a property")
        lines = sorted(render_term(f) for f in closure.fillers(subject, prop))
    for line in lines:
        print(line)
    return EXIT_OK


def _expect_kind(entity, kind: Kind) -> None:
    if entity.kind is not kind:
        raise KindMismatch(f"{entity.iri} is a {entity.kind.value}, expected {kind.value}")


def _cmd_serialize(args) -> int:
    onto = scenarios.load_world(args.ontology)
    if args.entailed:
        reason(onto)
    sys.stdout.write(serialize(onto, include_inferred=args.entailed))
    return EXIT_OK


def _cmd_example1(args) -> int:
    onto = scenarios.load_world(args.ontology)
    types = scenarios.categorize_new_location(
        onto, args.new_location, args.connected_location, args.door
    )
    for iri in types:
        print(iri)
    if args.ontology is not None:
        Path(args.ontology).write_text(serialize(onto), encoding="utf-8")
    return EXIT_OK


def _cmd_reachable(args) -> int:
    onto = scenarios.load_world(args.ontology)
    for individual, cls in scenarios.reachable_leaf_places(onto, args.robot):
        print(f"{individual} {cls}")
    return EXIT_OK


def _cmd_patrol(args) -> int:
    onto = scenarios.load_world(args.ontology)
    config = scenarios.PatrolConfig(steps=args.steps, seed=args.seed)
    for step in scenarios.patrol(onto, config):
        print(step.line())
        if not step.consistent:
            return EXIT_INCONSISTENT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ontodesc",
        description="Descriptor-based ontology toolkit over the packaged seed world.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--ontology",
        metavar="PATH",
        default=None,
        help="ontology file to load (default: the packaged seed world)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reason", parents=[common], help="saturate and report")
    p.set_defaults(func=_cmd_reason)

    p = sub.add_parser("query", parents=[common], help="list entailed facts")
    p.add_argument("what", choices=["types", "instances", "fillers"])
    p.add_argument("names", nargs="+", metavar="NAME")
    p.set_defaults(func=_cmd_query)

    p = sub.add_parser("serialize", parents=[common], help="print canonical text")
    p.add_argument(
        "--entailed",
        action="store_true",
        help="append inferred axioms as comment lines",
    )
    p.set_defaults(func=_cmd_serialize)

    p = sub.add_parser(
        "example1", parents=[common], help="categorize a new location joined by a door"
    )
    p.add_argument("new_location")
    p.add_argument("connected_location")
    p.add_argument("door")
    p.set_defaults(func=_cmd_example1)

    p = sub.add_parser("reachable", parents=[common], help="reachable leaf places")
    p.add_argument("robot", nargs="?", default=scenarios.ROBOT)
    p.set_defaults(func=_cmd_reachable)

    p = sub.add_parser("patrol", parents=[common], help="seeded door-to-door walk")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(func=_cmd_patrol)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"cannot read ontology: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnknownEntity as exc:
        print(f"unknown entity: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except KindMismatch as exc:
        print(f"wrong entity kind: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except scenarios.NoFiller as exc:
        print(f"missing filler: {exc}", file=sys.stderr)
        return EXIT_NO_FILLER
    except scenarios.ScenarioError as exc:
        print(f"inconsistent world: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except OntologyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
