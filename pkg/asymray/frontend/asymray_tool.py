#!/usr/bin/env python3
"""
Command-line front-end: explore a graph given as an edge list or a generator
string, run one analysis and write its certificate document.

Exit codes: 0 certificate, 1 refutation, 2 usage, parse, margin, contract or
oracle error, 3 internal-consistency failure.
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field

import sipyco.common_args as sca
from sipyco import pyon

from asymray.ballean.structure import BallStructure, BallStructureError, check_axioms
from asymray.consistency import InternalConsistencyError
from asymray.document import (ASYMORPHIC, ASYMPTOTIC_RAY, BALLEAN, BOUNDED, LIPSCHITZ,
                              axioms_document, bounded_document, decompose_document,
                              map_document, ray_document)
from asymray.graph.edgelist import EdgeListParseError, load_edge_list
from asymray.graph.generators import GeneratorSpecError, parse_generator
from asymray.graph.oracle import OracleViolationError
from asymray.graph.ray_prefix import RayPrefix
from asymray.graph.truncation import (ContractError, DepthRangeError, MarginError,
                                      UnexploredVertexError, explore)
from asymray.morphisms.lipschitz import (ORACLE_MAX_VERTICES, ScaleError, ball_mapping_profile,
                                         bounded_classification, check_asymorphism,
                                         edge_lipschitz, global_lipschitz_oracle)
from asymray.morphisms.vertex_map import MapFileError, NotBijectiveError, load_map_file
from asymray.ray.arrow import ArrowTooShortError, find_arrow
from asymray.ray.certify import certify_ray
from asymray.ray.criteria import AUTO, construct_numbering
from asymray.ray.trees import NotATreeError, theorem2_decide, tree_decompose

logger = logging.getLogger(__name__)

DEFAULT_DEPTH = 64
FORMATS = ("text", "json")
CONFIG_KEYS = ("depth", "margin", "format", "root")

EXIT_CERTIFICATE = 0
EXIT_REFUTATION = 1
EXIT_USAGE = 2
EXIT_INCONSISTENT = 3

#: Verdicts reported with exit code 0
POSITIVE_VERDICTS = (ASYMPTOTIC_RAY, BOUNDED, ASYMORPHIC, LIPSCHITZ, BALLEAN)

USAGE_ERRORS = (ArrowTooShortError, BallStructureError, ContractError, DepthRangeError,
                EdgeListParseError, GeneratorSpecError, MapFileError, MarginError,
                NotATreeError, NotBijectiveError, OracleViolationError, ScaleError,
                UnexploredVertexError, argparse.ArgumentTypeError, OSError, ValueError)


class UsageError(Exception):
    """Raised for inconsistent command-line or configuration settings."""
    pass


@dataclass
class RunConfig:
    command: str
    input: str = None
    gen: str = None
    root: int = None
    depth: int = DEFAULT_DEPTH
    margin: object = AUTO
    format: str = "text"
    out: str = None
    options: dict = field(default_factory=dict)

    def echo(self):
        """Input settings as recorded in certificate documents"""
        echo = {
            "input": self.input,
            "gen": self.gen,
            "root": self.root,
            "depth": self.depth,
            "margin": self.margin,
        }
        echo.update({k: v for k, v in sorted(self.options.items()) if v is not None})
        return echo


def _margin(text):
    if text == AUTO:
        return AUTO
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("margin must be 'auto' or an integer")
    if value < 0:
        raise argparse.ArgumentTypeError("margin must be non-negative")
    return value


def _common_args():
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("input")
    group.add_argument("-i", "--input", help="edge-list file ('u v' per line)")
    group.add_argument("-g", "--gen", help="generator string, e.g. 'comb:inf' or 'kary:2:8'")
    group.add_argument("--root", type=int, help="base vertex (default: generator origin or "
                       "least vertex id)")
    group.add_argument("--depth", type=int, help="exploration depth (default: {})".format(
        DEFAULT_DEPTH))
    group.add_argument("--margin", type=_margin, help="validity margin: 'auto' (default) or "
                       "an integer below the depth")
    group.add_argument("--format", choices=FORMATS, help="output format (default: text)")
    group.add_argument("--out", help="write the document to this file instead of stdout")
    group.add_argument("--config", help="PYON file with defaults for {}".format(
        ", ".join(CONFIG_KEYS)))
    return parser


def get_argparser():
    parser = argparse.ArgumentParser(
        description="Certify or refute that a locally finite graph is asymorphic to the ray")
    sca.verbosity_args(parser)
    common = _common_args()
    subparsers = parser.add_subparsers(title="Subcommands", dest="subcommand")
    subparsers.required = True

    analyze = subparsers.add_parser("analyze", parents=[common],
                                    help="decide the asymptotic-ray property, or classify a "
                                    "finite graph")
    analyze.add_argument("--compare-gen", help="second finite graph for bounded classification")
    analyze.add_argument("--compare-input", help="second finite graph as an edge-list file")

    check_map = subparsers.add_parser("check-map", parents=[common],
                                      help="Lipschitz constants of a vertex map")
    check_map.add_argument("--map", required=True, help="map file ('v f(v)' per line)")
    check_map.add_argument("--target-gen", help="codomain graph (default: the ray)")
    check_map.add_argument("--target-input", help="codomain graph as an edge-list file")

    axioms = subparsers.add_parser("axioms", parents=[common],
                                   help="symmetry and multiplicativity of a finite ball "
                                   "structure")
    axioms.add_argument("--ball-table", help="explicit ball structure file")

    subparsers.add_parser("decompose", parents=[common],
                          help="split a tree along its arrow into components T(a_n)")
    subparsers.add_parser("numbering", parents=[common],
                          help="print the layer-by-layer numbering as 'v f(v)' lines")
    return parser


def build_config(args):
    """Merge flags, the optional PYON file and built-in defaults"""
    defaults = {}
    if args.config:
        try:
            defaults = pyon.load_file(args.config)
        except OSError:
            raise
        except Exception as e:
            raise UsageError("cannot parse {}: {}".format(args.config, e))
        if not isinstance(defaults, dict):
            raise UsageError("{} must hold a dictionary".format(args.config))
        unknown = sorted(set(defaults) - set(CONFIG_KEYS))
        if unknown:
            raise UsageError("unknown configuration key(s): {}".format(", ".join(unknown)))

    def pick(name, default):
        value = getattr(args, name)
        if value is not None:
            return value
        return defaults.get(name, default)

    options = {}
    for name in ("compare_gen", "compare_input", "map", "target_gen", "target_input",
                 "ball_table"):
        if hasattr(args, name):
            options[name] = getattr(args, name)
    config = RunConfig(args.subcommand, args.input, args.gen, pick("root", None),
                       pick("depth", DEFAULT_DEPTH), pick("margin", AUTO),
                       pick("format", "text"), args.out, options)
    if config.margin != AUTO:
        config.margin = _margin(str(config.margin))
    validate_config(config)
    return config


def validate_config(config):
    if config.depth < 1:
        raise UsageError("depth must be at least 1")
    if config.margin != AUTO and config.margin >= config.depth:
        raise UsageError("margin {} must be below the depth {}".format(
            config.margin, config.depth))
    if config.format not in FORMATS:
        raise UsageError("format must be one of {}".format(", ".join(FORMATS)))
    table = config.options.get("ball_table")
    if table and (config.input or config.gen):
        raise UsageError("--ball-table replaces --input/--gen")
    if not table and bool(config.input) == bool(config.gen):
        raise UsageError("give exactly one of --input and --gen")


def load_graph(gen, path, root, depth):
    """Explore a graph source.

    Finite inputs are explored until exhausted, whatever the requested depth.

    :returns: (truncation, generator spec or None)
    """
    if gen is not None:
        spec = parse_generator(gen)
        oracle = spec.to_oracle()
        if not spec.unbounded:
            depth = max(depth, spec.vertex_count())
    else:
        spec = None
        oracle = load_edge_list(path)
        depth = max(depth, len(oracle))
    if root is None:
        root = oracle.origin
    t = explore(oracle, root, depth)
    if spec is None and len(t) < len(oracle):
        logger.warning("%s is disconnected; only the component of %d is analysed", path, root)
    return t, spec


def _finite_only(t, what):
    if not t.complete:
        raise UsageError("{} needs a finite graph, {} is unbounded".format(what, t.name))


def cmd_analyze(config):
    t, spec = load_graph(config.gen, config.input, config.root, config.depth)
    compare_gen = config.options.get("compare_gen")
    compare_input = config.options.get("compare_input")
    if t.complete:
        classification = None
        if compare_gen or compare_input:
            other, _ = load_graph(compare_gen, compare_input, None, config.depth)
            _finite_only(other, "bounded classification")
            classification = bounded_classification(t, other)
        return bounded_document(config.echo(), t, classification)
    if compare_gen or compare_input:
        raise UsageError("bounded classification needs a finite graph")

    result = certify_ray(t, spec, config.margin)
    tree = None
    if (spec is not None and spec.acyclic) or t.convex:
        td = tree_decompose(t, find_arrow(t))
        tree = theorem2_decide(td, t.max_degree(), result)
    return ray_document(config.echo(), result, tree)


def cmd_check_map(config):
    src, _ = load_graph(config.gen, config.input, config.root, config.depth)
    target_gen = config.options.get("target_gen")
    target_input = config.options.get("target_input")
    margin = 0
    if src.complete:
        domain = src.vertices
    else:
        margin = 1 if config.margin == AUTO else config.margin
        domain = src.certified_vertices(margin)
    f = load_map_file(config.options["map"], domain=domain)
    if target_gen or target_input:
        dst, _ = load_graph(target_gen, target_input, None, config.depth)
    else:
        dst = RayPrefix(max(f.image) + 1)
    codomain = dst.vertices if dst.complete else None
    report = edge_lipschitz(f, src, dst)

    if src.complete and dst.complete and max(len(src), len(dst)) <= ORACLE_MAX_VERTICES:
        oracle = global_lipschitz_oracle(f, src, dst)
        if oracle != report.edge_constant:
            raise InternalConsistencyError(
                "edge constant {} differs from the all-pairs constant {}".format(
                    report.edge_constant, oracle))
        report = report._replace(global_constant=oracle)

    asymorphism = None
    if f.injective and codomain is not None and f.image == frozenset(codomain):
        asymorphism = check_asymorphism(f, src, dst)
    profile = None
    if src.complete and dst.complete and len(src) <= ORACLE_MAX_VERTICES:
        profile = ball_mapping_profile(f, src, dst, range(src.diameter() + 1))
    scope = {"kind": "exact" if src.complete else "prefix", "depth": src.depth, "margin": margin}
    return map_document(config.echo(), report, asymorphism, profile, scope)


def cmd_axioms(config):
    table = config.options.get("ball_table")
    if table:
        bs = BallStructure.from_table_file(table)
    else:
        if config.gen is not None and parse_generator(config.gen).unbounded:
            raise UsageError("the axiom check is finite-only, {} is unbounded".format(
                config.gen))
        t, _ = load_graph(config.gen, config.input, config.root, config.depth)
        _finite_only(t, "the axiom check")
        bs = BallStructure.from_truncation(t)
    return axioms_document(config.echo(), check_axioms(bs), len(bs.support))


def cmd_decompose(config):
    t, spec = load_graph(config.gen, config.input, config.root, config.depth)
    arrow = find_arrow(t, t.radius if t.complete else None)
    td = tree_decompose(t, arrow)
    verdict = theorem2_decide(td, t.max_degree())
    scope = "exact" if spec is not None and spec.unbounded else "prefix"
    return decompose_document(config.echo(), td, verdict, scope)


def cmd_numbering(config):
    t, _ = load_graph(config.gen, config.input, config.root, config.depth)
    last = t.radius
    if config.margin != AUTO:
        last = t.certified_layers(config.margin)[-1]
    return "\n".join(construct_numbering(t, last).to_lines()) + "\n"


COMMANDS = {
    "analyze": cmd_analyze,
    "check-map": cmd_check_map,
    "axioms": cmd_axioms,
    "decompose": cmd_decompose,
    "numbering": cmd_numbering,
}


def _write(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)


def run(args):
    """Run the parsed command and return its exit code"""
    try:
        config = build_config(args)
        result = COMMANDS[config.command](config)
    except InternalConsistencyError as e:
        logger.error("internal consistency failure: %s", e)
        print("internal consistency failure: {}".format(e), file=sys.stderr)
        return EXIT_INCONSISTENT
    except (UsageError, ) + USAGE_ERRORS as e:
        print("error: {}".format(e), file=sys.stderr)
        return EXIT_USAGE
    if isinstance(result, str):
        _write(result, config.out)
        return EXIT_CERTIFICATE
    _write(result.render(config.format), config.out)
    logger.info("verdict: %s", result.verdict)
    return EXIT_CERTIFICATE if result.verdict in POSITIVE_VERDICTS else EXIT_REFUTATION


def main():
    args = get_argparser().parse_args()
    sca.init_logger_from_args(args)
    sys.exit(run(args))


if __name__ == "__main__":
    main()
