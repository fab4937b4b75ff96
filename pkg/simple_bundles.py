"""
Command-line entry point for simple bundle experiments.

Subcommands:
    generate     lattice | perturbed-delaunay | ws network as a JSON graph file
    hist         per-L bundle table and aggregates from one source
    bundle       full dump of one bundle
    sbn          simple bundles network for one length
    signature    SBN weight mean and std over a range of lengths
    morphology   level sizes and link counts of every bundle from one source
    compare      per-L comparison of two graphs' bundle tables

Every run writes its outputs into --out-dir together with <stem>.meta.json.
Exit status: 0 success, 1 no bundle between the requested nodes, 2 invalid
input or usage.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

ROOT = Path(__file__).parent
for layer in ("20-config", "30-database", "40-analysis", "50-visualization"):
    sys.path.append(str(ROOT / layer))

from errors import FlowConservationError, InputError, PathCountOverflowError, WidthBoundError
from experiments import (aggregate_table, bundle_dump, bundle_table, compare_distributions,
                         morphology_dump, morphology_table)
from exporters import (sbn_frame, signature_frame, write_json, write_metadata, write_sbn_csv,
                       write_sbn_graphml, write_signature_csv, write_table)
from flow import STATS
from graph import center_node
from graph_store import graph_to_dict, load_graph, save_graph
from network_generator import GENERATOR_KINDS, GeneratorConfig, generate
from sbn import build_sbn, signature
from settings import SBN_ENUM_CAP, SBN_LOG_LEVEL, SBN_OUT_DIR, SBN_THREADS

logger = logging.getLogger("simple_bundles")

EXIT_OK = 0
EXIT_NO_BUNDLE = 1
EXIT_INPUT_ERROR = 2
EXIT_NUMERIC_LIMIT = 3

FORMATS = ("csv", "json", "graphml", "svg")
DEFAULT_FORMATS = {
    "generate": ["json"],
    "hist": ["csv"],
    "bundle": ["json"],
    "sbn": ["graphml", "csv"],
    "signature": ["csv"],
    "morphology": ["json"],
    "compare": ["csv"],
}
SUPPORTED_FORMATS = {
    "generate": {"json"},
    "hist": {"csv", "json", "svg"},
    "bundle": {"json"},
    "sbn": {"graphml", "csv", "json", "svg"},
    "signature": {"csv", "json", "svg"},
    "morphology": {"json", "csv"},
    "compare": {"csv", "json"},
}


def parse_lengths(text: str) -> List[int]:
    """Parse "4", "2-7" or "3,5,7" into a list of bundle lengths."""
    try:
        if "-" in text:
            low, high = (int(part) for part in text.split("-", 1))
            lengths = list(range(low, high + 1))
        else:
            lengths = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid length list {text!r}; use e.g. 4, 2-7 or 3,5,7")
    if not lengths or min(lengths) < 1:
        raise argparse.ArgumentTypeError(f"lengths must be positive integers, got {text!r}")
    return lengths


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="Seed of the random stream (default: 0)")
    common.add_argument("--threads", type=int, default=None,
                        help=f"Worker count for all-pairs builds (default: {SBN_THREADS})")
    common.add_argument("--out-dir", default=SBN_OUT_DIR, help="Output directory")
    common.add_argument("--format", dest="formats", action="append", choices=FORMATS,
                        help="Output format; may be repeated")
    common.add_argument("--name", default=None, help="Stem of the output files")
    common.add_argument("--log-level", default=SBN_LOG_LEVEL, help="Logging level (default: INFO)")

    ap = argparse.ArgumentParser(prog="simple_bundles", description="Simple bundles of networks")
    sub = ap.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="Generate a model network")
    gen_sub = gen.add_subparsers(dest="kind", required=True)
    for kind in GENERATOR_KINDS:
        p = gen_sub.add_parser(kind, parents=[common])
        p.add_argument("--rows", type=int, default=15)
        p.add_argument("--cols", type=int, default=15)
        if kind != "perturbed-delaunay":
            p.add_argument("--periodic", action="store_true", help="Wrap the lattice into a torus")
        if kind == "perturbed-delaunay":
            p.add_argument("--delta", type=float, required=True, help="Coordinate perturbation half-range")
        if kind == "ws":
            p.add_argument("--p", dest="rewire_p", type=float, required=True, help="Rewiring probability")
        p.set_defaults(command="generate")

    hist = sub.add_parser("hist", parents=[common], help="Bundle table from one source")
    hist.add_argument("graph")
    hist.add_argument("--source", type=int, default=None, help="Source node (default: node nearest the centroid)")
    hist.add_argument("--lengths", type=parse_lengths, default=parse_lengths("2-7"))

    bundle = sub.add_parser("bundle", parents=[common], help="Dump one bundle")
    bundle.add_argument("graph")
    bundle.add_argument("--source", type=int, required=True)
    bundle.add_argument("--destination", type=int, required=True)
    bundle.add_argument("--paths", action="store_true", help="Also list the explicit paths")
    bundle.add_argument("--cap", type=int, default=SBN_ENUM_CAP, help="Path enumeration cap")

    sbn = sub.add_parser("sbn", parents=[common], help="Simple bundles network")
    sbn.add_argument("graph")
    sbn.add_argument("--L", dest="length", type=int, required=True)
    sbn.add_argument("--stat", choices=STATS, default="mean")

    sig = sub.add_parser("signature", parents=[common], help="SBN signature over a range of lengths")
    sig.add_argument("graph")
    sig.add_argument("--lengths", type=parse_lengths, default=parse_lengths("2-10"))
    sig.add_argument("--stat", choices=STATS, default="mean")

    morph = sub.add_parser("morphology", parents=[common], help="Bundle shapes from one source")
    morph.add_argument("graph")
    morph.add_argument("--source", type=int, default=None)
    morph.add_argument("--lengths", type=parse_lengths, default=parse_lengths("2-7"))

    comp = sub.add_parser("compare", parents=[common], help="Compare bundle tables of two graphs")
    comp.add_argument("graph_a")
    comp.add_argument("graph_b")
    comp.add_argument("--source", type=int, default=None)
    comp.add_argument("--lengths", type=parse_lengths, default=parse_lengths("2-7"))

    return ap


def _formats(args: argparse.Namespace) -> List[str]:
    formats = args.formats or DEFAULT_FORMATS[args.command]
    unsupported = sorted(set(formats) - SUPPORTED_FORMATS[args.command])
    if unsupported:
        raise InputError(f"{args.command} cannot write {', '.join(unsupported)}; "
                         f"supported: {', '.join(sorted(SUPPORTED_FORMATS[args.command]))}")
    return list(dict.fromkeys(formats))


def _config(args: argparse.Namespace) -> Dict[str, Any]:
    return {key: value for key, value in sorted(vars(args).items()) if key not in ("formats",)}


def _source(graph, requested: Optional[int]) -> int:
    if requested is None:
        return center_node(graph)
    graph.check_node(requested)
    return requested


def _charts():
    from plotly_charts import get_chart_generator
    return get_chart_generator()


def cmd_generate(args: argparse.Namespace, out_dir: Path) -> List[Path]:
    config = GeneratorConfig(
        kind=args.kind, rows=args.rows, cols=args.cols,
        periodic=getattr(args, "periodic", False),
        delta=getattr(args, "delta", 0.0),
        rewire_p=getattr(args, "rewire_p", 0.0),
        seed=args.seed,
    )
    graph = generate(config)
    stem = args.name or _generate_stem(config)
    path = out_dir / f"{stem}.json"
    save_graph(graph, path)
    logger.info(f"Generated {config.kind}: {graph.node_count} nodes, {graph.edge_count} edges")
    return [path]


def _generate_stem(config: GeneratorConfig) -> str:
    stem = f"{config.kind}_{config.rows}x{config.cols}"
    if config.periodic:
        stem += "_periodic"
    if config.kind == "perturbed-delaunay":
        stem += f"_d{config.delta:g}_s{config.seed}"
    if config.kind == "ws":
        stem += f"_p{config.rewire_p:g}_s{config.seed}"
    return stem


def cmd_hist(args: argparse.Namespace, out_dir: Path) -> List[Path]:
    graph = load_graph(args.graph)
    source = _source(graph, args.source)
    table = bundle_table(graph, source, args.lengths)
    aggregates = aggregate_table(table, args.lengths)
    stem = out_dir / (args.name or f"{Path(args.graph).stem}_hist_s{source}")
    outputs = []
    for fmt in _formats(args):
        if fmt == "csv":
            outputs.append(Path(f"{stem}.csv"))
            write_table(table, outputs[-1])
            outputs.append(Path(f"{stem}_aggregate.csv"))
            write_table(aggregates, outputs[-1])
        elif fmt == "json":
            outputs.append(Path(f"{stem}.json"))
            write_json({"source": source, "bundles": table.to_dict(orient="records"),
                        "aggregates": aggregates.to_dict(orient="records")}, outputs[-1])
        elif fmt == "svg":
            outputs.append(Path(f"{stem}.svg"))
            charts = _charts()
            charts.write_svg(charts.create_bundle_histograms(table, f"Bundles from node {source}"), outputs[-1])
    return outputs


def cmd_bundle(args: argparse.Namespace, out_dir: Path) -> Optional[List[Path]]:
    graph = load_graph(args.graph)
    graph.check_node(args.source)
    graph.check_node(args.destination)
    dump = bundle_dump(graph, args.source, args.destination, with_paths=args.paths, cap=args.cap)
    if dump is None:
        return None
    _formats(args)
    path = out_dir / f"{args.name or f'{Path(args.graph).stem}_bundle_{args.source}-{args.destination}'}.json"
    write_json(dump, path)
    return [path]


def cmd_sbn(args: argparse.Namespace, out_dir: Path) -> List[Path]:
    graph = load_graph(args.graph)
    formats = _formats(args)
    sbn = build_sbn(graph, args.length, args.stat, threads=args.threads)
    stem = out_dir / (args.name or f"{Path(args.graph).stem}_sbn_L{args.length}_{args.stat}")
    outputs = []
    for fmt in formats:
        if fmt == "graphml":
            outputs.append(Path(f"{stem}.graphml"))
            write_sbn_graphml(sbn, outputs[-1])
        elif fmt == "csv":
            outputs.append(Path(f"{stem}.csv"))
            write_sbn_csv(sbn, outputs[-1])
        elif fmt == "json":
            outputs.append(Path(f"{stem}.json"))
            write_json({"length": sbn.length, "stat": sbn.stat, "base": graph_to_dict(graph),
                        "edges": sbn_frame(sbn).to_dict(orient="records")}, outputs[-1])
        elif fmt == "svg":
            outputs.append(Path(f"{stem}.svg"))
            charts = _charts()
            fig = charts.create_sbn_figure(graph.coords, sbn.weights, f"SBN L={sbn.length} ({sbn.stat})")
            charts.write_svg(fig, outputs[-1])
    return outputs


def cmd_signature(args: argparse.Namespace, out_dir: Path) -> List[Path]:
    graph = load_graph(args.graph)
    formats = _formats(args)
    rows = signature(graph, args.lengths, args.stat, threads=args.threads)
    stem = out_dir / (args.name or f"{Path(args.graph).stem}_signature_{args.stat}")
    outputs = []
    for fmt in formats:
        if fmt == "csv":
            outputs.append(Path(f"{stem}.csv"))
            write_signature_csv(rows, outputs[-1])
        elif fmt == "json":
            outputs.append(Path(f"{stem}.json"))
            write_json({"stat": args.stat, "rows": signature_frame(rows).to_dict(orient="records")}, outputs[-1])
        elif fmt == "svg":
            outputs.append(Path(f"{stem}.svg"))
            charts = _charts()
            charts.write_svg(charts.create_signature_chart(signature_frame(rows)), outputs[-1])
    return outputs


def cmd_morphology(args: argparse.Namespace, out_dir: Path) -> List[Path]:
    graph = load_graph(args.graph)
    source = _source(graph, args.source)
    formats = _formats(args)
    stem = out_dir / (args.name or f"{Path(args.graph).stem}_morphology_s{source}")
    outputs = []
    for fmt in formats:
        if fmt == "json":
            outputs.append(Path(f"{stem}.json"))
            write_json(morphology_dump(graph, source, args.lengths), outputs[-1])
        elif fmt == "csv":
            outputs.append(Path(f"{stem}.csv"))
            write_table(morphology_table(graph, source, args.lengths), outputs[-1])
    return outputs


def cmd_compare(args: argparse.Namespace, out_dir: Path) -> List[Path]:
    graph_a = load_graph(args.graph_a)
    graph_b = load_graph(args.graph_b)
    if graph_a.node_count != graph_b.node_count:
        raise InputError(f"Graphs have {graph_a.node_count} and {graph_b.node_count} nodes; "
                         f"compare needs the same node set")
    source = _source(graph_a, args.source)
    formats = _formats(args)
    table = compare_distributions(bundle_table(graph_a, source, args.lengths),
                                  bundle_table(graph_b, source, args.lengths), args.lengths)
    stem = out_dir / (args.name or f"{Path(args.graph_a).stem}_vs_{Path(args.graph_b).stem}")
    outputs = []
    for fmt in formats:
        if fmt == "csv":
            outputs.append(Path(f"{stem}.csv"))
            write_table(table, outputs[-1])
        elif fmt == "json":
            outputs.append(Path(f"{stem}.json"))
            write_json({"source": source, "lengths": table.to_dict(orient="records")}, outputs[-1])
    return outputs


COMMANDS = {
    "generate": cmd_generate,
    "hist": cmd_hist,
    "bundle": cmd_bundle,
    "sbn": cmd_sbn,
    "signature": cmd_signature,
    "morphology": cmd_morphology,
    "compare": cmd_compare,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand.

    Returns:
        Exit status: 0 success, 1 no bundle, 2 invalid input,
        3 path count overflow or a broken flow invariant
    """
    args = build_parser().parse_args(argv)
    logging.getLogger().setLevel(getattr(logging, str(args.log_level).upper(), logging.INFO))
    out_dir = Path(args.out_dir)

    try:
        if args.command == "generate":
            _formats(args)
        outputs = COMMANDS[args.command](args, out_dir)
    except (InputError, FileNotFoundError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_INPUT_ERROR
    except (PathCountOverflowError, FlowConservationError, WidthBoundError) as e:
        logger.error(f"{args.command} aborted: {e}")
        return EXIT_NUMERIC_LIMIT

    if outputs is None:
        logger.error(f"No bundle between {args.source} and {args.destination}")
        print(f"no bundle: node {args.destination} is not reachable from node {args.source}")
        return EXIT_NO_BUNDLE

    stem = outputs[0].with_suffix("") if outputs else out_dir / args.command
    meta = write_metadata(stem, args.command, _config(args), args.seed, outputs)
    for path in outputs + [meta]:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
