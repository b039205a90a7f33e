"""
================================================================================
hlreach CLI - Build, Query, Benchmark and Verify Max-Reachability Indexes
================================================================================

DESCRIPTION:
    Command-line surface over the library. Vertex ids on the command line
    and in pairs files are the tokens used in the graph file; they are
    translated through the id table stored in the index.

COMMANDS:
    build   Parse a graph and write an HL-index file
    query   One MR query, or an s-reachability check with --s
    batch   Answer a pairs file ("u v" or "u v s" per line)
    bench   Build times, index sizes and per-engine query latency
    gen     Write a seeded random hypergraph
    verify  Randomized cross-engine suite against the oracle
    stats   Graph or index statistics
    scale   Index size and build time over random hyperedge samples

EXIT CODES:
    0 success, 1 failure (verification mismatch, engine disagreement),
    2 usage or argument error, 3 missing file, 4 format error

USAGE:
    python -m hlreach build graph.txt -o graph.hlx --method minimal
    python -m hlreach query graph.hlx 6 9
================================================================================
"""
import argparse
import json
import logging
import re
import sys
from datetime import datetime
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from hlreach.config import settings
from hlreach.errors import ArgumentError, HLReachError, HypergraphParseError, IndexFormatError, UnknownVertexError
from hlreach.generator import generate_random
from hlreach.logging_setup import configure_logging
from hlreach.models import HLIndex, QueryResult
from hlreach.persistence import MAGIC, load_index, save_index
from hlreach.schemas import GenConfig
from hlreach.services.bench_service import DEFAULT_FRACTIONS, latency_frame, run_bench, scale_frame, scale_sweep
from hlreach.services.construct_service import build_index
from hlreach.services.hypergraph_service import compact, load_hypergraph, stats, write_hypergraph
from hlreach.services.query_service import batch_query, index_stats, mr_query, s_reach_query
from hlreach.services.verify_service import run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_MISSING = 3
EXIT_FORMAT = 4

_DIGITS = re.compile(r"[0-9]+")


def _banner(title: str) -> None:
    print("\n" + "=" * 60)
    print(title)
    print("=" * 60)


def _format_value(result: QueryResult) -> str:
    if result.error is not None:
        return f"error: {result.error}"
    if isinstance(result.value, bool):
        return "true" if result.value else "false"
    return str(result.value)


def write_report(kind: str, payload: dict) -> Path:
    """Save a JSON report to LOG_DIR/<kind>_YYYYMMDD_HHMMSS.json."""
    log_dir = Path(settings.LOG_DIR)
    log_dir.mkdir(parents=True, exist_ok=True)
    path = log_dir / f"{kind}_{datetime.now().strftime('%Y%m%d_%H%M%S')}.json"
    with open(path, "w") as f:
        json.dump(payload, f, indent=2)
    return path


def _parse_csv_floats(text: str) -> List[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise ArgumentError(f"bad fraction list {text!r}") from e


def read_pairs(path: str) -> List[List[int]]:
    """Pairs file: one "u v" or "u v s" per line; '#' lines and blanks skipped."""
    rows: List[List[int]] = []
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.replace(",", " ").split()
            if len(fields) not in (2, 3) or not all(_DIGITS.fullmatch(field) for field in fields):
                raise HypergraphParseError(line_no, f"expected 'u v' or 'u v s', got {line!r}")
            rows.append([int(field) for field in fields])
    return rows


# ============================================================================
# COMMANDS
# ============================================================================

def cmd_build(args: argparse.Namespace) -> int:
    H = load_hypergraph(args.graph)
    compact_graph = settings.COMPACT if args.compact is None else args.compact
    if compact_graph:
        H, report = compact(H)
        if report.removed:
            logger.info(f"Removed {len(report.removed)} duplicate hyperedges")

    method = args.method or settings.DEFAULT_METHOD
    index, construction, minimize_stats = build_index(H, method)
    size = save_index(index, args.output)

    if args.stats:
        _banner("BUILD COMPLETE")
        print(f"Method:           {method}")
        print(f"Vertices:         {H.n}")
        print(f"Hyperedges:       {H.m}")
        print(f"Labels:           {index.total_labels}")
        print(f"Queue pushes:     {construction.queue_pushes}")
        print(f"Skipped by MCD:   {construction.skipped_by_mcd}")
        print(f"Neighbor peak:    {construction.neighbor_index_peak}")
        if minimize_stats is not None:
            print(f"Labels removed:   {minimize_stats.labels_removed}")
        print(f"Build time:       {construction.wall_time_s:.3f}s")
        print(f"Index size:       {size} bytes")
        print("=" * 60)
    return EXIT_OK


def cmd_query(args: argparse.Namespace) -> int:
    index = load_index(args.index)
    u = index.dense_id(args.u)
    v = index.dense_id(args.v)
    if args.s is not None:
        result = s_reach_query(index, u, v, args.s)
    else:
        result = mr_query(index, u, v)
    print(_format_value(result))
    return EXIT_OK


def _translate(index: HLIndex, rows: Sequence[Sequence[int]]) -> Tuple[List[Tuple[int, ...]], List[Optional[str]]]:
    translated: List[Tuple[int, ...]] = []
    errors: List[Optional[str]] = []
    for row in rows:
        try:
            translated.append((index.dense_id(row[0]), index.dense_id(row[1])) + tuple(row[2:]))
            errors.append(None)
        except UnknownVertexError as e:
            translated.append(())
            errors.append(str(e))
    return translated, errors


def cmd_batch(args: argparse.Namespace) -> int:
    index = load_index(args.index)
    rows = read_pairs(args.pairs)
    translated, errors = _translate(index, rows)

    valid_positions = [position for position, error in enumerate(errors) if error is None]
    answered = batch_query(index, [translated[p] for p in valid_positions], threads=args.threads)

    results: List[QueryResult] = [QueryResult(value=None, error=error) for error in errors]
    for position, result in zip(valid_positions, answered):
        results[position] = result

    lines = [_format_value(result) for result in results]
    if args.output:
        with open(args.output, "w") as f:
            f.write("\n".join(lines) + ("\n" if lines else ""))
        logger.info(f"Wrote {len(lines)} answers to {args.output}")
    else:
        for line in lines:
            print(line)

    failed = sum(1 for result in results if result.error is not None)
    return EXIT_FAILURE if failed else EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    H = load_hypergraph(args.graph)
    methods = [item.strip() for item in args.methods.split(",")] if args.methods else None
    build_methods = [item.strip() for item in args.build_methods.split(",")]
    report = run_bench(H, queries=args.queries, seed=args.seed, methods=methods, build_methods=build_methods)

    _banner("BENCHMARK COMPLETE")
    print(f"Graph:            n={report.graph.n}, m={report.graph.m}, delta={report.graph.delta}, d={report.graph.d}")
    print(f"Graph size:       {report.graph_bytes} bytes")
    for method, seconds in report.build_times_s.items():
        print(f"Build {method:<11} {seconds:.3f}s, {report.index_labels[method]} labels, {report.index_bytes[method]} bytes")
    print(f"Neighbor peak:    {report.neighbor_index_peak}")
    if report.latencies:
        print()
        print(latency_frame(report).round(2).to_string())
    print(f"\nDisagreements:    {report.disagreements}")
    print("=" * 60)

    payload = report.model_dump()
    payload["consistent"] = report.consistent
    print(f"\nResults saved to: {write_report('bench', payload)}")
    return EXIT_OK if report.consistent else EXIT_FAILURE


def cmd_gen(args: argparse.Namespace) -> int:
    cfg = GenConfig(n=args.n, m=args.m, max_size=args.max_size, bias=args.bias, seed=args.seed)
    H = generate_random(cfg)
    with open(args.output, "w") as f:
        write_hypergraph(H, f)
    logger.info(f"Wrote random hypergraph to {args.output}: n={H.n}, m={H.m}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    report = run_suite(graphs=args.graphs, max_n=args.max_n, seed=args.seed, progress=args.progress)

    _banner("VERIFICATION COMPLETE")
    print(f"Graphs:             {report.graphs}")
    print(f"Pairs checked:      {report.pairs_checked}")
    print(f"Mismatches:         {report.mismatches}")
    print(f"Economy violations: {report.economy_violations}")
    print(f"Strict economy:     {report.strict_economy}/{report.graphs}")
    status = "✅ PASSED" if not report.failures else "❌ FAILED"
    print(f"Status:             {status}")
    print("=" * 60)

    print(f"\nResults saved to: {write_report('verify', report.model_dump())}")
    return EXIT_OK if not report.failures else EXIT_FAILURE


def cmd_stats(args: argparse.Namespace) -> int:
    with open(args.path, "rb") as handle:
        is_index = handle.read(len(MAGIC)) == MAGIC

    if is_index:
        summary = index_stats(load_index(args.path))
        _banner("INDEX STATISTICS")
    else:
        summary = stats(load_hypergraph(args.path))
        _banner("GRAPH STATISTICS")
    for key, value in summary.model_dump().items():
        print(f"{key + ':':<18}{value}")
    print("=" * 60)
    return EXIT_OK


def cmd_scale(args: argparse.Namespace) -> int:
    H = load_hypergraph(args.graph)
    fractions = _parse_csv_floats(args.fractions)
    points = scale_sweep(H, fractions, seed=args.seed)

    _banner("SCALABILITY SWEEP")
    print(scale_frame(points).round(4).to_string())
    print("=" * 60)

    print(f"\nResults saved to: {write_report('scale', {'points': [p.model_dump() for p in points]})}")
    return EXIT_OK


# ============================================================================
# PARSER
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hlreach",
        description="Max-reachability indexing for hypergraphs",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Build a minimal index and query it
  python -m hlreach build graph.txt -o graph.hlx --method minimal --stats
  python -m hlreach query graph.hlx 6 9
  python -m hlreach query graph.hlx 5 9 --s 3

  # Answer a pairs file with 8 threads
  python -m hlreach batch graph.hlx pairs.txt -o answers.txt --threads 8

  # Random graph, benchmark, scalability sweep
  python -m hlreach gen --n 5000 --m 10000 --max-size 12 --bias 0.6 -o random.txt
  python -m hlreach bench random.txt --queries 1000 --methods online,online-pre,index
  python -m hlreach scale random.txt --fractions 0.2,0.4,0.6,0.8,1.0

  # Cross-engine verification
  python -m hlreach verify --graphs 200 --max-n 60 --seed 1
        """,
    )
    parser.add_argument("--log-level", type=str, default=None, help="Log level (default: settings.LOG_LEVEL)")
    parser.add_argument("--log-file", action="store_true", help="Also log to LOG_DIR/YYYYMMDD.log")
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="Build an HL-index from a graph file")
    build.add_argument("graph", help="Hypergraph text file")
    build.add_argument("-o", "--output", required=True, help="Index file to write")
    build.add_argument("--method", choices=["basic", "fast", "minimal"], default=None,
                       help="Construction method (default: settings.DEFAULT_METHOD)")
    build.add_argument("--no-compact", dest="compact", action="store_false", default=None,
                       help="Keep duplicate hyperedges")
    build.add_argument("--stats", action="store_true", help="Print construction statistics")
    build.set_defaults(handler=cmd_build)

    query = sub.add_parser("query", help="Query MR(u, v) or s-reachability")
    query.add_argument("index", help="Index file")
    query.add_argument("u", type=int, help="Vertex id as in the graph file")
    query.add_argument("v", type=int, help="Vertex id as in the graph file")
    query.add_argument("--s", type=int, default=None, help="Answer 'does u s-reach v' instead of MR")
    query.set_defaults(handler=cmd_query)

    batch = sub.add_parser("batch", help="Answer a pairs file")
    batch.add_argument("index", help="Index file")
    batch.add_argument("pairs", help="Pairs file, 'u v' or 'u v s' per line")
    batch.add_argument("-o", "--output", default=None, help="Answers file (default: stdout)")
    batch.add_argument("--threads", type=int, default=None, help="Worker threads (default: settings.BATCH_THREADS)")
    batch.set_defaults(handler=cmd_batch)

    bench = sub.add_parser("bench", help="Benchmark construction and queries")
    bench.add_argument("graph", help="Hypergraph text file")
    bench.add_argument("--queries", type=int, default=None, help="Random pairs (default: settings.BENCH_QUERIES)")
    bench.add_argument("--seed", type=int, default=None, help="Workload seed (default: settings.BENCH_SEED)")
    bench.add_argument("--methods", type=str, default=None,
                       help="Engines: online,online-pre,index (default: settings.BENCH_METHODS)")
    bench.add_argument("--build-methods", type=str, default="fast,minimal",
                       help="Builders to time; the last one serves queries (default: fast,minimal)")
    bench.set_defaults(handler=cmd_bench)

    gen = sub.add_parser("gen", help="Generate a random hypergraph")
    gen.add_argument("--n", type=int, required=True, help="Vertex id range")
    gen.add_argument("--m", type=int, required=True, help="Hyperedge count")
    gen.add_argument("--max-size", type=int, required=True, help="Largest hyperedge size")
    gen.add_argument("--bias", type=float, default=0.5, help="Probability of reusing a seen vertex (default: 0.5)")
    gen.add_argument("--seed", type=int, default=0, help="RNG seed (default: 0)")
    gen.add_argument("-o", "--output", required=True, help="Graph file to write")
    gen.set_defaults(handler=cmd_gen)

    verify = sub.add_parser("verify", help="Randomized cross-engine verification")
    verify.add_argument("--graphs", type=int, default=None, help="Graph count (default: settings.VERIFY_GRAPHS)")
    verify.add_argument("--max-n", type=int, default=None, help="Largest n (default: settings.VERIFY_MAX_N)")
    verify.add_argument("--seed", type=int, default=1, help="Suite seed (default: 1)")
    verify.add_argument("--progress", action="store_true", default=None, help="Show a progress bar")
    verify.set_defaults(handler=cmd_verify)

    stats_cmd = sub.add_parser("stats", help="Graph or index statistics")
    stats_cmd.add_argument("path", help="Graph text file or index file")
    stats_cmd.set_defaults(handler=cmd_stats)

    scale = sub.add_parser("scale", help="Scalability sweep over hyperedge samples")
    scale.add_argument("graph", help="Hypergraph text file")
    scale.add_argument("--fractions", type=str, default=",".join(str(f) for f in DEFAULT_FRACTIONS),
                       help="Comma-separated sample fractions (default: 0.2,0.4,0.6,0.8,1.0)")
    scale.add_argument("--seed", type=int, default=0, help="Sampling seed (default: 0)")
    scale.set_defaults(handler=cmd_scale)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one CLI command.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    configure_logging(level=args.log_level, to_file=args.log_file or None)

    try:
        return args.handler(args)
    except FileNotFoundError as e:
        logger.error(f"File not found: {e.filename}")
        return EXIT_MISSING
    except (HypergraphParseError, IndexFormatError) as e:
        logger.error(f"Format error: {e}")
        return EXIT_FORMAT
    except ArgumentError as e:
        logger.error(f"Argument error: {e}")
        return EXIT_USAGE
    except HLReachError as e:
        logger.error(f"Failed: {e}")
        return EXIT_FAILURE
    except ValueError as e:
        # pydantic validation of GenConfig and similar
        logger.error(f"Argument error: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
