"""Command-line front door: discover, consensus, fit, query, argue, iaa, serve.

Exit codes: 0 success, 1 data error, 2 usage error, 3 query without any
supporting case. Identical inputs and seed always produce byte-identical
output files; ``--seed`` defaults to 0 rather than the clock.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .agreement import flag_low, read_spans_jsonl, score_cases
from .arguments import NO_SUPPORT_TEXT, ranked_arguments
from .bayesnet import evidence_support, fit_cpts, query, read_net, write_net
from .consensus import build_consensus, ensure_dag
from .dataset import ConceptCatalog, load_matrix
from .discovery import ALGORITHMS
from .errors import (
    CauseLawError,
    ParameterError,
    ZeroEvidenceError,
)
from .graphs import Dag, Pdag, WeightedDigraph, read_graph, write_graph


def _threads_cap():
    """Parallelism cap from CAUSELAW_THREADS (0 = auto). Informational: the
    current implementation is sequential, which respects any cap."""
    raw = os.environ.get("CAUSELAW_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError:
        raise ParameterError(f"CAUSELAW_THREADS must be an integer, got {raw!r}")
    if cap < 0:
        raise ParameterError("CAUSELAW_THREADS must be >= 0")
    return cap


def _load_input(path, concepts_path=None):
    concepts = ConceptCatalog.from_csv(concepts_path) if concepts_path else None
    return load_matrix(path, concepts=concepts)


def _parse_assignment(text):
    node, _, value = text.partition("=")
    if not node or value not in ("0", "1"):
        raise ParameterError(f"expected NODE=0 or NODE=1, got {text!r}")
    return node, int(value)


def _parse_evidence(items):
    evidence = {}
    for item in items or []:
        for part in item.split(","):
            part = part.strip()
            if not part:
                continue
            node, value = _parse_assignment(part)
            if node in evidence and evidence[node] != value:
                raise ParameterError(f"conflicting evidence for {node!r}")
            evidence[node] = value
    return evidence


def _write_json(path, payload):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=True) + "\n")


def cmd_discover(args):
    matrix = _load_input(args.input, args.concepts)
    cls = ALGORITHMS[args.algo]
    flag_values = {
        "alpha": args.alpha,
        "max_cond_set": args.max_cond_set,
        "score": args.score,
        "ess": args.ess,
        "restarts": args.restarts,
        "seed": args.seed,
        "depth": args.depth,
        "prune_threshold": args.prune_threshold,
        "anm_alpha": args.anm_alpha,
        "n_perm": args.n_perm,
    }
    accepted = cls().get_params()
    params = {k: v for k, v in flag_values.items() if k in accepted}
    result = cls(**params).fit_discover(matrix)
    write_graph(result.graph, args.output)
    sidecar = {
        "algorithm": result.algorithm,
        "parameters": params,
        "score": result.score,
        "threads_cap": _threads_cap(),
        "diagnostics": result.diagnostics,
    }
    _write_json(args.output + ".diag.json", sidecar)
    return 0


def cmd_consensus(args):
    graphs = [read_graph(p) for p in args.graphs]
    consensus = build_consensus(
        graphs, min_agree=args.min_agree, undirected=args.undirected
    )
    dag, deleted = ensure_dag(consensus)
    surviving = WeightedDigraph(
        consensus.nodes, {e: consensus.weights[e] for e in dag.edges}
    )
    write_graph(surviving, args.output)
    report = {
        "inputs": [os.path.basename(p) for p in args.graphs],
        "min_agree": args.min_agree,
        "undirected": args.undirected,
        "deleted_edges": [
            {"from": u, "to": v, "weight": w} for u, v, w in deleted
        ],
    }
    _write_json(args.output + ".report.json", report)
    return 0


def _read_dag(path):
    graph = read_graph(path)
    if isinstance(graph, Pdag):
        if graph.undirected:
            raise ParameterError(
                "graph still has undirected edges; build a consensus or "
                "resolve orientations before fitting"
            )
        return graph.to_dag()
    if isinstance(graph, WeightedDigraph):
        return Dag(graph.nodes, graph.edges)
    return graph


def cmd_fit(args):
    matrix = _load_input(args.data, args.concepts)
    dag = _read_dag(args.graph)
    net = fit_cpts(
        matrix,
        dag,
        source={
            "dataset": os.path.basename(args.data),
            "fallback_rule": "uniform-0.5",
        },
    )
    write_net(net, args.output)
    return 0


def cmd_query(args):
    net = read_net(args.net)
    evidence = _parse_evidence(args.evidence)
    posterior = query(net, evidence, args.target)
    support = evidence_support(net, args.target, evidence)
    for value in (0, 1):
        print(f"{args.target}={value}: {posterior[value]:.2f} ({support} cases)")
    return 0


def cmd_argue(args):
    net = read_net(args.net)
    catalog = ConceptCatalog.from_csv(args.concepts) if args.concepts else None
    target = _parse_assignment(args.target)
    reports = ranked_arguments(net, target, args.max_evidence, catalog)
    for report in reports:
        print(report.narrative)
    return 0


def cmd_iaa(args):
    spans = read_spans_jsonl(args.annotations)
    scores = score_cases(spans, beta=args.beta)
    for case_id in sorted(scores):
        print(f"{case_id}\t{scores[case_id]:.2f}")
    flagged = flag_low(scores, threshold=args.threshold)
    if flagged:
        print(f"flagged (score < {args.threshold:g}):")
        for case_id in flagged:
            print(case_id)
    return 0


def cmd_serve(args):
    import uvicorn

    from .server import build_state, create_app

    state = build_state(
        data=args.data,
        graph=args.graph,
        concepts=args.concepts,
        session_dir=args.session_dir,
    )
    app = create_app(state, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="causelaw",
        description=(
            "Discover causal structure among binary legal concepts, build a "
            "consensus graph, fit probability tables and generate quantified "
            "arguments."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("discover", help="run one discovery algorithm")
    p.add_argument("--algo", required=True, choices=sorted(ALGORITHMS))
    p.add_argument("--input", required=True, help="case-by-concept CSV")
    p.add_argument("--output", required=True, help="graph file to write")
    p.add_argument("--concepts", help="optional concepts CSV (id,name,category)")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--max-cond-set", dest="max_cond_set", type=int, default=3)
    p.add_argument("--score", choices=("bdeu", "bic"), default="bdeu")
    p.add_argument("--ess", type=float, default=1.0)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument(
        "--prune-threshold", dest="prune_threshold", type=float, default=0.05
    )
    p.add_argument("--anm-alpha", dest="anm_alpha", type=float, default=0.05)
    p.add_argument("--n-perm", dest="n_perm", type=int, default=200)
    p.set_defaults(func=cmd_discover)

    p = sub.add_parser("consensus", help="aggregate graphs by agreement count")
    p.add_argument("graphs", nargs="+", help="graph files from discover")
    p.add_argument("--min-agree", dest="min_agree", type=int, default=2)
    p.add_argument("--undirected", choices=("none", "both"), default="none")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_consensus)

    p = sub.add_parser("fit", help="fit probability tables on a DAG")
    p.add_argument("--graph", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--concepts")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("query", help="posterior of a target given evidence")
    p.add_argument("--net", required=True)
    p.add_argument("--evidence", action="append", default=[], help="NODE=0|1")
    p.add_argument("--target", required=True)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("argue", help="ranked quantified arguments for a target")
    p.add_argument("--net", required=True)
    p.add_argument("--target", required=True, help="NODE=0|1")
    p.add_argument("--max-evidence", dest="max_evidence", type=int, default=3)
    p.add_argument("--concepts")
    p.set_defaults(func=cmd_argue)

    p = sub.add_parser("iaa", help="inter-annotator agreement per case")
    p.add_argument("--annotations", required=True, help="JSONL span records")
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--threshold", type=float, default=0.8)
    p.set_defaults(func=cmd_iaa)

    p = sub.add_parser("serve", help="run the refinement and what-if HTTP service")
    p.add_argument("--data", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--concepts")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--session-dir", dest="session_dir")
    p.add_argument("--ui-dir", dest="ui_dir", help="built UI bundle to serve at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ZeroEvidenceError:
        print(NO_SUPPORT_TEXT, file=sys.stderr)
        return 3
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CauseLawError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
