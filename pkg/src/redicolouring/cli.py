"""The `redico` command line.

Subcommands: analyze, dicolour, oracle, recolour, dwidth (validate /
make-valid / search / sequence), gen (random / bidirect / prop3), check.

Reports go to stdout, one `key value` line each, or as a single JSON object
with --json.  Artefacts (digraph, colouring, sequence, decomposition files)
are written to the path given with -o; the gen subcommands default to
stdout.  Exit codes: 0 success, 1 for I/O or parse failures, 2 when a
library precondition rejects the request (one machine-readable reason line
on stderr, prefixed "redico:").
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from .colouring import (
    Colouring,
    dichromatic_number_bruteforce,
    digrundy_bruteforce,
    greedy_dicolouring,
)
from .degrees import FLAVOURS, avg_cycle_degree, cycle_degree, degeneracy_ordering
from .digraph import Digraph, bidirect, underlying_graph
from .dwidth import (
    FULL_VALIDATION_CAP,
    dwidth_bruteforce,
    dwidth_sequence,
    make_valid,
    min_degree_generator,
    validate,
)
from .engines import (
    digrundy_sequence,
    mad_partition,
    mix_bounded,
    mix_quadratic,
    mix_simple,
    partition_recolour,
    singleton_partition,
    ug_reduction_sequence,
)
from .errors import (
    CapExceededError,
    InvalidMoveError,
    NoChangeMoveError,
    PreconditionError,
    StrategyError,
)
from .io import (
    ParseError,
    parse_colouring,
    parse_decomposition,
    parse_digraph,
    parse_sequence,
    serialise_colouring,
    serialise_decomposition,
    serialise_digraph,
    serialise_sequence,
)
from .oracle import dicolouring_graph, reconf_report, shortest_sequence, validate_sequence

DOT_STATE_CAP = 200

ENGINES = ("simple", "bounded", "quadratic", "partition", "mad", "digrundy", "ug")


def _load_digraph(path: str) -> Digraph:
    return parse_digraph(Path(path).read_text())


def _load_colouring(path: str) -> Colouring:
    return parse_colouring(Path(path).read_text())


def _widen(colouring: Colouring, k: int | None, name: str) -> Colouring:
    """Lift a file colouring onto the palette requested with -k."""
    if k is None or k == colouring.k:
        return colouring
    if k < colouring.k:
        raise PreconditionError(
            f"{name} uses palette {colouring.k}, cannot shrink to -k {k}"
        )
    return Colouring(colouring.colours, k)


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _report(data: dict, as_json: bool, multiline: dict | None = None):
    """Print `key value` lines, or the whole dict as one JSON object.

    multiline maps a key to a list of rows that plain mode prints as one
    line per row; JSON mode takes them from data directly.
    """
    if as_json:
        print(json.dumps(data))
        return
    for key, value in data.items():
        label = key.replace("_", "-")
        if multiline and key in multiline:
            for row in multiline[key]:
                print(label, *row)
            continue
        if isinstance(value, bool):
            value = "yes" if value else "no"
        elif value is None:
            value = "unbounded"
        elif isinstance(value, (list, tuple)):
            value = " ".join(str(x) for x in value)
        print(f"{label} {value}")


# -- subcommand handlers ------------------------------------------------------


def cmd_analyze(args) -> int:
    D = _load_digraph(args.digraph)
    data = {
        "vertices": D.n,
        "arcs": D.m,
        "digons": len(D.digons()),
        "cycle_degrees": [cycle_degree(D, v)[0] for v in range(D.n)],
        "degeneracy": {
            fl: degeneracy_ordering(D, fl).degeneracy for fl in FLAVOURS
        },
        "avg_cycle_degree": str(avg_cycle_degree(D)),
    }
    if args.json:
        print(json.dumps(data))
    else:
        for key in ("vertices", "arcs", "digons"):
            print(key, data[key])
        print("cycle-degrees", *data["cycle_degrees"])
        for fl in FLAVOURS:
            print(f"degeneracy-{fl}", data["degeneracy"][fl])
        print("avg-cycle-degree", data["avg_cycle_degree"])
    return 0


def cmd_dicolour(args) -> int:
    D = _load_digraph(args.digraph)
    colouring = None
    if args.method == "greedy":
        colouring = greedy_dicolouring(D, degeneracy_ordering(D, "c"))
        data = {"method": "greedy", "colours": colouring.k}
    elif args.method == "exact":
        number, colouring = dichromatic_number_bruteforce(D)
        data = {"method": "exact", "dichromatic_number": number}
    else:
        data = {"method": "digrundy", "digrundy": digrundy_bruteforce(D)}
    _report(data, args.json)
    if args.output is not None:
        if colouring is None:
            raise PreconditionError(
                "the digrundy method reports a number, there is no colouring to write"
            )
        _emit(serialise_colouring(colouring), args.output)
    return 0


def cmd_oracle(args) -> int:
    D = _load_digraph(args.digraph)
    rep = reconf_report(D, args.k)
    data = {
        "k": rep.k,
        "dicolourings": rep.count,
        "connected": rep.connected,
        "diameter": rep.diameter,
        "frozen": rep.frozen,
        "components": rep.n_components,
    }
    if rep.connected and rep.diameter is None and not args.json:
        # the all-pairs sweep is capped; here the diameter is finite but
        # uncomputed, which must not render as "unbounded"
        data["diameter"] = "skipped"
    if not rep.connected:
        data["component_diameters"] = list(rep.component_diameters)
    if (args.source is None) != (args.target is None):
        raise PreconditionError("--from and --to must be given together")
    seq = None
    if args.source is not None:
        alpha = _widen(_load_colouring(args.source), args.k, "--from")
        beta = _widen(_load_colouring(args.target), args.k, "--to")
        seq = shortest_sequence(D, args.k, alpha, beta)
        data["reachable"] = seq is not None
        data["distance"] = None if seq is None else len(seq.moves)
    _report(data, args.json)
    if seq is not None and args.output is not None:
        _emit(serialise_sequence(seq), args.output)
    if args.dot is not None:
        _emit(_dot_graph(D, args.k), args.dot)
    return 0


def _dot_graph(D: Digraph, k: int) -> str:
    states, adj = dicolouring_graph(D, k)
    if len(states) > DOT_STATE_CAP:
        raise CapExceededError(
            f"DOT export capped at {DOT_STATE_CAP} dicolourings, got {len(states)}"
        )
    lines = ["graph dicolourings {"]
    for i, colouring in enumerate(states):
        label = " ".join(str(c) for c in colouring.colours)
        lines.append(f'  s{i} [label="{label}"];')
    for i, nbrs in enumerate(adj):
        lines.extend(f"  s{i} -- s{j};" for j in nbrs if i < j)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _run_engine(args, D: Digraph, k: int, alpha: Colouring, beta: Colouring):
    engine = args.engine
    if engine == "simple":
        return mix_simple(D, k, alpha, beta)
    if engine == "bounded":
        return mix_bounded(D, k, alpha, beta)
    if engine == "quadratic":
        return mix_quadratic(D, k, alpha, beta)
    if engine == "partition":
        P = singleton_partition(D)
        return partition_recolour(D, P, P.s, k, alpha, beta)
    if engine == "mad":
        if args.mad_d is None or args.mad_epsilon is None:
            raise PreconditionError(
                "the mad engine needs --mad-d and --mad-epsilon"
            )
        try:
            eps = Fraction(args.mad_epsilon)
        except (ValueError, ZeroDivisionError):
            raise PreconditionError(
                f"--mad-epsilon {args.mad_epsilon!r} is not a fraction"
            ) from None
        P = mad_partition(D, args.mad_d, eps)
        return partition_recolour(D, P, P.s, k, alpha, beta)
    if engine == "digrundy":
        return digrundy_sequence(D, k, alpha, beta)
    assert engine == "ug"
    return ug_reduction_sequence(D, k, alpha, beta, strategy=args.strategy)


def cmd_recolour(args) -> int:
    D = _load_digraph(args.digraph)
    alpha = _widen(_load_colouring(args.alpha), args.k, "alpha")
    beta = _widen(_load_colouring(args.beta), args.k, "beta")
    if alpha.k != beta.k:
        raise PreconditionError(
            f"alpha uses palette {alpha.k} but beta uses {beta.k}; pass -k"
        )
    k = alpha.k
    seq = _run_engine(args, D, k, alpha, beta)
    final, counts = validate_sequence(D, k, seq)
    if final.colours != beta.colours:
        raise StrategyError(f"engine {args.engine} did not reach the target")
    data = {
        "engine": args.engine,
        "length": len(seq.moves),
        "max_recolourings": max(counts.values(), default=0),
    }
    _report(data, args.json)
    if args.output is not None:
        _emit(serialise_sequence(seq), args.output)
    return 0


def cmd_check(args) -> int:
    D = _load_digraph(args.digraph)
    seq = parse_sequence(Path(args.sequence).read_text())
    final, counts = validate_sequence(D, seq.start.k, seq)
    data = {
        "moves": len(seq.moves),
        "max_recolourings": max(counts.values(), default=0),
        "final": list(final.colours),
    }
    _report(data, args.json)
    return 0


def cmd_dwidth_validate(args) -> int:
    D = _load_digraph(args.digraph)
    dec = parse_decomposition(Path(args.decomposition).read_text())
    rep = validate(D, dec, level=args.level)
    data = {
        "level": rep.level,
        "ok": rep.ok,
        "width": dec.width,
        "sets_checked": rep.sets_checked,
        "violations": [list(v) for v in rep.violations],
    }
    _report(data, args.json, multiline={"violations": data["violations"]})
    return 0


def cmd_dwidth_make_valid(args) -> int:
    D = _load_digraph(args.digraph)
    dec = parse_decomposition(Path(args.decomposition).read_text())
    level = "full" if D.n <= FULL_VALIDATION_CAP else "partial"
    rep = validate(D, dec, level=level)
    if not rep.ok:
        raise PreconditionError(
            f"decomposition fails the subtree-support property, "
            f"for example on {list(rep.violations[0])}"
        )
    fixed = make_valid(D, dec)
    data = {
        "width": fixed.width,
        "nodes_in": dec.tree.n,
        "nodes_out": fixed.tree.n,
    }
    _report(data, args.json)
    if args.output is not None:
        _emit(serialise_decomposition(fixed), args.output)
    return 0


def cmd_dwidth_search(args) -> int:
    D = _load_digraph(args.digraph)
    width, dec = dwidth_bruteforce(D)
    data = {"width": width, "nodes": dec.tree.n}
    _report(data, args.json)
    if args.output is not None:
        _emit(serialise_decomposition(dec), args.output)
    return 0


def cmd_dwidth_sequence(args) -> int:
    D = _load_digraph(args.digraph)
    alpha = _widen(_load_colouring(args.alpha), args.k, "alpha")
    beta = _widen(_load_colouring(args.beta), args.k, "beta")
    if alpha.k != beta.k:
        raise PreconditionError(
            f"alpha uses palette {alpha.k} but beta uses {beta.k}; pass -k"
        )
    dec = None
    if args.dec is not None:
        dec = parse_decomposition(Path(args.dec).read_text())
    seq = dwidth_sequence(D, dec, alpha, beta)
    _, counts = validate_sequence(D, alpha.k, seq)
    data = {
        "length": len(seq.moves),
        "bound": 2 * (D.n * D.n + D.n),
        "max_recolourings": max(counts.values(), default=0),
    }
    _report(data, args.json)
    if args.output is not None:
        _emit(serialise_sequence(seq), args.output)
    return 0


def cmd_gen_random(args) -> int:
    if not 0.0 <= args.p <= 1.0:
        raise PreconditionError(f"arc probability {args.p} is outside [0, 1]")
    if args.n < 0:
        raise PreconditionError("vertex count must be non-negative")
    rng = random.Random(args.seed)
    arcs = [
        (u, v)
        for u in range(args.n)
        for v in range(args.n)
        if u != v and rng.random() < args.p
    ]
    _emit(serialise_digraph(Digraph(args.n, arcs)), args.output)
    return 0


def cmd_gen_bidirect(args) -> int:
    D = _load_digraph(args.digraph)
    _emit(serialise_digraph(bidirect(underlying_graph(D))), args.output)
    return 0


def cmd_gen_prop3(args) -> int:
    _emit(serialise_digraph(min_degree_generator(args.d)), args.output)
    return 0


# -- parser -------------------------------------------------------------------


def _add_output(parser, help_text="write the result to this file"):
    parser.add_argument("-o", "--output", metavar="FILE", help=help_text)


def _add_json(parser):
    parser.add_argument(
        "--json", action="store_true", help="print the report as one JSON object"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="redico",
        description="dicolouring, redicolouring and D-decomposition toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="cycle degrees and degeneracies")
    p.add_argument("digraph")
    _add_json(p)
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("dicolour", help="construct or count dicolourings")
    p.add_argument("digraph")
    p.add_argument(
        "--method", choices=("greedy", "exact", "digrundy"), default="greedy"
    )
    _add_output(p, "write the colouring to this file")
    _add_json(p)
    p.set_defaults(handler=cmd_dicolour)

    p = sub.add_parser("oracle", help="the k-dicolouring reconfiguration graph")
    p.add_argument("digraph")
    p.add_argument("-k", type=int, required=True, help="palette size")
    p.add_argument("--from", dest="source", metavar="FILE", help="start colouring")
    p.add_argument("--to", dest="target", metavar="FILE", help="target colouring")
    p.add_argument("--dot", metavar="FILE", help="DOT export of the whole graph")
    _add_output(p, "write the shortest sequence to this file")
    _add_json(p)
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("recolour", help="run a redicolouring engine")
    p.add_argument("digraph")
    p.add_argument("alpha", help="start colouring file")
    p.add_argument("beta", help="target colouring file")
    p.add_argument("--engine", choices=ENGINES, required=True)
    p.add_argument("-k", type=int, help="widen the file palettes to k")
    p.add_argument("--mad-d", type=int, help="degree bound for the mad engine")
    p.add_argument("--mad-epsilon", help="slack for the mad engine, e.g. 1/2")
    p.add_argument(
        "--strategy",
        choices=("oracle", "simple", "bounded"),
        default="oracle",
        help="undirected strategy for the ug engine",
    )
    _add_output(p, "write the sequence to this file")
    _add_json(p)
    p.set_defaults(handler=cmd_recolour)

    p = sub.add_parser("dwidth", help="D-decomposition tools")
    dsub = p.add_subparsers(dest="dwidth_command", required=True)

    q = dsub.add_parser("validate", help="check the subtree-support property")
    q.add_argument("digraph")
    q.add_argument("decomposition")
    q.add_argument("--level", choices=("full", "partial"), default="full")
    _add_json(q)
    q.set_defaults(handler=cmd_dwidth_validate)

    q = dsub.add_parser("make-valid", help="contract and subdivide to valid form")
    q.add_argument("digraph")
    q.add_argument("decomposition")
    _add_output(q, "write the valid decomposition to this file")
    _add_json(q)
    q.set_defaults(handler=cmd_dwidth_make_valid)

    q = dsub.add_parser("search", help="exact minimum-width decomposition")
    q.add_argument("digraph")
    _add_output(q, "write the decomposition to this file")
    _add_json(q)
    q.set_defaults(handler=cmd_dwidth_search)

    q = dsub.add_parser("sequence", help="decomposition-guided recolouring walk")
    q.add_argument("digraph")
    q.add_argument("alpha", help="start colouring file")
    q.add_argument("beta", help="target colouring file")
    q.add_argument("--dec", metavar="FILE", help="decomposition to follow")
    q.add_argument("-k", type=int, help="widen the file palettes to k")
    _add_output(q, "write the sequence to this file")
    _add_json(q)
    q.set_defaults(handler=cmd_dwidth_sequence)

    p = sub.add_parser("gen", help="digraph generators")
    gsub = p.add_subparsers(dest="gen_command", required=True)

    q = gsub.add_parser("random", help="independent arcs with probability p")
    q.add_argument("-n", type=int, required=True)
    q.add_argument("-p", type=float, required=True)
    q.add_argument("--seed", type=int, default=0)
    _add_output(q)
    q.set_defaults(handler=cmd_gen_random)

    q = gsub.add_parser("bidirect", help="bidirect the underlying graph of a digraph")
    q.add_argument("digraph")
    _add_output(q)
    q.set_defaults(handler=cmd_gen_bidirect)

    q = gsub.add_parser("prop3", help="high min in/out degree, low cycle degeneracy")
    q.add_argument("-d", type=int, required=True)
    _add_output(q)
    q.set_defaults(handler=cmd_gen_prop3)

    p = sub.add_parser("check", help="replay and validate a sequence file")
    p.add_argument("digraph")
    p.add_argument("sequence")
    _add_json(p)
    p.set_defaults(handler=cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        _fail("parse error", exc)
        return 1
    except OSError as exc:
        _fail("io error", exc)
        return 1
    except (
        PreconditionError,
        CapExceededError,
        StrategyError,
        InvalidMoveError,
        NoChangeMoveError,
    ) as exc:
        _fail("precondition", exc)
        return 2


def _fail(kind: str, exc: Exception):
    reason = " ".join(str(exc).split())
    print(f"redico: {kind}: {reason}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
