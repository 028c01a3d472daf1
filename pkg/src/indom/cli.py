"""Command-line interface: class-aware dispatch, oracle access, generation,
cross-validation suites, product-inequality checks and benchmarks.

Every command emits JSON lines (one object per instance) on stdout. The
process exits nonzero iff some requested verification failed.
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import sys
import time

from . import generators
from .graph import (
    Graph,
    GraphError,
    bits,
    cartesian_product,
    dominates,
    is_independent,
    mask_from,
    mask_to_list,
    parse,
)
from .oracle import (
    DominationCertificate,
    gamma,
    gamma_of_set,
    gamma_i_oracle,
    verify_certificate,
)
from .cograph import (
    ClassMismatchError,
    P4Witness,
    build_cotree,
    gamma_cograph,
    gamma_i_cograph,
    parse_cotree,
)
from .distance_hereditary import (
    DHFailure,
    build_dh_decomposition,
    gamma_i_dh,
    parse_sequence,
    recognize_dh,
    replay_sequence,
)
from .permutation import diagram_to_graph, gamma_i_permutation, parse_diagram
from .treewidth import (
    DEFAULT_WIDTH_CEILING,
    CapacityError,
    gamma_i_treewidth,
    heuristic_decomposition,
    parse_decomposition,
)
from .exactexp import DEFAULT_BETA, DEFAULT_CEILING, gamma_i_exact
from .planar import ptas_gamma_i

ENV_WIDTH_CEILING = "INDOM_WIDTH_CEILING"
ENV_EXACT_CEILING = "INDOM_EXACT_CEILING"


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value else default


def _read_input(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_graph(args):
    return parse(_read_input(args.input), args.format)


def _emit(obj):
    print(json.dumps(obj, sort_keys=True))


def _report(args, g, algorithm, value, cert, extra=None):
    report = {
        "input": args.input,
        "n": g.n,
        "m": g.m,
        "algorithm": algorithm,
        "value": value,
        "certificate": cert.as_dict() if cert is not None else None,
    }
    if extra:
        report.update(extra)
    if getattr(args, "certify", False) and cert is not None:
        report["verified"] = verify_certificate(g, cert)
        if not report["verified"]:
            _emit(report)
            return 1
    _emit(report)
    return 0


def _dispatch_gamma_i(g, args):
    """First applicable solver: cograph, distance-hereditary, permutation
    (diagram given), treewidth (decomposition given or width under the
    ceiling), exact exponential."""
    algo = args.algo
    width_ceiling = args.width_ceiling
    if g.n == 0:
        return algo if algo != "auto" else "exact", 0, DominationCertificate(0, 0, 0), {}
    if algo in ("auto", "cograph"):
        result = build_cotree(g) if g.n else None
        if g.n and not isinstance(result, P4Witness):
            value, cert = gamma_i_cograph(g)
            return "cograph", value, cert, {}
        if algo == "cograph":
            raise ClassMismatchError(
                f"not a cograph: induced path {result.vertices}", witness=result
            )
    if algo in ("auto", "dh"):
        seq = recognize_dh(g) if g.n else None
        if g.n and not isinstance(seq, DHFailure):
            value, cert = gamma_i_dh(g, build_dh_decomposition(g, seq))
            return "dh", value, cert, {}
        if algo == "dh":
            raise ClassMismatchError(
                f"not distance-hereditary: stuck at vertex {seq.stuck_vertex}", witness=seq
            )
    if args.diagram is not None and algo in ("auto", "permutation"):
        diagram = parse_diagram(_read_input(args.diagram))
        if diagram_to_graph(diagram) != g:
            raise GraphError("diagram does not match the input graph")
        value, cert = gamma_i_permutation(diagram)
        return "permutation", value, cert, {}
    if algo == "permutation":
        raise GraphError("permutation solver needs --diagram (recognition is out of scope)")
    if algo in ("auto", "treewidth"):
        td = None
        if args.td is not None:
            td = parse_decomposition(_read_input(args.td))
        else:
            candidate = heuristic_decomposition(g)
            if candidate.width <= width_ceiling:
                td = candidate
        if td is not None:
            try:
                value, cert = gamma_i_treewidth(g, td, width_ceiling)
                return "treewidth", value, cert, {"width": td.width}
            except CapacityError:
                if algo == "treewidth":
                    raise
    value, cert, stats = gamma_i_exact(g, beta=args.beta, ceiling=args.exact_ceiling)
    return "exact", value, cert, {"stats": stats.as_dict()}


def cmd_gamma_i(args):
    g = _load_graph(args)
    if args.cotree is not None:
        from .cograph import cotree_to_graph

        t = parse_cotree(_read_input(args.cotree))
        if cotree_to_graph(t) != g:
            _emit({"input": args.input, "error": "cotree does not match the input graph"})
            return 2
        value, cert = gamma_i_cograph(g)
        return _report(args, g, "cograph", value, cert, {"gamma": gamma_cograph(t)})
    try:
        algorithm, value, cert, extra = _dispatch_gamma_i(g, args)
    except ClassMismatchError as exc:
        _emit({"input": args.input, "error": str(exc), "witness": _witness_dict(exc.witness)})
        return 2
    return _report(args, g, algorithm, value, cert, extra)


def _witness_dict(witness):
    if isinstance(witness, P4Witness):
        return {"kind": "p4", "vertices": list(witness.vertices)}
    if isinstance(witness, DHFailure):
        return {"kind": "dh-stuck", "vertex": witness.stuck_vertex}
    return None


def cmd_oracle(args):
    g = _load_graph(args)
    if args.what == "gamma":
        value, witness = gamma(g)
        cert = DominationCertificate(g.full_mask, witness, value)
        report = {"input": args.input, "value": value, "witness": mask_to_list(witness)}
        if args.certify:
            report["verified"] = dominates(g, witness, g.full_mask)
        _emit(report)
        return 0 if not args.certify or report.get("verified", True) else 1
    if args.what == "gamma-i":
        value, cert = gamma_i_oracle(g)
        return _report(args, g, "oracle", value, cert)
    targets = mask_from(int(v) for v in args.set.split(",")) if args.set else 0
    value, witness = gamma_of_set(g, targets)
    report = {
        "input": args.input,
        "set": mask_to_list(targets),
        "value": value,
        "witness": mask_to_list(witness),
    }
    if args.certify:
        report["verified"] = dominates(g, witness, targets)
    _emit(report)
    return 0 if not args.certify or report.get("verified", True) else 1


def cmd_exact(args):
    g = _load_graph(args)
    value, cert, stats = gamma_i_exact(g, beta=args.beta, ceiling=args.exact_ceiling)
    return _report(args, g, "exact", value, cert, {"stats": stats.as_dict()})


def cmd_ptas(args):
    g = _load_graph(args)
    result = ptas_gamma_i(g, args.epsilon, root=args.root, width_ceiling=args.width_ceiling)
    extra = {
        "k": result.k,
        "shifts": [list(s) for s in result.shifts],
        "piece_values": {f"{r},{ell}": v for (r, ell), v in sorted(result.piece_values.items())},
    }
    return _report(args, g, "ptas", result.value, result.certificate, extra)


def cmd_gen(args):
    made = generators.generate(args.descriptor, args.seed)
    text = _serialize_generated(made, args)
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    _write_artifact(made, args)
    return 0


def _serialize_generated(made, args):
    from .graph import serialize

    return serialize(made.graph, args.format)


def _write_artifact(made, args):
    if not args.artifact_out or made.artifact is None:
        return
    from .cograph import Cotree, serialize_cotree
    from .distance_hereditary import PruningSequence, serialize_sequence
    from .permutation import PermutationDiagram, serialize_diagram

    artifact = made.artifact
    if isinstance(artifact, Cotree):
        text = serialize_cotree(artifact)
    elif isinstance(artifact, PruningSequence):
        text = serialize_sequence(artifact)
    elif isinstance(artifact, PermutationDiagram):
        text = serialize_diagram(artifact)
    else:
        raise GraphError(f"cannot serialize artifact {type(artifact).__name__}")
    with open(args.artifact_out, "w") as fh:
        fh.write(text)


def _verify_one(kind, size, seed):
    """One cross-validation instance; returns (report dict, ok)."""
    from .permutation import gamma_i_permutation as perm_value

    if kind == "cograph":
        made = generators.random_cograph(size, seed)
        value, cert = gamma_i_cograph(made.graph)
        expected, _ = gamma_i_oracle(made.graph)
        ok = value == expected and verify_certificate(made.graph, cert)
        g = made.graph
    elif kind == "dh":
        made = generators.random_dh(size, seed)
        decomp = build_dh_decomposition(made.graph, made.artifact)
        value, cert = gamma_i_dh(made.graph, decomp)
        expected, _ = gamma_i_oracle(made.graph)
        ok = value == expected and verify_certificate(made.graph, cert)
        g = made.graph
    elif kind == "permutation":
        made = generators.random_permutation(size, seed)
        value, cert = perm_value(made.artifact)
        expected, _ = gamma_i_oracle(made.graph)
        ok = value == expected and verify_certificate(made.graph, cert)
        g = made.graph
    elif kind == "treewidth":
        g = generators.gnp(size, 0.3, seed)
        value, cert = gamma_i_treewidth(g)
        expected, _ = gamma_i_oracle(g)
        ok = value == expected and verify_certificate(g, cert)
    elif kind == "chordal":
        g = generators.random_chordal(size, seed)
        expected, _ = gamma_i_oracle(g)
        value, _w = gamma(g)
        ok = value == expected
    elif kind == "exact":
        g = generators.gnp(size, 0.3, seed)
        value, cert, _stats = gamma_i_exact(g)
        expected, _ = gamma_i_oracle(g)
        ok = value == expected and verify_certificate(g, cert)
    else:
        raise GraphError(f"unknown suite {kind!r}")
    report = {"suite": kind, "seed": seed, "n": g.n, "value": value, "ok": ok}
    if not ok:
        from .graph import serialize

        report["instance"] = serialize(g)
    return report, ok


def cmd_verify(args):
    failures = 0
    for i in range(args.count):
        seed = args.seed + i
        size = 4 + (seed % (args.size - 3)) if args.size > 4 else args.size
        report, ok = _verify_one(args.suite, size, seed)
        _emit(report)
        if not ok:
            failures += 1
    _emit({"suite": args.suite, "count": args.count, "failures": failures})
    return 1 if failures else 0


PRODUCT_CORPUS = [
    ("K1", Graph(1)),
    ("K2", Graph(2, [(0, 1)])),
    ("P3", generators.path(3)),
    ("P4", generators.path(4)),
    ("C4", generators.cycle(4)),
    ("C5", generators.cycle(5)),
    ("K4", Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])),
    ("star5", generators.star(5)),
    ("K23", generators.complete_multipartite([2, 3])),
    ("C6", generators.cycle(6)),
]


def cmd_product_check(args):
    failures = 0
    for name_g, g in PRODUCT_CORPUS:
        for name_h, h in PRODUCT_CORPUS:
            prod = cartesian_product(g, h)
            gamma_prod, _ = gamma(prod)
            gamma_i_prod, _ = gamma_i_oracle(prod)
            gi_g, _ = gamma_i_oracle(g)
            gi_h, _ = gamma_i_oracle(h)
            ga_g, _ = gamma(g)
            ga_h, _ = gamma(h)
            checks = {
                "gamma_product_vs_gi_gamma": gamma_prod >= gi_g * ga_h,
                "gi_product_vs_gi_gi": gamma_i_prod >= gi_g * gi_h,
                "suen_tarr": 2 * gamma_prod >= ga_g * ga_h + min(ga_g, ga_h),
            }
            ok = all(checks.values())
            report = {
                "pair": [name_g, name_h],
                "gamma_product": gamma_prod,
                "gamma_i_product": gamma_i_prod,
                "ok": ok,
            }
            if not ok:
                # dump the instance with witnesses in pair coordinates
                from .graph import product_pair

                _, cert = gamma_i_oracle(prod)
                report["checks"] = checks
                report["witness_pairs"] = {
                    "independent_set": [
                        list(product_pair(h, v)) for v in mask_to_list(cert.independent_set)
                    ],
                    "dominating_set": [
                        list(product_pair(h, v)) for v in mask_to_list(cert.dominating_set)
                    ],
                }
                failures += 1
            _emit(report)
    _emit({"pairs": len(PRODUCT_CORPUS) ** 2, "failures": failures})
    return 1 if failures else 0


def _median_time(fn, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def cmd_bench(args):
    import math

    if args.suite == "cograph":
        t = generators.random_cotree(args.size or 100_000, args.seed)
        elapsed = _median_time(lambda: gamma_cograph(t), args.repeats)
        _emit({"suite": "cograph", "n": t.n, "median_s": elapsed})
    elif args.suite == "dh":
        sizes = args.sizes or [250, 500, 1000, 2000]
        rows = []
        for n in sizes:
            made = generators.random_dh(n, args.seed)

            def run():
                decomp = build_dh_decomposition(made.graph, made.artifact)
                gamma_i_dh(made.graph, decomp)

            elapsed = _median_time(run, args.repeats)
            rows.append((n, elapsed))
            _emit({"suite": "dh", "n": n, "median_s": elapsed})
        if len(rows) >= 2:
            xs = [math.log(n) for n, _ in rows]
            ys = [math.log(max(t, 1e-9)) for _, t in rows]
            mean_x = sum(xs) / len(xs)
            mean_y = sum(ys) / len(ys)
            slope = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys)) / sum(
                (x - mean_x) ** 2 for x in xs
            )
            _emit({"suite": "dh", "loglog_exponent": round(slope, 3)})
    elif args.suite == "exact":
        g = generators.gnp(args.size or 30, 0.3, args.seed)
        start = time.perf_counter()
        value, _cert, stats = gamma_i_exact(g)
        elapsed = time.perf_counter() - start
        _emit(
            {
                "suite": "exact",
                "n": g.n,
                "value": value,
                "seconds": elapsed,
                "stats": stats.as_dict(),
            }
        )
    else:
        raise GraphError(f"unknown bench suite {args.suite!r}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="indom",
        description="independence-domination number solvers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("input", help="graph file, or - for stdin")
        p.add_argument("--format", default="edge-list", choices=["edge-list", "dimacs"])
        p.add_argument("--certify", action="store_true", help="replay the certificate")

    p = sub.add_parser("gamma-i", help="class-aware dispatch")
    add_common(p)
    p.add_argument("--algo", default="auto",
                   choices=["auto", "cograph", "dh", "permutation", "treewidth", "exact"])
    p.add_argument("--diagram", help="permutation diagram file")
    p.add_argument("--cotree", help="cotree file")
    p.add_argument("--td", help="tree decomposition file")
    p.add_argument("--width-ceiling", type=int,
                   default=_env_int(ENV_WIDTH_CEILING, DEFAULT_WIDTH_CEILING))
    p.add_argument("--beta", type=float, default=DEFAULT_BETA)
    p.add_argument("--exact-ceiling", type=int,
                   default=_env_int(ENV_EXACT_CEILING, DEFAULT_CEILING))
    p.set_defaults(func=cmd_gamma_i)

    p = sub.add_parser("oracle", help="brute-force reference values")
    p.add_argument("what", choices=["gamma", "gamma-i", "gamma-set"])
    add_common(p)
    p.add_argument("--set", help="comma-separated target vertices for gamma-set")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("exact", help="exponential-time exact solver")
    add_common(p)
    p.add_argument("--beta", type=float, default=DEFAULT_BETA)
    p.add_argument("--exact-ceiling", type=int,
                   default=_env_int(ENV_EXACT_CEILING, DEFAULT_CEILING))
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("ptas", help="shifting scheme for planar inputs")
    add_common(p)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--root", type=int, default=None)
    p.add_argument("--width-ceiling", type=int,
                   default=_env_int(ENV_WIDTH_CEILING, DEFAULT_WIDTH_CEILING))
    p.set_defaults(func=cmd_ptas)

    p = sub.add_parser("gen", help="generate a graph (and side artifact)")
    p.add_argument("descriptor", help="e.g. gnp(20,0.3) or random_cograph(12)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", default="edge-list", choices=["edge-list", "dimacs"])
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--artifact-out", help="file for the cotree/sequence/diagram")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="cross-validate a solver against the oracle")
    p.add_argument("--suite", required=True,
                   choices=["cograph", "dh", "permutation", "treewidth", "chordal", "exact"])
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, default=12, help="maximum instance size")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("product-check", help="product-domination inequalities")
    p.set_defaults(func=cmd_product_check)

    p = sub.add_parser("bench", help="timing suites")
    p.add_argument("--suite", required=True, choices=["cograph", "dh", "exact"])
    p.add_argument("--size", type=int)
    p.add_argument("--sizes", type=int, nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, OSError) as exc:
        _emit({"error": str(exc)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
