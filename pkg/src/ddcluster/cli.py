"""Command-line driver: generate, cluster, evaluate, plot, sweep.

Exit codes: 0 on success, 1 for usage problems (bad flags, missing
required flag combinations), 2 for data problems (unreadable or malformed
files, degenerate geometry).
"""

import argparse
import sys
from types import SimpleNamespace

import numpy as np

from .baselines import dbscan, dbscan_auto_params, denpeak, denpeak_auto_dc, kmeans
from .dataset import PointSet, generate_shapes, generate_twomoon, load_points, save_points
from .density import read_decision_csv, write_decision_csv
from .errors import DegenerateGeometryError, DegenerateInputError, ParseError
from .merge import ddc_cluster, read_result_csv, write_result_csv
from .metrics import evaluate
from .plot import FigureSpec, render_decision_graph, render_scatter


class UsageError(Exception):
    """A flag combination the parser cannot catch on its own."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; this artifact reserves
    # 2 for data errors, so route parser failures to exit code 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_centers(text: str):
    centers = []
    for chunk in text.split(";"):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise UsageError(f"bad --centers entry {chunk!r}; expected 'x,y;x,y;...'")
        try:
            centers.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise UsageError(f"bad --centers entry {chunk!r}") from None
    return centers


def cmd_generate(args) -> int:
    if args.kind == "twomoon":
        n = args.n if args.n is not None else 2000
        noise = args.noise if args.noise is not None else 0.06
        ps = generate_twomoon(n, noise, args.seed)
    else:
        params = {}
        if args.n is not None:
            params["n"] = args.n
        if args.noise is not None:
            params["noise"] = args.noise
        if args.noise_frac is not None:
            params["noise_frac"] = args.noise_frac
        if args.jitter is not None:
            params["jitter"] = args.jitter
        if args.centers is not None:
            params["centers"] = _parse_centers(args.centers)
        if args.n_per is not None:
            params["n_per"] = args.n_per
        if args.cluster_std is not None:
            params["cluster_std"] = args.cluster_std
        try:
            ps = generate_shapes(args.kind, params, seed=args.seed)
        except ValueError as exc:
            if isinstance(exc, (DegenerateInputError, DegenerateGeometryError)):
                raise
            raise UsageError(str(exc)) from None
    save_points(ps, args.output, format=args.format)
    print(f"generated kind={args.kind} points={ps.n} output={args.output}")
    return 0


def _cluster_ddc(ps, args):
    if not (args.ratio > 0.0):
        raise UsageError(f"--ratio must be positive, got {args.ratio}")
    merged = ddc_cluster(ps, args.ratio)
    write_result_csv(
        ps,
        merged.final_labels,
        args.output,
        local_labels=merged.local.labels,
        is_core=merged.is_core,
        center_indices=merged.final_centers,
    )
    if args.decision_out:
        write_decision_csv(merged.profile, args.decision_out)
    print(
        f"clusters={merged.n_clusters} local_clusters={merged.local.n_clusters} "
        f"d_c={merged.profile.d_c!r}"
    )
    return 0


def _cluster_denpeak(ps, args):
    if args.k is None:
        raise UsageError("denpeak requires --k")
    if args.dc is not None:
        d_c = args.dc
    elif args.auto_dc:
        d_c = denpeak_auto_dc(ps)
    else:
        raise UsageError("denpeak requires --dc VALUE or --auto-dc")
    result = denpeak(ps, d_c, args.k)
    write_result_csv(ps, result.labels, args.output, center_indices=result.centers)
    if args.decision_out:
        from .density import compute_profile

        write_decision_csv(compute_profile(ps, d_c), args.decision_out)
    print(f"clusters={result.n_clusters} d_c={d_c!r} k={args.k}")
    return 0


def _cluster_dbscan(ps, args):
    if args.auto_eps:
        eps, min_pts = dbscan_auto_params(ps)
    elif args.eps is not None:
        eps = args.eps
        min_pts = args.min_pts if args.min_pts is not None else 4
    else:
        raise UsageError("dbscan requires --eps VALUE or --auto-eps")
    result = dbscan(ps, eps, min_pts)
    write_result_csv(ps, result.labels, args.output, is_core=result.is_core)
    noise = int(np.sum(result.labels == -1))
    print(f"clusters={result.n_clusters} eps={eps!r} min_pts={min_pts} noise={noise}")
    return 0


def _cluster_kmeans(ps, args):
    if args.k is None:
        raise UsageError("kmeans requires --k")
    result = kmeans(ps, args.k, seed=args.seed, max_iter=args.max_iter)
    write_result_csv(ps, result.labels, args.output)
    print(f"clusters={result.n_clusters} k={args.k} seed={args.seed}")
    return 0


def cmd_cluster(args) -> int:
    ps = load_points(args.input, format=args.format)
    if args.algo == "ddc":
        return _cluster_ddc(ps, args)
    if args.algo == "denpeak":
        return _cluster_denpeak(ps, args)
    if args.algo == "dbscan":
        return _cluster_dbscan(ps, args)
    return _cluster_kmeans(ps, args)


def cmd_evaluate(args) -> int:
    if not args.truth:
        raise UsageError("evaluate requires --truth LABELED_FILE")
    result = read_result_csv(args.input)
    truth_ps = load_points(args.truth)
    if truth_ps.labels is None:
        raise ParseError(f"{args.truth}: truth file has no label column")
    if truth_ps.n != result["final_label"].shape[0]:
        raise ValueError(
            f"size mismatch: {result['final_label'].shape[0]} results "
            f"vs {truth_ps.n} truth points"
        )
    report = evaluate(result["final_label"], truth_ps.labels)
    text = report.to_json()
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
    print(text)
    return 0


def cmd_plot(args) -> int:
    spec = FigureSpec(show_border=not args.no_border, show_centers=not args.no_centers)
    if args.plot == "decision":
        _, rho, delta = read_decision_csv(args.input)
        profile = SimpleNamespace(rho=rho, delta=delta, n=rho.shape[0])
        svg = render_decision_graph(profile, spec)
    else:
        result = read_result_csv(args.input)
        # Columns that are all zero mean "not recorded": no core notion, no
        # marked centers.  Treat them as absent rather than painting every
        # point as border.
        is_core = result["is_core"] if bool(result["is_core"].any()) else None
        center_idx = np.flatnonzero(result["is_center"])
        view = SimpleNamespace(
            final_labels=result["final_label"],
            is_core=is_core,
            final_centers=center_idx if center_idx.size else None,
        )
        svg = render_scatter(PointSet(result["points"]), view, spec)
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
    print(f"wrote {args.output}")
    return 0


def cmd_sweep(args) -> int:
    if args.sweep_step <= 0:
        raise UsageError(f"--sweep-step must be positive, got {args.sweep_step}")
    count = int((args.sweep_to - args.sweep_from) / args.sweep_step + 1.0 + 1e-9)
    if args.sweep_from <= 0 or count < 1:
        raise UsageError(
            f"empty or invalid sweep range [{args.sweep_from}, {args.sweep_to}] "
            f"step {args.sweep_step}"
        )
    ps = load_points(args.input, format=args.format)
    if ps.labels is None:
        raise ParseError(f"{args.input}: sweep needs a labeled input file")
    lines = ["ratio,K,acc,nmi"]
    for i in range(count):
        ratio = round(args.sweep_from + i * args.sweep_step, 10)
        merged = ddc_cluster(ps, ratio)
        report = evaluate(merged.final_labels, ps.labels)
        lines.append(f"{ratio!r},{merged.n_clusters},{report.acc!r},{report.nmi!r}")
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"sweep rows={count} output={args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ddc", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("generate", help="write a synthetic labeled dataset")
    p.add_argument("--kind", required=True, choices=["twomoon", "flame_like", "t4_like", "blobs"])
    p.add_argument("--n", type=int)
    p.add_argument("--noise", type=float)
    p.add_argument("--noise-frac", type=float, help="t4_like background-noise fraction")
    p.add_argument("--jitter", type=float, help="t4_like band jitter")
    p.add_argument("--centers", help="blobs centers as 'x,y;x,y;...'")
    p.add_argument("--n-per", type=int, help="blobs points per center")
    p.add_argument("--cluster-std", type=float, help="blobs standard deviation")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["csv", "binary"], default="csv")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("cluster", help="cluster a point file")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["csv", "binary", "auto"], default="auto")
    p.add_argument("--algo", choices=["ddc", "denpeak", "dbscan", "kmeans"], default="ddc")
    p.add_argument("--ratio", type=float, default=0.1, help="ddc cutoff ratio")
    p.add_argument("--k", type=int, help="cluster count for denpeak/kmeans")
    p.add_argument("--dc", type=float, help="explicit cutoff distance for denpeak")
    p.add_argument("--auto-dc", action="store_true", help="denpeak 1%%-neighborhood cutoff")
    p.add_argument("--eps", type=float, help="dbscan radius")
    p.add_argument("--min-pts", type=int, help="dbscan min points (default 4)")
    p.add_argument("--auto-eps", action="store_true", help="dbscan median-4NN radius")
    p.add_argument("--seed", type=int, default=0, help="kmeans seed")
    p.add_argument("--max-iter", type=int, default=300, help="kmeans iteration cap")
    p.add_argument("--decision-out", help="also write the decision-graph CSV here")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("evaluate", help="score a result CSV against ground truth")
    p.add_argument("--input", required=True, help="result CSV")
    p.add_argument("--truth", help="labeled point file")
    p.add_argument("--output", help="also write the JSON report here")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("plot", help="render an SVG figure")
    p.add_argument("--input", required=True, help="result CSV or decision-graph CSV")
    p.add_argument("--plot", choices=["scatter", "decision"], default="scatter")
    p.add_argument("--no-border", action="store_true", help="do not blacken border points")
    p.add_argument("--no-centers", action="store_true", help="do not mark centers")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("sweep", help="run ddc across a ratio range")
    p.add_argument("--input", required=True, help="labeled point file")
    p.add_argument("--format", choices=["csv", "binary", "auto"], default="auto")
    p.add_argument("--sweep-from", type=float, default=0.05)
    p.add_argument("--sweep-to", type=float, default=0.16)
    p.add_argument("--sweep-step", type=float, default=0.01)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not hasattr(args, "func"):
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ddc: error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, DegenerateInputError, DegenerateGeometryError) as exc:
        print(f"ddc: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"ddc: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
