"""Command-line interface.

Exit codes: 0 success, 1 domain error (parameter validation, seed
exhaustion, empty cluster), 2 usage error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .bench import ManifestError, emit_report, load_manifest, run_benchmark, write_elbow_curves
from .elbow import detect_elbow, entropy_seeder, k_sweep, second_differences
from .entropy import MEASURES, EntropyDomainError, EntropySpec, entropy, validate
from .ingest import load_image, to_grayscale
from .kmeans import DROP_ERROR, RESEED_FARTHEST, EmptyClusterError, KMeansConfig, fit
from .seeding import ADAPTIVE, STRICT, SeedExhaustionError, SeedingConfig, entropy_seed

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class DomainError(Exception):
    pass


def _measure(text):
    try:
        return EntropySpec(text).measure
    except EntropyDomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _spec_from(args) -> EntropySpec:
    spec = EntropySpec(args.measure, args.alpha, args.beta)
    problems = validate(spec)
    if problems:
        raise DomainError("\n".join(problems))
    return spec


def _add_spec_flags(p, required_measure=False):
    p.add_argument("--measure", type=_measure, default=None if required_measure else "shannon",
                   required=required_measure,
                   help=f"entropy measure, case-insensitive: {', '.join(MEASURES)}"
                        + ("" if required_measure else " (default: %(default)s)"))
    p.add_argument("--alpha", type=float, default=None,
                   help="alpha parameter (default: 2; unused by shannon)")
    p.add_argument("--beta", type=float, default=None,
                   help="beta parameter (default: kapur 2, sharma-mittal 2, taneja 1, "
                        "aczel-daroczy 0.5; unused by shannon and havrda-charvat)")


def _add_image_flags(p):
    p.add_argument("--image", required=True, help="PNG, JPEG, PPM or PGM file")
    p.add_argument("--gray", action="store_true", help="convert to grayscale before analysis")


def _add_seed_flags(p):
    p.add_argument("--k", type=int, required=True, help="number of centroids")
    p.add_argument("--th", type=float, default=None,
                   help="seed spacing threshold in intensity units "
                        "(default: half the intensity-space diameter, ~220.8 for RGB)")
    p.add_argument("--strict", action="store_true",
                   help="fail instead of halving th when the pixel list runs out")


def _add_kmeans_flags(p):
    p.add_argument("--max-iter", type=int, default=300, help="Lloyd round cap (default: %(default)s)")
    p.add_argument("--tol", type=float, default=1e-4,
                   help="centroid-shift convergence threshold (default: %(default)s)")
    p.add_argument("--empty-cluster", choices=[RESEED_FARTHEST, DROP_ERROR], default=RESEED_FARTHEST,
                   help="empty-cluster handling (default: %(default)s)")


def _add_out(p):
    p.add_argument("--out", default=None, help="write the output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entroseed",
                                     description="Entropy-based centroid seeding for k-means on images.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("seed", help="compute initial centroids for an image")
    _add_image_flags(p)
    _add_spec_flags(p)
    _add_seed_flags(p)
    _add_out(p)

    p = sub.add_parser("cluster", help="seed, then run k-means")
    _add_image_flags(p)
    _add_spec_flags(p)
    _add_seed_flags(p)
    _add_kmeans_flags(p)
    _add_out(p)

    p = sub.add_parser("elbow", help="sweep k and suggest the elbow")
    _add_image_flags(p)
    _add_spec_flags(p)
    p.add_argument("--k-min", type=int, default=1, help="smallest k (default: %(default)s)")
    p.add_argument("--k-max", type=int, default=8, help="largest k (default: %(default)s)")
    p.add_argument("--th", type=float, default=None, help="seed spacing threshold (default: as for seed)")
    _add_kmeans_flags(p)
    _add_out(p)

    p = sub.add_parser("bench", help="run the dataset benchmark from a manifest")
    p.add_argument("--manifest", required=True, help="manifest file")
    p.add_argument("--format", choices=["csv", "json", "markdown"], default="markdown",
                   help="report format (default: %(default)s)")
    p.add_argument("--elbow-dir", default=None, help="directory for elbow curve data files")
    _add_kmeans_flags(p)
    _add_out(p)

    p = sub.add_parser("entropy", help="evaluate a measure on a probability vector")
    p.add_argument("--probs", required=True, help='comma-separated probabilities, e.g. "0.5,0.5"')
    _add_spec_flags(p, required_measure=True)
    _add_out(p)
    return parser


def _load(args):
    grid = load_image(args.image)
    return to_grayscale(grid) if args.gray else grid


def _seed(args):
    grid = _load(args)
    cfg = SeedingConfig(k=args.k, spec=_spec_from(args), th=args.th,
                        exhaustion_policy=STRICT if args.strict else ADAPTIVE)
    return grid, entropy_seed(grid, cfg)


def _fmt_vec(v):
    return " ".join(f"{x:g}" for x in v)


def _centroid_lines(cs):
    lines = [
        f"method: {cs.method_tag}",
        f"k: {len(cs)}",
        f"effective_th: {cs.effective_th:g}",
        f"min_spacing: {cs.min_spacing():g}",
        f"init_time_s: {cs.init_time:.6g}",
        "centroids:",
    ]
    lines += [f"  {i}: {_fmt_vec(p)}" for i, p in enumerate(cs.points)]
    return lines


def _kcfg(args):
    return KMeansConfig(max_iter=args.max_iter, tol=args.tol, empty_cluster_policy=args.empty_cluster)


def cmd_seed(args):
    _, cs = _seed(args)
    return "\n".join(_centroid_lines(cs)) + "\n"


def cmd_cluster(args):
    grid, cs = _seed(args)
    res = fit(grid.pixels(), cs, _kcfg(args))
    sizes = np.bincount(res.labels, minlength=res.k)
    lines = ["[seeding]"] + _centroid_lines(cs) + [
        "[kmeans]",
        f"nik: {res.nik}",
        f"converged: {str(res.converged).lower()}",
        f"sse: {res.sse:.10g}",
        f"compute_time_s: {res.compute_time:.6g}",
        f"total_time_s: {cs.init_time + res.compute_time:.6g}",
        "centroids:",
    ]
    lines += [f"  {i}: {_fmt_vec(np.round(c, 4))}  (n={sizes[i]})" for i, c in enumerate(res.centroids)]
    return "\n".join(lines) + "\n"


def cmd_elbow(args):
    grid = _load(args)
    spec = _spec_from(args)
    curve = k_sweep(grid.pixels(), (args.k_min, args.k_max), entropy_seeder(grid, spec, args.th), _kcfg(args))
    d2 = second_differences(curve) if len(curve.entries) >= 3 else {}
    lines = [f"# seeding: {curve.seeding_used}", "# k inertia dispersion second_difference"]
    for e in curve.entries:
        extra = f" {d2[e.k]:.10g}" if e.k in d2 else " -"
        lines.append(f"{e.k} {e.inertia:.10g} {e.dispersion:.10g}{extra}")
    suggested = detect_elbow(curve) if len(curve.entries) >= 3 else None
    lines.append(f"suggested_k: {suggested if suggested is not None else 'none'}")
    return "\n".join(lines) + "\n"


def cmd_bench(args):
    manifests = load_manifest(args.manifest)
    report = run_benchmark(manifests, _kcfg(args))
    if args.elbow_dir:
        write_elbow_curves(report, args.elbow_dir)
    return emit_report(report, args.format).decode("utf-8")


def cmd_entropy(args):
    try:
        probs = [float(x) for x in args.probs.split(",") if x.strip()]
    except ValueError:
        raise DomainError(f"could not parse probabilities {args.probs!r}") from None
    value = entropy(probs, _spec_from(args))
    return f"{value!r}\n"


COMMANDS = {"seed": cmd_seed, "cluster": cmd_cluster, "elbow": cmd_elbow,
            "bench": cmd_bench, "entropy": cmd_entropy}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        text = COMMANDS[args.command](args)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            stdout.write(text)
        return EXIT_OK
    except (DomainError, EntropyDomainError, SeedExhaustionError, EmptyClusterError, ManifestError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
