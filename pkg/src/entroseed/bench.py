"""Dataset benchmark: seed + fit every image with every method, average per method.

Manifest grammar (one ``key: value`` per line, ``#`` starts a comment)::

    dataset: cars-mini          # starts a new dataset block
    channels: 3                 # 1 converts color images to grayscale
    k: 3
    th: 220                     # optional, default half the intensity diameter
    representative: 0           # image index used for the elbow sweep
    elbow: 1 6                  # optional inclusive k range for that sweep
    method: random seeds=5
    method: shannon
    method: taneja alpha=2 beta=1
    image: car_01.png           # relative to the manifest's directory

``method`` and ``image`` repeat; a file may hold several dataset blocks.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import _backend
from .elbow import ElbowCurve, entropy_seeder, k_sweep
from .entropy import EntropySpec, validate
from .ingest import load_image, to_grayscale
from .kmeans import KMeansConfig, fit
from .seeding import SeedingConfig, entropy_seed, random_seed

CSV_HEADER = ["dataset", "initialization", "avg_nik", "init_time_s", "compute_time_s", "total_time_s", "avg_sse"]
DEFAULT_RANDOM_SEEDS = 5


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class Method:
    """An initializer: ``random`` with a seed count, or an entropy spec."""

    kind: str                      # "random" or "entropy"
    spec: EntropySpec | None = None
    seeds: int = DEFAULT_RANDOM_SEEDS

    @property
    def label(self) -> str:
        if self.kind == "random":
            return f"random({self.seeds} seeds)"
        return self.spec.label

    @classmethod
    def parse(cls, text: str) -> "Method":
        name, *opts = text.split()
        kv = {}
        for opt in opts:
            key, sep, val = opt.partition("=")
            if not sep:
                raise ManifestError(f"method option {opt!r} is not key=value")
            kv[key.strip().lower()] = val.strip()
        if name.lower() == "random":
            seeds = int(kv.pop("seeds", DEFAULT_RANDOM_SEEDS))
            if kv:
                raise ManifestError(f"unknown random options {sorted(kv)}")
            if seeds < 1:
                raise ManifestError("random seeds must be >= 1")
            return cls("random", seeds=seeds)
        alpha = kv.pop("alpha", None)
        beta = kv.pop("beta", None)
        if kv:
            raise ManifestError(f"unknown method options {sorted(kv)}")
        try:
            spec = EntropySpec(name, None if alpha is None else float(alpha),
                               None if beta is None else float(beta))
        except ValueError as exc:
            raise ManifestError(str(exc)) from exc
        problems = validate(spec)
        if problems:
            raise ManifestError("; ".join(problems))
        return cls("entropy", spec=spec)


@dataclass
class DatasetManifest:
    name: str
    image_paths: list[Path] = field(default_factory=list)
    channels_expected: int = 3
    k: int = 3
    th: float | None = None
    representative_image: int = 0
    methods: list[Method] = field(default_factory=list)
    elbow_range: tuple[int, int] | None = None

    def check(self):
        if not self.image_paths:
            raise ManifestError(f"dataset {self.name!r} lists no images")
        if self.channels_expected not in (1, 3):
            raise ManifestError(f"dataset {self.name!r}: channels must be 1 or 3")
        if self.k < 1:
            raise ManifestError(f"dataset {self.name!r}: k must be positive")
        if not self.methods:
            raise ManifestError(f"dataset {self.name!r} lists no methods")
        if not 0 <= self.representative_image < len(self.image_paths):
            raise ManifestError(f"dataset {self.name!r}: representative index out of range")


def parse_manifest(text: str, base_dir=".") -> list[DatasetManifest]:
    base = Path(base_dir)
    out: list[DatasetManifest] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ManifestError(f"line {lineno}: expected 'key: value'")
        key, value = key.strip().lower(), value.strip()
        if key == "dataset":
            out.append(DatasetManifest(name=value))
            continue
        if not out:
            raise ManifestError(f"line {lineno}: {key!r} before any 'dataset:' line")
        ds = out[-1]
        try:
            if key == "image":
                ds.image_paths.append(base / value)
            elif key == "method":
                ds.methods.append(Method.parse(value))
            elif key == "channels":
                ds.channels_expected = int(value)
            elif key == "k":
                ds.k = int(value)
            elif key == "th":
                ds.th = float(value)
            elif key == "representative":
                ds.representative_image = int(value)
            elif key == "elbow":
                lo, hi = (int(v) for v in value.split())
                ds.elbow_range = (lo, hi)
            else:
                raise ManifestError(f"unknown key {key!r}")
        except ManifestError as exc:
            raise ManifestError(f"line {lineno}: {exc}") from None
        except ValueError as exc:
            raise ManifestError(f"line {lineno}: bad value for {key!r} ({exc})") from None
    if not out:
        raise ManifestError("manifest defines no datasets")
    for ds in out:
        ds.check()
    return out


def load_manifest(path) -> list[DatasetManifest]:
    path = Path(path)
    return parse_manifest(path.read_text(encoding="utf-8"), base_dir=path.parent)


@dataclass
class BenchRow:
    dataset: str
    initialization: str
    avg_nik: float
    init_time: float
    compute_time: float
    total_time: float
    avg_sse: float
    runs: int = 0
    failures: int = 0
    notes: list[str] = field(default_factory=list)


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    elbow: dict[str, ElbowCurve] = field(default_factory=dict)


@dataclass
class _Run:
    nik: int = 0
    init_time: float = 0.0
    compute_time: float = 0.0
    sse: float = 0.0
    error: str | None = None


def _worker_count() -> int:
    raw = os.environ.get("ENTROSEED_THREADS", "").strip()
    n = int(raw) if raw else 0
    return n if n > 0 else (os.cpu_count() or 1)


def random_run_seed(image_index: int, draw: int) -> int:
    """Seed for the ``draw``-th random initialisation of image ``image_index``.

    Mixing in the image index keeps same-sized images from reusing the same
    pixel positions.
    """
    return 1000 * image_index + draw


def _one_run(grid, points, method: Method, seed_or_none, ds: DatasetManifest, kcfg):
    try:
        if method.kind == "random":
            init = random_seed(grid, ds.k, seed_or_none)
        else:
            init = entropy_seed(grid, SeedingConfig(k=ds.k, spec=method.spec, th=ds.th))
        res = fit(points, init, kcfg)
    except (ValueError, RuntimeError) as exc:
        return _Run(error=f"{type(exc).__name__}: {exc}")
    return _Run(nik=res.nik, init_time=init.init_time, compute_time=res.compute_time, sse=res.sse)


def _load_dataset(ds: DatasetManifest):
    grids = []
    for path in ds.image_paths:
        try:
            grid = load_image(path)
        except OSError as exc:
            raise OSError(f"{path}: {exc}") from exc
        if ds.channels_expected == 1:
            grid = to_grayscale(grid)
        elif grid.channels != 3:
            raise ManifestError(f"{path}: expected a color image, got {grid.channels} channel(s)")
        grids.append(grid)
    return grids


def _mean(xs):
    return math.fsum(xs) / len(xs) if xs else math.nan


def config_hash(manifests, kcfg: KMeansConfig) -> str:
    payload = {
        "datasets": [
            {
                "name": ds.name,
                "images": [str(p) for p in ds.image_paths],
                "channels": ds.channels_expected,
                "k": ds.k,
                "th": ds.th,
                "methods": [m.label for m in ds.methods],
                "elbow": ds.elbow_range,
            }
            for ds in manifests
        ],
        "kmeans": asdict(kcfg),
    }
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


def run_benchmark(manifests, kmeans_config: KMeansConfig | None = None, workers: int | None = None) -> BenchReport:
    """Seed and fit every image with every method; one row per (dataset, method).

    Per-run timings cover only the seeding call (init) and the fit call
    (compute); image decoding is excluded. Rows are ordered by dataset, then
    method, as listed in the manifest.
    """
    if isinstance(manifests, DatasetManifest):
        manifests = [manifests]
    kcfg = kmeans_config or KMeansConfig()
    workers = workers or _worker_count()
    report = BenchReport()
    failures = {}
    for ds in manifests:
        ds.check()
        grids = _load_dataset(ds)
        points = [g.pixels().astype(float) for g in grids]
        tasks = []
        for mi, method in enumerate(ds.methods):
            for ii, grid in enumerate(grids):
                seeds = [random_run_seed(ii, s) for s in range(method.seeds)] if method.kind == "random" else [None]
                for s in seeds:
                    tasks.append((mi, ii, grid, points[ii], method, s))
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                runs = list(pool.map(lambda t: _one_run(t[2], t[3], t[4], t[5], ds, kcfg), tasks))
        else:
            runs = [_one_run(t[2], t[3], t[4], t[5], ds, kcfg) for t in tasks]

        for mi, method in enumerate(ds.methods):
            mine = [(t, r) for t, r in zip(tasks, runs) if t[0] == mi]
            bad_images = sorted({t[1] for t, r in mine if r.error})
            notes = [f"{ds.image_paths[t[1]]}: {r.error}" for t, r in mine if r.error]
            ok = [r for t, r in mine if t[1] not in bad_images]
            init_t = _mean([r.init_time for r in ok])
            comp_t = _mean([r.compute_time for r in ok])
            row = BenchRow(
                dataset=ds.name,
                initialization=method.label,
                avg_nik=_mean([r.nik for r in ok]),
                init_time=init_t,
                compute_time=comp_t,
                total_time=init_t + comp_t,
                avg_sse=_mean([r.sse for r in ok]),
                runs=len(ok),
                failures=len(bad_images),
                notes=notes,
            )
            report.rows.append(row)
            if notes:
                failures[f"{ds.name}/{method.label}"] = notes

        if ds.elbow_range is not None:
            rep = grids[ds.representative_image]
            first_entropy = next((m.spec for m in ds.methods if m.kind == "entropy"), None)
            seeder = entropy_seeder(rep, first_entropy, ds.th)
            report.elbow[ds.name] = k_sweep(rep.pixels(), ds.elbow_range, seeder, kcfg)

    report.metadata = {
        "clock": "time.perf_counter (monotonic)",
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "config_hash": config_hash(manifests, kcfg),
        "backend": _backend.BACKEND,
        "workers": workers,
        "nondeterministic_fields": ["init_time_s", "compute_time_s", "total_time_s"],
        "failures": failures,
    }
    return report


# --- report serialisation --------------------------------------------------

def _fmt(x: float) -> str:
    return format(x, ".6g")


def _row_values(row: BenchRow):
    return [row.avg_nik, row.init_time, row.compute_time, row.total_time, row.avg_sse]


def _row_dict(row: BenchRow) -> dict:
    return {
        "dataset": row.dataset,
        "initialization": row.initialization,
        "avg_nik": row.avg_nik,
        "init_time_s": row.init_time,
        "compute_time_s": row.compute_time,
        "total_time_s": row.total_time,
        "avg_sse": row.avg_sse,
        "runs": row.runs,
        "failures": row.failures,
    }


def emit_report(report: BenchReport, format: str) -> bytes:
    """Serialise ``report`` as ``csv``, ``json`` or ``markdown``.

    csv and markdown print reals with 6 significant digits. json keeps full
    precision so that :func:`parse_report_json` restores the rows exactly.
    """
    fmt = format.lower()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in report.rows:
            w.writerow([row.dataset, row.initialization, *(_fmt(v) for v in _row_values(row))])
        return buf.getvalue().encode("utf-8")
    if fmt == "json":
        doc = {"rows": [_row_dict(r) for r in report.rows], "metadata": report.metadata}
        return (json.dumps(doc, indent=2, allow_nan=True) + "\n").encode("utf-8")
    if fmt in ("markdown", "md"):
        lines = [
            "| Dataset | Initialization | Avg. NIK | Init Time (s) | Compute Time (s) | Total Time (s) | SSE |",
            "|---|---|---:|---:|---:|---:|---:|",
        ]
        last = None
        for row in report.rows:
            name = row.dataset if row.dataset != last else ""
            last = row.dataset
            vals = " | ".join(_fmt(v) for v in _row_values(row))
            lines.append(f"| {name} | {row.initialization} | {vals} |")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format {format!r}")


def parse_report_json(data) -> BenchReport:
    doc = json.loads(data)
    rows = [
        BenchRow(
            dataset=r["dataset"],
            initialization=r["initialization"],
            avg_nik=r["avg_nik"],
            init_time=r["init_time_s"],
            compute_time=r["compute_time_s"],
            total_time=r["total_time_s"],
            avg_sse=r["avg_sse"],
            runs=r.get("runs", 0),
            failures=r.get("failures", 0),
        )
        for r in doc["rows"]
    ]
    return BenchReport(rows=rows, metadata=doc.get("metadata", {}))


def write_elbow_curves(report: BenchReport, out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, curve in report.elbow.items():
        for cost in ("inertia", "dispersion"):
            path = out_dir / f"{name}_elbow_{cost}.dat"
            path.write_text(curve.to_text(cost), encoding="utf-8")
            written.append(path)
    return written
