"""Command-line driver: build meshes, sweep covers, certify bounds.

Subcommands:
  build        write HYPMESH files for the base surface and each cover
  sweep        one bound report per cover degree, as CSV + JSON
  converge     refinement study of the low spectrum on the base surface
  corollary    witness-length report derived from a previous sweep
  oracle-check cross-validate the sparse eigensolver and mesh invariants

Runs are deterministic for a fixed config and seed; JSON output is
byte-identical across reruns except for the timestamp field, and every
table row embeds the config hash so results from different configs
cannot be aggregated silently.  Exit status is 0 only when every
inequality the command asserts actually holds (2 for usage or I/O
errors).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
from dataclasses import dataclass, fields, replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
from scipy.sparse import csr_matrix

from . import __version__
from .bound import BoundError, bound_report
from .cover import cyclic_cover
from .eigen import EigensolverError, dense_oracle, solve_smallest
from .fem import SparsePencil, assemble, refine
from .surface import FenchelNielsenSpec, MeshError, build_surface, write_hypmesh

__all__ = ["ConfigError", "RunConfig", "config_hash", "load_config", "main"]

MASS_CHOICES = ("consistent", "lumped")
TESTFN_CHOICES = ("two-sided", "one-sided")

CSV_DOC = """\
CSV columns (JSON carries a superset of every table):
  sweep.csv:     N,d,dof,lambda_0..lambda_{n+1},h,eta,t,bound,certificate,
                 bound_holds,certificate_holds,chain_assumptions_hold,failed,config_hash
  converge.csv:  level,dof,area,lambda_0..lambda_4,config_hash
  corollary.csv: N,d,genus,witness_length,lambda_n,ratio,config_hash

Config file: one `key = value` per line, `#` comments.  Keys: cuffs,
twists, m (three comma-separated cuff lengths, three integer twists,
cuff subdivision) plus n, N, refine, tol, out, seed, mass, testfn with
the same meaning as the flags.  Flags override file values.
"""


class ConfigError(ValueError):
    """Invalid run configuration."""


@dataclass(frozen=True)
class RunConfig:
    """One reproducible run: geometry, cover family, solver knobs."""

    cuffs: tuple = (2.0, 2.0, 2.0)
    twists: tuple = (0, 0, 0)
    m: int = 8
    refine: int = 2
    n: int = 2
    N: tuple = (1, 2, 4, 8)
    tol: float = 1e-9
    out: str = "runs"
    seed: int = 0
    mass: str = "consistent"
    testfn: str = "two-sided"

    def __post_init__(self):
        if len(self.cuffs) != 3 or not all(c > 0 and math.isfinite(c) for c in self.cuffs):
            raise ConfigError("cuffs must be three positive finite lengths")
        if len(self.twists) != 3 or not all(isinstance(t, int) for t in self.twists):
            raise ConfigError("twists must be three integers")
        if not (isinstance(self.m, int) and self.m >= 4 and self.m % 2 == 0):
            raise ConfigError("m must be an even integer >= 4")
        if not (isinstance(self.refine, int) and self.refine >= 0):
            raise ConfigError("refine must be a nonnegative integer")
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ConfigError("n must be an integer >= 1")
        if not self.N or not all(isinstance(v, int) and v >= 1 for v in self.N):
            raise ConfigError("N must be a nonempty list of integers >= 1")
        if not (self.tol > 0):
            raise ConfigError("tol must be positive")
        if not isinstance(self.seed, int):
            raise ConfigError("seed must be an integer")
        if self.mass not in MASS_CHOICES:
            raise ConfigError(f"mass must be one of {MASS_CHOICES}")
        if self.testfn not in TESTFN_CHOICES:
            raise ConfigError(f"testfn must be one of {TESTFN_CHOICES}")

    def as_dict(self) -> dict:
        return {f.name: (list(v) if isinstance(v := getattr(self, f.name), tuple) else v)
                for f in fields(self)}


def config_hash(config: RunConfig) -> str:
    """Hash of everything that affects the numbers (output path excluded)."""
    doc = config.as_dict()
    del doc["out"]
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _parse_number_list(text: str, count=None, kind=float):
    try:
        items = [kind(p.strip()) for p in text.split(",") if p.strip()]
    except ValueError as e:
        raise ConfigError(f"cannot parse {text!r} as {kind.__name__} list: {e}") from e
    if count is not None and len(items) != count:
        raise ConfigError(f"expected {count} comma-separated values, got {text!r}")
    return items


def parse_config_file(path) -> dict:
    """Read `key = value` lines into a raw-string dict."""
    raw = {}
    known = {"cuffs", "twists", "m", "n", "N", "refine", "tol", "out", "seed",
             "mass", "testfn"}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected `key = value`, got {line!r}")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key not in known:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        raw[key] = value
    return raw


def _config_from_raw(raw: dict) -> RunConfig:
    kwargs = {}
    if "cuffs" in raw:
        kwargs["cuffs"] = tuple(_parse_number_list(raw["cuffs"], 3, float))
    if "twists" in raw:
        kwargs["twists"] = tuple(_parse_number_list(raw["twists"], 3, int))
    for key, kind in (("m", int), ("n", int), ("refine", int), ("seed", int),
                      ("tol", float)):
        if key in raw:
            try:
                kwargs[key] = kind(raw[key])
            except ValueError as e:
                raise ConfigError(f"cannot parse {key}={raw[key]!r}: {e}") from e
    if "N" in raw:
        kwargs["N"] = tuple(_parse_number_list(raw["N"], None, int))
    for key in ("out", "mass", "testfn"):
        if key in raw:
            kwargs[key] = raw[key]
    return RunConfig(**kwargs)


def load_config(args) -> RunConfig:
    """Defaults, then config file, then flags; flags win."""
    raw = parse_config_file(args.config) if args.config else {}
    config = _config_from_raw(raw)
    overrides = {}
    if args.n is not None:
        overrides["n"] = args.n
    if args.N is not None:
        overrides["N"] = tuple(_parse_number_list(args.N, None, int))
    if args.refine is not None:
        overrides["refine"] = args.refine
    if args.tol is not None:
        overrides["tol"] = args.tol
    if args.out is not None:
        overrides["out"] = args.out
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.mass is not None:
        overrides["mass"] = args.mass
    if args.testfn is not None:
        overrides["testfn"] = args.testfn
    if overrides:
        config = replace(config, **overrides)
    return config


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat()


def _write_json(path: Path, doc: dict) -> None:
    path.write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {path}")


def _write_csv(path: Path, header, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    path.write_text(buf.getvalue())
    print(f"wrote {path}")


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return value


def _base_pipeline(config: RunConfig):
    """Base surface refined `config.refine` times, with the cut curve carried."""
    spec = FenchelNielsenSpec(cuff_lengths=config.cuffs, twists=config.twists,
                              segments=config.m)
    surface, gamma = build_surface(spec)
    for _ in range(config.refine):
        surface, (gamma,) = refine(surface, [gamma])
    return surface, gamma


def _sweep_rows(config: RunConfig):
    """One row per cover degree; solver failures are recorded, not fatal."""
    base, gamma = _base_pipeline(config)
    chash = config_hash(config)
    rows = []
    for N in sorted(set(config.N)):
        cover = cyclic_cover(base, gamma, n=config.n, N=N)
        pencil = assemble(cover.surface, mass=config.mass)
        row = {"N": N, "d": cover.degree, "dof": pencil.dof, "failed": False,
               "config_hash": chash}
        try:
            spectrum = solve_smallest(pencil, count=config.n + 2, tol=config.tol,
                                      seed=config.seed)
            report = bound_report(cover, pencil, spectrum, variant=config.testfn)
        except (EigensolverError, BoundError) as e:
            row["failed"] = True
            row["error"] = str(e)
            rows.append(row)
            continue
        row["lambda"] = [float(v) for v in spectrum.values]
        row.update(h=report.h, eta=report.eta, t=report.t, bound=report.bound,
                   certificate=report.certificate,
                   bound_holds=report.bound_holds,
                   certificate_holds=report.certificate_holds,
                   chain_assumptions_hold=report.chain_assumptions_hold,
                   report=report.as_dict())
        rows.append(row)
    return base, rows


def cmd_build(config: RunConfig) -> int:
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    base, gamma = _base_pipeline(config)
    entries = []

    def record(path: Path, surface):
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        entries.append({"file": path.name, "sha256": digest,
                        "faces": surface.num_faces,
                        "vertices": surface.num_vertices,
                        "genus": surface.genus,
                        "area": surface.total_area()})
        print(f"wrote {path} (genus {surface.genus}, {surface.num_faces} faces)")

    base_path = out / "base.hypmesh"
    write_hypmesh(base_path, base, curves={"gamma": gamma})
    record(base_path, base)
    for N in sorted(set(config.N)):
        cover = cyclic_cover(base, gamma, n=config.n, N=N)
        path = out / f"cover_n{config.n}_N{N}.hypmesh"
        write_hypmesh(path, cover.surface, cover=cover)
        record(path, cover.surface)

    _write_json(out / "build.json", {
        "timestamp": _timestamp(),
        "version": __version__,
        "config_hash": config_hash(config),
        "config": config.as_dict(),
        "base_genus": base.genus,
        "files": entries,
    })
    return 0


def cmd_sweep(config: RunConfig) -> int:
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    base, rows = _sweep_rows(config)

    ok_rows = [r for r in rows if not r["failed"]]
    lam_n = [r["lambda"][config.n] for r in ok_rows]
    monotone = all(b <= a * 1.02 for a, b in zip(lam_n, lam_n[1:]))
    bounds_hold = all(r["bound_holds"] for r in ok_rows)
    all_ok = not any(r["failed"] for r in rows)
    asserted = {"lambda_n_non_increasing": monotone,
                "lambda_n_below_bound_each_row": bounds_hold,
                "all_rows_succeeded": all_ok}

    lam_cols = [f"lambda_{k}" for k in range(config.n + 2)]
    header = (["N", "d", "dof"] + lam_cols +
              ["h", "eta", "t", "bound", "certificate", "bound_holds",
               "certificate_holds", "chain_assumptions_hold", "failed", "config_hash"])
    csv_rows = []
    for r in rows:
        lam = r.get("lambda", [None] * (config.n + 2))
        csv_rows.append([_cell(r["N"]), _cell(r["d"]), _cell(r["dof"])] +
                        [_cell(v) for v in lam] +
                        [_cell(r.get(key)) for key in
                         ("h", "eta", "t", "bound", "certificate", "bound_holds",
                          "certificate_holds", "chain_assumptions_hold")] +
                        [_cell(r["failed"]), r["config_hash"]])
    _write_csv(out / "sweep.csv", header, csv_rows)
    _write_json(out / "sweep.json", {
        "timestamp": _timestamp(),
        "version": __version__,
        "config_hash": config_hash(config),
        "config": config.as_dict(),
        "base_genus": base.genus,
        "rows": rows,
        "asserted": asserted,
    })

    for r in rows:
        if r["failed"]:
            print(f"N={r['N']:>3}  FAILED: {r['error']}")
        else:
            print(f"N={r['N']:>3} d={r['d']:>3} dof={r['dof']:>7} "
                  f"lambda_{config.n}={r['lambda'][config.n]:.8f} "
                  f"bound={r['bound']:.8f} cert={r['certificate']:.8f} "
                  f"holds={str(r['bound_holds']).lower()}")
    print("asserted:", json.dumps(asserted))
    return 0 if all(asserted.values()) else 1


def cmd_converge(config: RunConfig) -> int:
    if config.refine < 2:
        raise ConfigError("converge needs refine >= 2 (three mesh levels or more)")
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    chash = config_hash(config)

    spec = FenchelNielsenSpec(cuff_lengths=config.cuffs, twists=config.twists,
                              segments=config.m)
    surface, _ = build_surface(spec)
    count = 5
    rows = []
    area_target = -2.0 * math.pi * surface.euler_characteristic()
    areas_ok = True
    kernel_ok = True
    for level in range(config.refine + 1):
        if level:
            surface, _ = refine(surface)
        pencil = assemble(surface, mass=config.mass)
        spectrum = solve_smallest(pencil, count=count, tol=config.tol,
                                  seed=config.seed)
        area = float(surface.total_area())
        scale = pencil.stiffness.diagonal().sum() / pencil.dof
        areas_ok &= bool(abs(area - area_target) <= 1e-8)
        kernel_ok &= bool(abs(spectrum.values[0]) <= 1e-8 * scale)
        rows.append({"level": level, "dof": pencil.dof, "area": area,
                     "lambda": [float(v) for v in spectrum.values],
                     "config_hash": chash})

    ratios = {}
    flags = []
    for k in range(1, count):
        ratios[k] = []
        for j in range(1, len(rows) - 1):
            num = rows[j - 1]["lambda"][k] - rows[j]["lambda"][k]
            den = rows[j]["lambda"][k] - rows[j + 1]["lambda"][k]
            ratio = num / den if den > 0 else None
            ratios[k].append(ratio)
            in_range = ratio is not None and 2.5 <= ratio <= 6.0
            flags.append({"k": k, "levels": [j - 1, j, j + 1],
                          "ratio": ratio, "in_range": in_range})

    asserted = {"area_matches_curvature_total": areas_ok,
                "constant_mode_is_kernel": kernel_ok}
    header = ["level", "dof", "area"] + [f"lambda_{k}" for k in range(count)] + ["config_hash"]
    _write_csv(out / "converge.csv", header,
               [[_cell(r["level"]), _cell(r["dof"]), _cell(r["area"])] +
                [_cell(v) for v in r["lambda"]] + [r["config_hash"]] for r in rows])
    _write_json(out / "converge.json", {
        "timestamp": _timestamp(),
        "version": __version__,
        "config_hash": chash,
        "config": config.as_dict(),
        "rows": rows,
        "ratios": ratios,
        "ratio_flags": flags,
        "asserted": asserted,
    })
    for r in rows:
        lams = " ".join(f"{v:.8f}" for v in r["lambda"])
        print(f"level={r['level']} dof={r['dof']:>6} area={r['area']:.10f} lambda: {lams}")
    for f in flags:
        tag = "ok" if f["in_range"] else "OUT OF RANGE"
        print(f"ratio lambda_{f['k']} levels {f['levels']}: {f['ratio']}  [{tag}]")
    print("asserted:", json.dumps(asserted))
    return 0 if all(asserted.values()) else 1


def cmd_corollary(config: RunConfig) -> int:
    out = Path(config.out)
    sweep_path = out / "sweep.json"
    if not sweep_path.exists():
        raise ConfigError(f"{sweep_path} not found; run `sweep` first")
    sweep = json.loads(sweep_path.read_text())

    chash = config_hash(config)
    hashes = {r["config_hash"] for r in sweep["rows"]} | {sweep["config_hash"]}
    if hashes != {chash}:
        raise ConfigError(
            f"sweep results at {sweep_path} were produced under config hash(es) "
            f"{sorted(hashes)}, current config hashes to {chash}; refusing to mix")

    base_genus = sweep["base_genus"]
    rows = []
    for r in sweep["rows"]:
        if r["failed"]:
            rows.append({"N": r["N"], "failed": True, "config_hash": chash})
            continue
        report = r["report"]
        witness = (report["n"] + 1) * report["curve_length"]
        lam = report["lambda_n"]
        rows.append({"N": r["N"], "d": r["d"],
                     "genus": 1 + r["d"] * (base_genus - 1),
                     "witness_length": witness,
                     "lambda_n": lam,
                     "ratio": lam / witness,
                     "failed": False,
                     "config_hash": chash})

    ok_rows = [r for r in rows if not r["failed"]]
    ratios = [r["ratio"] for r in ok_rows]
    decreasing = all(b < a for a, b in zip(ratios, ratios[1:]))
    asserted = {"ratio_strictly_decreasing": decreasing,
                "all_rows_succeeded": all(not r["failed"] for r in rows)}
    note = ("witness_length is the total length of the constructed separating "
            "multicurve, an UPPER bound for the minimal total length of any "
            "multicurve cutting the cover into n+1 pieces (the minimum itself "
            "is not computed).  Along the family the witness length is fixed "
            "while lambda_n collapses and the genus grows linearly, so any "
            "lower bound for lambda_n in terms of that minimal length divided "
            "by area must carry a genus-dependent constant.")

    header = ["N", "d", "genus", "witness_length", "lambda_n", "ratio", "config_hash"]
    _write_csv(out / "corollary.csv", header,
               [[_cell(r.get(k)) for k in header[:-1]] + [r["config_hash"]]
                for r in rows])
    _write_json(out / "corollary.json", {
        "timestamp": _timestamp(),
        "version": __version__,
        "config_hash": chash,
        "config": config.as_dict(),
        "note": note,
        "rows": rows,
        "asserted": asserted,
    })
    for r in ok_rows:
        print(f"N={r['N']:>3} d={r['d']:>3} genus={r['genus']:>4} "
              f"witness={r['witness_length']:.6f} lambda_n={r['lambda_n']:.8f} "
              f"ratio={r['ratio']:.8f}")
    print("asserted:", json.dumps(asserted))
    return 0 if all(asserted.values()) else 1


def _random_pencil(rng, size: int, singular: bool):
    rows = size - 1 if singular else size
    G = rng.standard_normal((rows, size))
    K = csr_matrix(G.T @ G)
    E = rng.standard_normal((size, size)) / math.sqrt(size)
    B = csr_matrix(0.5 * np.eye(size) + E.T @ E)
    return SparsePencil(stiffness=K, mass=B)


def cmd_oracle_check(config: RunConfig) -> int:
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    checks = []

    def check(name, passed, detail):
        checks.append({"name": name, "passed": bool(passed), "detail": detail})
        print(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")

    rng = np.random.default_rng(config.seed)
    worst = 0.0
    for trial in range(20):
        size = int(rng.integers(24, 97))
        pencil = _random_pencil(rng, size, singular=trial % 2 == 0)
        sparse = solve_smallest(pencil, count=6, tol=config.tol, seed=config.seed)
        dense = dense_oracle(pencil, count=6)
        diff = float(np.max(np.abs(sparse.values - dense.values) /
                            np.maximum(1.0, np.abs(dense.values))))
        worst = max(worst, diff)
    check("random_pencils_sparse_vs_dense", worst <= 1e-8,
          f"20 pencils, worst relative eigenvalue gap {worst:.3e} (tol 1e-8)")

    spec = FenchelNielsenSpec(cuff_lengths=config.cuffs, twists=config.twists,
                              segments=config.m)
    base0, gamma0 = build_surface(spec)
    base1, (gamma1,) = refine(base0, [gamma0])
    cover0 = cyclic_cover(base0, gamma0, n=config.n, N=1)
    worst = 0.0
    meshes = [("base_level0", base0), ("base_level1", base1),
              ("cover_level0", cover0.surface)]
    for name, surface in meshes:
        pencil = assemble(surface, mass=config.mass)
        sparse = solve_smallest(pencil, count=6, tol=config.tol, seed=config.seed)
        dense = dense_oracle(pencil, count=6)
        diff = float(np.max(np.abs(sparse.values - dense.values) /
                            np.maximum(1.0, np.abs(dense.values))))
        worst = max(worst, diff)
    check("pipeline_meshes_sparse_vs_dense", worst <= 1e-8,
          f"{len(meshes)} meshes, worst relative eigenvalue gap {worst:.3e} (tol 1e-8)")

    dev = float(np.abs(base1.cone_angles() - 2.0 * math.pi).max())
    check("cone_angles_flat", dev <= 1e-8, f"max deviation from 2*pi: {dev:.3e}")

    gb = abs(base1.total_area() + 2.0 * math.pi * base1.euler_characteristic())
    check("area_matches_curvature_total", gb <= 1e-8,
          f"|area - (-2*pi*chi)| = {gb:.3e}")

    chi_ok = (cover0.surface.euler_characteristic()
              == cover0.degree * base0.euler_characteristic())
    check("euler_characteristic_multiplicative", chi_ok,
          f"chi(cover)={cover0.surface.euler_characteristic()} "
          f"= {cover0.degree} * {base0.euler_characteristic()}")

    pencil = assemble(cover0.surface, mass=config.mass)
    perm = cover0.deck_vertex
    K = pencil.stiffness.tocsr()
    B = pencil.mass.tocsr()
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    equiv = True
    for mat in (K, B):
        moved = mat[inv][:, inv].tocsr()
        moved.sort_indices()
        ref = mat.copy()
        ref.sort_indices()
        equiv &= (np.array_equal(moved.indptr, ref.indptr)
                  and np.array_equal(moved.indices, ref.indices)
                  and moved.data.tobytes() == ref.data.tobytes())
    check("deck_relabeling_preserves_pencil_bits", equiv,
          "P^T K P == K and P^T B P == B bitwise" if equiv else "bit mismatch")

    base, gamma = _base_pipeline(config)
    area = base.total_area()
    l = gamma.length
    h_products = [(config.n + 1) * l / (N * area) * N for N in (1, 2, 4)]
    h_ok = max(h_products) - min(h_products) <= 1e-15 * max(h_products)
    check("h_scales_inversely_with_N", h_ok,
          f"h*N constant to {max(h_products) - min(h_products):.3e}")

    _write_json(out / "oracle_check.json", {
        "timestamp": _timestamp(),
        "version": __version__,
        "config_hash": config_hash(config),
        "config": config.as_dict(),
        "checks": checks,
    })
    return 0 if all(c["passed"] for c in checks) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypspectra",
        description="Spectral bounds for cyclic covers of a genus-2 hyperbolic surface.",
        epilog=CSV_DOC,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
            ("build", "write HYPMESH files for the base surface and covers"),
            ("sweep", "bound report per cover degree (CSV + JSON)"),
            ("converge", "refinement study on the base surface"),
            ("corollary", "witness report from an existing sweep"),
            ("oracle-check", "cross-validate the eigensolver and mesh invariants")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", metavar="PATH", help="key = value config file")
        p.add_argument("--n", type=int, help="number of designated lifts minus one")
        p.add_argument("--N", metavar="LIST", help="comma-separated cover multipliers")
        p.add_argument("--refine", type=int, help="refinement levels")
        p.add_argument("--tol", type=float, help="eigensolver tolerance")
        p.add_argument("--out", metavar="DIR", help="output directory")
        p.add_argument("--seed", type=int, help="solver starting-vector seed")
        p.add_argument("--mass", choices=MASS_CHOICES, help="mass matrix variant")
        p.add_argument("--testfn", choices=TESTFN_CHOICES,
                       help="test-function ramp variant")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args)
        handler = {"build": cmd_build, "sweep": cmd_sweep, "converge": cmd_converge,
                   "corollary": cmd_corollary, "oracle-check": cmd_oracle_check}
        return handler[args.command](config)
    except (ConfigError, MeshError, BoundError, EigensolverError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e.filename or ''}: {e.strerror or e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
