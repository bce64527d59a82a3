"""Command-line surface: family specs, analysis subcommands, figure data.

Conventions shared by all commands:
  * complex numbers are serialized as [re, im] pairs, never strings,
  * CSV floats use the shortest round-trip decimal form (Python repr),
  * every output file embeds a run manifest (command, resolved config,
    seed, version, timestamp); set SOURCE_DATE_EPOCH for a fixed timestamp
    and byte-identical reruns,
  * exit codes: 0 success, 1 input error, 2 negative decision,
    3 degeneracy abort.

Family spec files are JSON objects.  Builtin kinds::

    {"kind": "builtin:example1", "bounds": [[0.01, 1.2], [0, 0], [0, 2.4]]}

Custom kinds declare an iso-spectral family H(lam) = U(lam) H_base U+ with
U(lam) = exp(i sum_j lam_j G_j)::

    {"kind": "custom",
     "base_hamiltonian": [[[1,0],[0,0]], [[0,0],[-1,0]]],
     "generators": [...one D x D matrix of [re,im] pairs per parameter...],
     "bounds": [[lo, hi], ...],
     "split": [dim_a, dim_b],
     "base_point": [0, 0],
     "cluster_tol": 1e-8}
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys

import numpy as np

from . import entanglement, linalg
from .errors import AdiapowerError, DegeneracyError, NotHermitianError
from .families import (
    EXAMPLE0_BOUNDS,
    EXAMPLE1_BOUNDS,
    EXAMPLE2_BOUNDS,
    Example1Params,
    example0_family,
    example1_family,
    example2_family,
)
from .linalg import BipartiteSplit
from .power import (
    DEFAULT_CLUSTER_TOL,
    HamiltonianFamily,
    IsoSpectralForm,
    adiabatic_entangling_power,
    entropy_sweep,
    family_unitaries,
    grid_points,
)
from .simulate import (
    ParameterPath,
    circle_loop,
    propagate,
    synthesize_controlled_phase,
)
from .spectral import (
    build_connecting_family,
    is_adiabatically_connectible,
    min_gap_along,
)

VERSION = "0.1.0"
DEFAULT_JOBS_ENV = "ADIAPOWER_JOBS"


# ---------------------------------------------------------------------------
# Serialization helpers.

def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        t = datetime.datetime.fromtimestamp(int(epoch), datetime.timezone.utc)
    else:
        t = datetime.datetime.now(datetime.timezone.utc)
    return t.replace(microsecond=0).isoformat()


def make_manifest(command: str, config: dict, seed: int) -> dict:
    return {
        "command": command,
        "config": config,
        "seed": seed,
        "version": VERSION,
        "timestamp": _timestamp(),
    }


def fmt(x) -> str:
    """Shortest round-trip decimal form of a float."""
    return repr(float(x))


def complex_to_pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def matrix_to_pairs(m) -> list:
    return [[complex_to_pair(z) for z in row] for row in np.asarray(m, dtype=complex)]


def vector_to_pairs(v) -> list:
    return [complex_to_pair(z) for z in np.asarray(v, dtype=complex)]


def parse_complex_matrix(nested) -> np.ndarray:
    """Nested lists of [re, im] pairs -> complex ndarray."""
    arr = np.asarray(nested, dtype=float)
    if arr.ndim != 3 or arr.shape[-1] != 2:
        raise ValueError("matrix entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def parse_state(text: str, split: BipartiteSplit) -> np.ndarray:
    """Input state: computational-basis label (e.g. '01') or JSON amplitude list."""
    text = text.strip()
    if text.startswith("["):
        arr = np.asarray(json.loads(text), dtype=float)
        if arr.ndim != 2 or arr.shape != (split.dim, 2):
            raise ValueError(f"amplitude list must be {split.dim} [re, im] pairs")
        return linalg.normalize(arr[:, 0] + 1j * arr[:, 1])
    if len(text) == 2 and text.isdigit():
        i, j = int(text[0]), int(text[1])
        if i >= split.dim_a or j >= split.dim_b:
            raise ValueError(f"basis label {text!r} out of range for split {split}")
        return linalg.basis_state(i * split.dim_b + j, split.dim)
    if text.isdigit():
        return linalg.basis_state(int(text), split.dim)
    raise ValueError(f"cannot parse input state {text!r}")


def load_hermitian(path: str) -> np.ndarray:
    with open(path) as f:
        data = json.load(f)
    if isinstance(data, dict):
        data = data["matrix"]
    h = parse_complex_matrix(data)
    if not linalg.is_hermitian(h):
        raise NotHermitianError(f"{path}: matrix is not Hermitian")
    return h


# ---------------------------------------------------------------------------
# Family spec ingestion.

BUILTIN_BOUNDS = {
    "builtin:example0": EXAMPLE0_BOUNDS,
    "builtin:example1": EXAMPLE1_BOUNDS,
    "builtin:example2": EXAMPLE2_BOUNDS,
}


def load_family_spec(path: str):
    """Read a family spec file -> (HamiltonianFamily, resolved config dict)."""
    with open(path) as f:
        spec = json.load(f)
    kind = spec.get("kind")
    if kind in BUILTIN_BOUNDS:
        bounds = np.asarray(spec.get("bounds", BUILTIN_BOUNDS[kind]), dtype=float)
        if kind == "builtin:example0":
            fam = example0_family(bounds)
        elif kind == "builtin:example1":
            p = Example1Params(spec.get("lam1", 1.0), spec.get("lam2", 0.5))
            fam = example1_family(p, bounds)
        else:
            fam = example2_family(spec.get("lam1_fixed", 1.0), bounds)
        config = dict(spec)
        config["bounds"] = bounds.tolist()
        return fam, config
    if kind == "custom":
        return _load_custom_spec(spec)
    raise ValueError(f"unknown family kind {kind!r}")


def _load_custom_spec(spec: dict):
    h_base = parse_complex_matrix(spec["base_hamiltonian"])
    gens = [parse_complex_matrix(g) for g in spec["generators"]]
    bounds = np.asarray(spec["bounds"], dtype=float)
    split = BipartiteSplit(*spec["split"])
    split.check(h_base.shape[0])
    cluster_tol = float(spec.get("cluster_tol", DEFAULT_CLUSTER_TOL))
    if not linalg.is_hermitian(h_base):
        raise NotHermitianError("base_hamiltonian is not Hermitian")
    for k, g in enumerate(gens):
        if not linalg.is_hermitian(g):
            raise NotHermitianError(f"generator {k} is not Hermitian")
        if g.shape != h_base.shape:
            raise ValueError(f"generator {k} has wrong shape")
    if len(gens) != len(bounds):
        raise ValueError("one generator per parameter is required")
    if not np.all(np.isfinite(bounds)):
        raise ValueError("bounds must be finite")
    base_point = np.asarray(spec.get("base_point", np.zeros(len(gens))), dtype=float)

    energies, vectors = linalg.eig_hermitian(h_base)

    def unitary(lam):
        k = np.zeros_like(h_base)
        for c, g in zip(lam, gens):
            k = k + c * g
        return linalg.expm_skew(k)

    def evaluate(lam):
        u = unitary(lam)
        return u @ h_base @ u.conj().T

    iso = IsoSpectralForm(energies, vectors, unitary, base_point)
    fam = HamiltonianFamily(len(gens), bounds, evaluate, split, iso)
    config = dict(spec)
    config["bounds"] = bounds.tolist()
    config["cluster_tol"] = cluster_tol
    return fam, config


# ---------------------------------------------------------------------------
# Output writers.

def _write_json(path, payload):
    text = json.dumps(payload, sort_keys=True, indent=1)
    if path is None or path == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w") as f:
            f.write(text + "\n")


def _write_csv(path, manifest, header, rows):
    lines = ["# manifest " + json.dumps(manifest, sort_keys=True)]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(fmt(x) for x in row))
    text = "\n".join(lines) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


# ---------------------------------------------------------------------------
# Subcommands.

def cmd_connectible(args) -> int:
    h0 = load_hermitian(args.h0_file)
    h1 = load_hermitian(args.h1_file)
    decision = is_adiabatically_connectible(h0, h1, args.cluster_tol)
    print(f"degeneracy vector of H0: {decision.d0}")
    print(f"degeneracy vector of H1: {decision.d1}")
    if not decision.connectible:
        print(f"decision: not connectible ({decision.reason})")
        return 2
    fam = build_connecting_family(h0, h1, args.cluster_tol)
    gap = min_gap_along(fam, args.samples)
    ts = np.linspace(0.0, 1.0, args.samples)
    spectra = [np.linalg.eigvalsh(fam.sample(t)).tolist() for t in ts]
    print("decision: connectible")
    print(f"min gap along connecting family: {fmt(gap)}")
    if args.out:
        config = {"h0_file": args.h0_file, "h1_file": args.h1_file,
                  "cluster_tol": args.cluster_tol, "samples": args.samples}
        _write_json(args.out, {
            "manifest": make_manifest("connectible", config, args.seed),
            "connectible": True,
            "degeneracy_vectors": [list(decision.d0), list(decision.d1)],
            "min_gap": gap,
            "t": ts.tolist(),
            "spectra": spectra,
        })
    return 0


def cmd_power(args) -> int:
    fam, spec_config = load_family_spec(args.spec_file)
    est = adiabatic_entangling_power(fam, grid_per_axis=args.grid,
                                     refine=args.refine)
    print(f"adiabatic entangling power: {fmt(est.value)}")
    print(f"level: {est.level}")
    print(f"witness point (high): {[fmt(x) for x in est.point_hi]}")
    print(f"baseline point: {[fmt(x) for x in est.point_lo]}")
    print(f"method: {est.method} (grid {est.grid_resolution} per axis)")
    print(f"product-state baseline certified: {est.product_base}")
    if args.level != "all":
        level = int(args.level)
        sweep = entropy_sweep(fam, args.grid)
        col = sweep.entropies[:, level]
        print(f"level {level}: max entropy {fmt(col.max())}, "
              f"min entropy {fmt(col.min())}")
    if args.out:
        config = {"spec_file": args.spec_file, "spec": spec_config,
                  "grid": args.grid, "refine": args.refine, "level": args.level}
        manifest = make_manifest("power", config, args.seed)
        sweep = entropy_sweep(fam, args.grid)
        header = [f"lam{j + 1}" for j in range(fam.parameter_dim)] + ["level", "entropy"]
        rows = []
        for pt, ents in zip(sweep.points, sweep.entropies):
            for level, e in enumerate(ents):
                rows.append(list(pt) + [level, e])
        _write_csv(args.out, manifest, header, rows)
    return 0


def cmd_sweep(args) -> int:
    fam, spec_config = load_family_spec(args.spec_file)
    psi = parse_state(args.input_state, fam.split)
    pts = grid_points(fam.bounds, args.grid)
    values = np.empty(len(pts))
    for k, (lam, u) in enumerate(family_unitaries(fam, pts)):
        values[k] = entanglement.entropy(u @ psi, fam.split)
    config = {"spec_file": args.spec_file, "spec": spec_config,
              "input_state": args.input_state, "grid": args.grid,
              "format": args.out_format}
    manifest = make_manifest("sweep", config, args.seed)
    header = [f"lam{j + 1}" for j in range(fam.parameter_dim)] + ["E"]
    best = int(np.argmax(values))
    print(f"sweep points: {len(pts)}")
    print(f"max E: {fmt(values[best])} at {[fmt(x) for x in pts[best]]}")
    if args.out_format == "csv":
        rows = [list(pt) + [v] for pt, v in zip(pts, values)]
        _write_csv(args.out, manifest, header, rows)
    else:
        _write_json(args.out, {
            "manifest": manifest,
            "columns": header,
            "rows": [list(map(float, pt)) + [float(v)]
                     for pt, v in zip(pts, values)],
        })
    return 0


def _waypoint_path(waypoints, duration: float, schedule: str) -> ParameterPath:
    """Piecewise-linear path through waypoints, equal time per segment."""
    pts = [np.asarray(w, dtype=float) for w in waypoints]
    if len(pts) == 1:
        return ParameterPath(duration, lambda s: pts[0],
                             closed=True)
    nseg = len(pts) - 1

    def ramp(s):
        return s * s * s * (10.0 + s * (-15.0 + 6.0 * s)) if schedule == "smoothstep" else s

    def gamma(s):
        x = min(max(float(s), 0.0), 1.0) * nseg
        seg = min(int(x), nseg - 1)
        f = ramp(x - seg)
        return pts[seg] + f * (pts[seg + 1] - pts[seg])

    closed = bool(np.allclose(pts[0], pts[-1]))
    return ParameterPath(duration, gamma, closed=closed)


def cmd_evolve(args) -> int:
    fam, spec_config = load_family_spec(args.spec_file)
    waypoints = json.loads(args.path)
    if not waypoints or np.asarray(waypoints, dtype=float).ndim != 2:
        raise ValueError("--path must be a JSON list of parameter points")
    path = _waypoint_path(waypoints, args.T, args.schedule)
    _, vecs = fam.eigensystem(path.gamma(0.0))
    psi0 = vecs[:, args.level]
    rec = propagate(fam, path, psi0, steps=args.steps)
    entropies = np.array([entanglement.entropy(s, fam.split) for s in rec.states])
    print(f"final entropy: {fmt(entropies[-1])}")
    print(f"final fidelity with tracked eigenstate: {fmt(rec.instantaneous_fidelity[-1])}")
    print(f"dynamical phase: {fmt(rec.dynamical_phase)}")
    print(f"geometric phase: {fmt(rec.geometric_phase)}")
    print(f"adiabaticity diagnostic max|dH/dt|/gap^2: {fmt(rec.adiabaticity)}")
    print(f"norm drift: {fmt(rec.norm_drift)}")
    if args.out:
        config = {"spec_file": args.spec_file, "spec": spec_config,
                  "path": waypoints, "T": args.T, "steps": args.steps,
                  "level": args.level, "schedule": args.schedule}
        _write_json(args.out, {
            "manifest": make_manifest("evolve", config, args.seed),
            "times": rec.times.tolist(),
            "fidelity": rec.instantaneous_fidelity.tolist(),
            "entropy": entropies.tolist(),
            "dynamical_phase": rec.dynamical_phase,
            "geometric_phase": rec.geometric_phase,
            "adiabaticity": rec.adiabaticity,
            "norm_drift": rec.norm_drift,
            "final_state": vector_to_pairs(rec.final_state),
        })
    return 0


def _retrace_circle_loop(theta0: float, field_norm: float,
                         duration: float) -> ParameterPath:
    """Zero-area loop on the constraint sphere: half the azimuth circle and back."""
    rho = field_norm * np.sin(theta0) / 4.0
    mu_z = field_norm * np.cos(theta0) / 2.0

    def gamma(s):
        s = float(s)
        f = 2.0 * s if s <= 0.5 else 2.0 * (1.0 - s)
        phi = np.pi * f
        return np.array([rho * np.cos(phi), rho * np.sin(phi), mu_z])

    return ParameterPath(duration, gamma, closed=True)


def cmd_gate(args) -> int:
    kind, theta0, radius = args.loop[0], float(args.loop[1]), float(args.loop[2])
    if kind == "circle":
        loop = circle_loop(theta0, radius, args.T)
    elif kind == "retrace":
        loop = _retrace_circle_loop(theta0, radius, args.T)
    else:
        raise ValueError(f"unknown loop kind {kind!r}; use circle or retrace")
    res = synthesize_controlled_phase(loop, steps=args.steps)
    for label in sorted(res.phases):
        print(f"phi_{label}: {fmt(res.phases[label])}  "
              f"(dynamical {fmt(res.dynamical[label])}, "
              f"geometric {fmt(res.geometric[label])})")
    print(f"nontriviality phi_01 + phi_10 - phi_00 - phi_11 (mod 2pi): "
          f"{fmt(res.nontriviality)}")
    print(f"diagonal residual: {fmt(res.diagonal_residual)}")
    verdict = "entangling" if res.is_entangling() else "not entangling"
    print(f"verdict: {verdict}")
    if args.out:
        config = {"loop": [kind, theta0, radius], "T": args.T,
                  "steps": args.steps}
        _write_json(args.out, {
            "manifest": make_manifest("gate", config, args.seed),
            "labels": list(res.labels),
            "phases": {k: res.phases[k] for k in sorted(res.phases)},
            "dynamical": {k: res.dynamical[k] for k in sorted(res.dynamical)},
            "geometric": {k: res.geometric[k] for k in sorted(res.geometric)},
            "nontriviality": res.nontriviality,
            "diagonal_residual": res.diagonal_residual,
            "entangling": res.is_entangling(),
            "gate": matrix_to_pairs(res.gate),
        })
    return 0


# ---------------------------------------------------------------------------
# Parser and entry point.

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adiapower",
        description="Adiabatic connectibility and entangling power of "
                    "parametric Hamiltonian families.")
    parser.add_argument("--version", action="version", version=VERSION)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="seed for any randomized refinement (default 0)")
    common.add_argument("--jobs", type=int,
                        default=int(os.environ.get(DEFAULT_JOBS_ENV, "1")),
                        help="worker count hint; outputs are identical for "
                             f"any value (default ${DEFAULT_JOBS_ENV} or 1)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("connectible", parents=[common],
                       help="decide adiabatic connectibility of two Hamiltonians")
    p.add_argument("h0_file")
    p.add_argument("h1_file")
    p.add_argument("--cluster-tol", type=float, default=DEFAULT_CLUSTER_TOL)
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--out", help="write a JSON report here")
    p.set_defaults(func=cmd_connectible)

    p = sub.add_parser("power", parents=[common],
                       help="adiabatic entangling power of a family")
    p.add_argument("spec_file")
    p.add_argument("--grid", type=int, default=41)
    p.add_argument("--refine", action="store_true")
    p.add_argument("--level", default="all",
                   help="'all' or a level index to report separately")
    p.add_argument("--out", help="write the per-level entropy grid as CSV")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("sweep", parents=[common],
                       help="entanglement of an evolved input state over the grid")
    p.add_argument("spec_file")
    p.add_argument("--input-state", required=True,
                   help="basis label like 01, or a JSON list of [re, im] pairs")
    p.add_argument("--grid", type=int, default=121)
    p.add_argument("--out-format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("evolve", parents=[common],
                       help="adiabatic run along a waypoint path")
    p.add_argument("spec_file")
    p.add_argument("--path", required=True,
                   help="JSON list of parameter points, e.g. [[0,0,0],[0.2,0,0]]")
    p.add_argument("--T", type=float, default=50.0)
    p.add_argument("--steps", type=int, default=2000)
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--schedule", choices=["linear", "smoothstep"],
                   default="smoothstep")
    p.add_argument("--out", help="write a JSON time series here")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("gate", parents=[common],
                       help="diagonal gate from an adiabatic loop")
    p.add_argument("--loop", nargs=3, metavar=("KIND", "THETA0", "RADIUS"),
                   default=["circle", str(np.pi / 3.0), "1.0"],
                   help="loop kind (circle | retrace), polar angle, field norm")
    p.add_argument("--T", type=float, default=200.0)
    p.add_argument("--steps", type=int, default=4000)
    p.add_argument("--out", help="write a JSON report here")
    p.set_defaults(func=cmd_gate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DegeneracyError as exc:
        print(f"degeneracy abort: {exc}", file=sys.stderr)
        return 3
    except AdiapowerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
