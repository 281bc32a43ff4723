"""Command-line entry point.

Subcommands
-----------
verify {algebra,geometry,wigner,ansatz}
    run the identity/oracle batteries and write a JSON report
reduce
    print the reduced 8x8 coefficient matrix and constraint rows at one omega
indices
    endpoint residue matrices, exponents and eigenvectors (JSON)
integrate
    one radial integration; CSV trace plus JSON manifest
sweep
    independent integrations over parameter lists, run in parallel

Every command writes a JSON manifest naming each emitted data file with a
sha256 content hash, the tolerances applied, and the table of coefficient
adjudications baked into the package.  Exit status: 0 on success, 2 on
usage errors, 3 on numerical failure (a diagnostic manifest is still
written when possible).  Output is deterministic for a fixed seed.

Options may also be given in a config file of ``key = value`` lines
(``#`` comments allowed); explicit flags win.  The default output
directory is taken from RSDESITTER_OUTDIR when set.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from . import __version__, algebra, geometry, radial, solver, wigner
from .ansatz import (
    ADJUDICATIONS,
    ModeLabel,
    forced_zero_slots,
    random_state,
    verify_angular_operator,
    verify_divergence_constraint,
    verify_j03_action,
    verify_T_action,
    verify_trace_constraint,
)

USAGE_ERROR, NUMERICAL_ERROR = 2, 3


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def parse_half_integer(text: str, name: str = "value") -> Fraction:
    """Parse 'p/2' or an integer/half-integer literal exactly."""
    try:
        frac = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"{name} must be a half-integer like 3/2, got {text!r}") from exc
    if (2 * frac).denominator != 1:
        raise ValueError(f"{name} must be a half-integer like 3/2, got {text!r}")
    return frac


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise ValueError(f"cannot parse complex value {text!r}") from exc


def read_config(path: str) -> dict[str, str]:
    conf: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, val = line.split("=", 1)
            conf[key.strip()] = val.strip()
    return conf


def atomic_write(path: str, data: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(data)
    os.replace(tmp, path)


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        digest.update(fh.read())
    return digest.hexdigest()


class Manifest:
    """Collects checks, outputs and warnings of one command run."""

    def __init__(self, command: str, config: dict):
        self.data = {
            "command": command,
            "config": {k: repr(v) for k, v in sorted(config.items())},
            "package_version": __version__,
            "numpy_version": np.__version__,
            "adjudications": list(ADJUDICATIONS),
            "checks": [],
            "outputs": [],
            "warnings": [],
            "status": "ok",
        }

    def check(self, name: str, residual: float, tolerance: float) -> bool:
        ok = bool(residual < tolerance)
        self.data["checks"].append(
            {
                "name": name,
                "residual": float(residual),
                "tolerance": float(tolerance),
                "pass": ok,
            }
        )
        return ok

    def warn(self, message: str) -> None:
        self.data["warnings"].append(message)

    def add_output(self, path: str, kind: str) -> None:
        self.data["outputs"].append(
            {"path": os.path.basename(path), "kind": kind, "sha256": _sha256(path)}
        )

    @property
    def all_passed(self) -> bool:
        return all(c["pass"] for c in self.data["checks"])

    def write(self, path: str) -> None:
        self.data["status"] = "ok" if self.all_passed else "check-failed"
        atomic_write(path, json.dumps(self.data, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# verification batteries
# ---------------------------------------------------------------------------

def run_verify_algebra(manifest: Manifest) -> None:
    manifest.check("clifford", algebra.clifford_residual(), 1e-13)
    for fam in ("bispinor", "vector", "tilde"):
        manifest.check(f"lorentz-{fam}", algebra.lorentz_algebra_residual(fam), 1e-13)
    for name, res in algebra.gamma_contraction_residuals().items():
        manifest.check(name, res, 1e-13)
    for name, res in algebra.tilde_similarity_residuals().items():
        manifest.check(f"tilde-similarity-{name}", res, 1e-13)
    for name, res in algebra.unitarity_residuals().items():
        manifest.check(f"unitarity-{name}", res, 1e-12)
    manifest.check("parity-involution", algebra.parity_involution_residual(), 1e-13)
    manifest.check(
        "momentum-conjugation", algebra.total_momentum_conjugation_residual(), 1e-6
    )


def run_verify_geometry(manifest: Manifest, n_points: int, seed: int) -> None:
    rng = np.random.default_rng(seed)
    worst = {"orthonormal": 0.0, "gamma": 0.0, "ell": 0.0, "divergence": 0.0}
    for _ in range(n_points):
        pt = geometry.RadialPoint.from_omega(rng.uniform(0.15, 1.35))
        theta = rng.uniform(0.3, np.pi - 0.3)
        e = geometry.tetrad(pt, theta)
        gram = e @ geometry.metric(pt, theta) @ e.T
        worst["orthonormal"] = max(
            worst["orthonormal"], float(np.abs(gram - algebra.METRIC).max())
        )
        closed_g, closed_l = geometry.connections(pt, theta)
        fd_g, fd_l = geometry.connections_fd(pt, theta)
        worst["gamma"] = max(
            worst["gamma"], max(float(np.abs(a - b).max()) for a, b in zip(closed_g, fd_g))
        )
        worst["ell"] = max(
            worst["ell"], max(float(np.abs(a - b).max()) for a, b in zip(closed_l, fd_l))
        )
        dv = geometry.tetrad_divergences(pt, theta)
        worst["divergence"] = max(
            worst["divergence"],
            float(np.abs(dv - geometry.tetrad_divergences_fd(pt, theta)).max()),
        )
    manifest.check("tetrad-orthonormality", worst["orthonormal"], 1e-12)
    manifest.check("bispinor-connection-oracle", worst["gamma"], 1e-6)
    manifest.check("vector-connection-oracle", worst["ell"], 1e-6)
    manifest.check("divergence-oracle", worst["divergence"], 1e-6)


def run_verify_wigner(manifest: Manifest, j: Fraction, m: Fraction, grid: int, outdir: str) -> str:
    thetas = np.linspace(0.02, np.pi - 0.02, grid)
    rows = wigner.recurrence_residuals(float(j), float(m), thetas)
    lines = ["relation,residual,residual_fd,fd_vs_analytic"]
    for row in rows:
        lines.append(
            f"{row['relation']},{_fmt(row['residual'])},"
            f"{_fmt(row['residual_fd'])},{_fmt(row['fd_vs_analytic'])}"
        )
        manifest.check(f"recurrence {row['relation']}", row["residual"], 1e-9)
        manifest.check(
            f"fd-agreement {row['relation']}", row["fd_vs_analytic"], 1e-6
        )
    path = os.path.join(outdir, f"wigner_j{j.numerator}_2_m{m.numerator}_2.csv".replace("-", "m"))
    atomic_write(path, "\n".join(lines) + "\n")
    return path


def run_verify_ansatz(manifest: Manifest, j: Fraction, seed: int, outdir: str) -> str:
    mode = ModeLabel(j=float(j), m_j=float(min(j, Fraction(1, 2))), eps=1.3, mass=0.7)
    rng = np.random.default_rng(seed)
    per_equation: dict[str, float] = {
        "ladder-t2": 0.0,
        "ladder-t1": 0.0,
        "ladder-sum": 0.0,
        "boost": 0.0,
        "angular": 0.0,
        "trace": 0.0,
        "divergence-collapse": 0.0,
        "divergence": 0.0,
    }
    for _ in range(10):
        state = random_state(mode, rng)
        dstate = random_state(mode, rng)
        theta = rng.uniform(0.25, np.pi - 0.25)
        phi = rng.uniform(0.0, 2 * np.pi)
        res = verify_T_action(mode, state, theta, phi)
        per_equation["ladder-t2"] = max(per_equation["ladder-t2"], res["t2_part"])
        per_equation["ladder-t1"] = max(per_equation["ladder-t1"], res["t1_part"])
        per_equation["ladder-sum"] = max(per_equation["ladder-sum"], res["combined"])
        per_equation["boost"] = max(
            per_equation["boost"], verify_j03_action(mode, state, theta, phi, omega=0.8)
        )
        per_equation["angular"] = max(
            per_equation["angular"], verify_angular_operator(mode, state, theta, phi)
        )
        per_equation["trace"] = max(
            per_equation["trace"], verify_trace_constraint(mode, state, theta, phi).consistency
        )
        div = verify_divergence_constraint(mode, state, dstate, 0.7, theta, phi)
        per_equation["divergence-collapse"] = max(
            per_equation["divergence-collapse"], div.collapse_residual
        )
        per_equation["divergence"] = max(per_equation["divergence"], div.residual)

    for name, res in per_equation.items():
        tol = 1e-8 if name.startswith("divergence") else 1e-9
        manifest.check(name, res, tol)
    path = os.path.join(outdir, f"ansatz_j{j.numerator}_2_residuals.json")
    atomic_write(path, json.dumps(per_equation, indent=2, sort_keys=True) + "\n")
    return path


# ---------------------------------------------------------------------------
# data-producing commands
# ---------------------------------------------------------------------------

def _mode_from_args(args) -> ModeLabel:
    if getattr(args, "j", None) is None:
        raise ValueError("--j is required (flag or config file)")
    j = parse_half_integer(args.j, "--j")
    m_j = parse_half_integer(args.m, "--m") if getattr(args, "m", None) else min(
        j, Fraction(1, 2)
    )
    delta = None
    if getattr(args, "delta", None) is not None:
        if args.delta not in ("+1", "-1", "1"):
            raise ValueError("--delta must be +1 or -1")
        delta = 1 if args.delta in ("+1", "1") else -1
    return ModeLabel(
        j=float(j),
        m_j=float(m_j),
        eps=parse_complex(getattr(args, "eps", "0") or "0"),
        mass=float(getattr(args, "mass", 0.0) or 0.0),
        delta=delta,
    )


def _complex_matrix_json(mat: np.ndarray) -> list[list[list[str]]]:
    return [[[_fmt(z.real), _fmt(z.imag)] for z in row] for row in np.asarray(mat)]


def run_reduce(args, outdir: str) -> int:
    mode = _mode_from_args(args)
    if mode.delta is None:
        raise ValueError("reduce requires --delta")
    omega = float(args.omega)
    a8 = radial.build_A8(mode, omega)
    cons = radial.constraint_matrix(mode, omega)
    payload = {
        "j": args.j,
        "delta": mode.delta,
        "eps": [_fmt(mode.eps.real), _fmt(complex(mode.eps).imag)],
        "mass": _fmt(mode.mass),
        "omega": _fmt(omega),
        "coefficient_matrix": _complex_matrix_json(a8),
        "constraint_rows": _complex_matrix_json(cons),
    }
    manifest = Manifest("reduce", vars(args))
    path = os.path.join(outdir, "reduce.json")
    atomic_write(path, json.dumps(payload, indent=2) + "\n")
    manifest.add_output(path, "reduced-system")
    manifest.write(os.path.join(outdir, "reduce.manifest.json"))
    print(json.dumps(payload))
    return 0


def run_indices(args, outdir: str) -> int:
    mode = _mode_from_args(args)
    if mode.delta is None:
        raise ValueError("indices requires --delta")
    system = radial.RadialSystem(mode=mode, dimension=8)
    manifest = Manifest("indices", vars(args))
    payload = {}
    for endpoint in ("origin", "horizon"):
        data = solver.frobenius(system, endpoint)
        manifest.check(
            f"{endpoint}-residue-vs-closed-form",
            float(np.abs(data.residue - system.residue(endpoint)).max()),
            1e-10,
        )
        manifest.check(f"{endpoint}-eigen-residual", float(data.eigen_residuals.max()), 1e-10)
        payload[endpoint] = {
            "exponents": [[_fmt(l.real), _fmt(l.imag)] for l in data.exponents],
            "residue": _complex_matrix_json(data.residue),
            "regular_indices": data.regular_indices(),
        }
    path = os.path.join(outdir, "indices.json")
    atomic_write(path, json.dumps(payload, indent=2) + "\n")
    manifest.add_output(path, "indicial-data")
    manifest.write(os.path.join(outdir, "indices.manifest.json"))
    return 0 if manifest.all_passed else NUMERICAL_ERROR


def _trace_csv(trace: solver.SolutionTrace) -> str:
    names = [f"{g}{l}" for g in ("f", "g") for l in range(4)]
    header = ["omega"]
    for n in names:
        header += [f"re_{n}", f"im_{n}"]
    header += [f"residual_{k}" for k in range(1, 5)]
    lines = [",".join(header)]
    for i in range(len(trace.omegas)):
        row = [_fmt(trace.omegas[i])]
        for z in trace.states[i]:
            row += [_fmt(z.real), _fmt(z.imag)]
        row += [_fmt(r) for r in trace.residuals[i]]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def run_integrate(args, outdir: str, tag: str = "integrate") -> int:
    mode = _mode_from_args(args)
    if mode.delta is None:
        raise ValueError("integrate requires --delta")
    if args.frm is None or args.to is None:
        raise ValueError("--from and --to are required (flag or config file)")
    w_from, w_to, tol = float(args.frm), float(args.to), float(args.tol)
    if not (0.0 < w_from < np.pi / 2 and 0.0 < w_to < np.pi / 2):
        raise ValueError("--from/--to must lie inside (0, pi/2)")
    if not 1e-14 <= tol <= 1e-4:
        raise ValueError("--tol must lie in [1e-14, 1e-4]")

    system = radial.RadialSystem(mode=mode, dimension=8)
    cons = radial.ConstraintSet(mode=mode)
    manifest = Manifest(tag, vars(args))

    zero = tuple(k for k in forced_zero_slots(mode) if k < 8)
    if args.launch is not None:
        endpoint = "origin" if w_from <= np.pi / 4 else "horizon"
        ind = solver.frobenius(system, endpoint)
        offset = w_from if endpoint == "origin" else np.pi / 2 - w_from
        launch = solver.endpoint_launch(system, ind, int(args.launch), offset=offset)
        y0 = launch.state
        if launch.resonant:
            manifest.warn("resonant exponent: first-order correction is least-squares")
    else:
        rng = np.random.default_rng(int(args.seed))
        seed_state = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        y0 = solver.constraint_kernel_state(cons, w_from, seed_state, zero_slots=zero)

    launch_resid = float(np.abs(cons.matrix(w_from) @ y0).max())
    if launch_resid > 1e-8 * max(1.0, float(np.abs(y0).max())):
        manifest.warn(
            f"initial state violates the constraints (residual {launch_resid:.3e}); "
            "residual columns will be nonzero"
        )

    try:
        trace = solver.integrate(system, cons, w_from, w_to, y0, tol=tol)
    except (solver.SingularityError, solver.ToleranceError, ArithmeticError) as exc:
        manifest.warn(f"integration failed: {exc}")
        manifest.data["status"] = "numerical-failure"
        atomic_write(
            os.path.join(outdir, f"{tag}.manifest.json"),
            json.dumps(manifest.data, indent=2, sort_keys=True) + "\n",
        )
        return NUMERICAL_ERROR

    path = os.path.join(outdir, f"{tag}.csv")
    atomic_write(path, _trace_csv(trace))
    manifest.add_output(path, "solution-trace")
    manifest.write(os.path.join(outdir, f"{tag}.manifest.json"))
    return 0


def _sweep_job(payload: tuple) -> tuple[str, int]:
    namespace, outdir, tag = payload
    args = argparse.Namespace(**namespace)
    code = run_integrate(args, outdir, tag=tag)
    return tag, code


def run_sweep(args, outdir: str) -> int:
    if args.j is None or args.frm is None or args.to is None:
        raise ValueError("--j, --from and --to are required (flag or config file)")
    j_list = [v for v in args.j.split(",") if v]
    eps_list = [v for v in (args.eps_list or "1.0").split(",") if v]
    mass_list = [v for v in (args.mass_list or "0.0").split(",") if v]
    deltas = ("+1", "-1") if args.delta == "both" else (args.delta,)
    jobs = []
    idx = 0
    for j, eps in ((j, e) for j in j_list for e in eps_list):
        for mass in mass_list:
            for delta in deltas:
                ns = {
                    "j": j,
                    "m": getattr(args, "m", None),
                    "delta": delta,
                    "eps": eps,
                    "mass": mass,
                    "frm": args.frm,
                    "to": args.to,
                    "tol": args.tol,
                    "launch": None,
                    "seed": int(args.seed) + idx,
                }
                jobs.append((ns, outdir, f"sweep_{idx:03d}"))
                idx += 1
    status = 0
    with ProcessPoolExecutor(max_workers=int(args.workers)) as pool:
        for tag, code in pool.map(_sweep_job, jobs):
            if code != 0:
                status = code
    manifest = Manifest("sweep", vars(args))
    for ns, _, tag in jobs:
        for suffix, kind in ((".csv", "solution-trace"), (".manifest.json", "job-manifest")):
            path = os.path.join(outdir, tag + suffix)
            if os.path.exists(path):
                manifest.add_output(path, kind)
    manifest.write(os.path.join(outdir, "sweep.manifest.json"))
    return status


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsdesitter",
        description="spin-3/2 radial systems in static de Sitter coordinates",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file; flags override")
    common.add_argument(
        "--out", help="output directory (default: RSDESITTER_OUTDIR or '.')"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ver = sub.add_parser("verify", parents=[common], help="run an identity/oracle battery")
    ver.add_argument("suite", choices=["algebra", "geometry", "wigner", "ansatz"])
    ver.add_argument("--j", default="1/2", help="half-integer, e.g. 3/2")
    ver.add_argument("--m", default=None, help="half-integer projection")
    ver.add_argument("--points", type=int, default=20)
    ver.add_argument("--grid", type=int, default=100)
    ver.add_argument("--seed", type=int, default=0)

    def mode_flags(p, with_range=False):
        p.add_argument("--j", help="half-integer, e.g. 1/2 (required)")
        p.add_argument("--m", default=None, help="half-integer projection")
        p.add_argument("--delta", default=None, help="+1 or -1")
        p.add_argument("--eps", default="0", help="energy (complex allowed)")
        p.add_argument("--mass", type=float, default=0.0)
        if with_range:
            p.add_argument("--from", dest="frm", type=float)
            p.add_argument("--to", type=float)
            p.add_argument("--tol", type=float, default=1e-10)
            p.add_argument("--seed", type=int, default=0)

    red = sub.add_parser("reduce", parents=[common], help="reduced system at one omega")
    mode_flags(red)
    red.add_argument("--omega", required=True, type=float)

    ind = sub.add_parser("indices", parents=[common], help="endpoint indicial data")
    mode_flags(ind)

    integ = sub.add_parser("integrate", parents=[common], help="integrate the reduced system")
    mode_flags(integ, with_range=True)
    integ.add_argument("--launch", default=None, help="endpoint exponent index")

    swp = sub.add_parser("sweep", parents=[common], help="parallel parameter sweep")
    swp.add_argument("--j", help="half-integer or comma list, e.g. 1/2,3/2")
    swp.add_argument("--m", default=None)
    swp.add_argument("--delta", default="both", help="+1, -1 or both")
    swp.add_argument("--eps-list", default="1.0")
    swp.add_argument("--mass-list", default="0.0")
    swp.add_argument("--from", dest="frm", type=float)
    swp.add_argument("--to", type=float)
    swp.add_argument("--tol", type=float, default=1e-10)
    swp.add_argument("--seed", type=int, default=0)
    swp.add_argument("--workers", type=int, default=2)
    return parser


def _apply_config(args: argparse.Namespace, argv: list[str]) -> None:
    """Fill unset argparse values from the config file (flags override)."""
    if not args.config:
        return
    conf = read_config(args.config)

    def normalize(name: str) -> str:
        name = name.replace("-", "_")
        return "frm" if name == "from" else name

    given = {normalize(a.lstrip("-").split("=")[0]) for a in argv if a.startswith("--")}
    for key, val in conf.items():
        attr = normalize(key)
        if hasattr(args, attr) and attr not in given:
            current = getattr(args, attr)
            if isinstance(current, int) and not isinstance(current, bool):
                setattr(args, attr, int(val))
            elif isinstance(current, float):
                setattr(args, attr, float(val))
            else:
                setattr(args, attr, val)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0

    try:
        _apply_config(args, argv)
        outdir = args.out or os.environ.get("RSDESITTER_OUTDIR") or "."
        os.makedirs(outdir, exist_ok=True)

        if args.command == "verify":
            manifest = Manifest(f"verify {args.suite}", vars(args))
            if args.suite == "algebra":
                run_verify_algebra(manifest)
            elif args.suite == "geometry":
                run_verify_geometry(manifest, args.points, args.seed)
            elif args.suite == "wigner":
                j = parse_half_integer(args.j, "--j")
                m = parse_half_integer(args.m, "--m") if args.m else min(j, Fraction(1, 2))
                path = run_verify_wigner(manifest, j, m, args.grid, outdir)
                manifest.add_output(path, "residual-table")
            else:
                j = parse_half_integer(args.j, "--j")
                path = run_verify_ansatz(manifest, j, args.seed, outdir)
                manifest.add_output(path, "residual-table")
            manifest.write(os.path.join(outdir, f"verify_{args.suite}.manifest.json"))
            for chk in manifest.data["checks"]:
                flag = "pass" if chk["pass"] else "FAIL"
                print(f"{flag}  {chk['name']}: {chk['residual']:.3e} < {chk['tolerance']:.0e}")
            return 0 if manifest.all_passed else NUMERICAL_ERROR

        if args.command == "reduce":
            return run_reduce(args, outdir)
        if args.command == "indices":
            return run_indices(args, outdir)
        if args.command == "integrate":
            return run_integrate(args, outdir)
        if args.command == "sweep":
            return run_sweep(args, outdir)
        raise ValueError(f"unknown command {args.command!r}")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ArithmeticError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return NUMERICAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
