"""Command-line entry point: ``twistor-ga verify | congruence | ray``.

Human-readable summaries go to stderr; machine output (JSON reports,
CSV/JSON geometry) goes to ``--out`` or stdout.  Exit status is 0 when
every check passes, 1 when a check fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from . import __version__
from .conformal import line_through
from .config import default_tol
from .congruence import (
    LocusAtInfinity,
    NonCircular,
    NotNullTwistor,
    SceneConfig,
    DegenerateCircle,
    circle_distance,
    collinearity_through_origin,
    make_null_twistor,
    null_ray,
    primary_residual,
    ray_observable,
    tangent_grid,
    to_dlines,
    torus_family,
    transform_observable,
)
from .records import (
    GeometryRecord,
    RunManifest,
    manifest_path,
    records_to_csv,
    records_to_json,
    write_text,
)
from .sta import flagpole, four_spinor, four_spinor_from_components, pauli_from_components, sta_vector
from .sta import vector_components, weyl_parts
from .twistor import helicity, twistor_new
from .verification import SAMPLE_COUNTS, SUITES, run, tolerance_table

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# --- flag value parsers -------------------------------------------------------

def _floats(text: str, count: int, what: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{what}: expected {count} comma-separated numbers") from None
    if len(vals) != count:
        raise argparse.ArgumentTypeError(f"{what}: expected {count} comma-separated numbers")
    return vals


def grid_arg(text: str) -> tuple[int, int, int]:
    vals = _floats(text, 3, "grid")
    if any(v != int(v) or v < 0 for v in vals):
        raise argparse.ArgumentTypeError("grid: counts must be non-negative integers")
    return tuple(int(v) for v in vals)  # type: ignore[return-value]


def torus_arg(text: str) -> tuple[float, float, float]:
    return _floats(text, 3, "torus")  # type: ignore[return-value]


def vector_arg(text: str) -> tuple[float, float, float, float]:
    return _floats(text, 4, "vector t,x,y,z")  # type: ignore[return-value]


def spinor_arg(text: str) -> tuple[complex, complex, complex, complex]:
    try:
        vals = tuple(complex(v.strip().replace(" ", "")) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("spinor: expected four complex numbers like 1,0,0,1j") from None
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("spinor: expected four complex numbers")
    return vals  # type: ignore[return-value]


def bool_arg(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


# --- config file --------------------------------------------------------------

def read_config(path: Path) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment.  Keys use the flag names."""
    out: dict[str, str] = {}
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror}") from None
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.lstrip("-").replace("-", "_")] = value
    return out


def _apply_config(parser: argparse.ArgumentParser, args: argparse.Namespace, argv: Sequence[str]) -> argparse.Namespace:
    """Re-parse with config values as defaults so explicit flags still win."""
    if not getattr(args, "config", None):
        return args
    raw = read_config(Path(args.config))
    sub = args._subparser
    actions = {a.dest: a for a in sub._actions if a.dest not in ("help", "config")}
    defaults: dict[str, Any] = {}
    for key, value in raw.items():
        action = actions.get(key)
        if action is None:
            raise UsageError(f"unknown config key {key!r}")
        if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
            conv: Callable[[str], Any] = bool_arg
        else:
            conv = action.type or str
        try:
            defaults[key] = conv(value)
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise UsageError(f"config key {key!r}: {exc}") from None
        if action.choices is not None and defaults[key] not in action.choices:
            raise UsageError(f"config key {key!r}: invalid choice {value!r}")
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


# --- output helpers -----------------------------------------------------------

def _emit(records: list[GeometryRecord], manifest: RunManifest, fmt: str, out: str | None) -> None:
    if out is None:
        text = records_to_csv(records) if fmt == "csv" else records_to_json(records)
        sys.stdout.write(text)
        sys.stderr.write(manifest.to_json())
        return
    path = Path(out)
    mpath = manifest_path(path)
    manifest.files = [path.name]
    if fmt == "csv":
        text = records_to_csv(records)
    else:
        text = records_to_json(records, manifest=mpath.name)
    write_text(path, text)
    write_text(mpath, manifest.to_json())


def _summary(manifest: RunManifest, elapsed: float) -> None:
    for c in manifest.checks:
        rel = c.get("relation", "<=")
        mark = "PASS" if c["passed"] else "FAIL"
        prefix = f"[{c['suite']}] " if "suite" in c else ""
        print(f"{mark} {prefix}{c['name']}: {c['residual']:.3e} {rel} {c['tol']:.1e}", file=sys.stderr)
    n_fail = sum(not c["passed"] for c in manifest.checks)
    status = "all checks passed" if n_fail == 0 else f"{n_fail} check(s) failed"
    print(f"{manifest.command}: {status} ({len(manifest.checks)} checks, {elapsed:.2f} s)", file=sys.stderr)


def _config_snapshot(args: argparse.Namespace, keys: Sequence[str]) -> dict[str, Any]:
    snap: dict[str, Any] = {}
    for k in keys:
        v = getattr(args, k)
        snap[k] = list(v) if isinstance(v, tuple) else v
    return snap


def _complex_list(vals) -> list[list[float]] | None:
    return None if vals is None else [[c.real, c.imag] for c in vals]


# --- commands -----------------------------------------------------------------

def cmd_verify(args: argparse.Namespace) -> int:
    results = run(args.suite, args.seed)
    manifest = RunManifest("verify", {"suite": args.suite, "samples": SAMPLE_COUNTS}, args.seed, tolerance_table())
    for r in results:
        manifest.add_check(r.name, r.value, r.bound, r.relation, suite=r.suite)
    text = manifest.to_json()
    if args.out:
        write_text(Path(args.out), text)
    else:
        sys.stdout.write(text)
    args._manifest = manifest
    return EXIT_OK if manifest.passed else EXIT_FAIL


def cmd_congruence(args: argparse.Namespace) -> int:
    if args.s == 0:
        raise UsageError("s = 0 is a null twistor and has no Robinson congruence; use the 'ray' command")
    family = args.family
    cfg = SceneConfig(s=args.s, tau=args.tau, grid=args.grid if min(args.grid) > 0 else (1, 1, 1),
                      extent=args.extent, torus=args.torus, phi_start=args.phi_start,
                      family=max(family, 1), samples=args.samples)
    keys = ("s", "tau", "grid", "extent", "torus", "phi_start", "family", "samples", "dlines", "tangent", "format")
    manifest = RunManifest("congruence", _config_snapshot(args, keys), None, tolerance_table())
    args._manifest = manifest
    records: list[GeometryRecord] = []
    meta = {"s": args.s, "tau": args.tau}
    if args.tangent and min(args.grid) > 0:
        for i, (x, v) in enumerate(tangent_grid(cfg)):
            records.append(GeometryRecord("tangent", i, (tuple(x), tuple(x + v)), meta))
    if family > 0:
        if args.dlines and args.tau != 0:
            raise UsageError("d-lines are defined on the t = 0 slice; use --tau 0")
        try:
            circles = torus_family(cfg, workers=args.workers)
        except (NonCircular, DegenerateCircle) as exc:
            manifest.add_check(f"family construction: {exc}", 1.0, 0.0)
            _emit(records, manifest, args.format, args.out)
            return EXIT_FAIL
        tol = tolerance_table()
        closure = 0.0
        phis = args.phi_start + 2 * np.pi * np.arange(family) / family
        for k, (c, phi) in enumerate(zip(circles, phis)):
            thetas, pts = c.sample(args.samples)
            closure = max(closure, float(np.linalg.norm(c.point(2 * np.pi) - c.point(0.0))))
            records.append(GeometryRecord("circle", k, tuple(map(tuple, pts)), {
                **meta, "phi": phi, "radius": c.radius,
                "center_x": c.center[0], "center_y": c.center[1], "center_z": c.center[2],
                "normal_x": c.normal[0], "normal_y": c.normal[1], "normal_z": c.normal[2],
            }, tuple(thetas)))
        manifest.add_check("circle closure at 2 pi", closure, tol["closure"])
        if family > 1:
            mind = min(circle_distance(a, b, args.samples) for i, a in enumerate(circles) for b in circles[i + 1:])
            manifest.add_check("family minimum pairwise distance", mind, 0.0, ">")
        if args.dlines:
            worst = 0.0
            for k, (c, phi) in enumerate(zip(circles, phis)):
                pts = to_dlines(c, args.s, args.samples)
                dev = collinearity_through_origin(pts)
                worst = max(worst, dev)
                records.append(GeometryRecord("dline", k, tuple(map(tuple, pts)),
                                              {**meta, "phi": phi, "collinearity": dev}))
            manifest.add_check("d-line collinearity through origin", worst, tol["collinearity"])
    _emit(records, manifest, args.format, args.out)
    args._manifest = manifest
    return EXIT_OK if manifest.passed else EXIT_FAIL


PRESETS = ("basic", "random")


def _preset_psi(name: str, seed: int):
    if name == "basic":
        # omega = o, pi = o + i iota: {omega, pi} = i, so s = 0 and beta = -1
        return four_spinor(pauli_from_components(1, 0), pauli_from_components(1, 1j))
    return make_null_twistor(np.random.default_rng(seed)).psi


def _ray_record(rid: int, point, direction, hs, extra: dict[str, float]) -> GeometryRecord:
    pts = [vector_components(point + h * direction)[1:] for h in hs]
    q, p = vector_components(point), vector_components(direction)
    meta = {**{f"q{i}": q[i] for i in range(4)}, **{f"p{i}": p[i] for i in range(4)}, **extra}
    return GeometryRecord("ray", rid, tuple(map(tuple, pts)), meta, tuple(hs))


def cmd_ray(args: argparse.Namespace) -> int:
    psi = (four_spinor_from_components(args.spinor) if args.spinor is not None
           else _preset_psi(args.preset, args.seed))
    t = twistor_new(psi)
    s = helicity(t)
    if abs(s) > 1e-8:
        raise UsageError(f"input twistor is not null: measured helicity {s:.6g} (need |s| <= 1e-8)")
    try:
        ray = null_ray(t)
    except LocusAtInfinity as exc:
        raise UsageError(str(exc)) from None
    keys = ("preset", "seed", "samples", "translate", "invert", "format")
    snap = _config_snapshot(args, keys)
    snap["spinor"] = _complex_list(args.spinor)
    manifest = RunManifest("ray", snap, args.seed if args.spinor is None else None, tolerance_table())
    tol = tolerance_table()
    hs = np.linspace(-2.0, 2.0, args.samples)
    manifest.add_check("primary part vanishes along the ray", primary_residual(t, ray, hs), tol["ray"])
    L = line_through(ray.q, ray.p).L
    manifest.add_check("L = 2 L_psi", (L - 2 * ray_observable(psi)).max_abs(), tol["identity"])
    records = [_ray_record(0, ray.q, ray.p, hs, {"beta": ray.beta, "beta_imag": ray.beta_imag})]
    if args.translate is not None:
        a = sta_vector(*args.translate)
        lt = transform_observable(psi, translate=a)
        res = (2 * lt - line_through(ray.q + a, ray.p).L).max_abs()
        manifest.add_check("translated observable passes through q + a", res, tol["observable_transform"])
        records.append(_ray_record(1, ray.q + a, ray.p, hs, {"beta": ray.beta}))
    if args.invert:
        omega, _ = weyl_parts(psi)
        K = flagpole(omega)
        P = ray.p * (1.0 / ray.beta)
        li = transform_observable(psi, invert=True)
        res = (2 * li - line_through(P, K).L).max_abs()
        manifest.add_check("inverted observable is the (p/beta, K) line", res, tol["observable_transform"])
        records.append(_ray_record(2, P, K, hs, {"beta": ray.beta}))
    _emit(records, manifest, args.format, args.out)
    args._manifest = manifest
    return EXIT_OK if manifest.passed else EXIT_FAIL


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistor-ga", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, fmt: bool = True) -> None:
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--config", help="key = value file mirroring the flags; flags win")
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("verify", help="run randomised invariant suites")
    p.add_argument("suite", nargs="?", default="all", choices=SUITES + ("all",))
    p.add_argument("--seed", type=int, default=42)
    common(p, fmt=False)
    p.set_defaults(func=cmd_verify, _subparser=p)

    p = sub.add_parser("congruence", help="Robinson congruence tangent field, circles and d-lines")
    p.add_argument("--s", type=float, default=0.5, help="helicity (nonzero)")
    p.add_argument("--tau", type=float, default=0.0, help="time of the slice")
    p.add_argument("--grid", type=grid_arg, default=(5, 5, 5), metavar="NX,NY,NZ",
                   help="tangent-field grid points per axis (0,0,0 disables)")
    p.add_argument("--extent", type=float, default=2.0, help="half-width of the tangent grid cube")
    p.add_argument("--torus", type=torus_arg, default=(1.0, 1.0, 0.5), metavar="NX,NY,NZ",
                   help="family seeds (NX cos phi, NY sin phi, NZ)")
    p.add_argument("--phi-start", type=float, default=0.0)
    p.add_argument("--family", type=int, default=8, metavar="COUNT", help="circles in the family (0 disables)")
    p.add_argument("--samples", type=int, default=64, metavar="N", help="points per circle")
    p.add_argument("--dlines", action="store_true", help="add circles translated to the origin")
    p.add_argument("--no-tangent", dest="tangent", action="store_false", help="omit tangent records")
    p.add_argument("--workers", type=int, default=1, help="process pool size for the family")
    common(p)
    p.set_defaults(func=cmd_congruence, _subparser=p)

    p = sub.add_parser("ray", help="null-twistor ray and its 6-d observable")
    p.add_argument("--preset", choices=PRESETS, default="basic")
    p.add_argument("--spinor", type=spinor_arg, metavar="C0,C1,C2,C3",
                   help="complex components psi^0..psi^3 (overrides --preset)")
    p.add_argument("--seed", type=int, default=42, help="seed for --preset random")
    p.add_argument("--samples", type=int, default=9, metavar="N", help="ray points over h in [-2, 2]")
    p.add_argument("--translate", type=vector_arg, metavar="T,X,Y,Z")
    p.add_argument("--invert", action="store_true")
    common(p)
    p.set_defaults(func=cmd_ray, _subparser=p)
    return parser


def _validate(args: argparse.Namespace) -> None:
    if args.command == "congruence":
        if args.samples < 3:
            raise UsageError("--samples must be at least 3")
        if args.family < 0:
            raise UsageError("--family must be non-negative")
        if args.workers < 1:
            raise UsageError("--workers must be positive")
    if args.command == "ray" and args.samples < 2:
        raise UsageError("--samples must be at least 2")


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    start = time.perf_counter()
    try:
        default_tol()
        args = _apply_config(parser, args, argv)
        _validate(args)
        code = args.func(args)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    except (UsageError, NotNullTwistor, ValueError) as exc:
        print(f"twistor-ga: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    manifest = getattr(args, "_manifest", None)
    if manifest is not None:
        _summary(manifest, time.perf_counter() - start)
    return code


if __name__ == "__main__":
    sys.exit(main())
