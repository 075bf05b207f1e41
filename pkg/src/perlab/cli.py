"""Command-line entry point: ``perlab <command> ...``.

Exit codes: 0 success, 1 resource cap (degree cap, precision, recombination
budget, cube floor), 2 invalid configuration or missing input file,
3 hypothesis violation (for example a target point in the exceptional set).

Tabular output is CSV preceded by ``#`` comment lines carrying the tool
version and a JSON echo of the configuration; structured output is JSON with
``version`` and ``config`` keys. Floats are written with ``repr`` so runs
with the same configuration and seed are byte-identical.

CSV field order:

* periodic:  n, raw_degree, count, max_orbit, proportion_large, lambda_hat_running
* preimage:  n, raw_degree, count, max_orbit, proportion_large, lambda_hat_running, kappa_minus, kappa_ok
* equidist:  bump_id, n, count, discrepancy, lambda_hat_running, c3_bound
* intersect: n, count, bound, passed, margin, full_fibers
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from . import __version__
from .dynamics import RationalMap, degree_cap, product_map
from .errors import ConfigError, HypothesisViolation, MeasureFloorError, PerlabError, ResourceCapError
from .exactalg import Poly
from .heights import canonical_height
from .intersect import BihomCurve, bound_check, count_periodic_on_curve
from .periodic import galois_spectrum, orbit_report, periodic_polynomial, preimage_report

PERIODIC_COLUMNS = ("n", "raw_degree", "count", "max_orbit", "proportion_large", "lambda_hat_running")
PREIMAGE_COLUMNS = PERIODIC_COLUMNS + ("kappa_minus", "kappa_ok")
EQUIDIST_COLUMNS = ("bump_id", "n", "count", "discrepancy", "lambda_hat_running", "c3_bound")
INTERSECT_COLUMNS = ("n", "count", "bound", "passed", "margin", "full_fibers")


# ---------------------------------------------------------------------------
# input handling
# ---------------------------------------------------------------------------


def _schema(name: str) -> dict:
    return json.loads(resources.files("perlab").joinpath("schemas", f"{name}.schema.json").read_text())


def data_path(*parts: str) -> Path:
    """Path of a bundled data file."""
    return Path(str(resources.files("perlab").joinpath("data", *parts)))


def _load_json(path, schema: str | None = None):
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"file not found: {path}")
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON ({e})") from None
    if schema:
        try:
            jsonschema.validate(data, _schema(schema))
        except jsonschema.ValidationError as e:
            raise ConfigError(f"{path}: {e.message}") from None
    return data


def load_map(path) -> RationalMap:
    return RationalMap.from_json(_load_json(path, "map"))


def load_maps(path) -> list[RationalMap]:
    data = _load_json(path, "map2")
    for i, m in enumerate(data):
        try:
            jsonschema.validate(m, _schema("map"))
        except jsonschema.ValidationError as e:
            raise ConfigError(f"{path}[{i}]: {e.message}") from None
    return [RationalMap.from_json(m) for m in data]


def load_curve(path) -> BihomCurve:
    return BihomCurve.from_json(_load_json(path, "curve"))


def load_bumps(path) -> list:
    from .equidist.bumps import BumpFunction

    return [BumpFunction.from_json(b) for b in _load_json(path, "bumps")]


def parse_range(text: str) -> list[int]:
    """'a..b' (inclusive) or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise ConfigError(f"bad n range {text!r}; expected a..b") from None
    if lo < 1 or hi < lo:
        raise ConfigError(f"bad n range {text!r}; need 1 <= a <= b")
    return list(range(lo, hi + 1))


def _parse_point(text: str):
    if text.strip().lower() in ("inf", "infinity"):
        return "inf"
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"bad rational point {text!r}") from None


def _check_cap(d: int, ns, cap: int):
    if d ** max(ns) > cap:
        raise ResourceCapError(f"n = {max(ns)} needs degree {d}^{max(ns)} = {d ** max(ns)} > degree cap {cap}")


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return ";".join(_fmt(x) for x in v)
    return str(v)


def _jsonable(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def csv_text(columns, rows, config: dict) -> str:
    buf = io.StringIO()
    buf.write(f"# perlab {__version__}\n")
    buf.write("# config: " + json.dumps(_jsonable(config), sort_keys=True) + "\n")
    buf.write(",".join(columns) + "\n")
    for r in rows:
        buf.write(",".join(_fmt(r[c] if isinstance(r, dict) else getattr(r, c)) for c in columns) + "\n")
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args, **extra) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("func", "out")}
    cfg.update(extra)
    return cfg


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_periodic(args) -> int:
    f = load_map(args.map)
    ns = parse_range(args.n)
    _check_cap(f.d, ns, args.cap)
    rep = orbit_report(f, ns, args.lam, cap=args.cap)
    cfg = _config(args, map_json=f.to_json())
    _emit(csv_text(PERIODIC_COLUMNS, rep.rows, cfg), args.out)
    if args.out:
        sys.stdout.write(dumps({"lambda_hat": rep.lambda_hat, "n0": rep.n0, "out": args.out}))
    return 0


def cmd_preimage(args) -> int:
    f = load_map(args.map)
    ns = parse_range(args.n)
    _check_cap(f.d, ns, args.cap)
    rep = preimage_report(f, _parse_point(args.a), ns, args.lam, cap=args.cap)
    cfg = _config(args, map_json=f.to_json())
    _emit(csv_text(PREIMAGE_COLUMNS, rep.rows, cfg), args.out)
    if args.out:
        sys.stdout.write(dumps({"lambda_hat": rep.lambda_hat, "n0": rep.n0, "out": args.out}))
    return 0


def cmd_galois(args) -> int:
    if (args.poly is None) == (args.map is None):
        raise ConfigError("give exactly one of --poly or --map")
    if args.poly is not None:
        data = _load_json(args.poly, "poly") if os.path.exists(args.poly) else _poly_literal(args.poly)
        p = Poly.from_json(data)
        degs = galois_spectrum(p)
        result = {"degree": p.degree, "orbit_degrees": list(degs), "max_orbit": max(degs) if degs else 0}
    else:
        if args.n is None:
            raise ConfigError("--map needs --n")
        f = load_map(args.map)
        n = int(args.n)
        _check_cap(f.d, [n], args.cap)
        spec = periodic_polynomial(f, n, cap=args.cap)
        result = {
            "n": n,
            "raw_degree": spec.raw_degree,
            "count": spec.count,
            "includes_infinity": spec.includes_infinity,
            "orbit_degrees": list(spec.orbit_degrees),
            "max_orbit": max(spec.orbit_degrees),
            "factors": [q.to_json() for q in spec.factors],
        }
    _emit(dumps({"version": __version__, "config": _config(args), "result": result}), args.out)
    return 0


def _poly_literal(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        raise ConfigError(f"--poly is neither a file nor a JSON array: {text!r}") from None
    try:
        jsonschema.validate(data, _schema("poly"))
    except jsonschema.ValidationError as e:
        raise ConfigError(f"--poly: {e.message}") from None
    return data


def cmd_height(args) -> int:
    f = load_map(args.map)
    est = canonical_height(f, _parse_point(args.point), tol=args.tol)
    out = {
        "version": __version__,
        "config": _config(args, map_json=f.to_json()),
        "value": est.value,
        "error": est.error,
        "iterations": est.iterations,
        "telescope_constant": est.telescope_constant,
    }
    _emit(dumps(out), args.out)
    return 0


def _measure(args, f):
    from .equidist.measures import CircleMeasure, sample_equilibrium

    if args.measure == "circle":
        return CircleMeasure()
    if args.seed is None:
        raise ConfigError("sampling needs --seed")
    return sample_equilibrium(f, N=args.samples, burn_in=args.burn_in, seed=args.seed, method=args.sampler)


def cmd_equidist(args) -> int:
    from .equidist.report import equidist_report

    f = load_map(args.map)
    bumps = load_bumps(args.bumps)
    ns = parse_range(args.n)
    _check_cap(f.d, ns, args.cap)
    mu = _measure(args, f)
    rep = equidist_report(f, ns, bumps, mu, cap=args.cap)
    cfg = _config(args, map_json=f.to_json(), bumps_json=[b.to_json() for b in bumps])
    _emit(csv_text(EQUIDIST_COLUMNS, rep.rows, cfg), args.out)
    if args.out:
        fits = [{"bump_id": j, "lambda_hat": fit.lambda_hat, "r2": fit.r2, "dropped": fit.dropped,
                 "degenerate": fit.degenerate} for j, fit in enumerate(rep.fits)]
        sys.stdout.write(dumps({"fits": fits, "out": args.out}))
    return 0


def uniform_disc(N: int, seed: int) -> np.ndarray:
    """N seeded samples of the uniform measure on the unit disc."""
    rng = np.random.default_rng(seed)
    r = np.sqrt(rng.random(N))
    t = 2 * np.pi * rng.random(N)
    return r * np.exp(1j * t)


def cmd_cubes(args) -> int:
    from .equidist.cubes import dilates_disjoint, greedy_cubes

    if args.seed is None:
        raise ConfigError("sampling needs --seed")
    if args.measure == "uniform-disc":
        samples = uniform_disc(args.samples, args.seed)
        cfg = _config(args)
    else:
        if not args.map:
            raise ConfigError("--measure map needs --map")
        from .equidist.measures import sample_equilibrium

        f = load_map(args.map)
        samples = sample_equilibrium(f, N=args.samples, burn_in=args.burn_in, seed=args.seed).samples
        cfg = _config(args, map_json=f.to_json())
    base = {"version": __version__, "config": cfg}
    try:
        sel = greedy_cubes(samples, args.D, dilate=args.dilate, kappa=args.kappa, c_prime=args.c_prime)
    except MeasureFloorError as e:
        _emit(dumps({**base, "status": "floor not met", "message": str(e), "trace": list(e.trace)}), args.out)
        raise
    out = {
        **base,
        "status": "ok",
        "side": sel.side,
        "floor": sel.floor,
        "delta": sel.delta,
        "dilates_disjoint": dilates_disjoint(sel.cubes, args.dilate),
        "cubes": [{"center": list(c.center), "side": c.side, "measure": m} for c, m in zip(sel.cubes, sel.measures)],
    }
    _emit(dumps(out), args.out)
    return 0


def cmd_intersect(args) -> int:
    maps = load_maps(args.map2)
    if len(maps) != 2:
        raise ConfigError(f"{args.map2}: need exactly two maps, got {len(maps)}")
    fg = product_map(maps)
    Z = load_curve(args.curve)
    ns = parse_range(args.n)
    _check_cap(fg.d, ns, args.cap)
    rows = []
    for n in ns:
        cc = count_periodic_on_curve(fg, Z, n, details=True, cap=args.cap)
        bc = bound_check(fg, Z, n, c=args.c, cap=args.cap)
        rows.append({"n": n, "count": cc.count, "bound": bc.bound, "passed": bc.passed,
                     "margin": bc.margin, "full_fibers": list(cc.fibers)})
    cfg = _config(args, maps_json=fg.to_json(), curve_json=Z.to_json())
    _emit(csv_text(INTERSECT_COLUMNS, rows, cfg), args.out)
    return 0


def cmd_report_all(args) -> int:
    from .report_all import report_all

    cfg_path = Path(args.config) if args.config else data_path("report_all.json")
    config = _load_json(cfg_path)
    summary = report_all(config, base=cfg_path.parent, out_dir=Path(args.out_dir), cap=args.cap)
    text = dumps({"version": __version__, "config": config, "degree_cap": args.cap, **summary})
    (Path(args.out_dir) / "summary.json").write_text(text)
    sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="perlab", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"perlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out=True):
        sp.add_argument("--degree-cap", dest="cap", type=int, default=None,
                        help="largest iterate degree d^n (default: $PERLAB_DEGREE_CAP or 4096)")
        if out:
            sp.add_argument("--out", default=None, help="output file (default: stdout)")

    sp = sub.add_parser("periodic", help="Galois orbit statistics of Per_n")
    sp.add_argument("--map", required=True)
    sp.add_argument("--n", required=True, help="range a..b")
    sp.add_argument("--lambda", dest="lam", type=float, default=1.3)
    common(sp)
    sp.set_defaults(func=cmd_periodic)

    sp = sub.add_parser("preimage", help="Galois orbit statistics of f^-n(a)")
    sp.add_argument("--map", required=True)
    sp.add_argument("--a", required=True, help="rational point or 'inf'")
    sp.add_argument("--n", required=True)
    sp.add_argument("--lambda", dest="lam", type=float, default=1.3)
    common(sp)
    sp.set_defaults(func=cmd_preimage)

    sp = sub.add_parser("galois", help="orbit degrees of a polynomial or of Per_n")
    sp.add_argument("--poly", default=None, help="JSON file or literal array, lowest degree first")
    sp.add_argument("--map", default=None)
    sp.add_argument("--n", default=None)
    common(sp)
    sp.set_defaults(func=cmd_galois)

    sp = sub.add_parser("height", help="canonical height of a rational point")
    sp.add_argument("--map", required=True)
    sp.add_argument("--point", required=True)
    sp.add_argument("--tol", type=float, default=1e-9)
    common(sp)
    sp.set_defaults(func=cmd_height)

    sp = sub.add_parser("equidist", help="discrepancy of Per_n against the equilibrium measure")
    sp.add_argument("--map", required=True)
    sp.add_argument("--n", required=True)
    sp.add_argument("--bumps", required=True)
    sp.add_argument("--measure", choices=("empirical", "circle"), default="empirical")
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--burn-in", type=int, default=30)
    sp.add_argument("--sampler", choices=("tree", "iid"), default="tree")
    sp.add_argument("--seed", type=int, default=None)
    common(sp)
    sp.set_defaults(func=cmd_equidist)

    sp = sub.add_parser("cubes", help="greedy cube selection for a sampled measure")
    sp.add_argument("--measure", choices=("uniform-disc", "map"), default="uniform-disc")
    sp.add_argument("--map", default=None)
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--burn-in", type=int, default=30)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--D", type=int, default=16)
    sp.add_argument("--dilate", type=int, default=2)
    sp.add_argument("--kappa", type=float, default=1.0)
    sp.add_argument("--c-prime", type=float, default=1.0)
    common(sp)
    sp.set_defaults(func=cmd_cubes)

    sp = sub.add_parser("intersect", help="periodic points of f x g on a curve")
    sp.add_argument("--map2", required=True, help="JSON array of two maps")
    sp.add_argument("--curve", required=True)
    sp.add_argument("--n", required=True)
    sp.add_argument("--c", type=float, default=2.0)
    common(sp)
    sp.set_defaults(func=cmd_intersect)

    sp = sub.add_parser("report-all", help="desk-scale checks of orbit growth, preimage towers and equidistribution")
    sp.add_argument("--config", default=None, help="config JSON (default: bundled)")
    sp.add_argument("--out-dir", default="perlab-report")
    common(sp, out=False)
    sp.set_defaults(func=cmd_report_all)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cap is None:
        args.cap = degree_cap()
    elif args.cap < 1:
        parser.error("--degree-cap must be positive")
    try:
        return args.func(args)
    except HypothesisViolation as e:
        print(f"perlab: hypothesis violated: {e}", file=sys.stderr)
        return 3
    except (ResourceCapError, MeasureFloorError) as e:
        print(f"perlab: resource limit: {e}", file=sys.stderr)
        return 1
    except (ConfigError, PerlabError, ValueError, KeyError) as e:
        print(f"perlab: invalid configuration: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
