"""Desk-scale checks of orbit growth, preimage towers and equidistribution rates, driven by one JSON config.

Each check runs on the n values whose iterate degree d^n fits under the
degree cap. Values above the cap are listed under ``skipped``; a check with
skipped values has status ``partial`` (judged on what ran, reported in
``passed_on_available``) or ``skipped`` when nothing ran.
"""

from __future__ import annotations

from pathlib import Path

from .cli import (
    EQUIDIST_COLUMNS,
    PERIODIC_COLUMNS,
    PREIMAGE_COLUMNS,
    csv_text,
    data_path,
    load_bumps,
    load_map,
    parse_range,
)
from .errors import ConfigError, ExceptionalPointError


def _resolve(base: Path, name: str) -> Path:
    p = base / name
    if p.exists():
        return p
    bundled = data_path(name)
    return bundled if bundled.exists() else p


def _split(d: int, ns, cap: int):
    run = [n for n in ns if d**n <= cap]
    skipped = [{"n": n, "reason": f"degree {d ** n} exceeds cap {cap}"} for n in ns if d**n > cap]
    return run, skipped


def _status(ok: bool, run, skipped) -> dict:
    if not run:
        return {"status": "skipped", "passed": None, "skipped": skipped}
    if skipped:
        return {"status": "partial", "passed": None, "passed_on_available": ok, "skipped": skipped}
    return {"status": "pass" if ok else "fail", "passed": ok, "skipped": []}


def _write(out_dir: Path, name: str, columns, rows, cfg) -> str:
    path = out_dir / name
    path.write_text(csv_text(columns, rows, cfg))
    return str(path)


def _periodic_exact(c, base, out_dir, cap):
    from .periodic import orbit_report

    f = load_map(_resolve(base, c["map"]))
    run, skipped = _split(f.d, parse_range(c["n"]), cap)
    if not run:
        return _status(False, run, skipped)
    rep = orbit_report(f, run, c["lambda"], cap=cap)
    counts_ok = all(r.count == f.d**r.n + 1 for r in rep.rows)
    lam_ok = rep.lambda_hat is not None and rep.lambda_hat >= c["min_lambda_hat"]
    res = _status(counts_ok and lam_ok, run, skipped)
    res.update(lambda_hat=rep.lambda_hat, counts_ok=counts_ok, n0=rep.n0,
               file=_write(out_dir, "orbit_growth_exact.csv", PERIODIC_COLUMNS, rep.rows, c))
    return res


def _periodic_generic(c, base, out_dir, cap):
    from .periodic import orbit_report

    f = load_map(_resolve(base, c["map"]))
    run, skipped = _split(f.d, parse_range(c["n"]), cap)
    if not run:
        return _status(False, run, skipped)
    rep = orbit_report(f, run, c["lambda"], cap=cap)
    ok = rep.n0 is not None and rep.n0 <= c["max_n0"]
    res = _status(ok, run, skipped)
    res.update(lambda_hat=rep.lambda_hat, n0=rep.n0,
               file=_write(out_dir, "orbit_growth_generic.csv", PERIODIC_COLUMNS, rep.rows, c))
    return res


def _preimage(c, base, out_dir, cap):
    from .periodic import preimage_report

    f = load_map(_resolve(base, c["map"]))
    try:
        preimage_report(f, c["exceptional_a"], [1], c["lambda"], cap=cap)
        guard = False
    except ExceptionalPointError:
        guard = True
    run, skipped = _split(f.d, parse_range(c["n"]), cap)
    if not run:
        res = _status(False, run, skipped)
        res["exceptional_guard"] = guard
        return res
    rep = preimage_report(f, c["a"], run, c["lambda"], cap=cap)
    full = all(r.max_orbit == f.d**r.n for r in rep.rows)
    lam_ok = rep.lambda_hat is not None and abs(rep.lambda_hat - c["expected_lambda_hat"]) <= c["lambda_hat_tol"]
    res = _status(full and lam_ok and guard, run, skipped)
    res.update(lambda_hat=rep.lambda_hat, irreducible_tower=full, exceptional_guard=guard,
               file=_write(out_dir, "preimage_tower.csv", PREIMAGE_COLUMNS, rep.rows, c))
    return res


def _equidist(c, base, out_dir, cap, name):
    from .equidist.measures import CircleMeasure, sample_equilibrium
    from .equidist.report import equidist_report

    f = load_map(_resolve(base, c["map"]))
    bumps = load_bumps(_resolve(base, c["bumps"]))
    run, skipped = _split(f.d, parse_range(c["n"]), cap)
    if len(run) < 3:
        # too few values for a rate fit
        skipped += [{"n": n, "reason": "fewer than 3 values under the cap"} for n in run]
        return _status(False, [], skipped)
    if c["measure"] == "circle":
        mu = CircleMeasure()
    else:
        mu = sample_equilibrium(f, N=c["samples"], burn_in=c["burn_in"], seed=c["seed"],
                                method=c.get("sampler", "tree"))
    rep = equidist_report(f, run, bumps, mu, cap=cap)
    fits = [{"bump_id": j, "lambda_hat": fit.lambda_hat, "r2": fit.r2, "degenerate": fit.degenerate}
            for j, fit in enumerate(rep.fits)]
    if "expected_lambda_hat" in c:
        ok = all(ft["lambda_hat"] is not None
                 and abs(ft["lambda_hat"] - c["expected_lambda_hat"]) <= c["lambda_hat_tol"] for ft in fits)
    else:
        ok = all(ft["lambda_hat"] is not None and ft["lambda_hat"] > c["min_lambda_hat"]
                 and ft["r2"] >= c["min_r2"] for ft in fits)
    res = _status(ok, run, skipped)
    res.update(fits=fits, file=_write(out_dir, f"{name}.csv", EQUIDIST_COLUMNS, rep.rows, c))
    return res


def _check_files(config: dict, base: Path):
    """Fail before any work if a referenced map or bump file is missing."""
    growth, eq = config["orbit_growth"], config["equidistribution"]
    refs = [growth["exact"]["map"], growth["generic"]["map"], config["preimage"]["map"]]
    for c in (eq["exact"], eq["empirical"]):
        refs += [c["map"], c["bumps"]]
    for name in refs:
        if not _resolve(base, name).is_file():
            raise ConfigError(f"file not found: {name}")


def report_all(config: dict, base: Path, out_dir: Path, cap: int) -> dict:
    _check_files(config, base)
    out_dir.mkdir(parents=True, exist_ok=True)
    growth, tower, eq = config["orbit_growth"], config["preimage"], config["equidistribution"]
    checks = {
        "orbit_growth": {
            "exact": _periodic_exact(growth["exact"], base, out_dir, cap),
            "generic": _periodic_generic(growth["generic"], base, out_dir, cap),
        },
        "preimage": {"tower": _preimage(tower, base, out_dir, cap)},
        "equidistribution": {
            "exact": _equidist(eq["exact"], base, out_dir, cap, "equidist_exact"),
            "empirical": _equidist(eq["empirical"], base, out_dir, cap, "equidist_empirical"),
        },
    }
    statuses = [c["status"] for group in checks.values() for c in group.values()]
    if all(s == "pass" for s in statuses):
        overall = "pass"
    elif "fail" in statuses:
        overall = "fail"
    else:
        overall = "partial"
    return {"status": overall, "checks": checks}
