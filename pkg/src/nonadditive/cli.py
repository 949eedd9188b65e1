"""Command-line front end: one experiment per invocation, driven by a config file.

Exit status: 0 when every check passes, 1 when a check fails, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import cocycles as cy
from . import cohomology as co
from . import families as fa
from . import pressure as pr
from . import regularity as rg
from . import reports
from . import trend
from .config import COMMANDS, ExperimentConfig, load_config, parse_rule, parse_trig
from .errors import FormatError, NonadditiveError
from .fileformats import load_generator, load_potential, load_weights
from .potentials import BirkhoffSequence, ExplicitSequence, MeasureSequence
from .reproduce import run_catalog
from .shift import TABLE_BUDGET


class UsageError(Exception):
    pass


def _need(cfg, key, why):
    if key not in cfg:
        raise UsageError(f"config key {key!r} is required {why}")
    return cfg.get(key)


def build_sequence(cfg: ExperimentConfig, suffix: str = ""):
    """The sequence described by ``sequence{suffix}`` and its input keys."""
    kind = cfg.get("sequence" + suffix)
    if kind is None:
        if ("potential" + suffix) in cfg:
            kind = "birkhoff"
        elif ("weights" + suffix) in cfg:
            kind = "measure"
        elif ("generator" + suffix) in cfg:
            kind = "cocycle"
        elif ("rule" + suffix) in cfg:
            kind = "explicit"
        else:
            raise UsageError(f"no sequence{suffix} given")
    why = f"for sequence{suffix} = {kind}"
    if kind == "birkhoff":
        F = BirkhoffSequence(load_potential(_need(cfg, "potential" + suffix, why)))
    elif kind == "measure":
        F = MeasureSequence(load_weights(_need(cfg, "weights" + suffix, why)),
                            cfg.get("offset" + suffix, 0.0))
    elif kind == "cocycle":
        F = cy.CocycleSequence(load_generator(_need(cfg, "generator" + suffix, why)))
    elif kind == "explicit":
        text = _need(cfg, "rule" + suffix, why)
        try:
            name, arg = parse_rule(text)
        except ValueError as exc:
            raise cfg.error("rule" + suffix, str(exc)) from None
        k = cfg.get("alphabet", 2)
        if name == "sqrt":
            F = ExplicitSequence.sqrt(k, arg)
        elif name == "linear":
            F = ExplicitSequence.linear(k, arg)
        else:
            F = ExplicitSequence(k, lambda n, c=arg: c, name=f"const:{arg}")
    elif kind == "type1":
        F = fa.type1_sequence(load_potential(_need(cfg, "potential" + suffix, why)))
    else:
        F = fa.recentered_type1(load_potential(_need(cfg, "potential" + suffix, why)))
    alpha = cfg.get("alpha" + suffix, 0.0)
    return fa.holder_perturbation(F, alpha) if alpha else F


def _budget(cfg):
    return cfg.get("budget", TABLE_BUDGET)


def cmd_pressure(cfg):
    N = cfg.get("N", 18)
    F = build_sequence(cfg)
    part = pr.partition_pressure(F, N, _budget(cfg))
    result = {"partition": part, "value": part.value, "method": "partition"}
    if isinstance(F, BirkhoffSequence) and F.base.r <= 2:
        tr = pr.transfer_pressure(F.base)
        eq = pr.rpf_equilibrium(F.base, tr)
        result.update(transfer=tr, equilibrium=eq, value=tr.log_lambda, method="transfer",
                      agreement=abs(tr.log_lambda - part.value))
    series = {"logZ": part.log_Z, "differences": part.differences}
    return result, series


def cmd_battery(cfg):
    G = build_sequence(cfg)
    b = rg.bou_battery(G, cfg.get("N", 24), cfg.get("P", 12), cfg.get("L", 4), cfg.get("s", 0),
                       _budget(cfg))
    return b, {"sup_norms": b.sup_norms, "periodic": b.cond3_series}


def cmd_equivalence(cfg):
    F, G = build_sequence(cfg), build_sequence(cfg, "2")
    N = cfg.get("N", 16)
    eq = rg.physical_equivalence(F, G, N, _budget(cfg))
    pc = rg.perturbation_constant_check(F, G, min(N, 14), _budget(cfg))
    return {"equivalence": eq, "perturbation": pc}, {"e": eq.e, "diffs": eq.diffs}


def cmd_cohomology(cfg):
    phi = load_potential(_need(cfg, "potential", "for cohomology"))
    mode = cfg.get("mode", "certificate")
    if mode == "certificate":
        return co.livsic_certificate(phi, cfg.get("P", phi.r + 2)), {}
    if mode == "solve":
        sol = co.solve_coboundary(phi)
        cert = co.livsic_certificate(phi, cfg.get("P", phi.r + 2))
        return {"solution": sol, "certificate": cert}, {}
    if mode == "meancycle":
        return co.mean_cycle(phi, cfg.get("direction", "max")), {}
    d = co.bousch_decompose(phi)
    return d, {}


def cmd_cocycle(cfg):
    A = load_generator(_need(cfg, "generator", "for cocycle"))
    mode = cfg.get("mode", "sequence")
    budget = _budget(cfg)
    if mode == "sequence":
        S = cy.CocycleSequence(A)
        N = cfg.get("N", 12)
        norms = [float(np.max(np.abs(t))) for _, t in S.tables(N, budget)]
        aa = rg.almost_additivity_constant(S, min(N, 10), budget)
        return ({"sup_norms": norms, "almost_additivity": aa, "M": A.M,
                 "log_M_bound": float(-np.log(A.M))}, {"sup_norms": norms})
    if mode == "distortion":
        r = cy.distortion_report(A, cfg.get("s", 0), cfg.get("N", 8), budget)
        return r, {"distortion": r.series}
    if mode == "fl":
        return cy.fl_inequality_check(A, cfg.get("N", 6), budget=budget), {}
    r = cy.kln_test(A, cfg.get("P", 8), cfg.get("N", 12), cfg.get("L", 4), budget)
    return r, {}


def cmd_classify(cfg):
    F = build_sequence(cfg)
    pool = [load_potential(p) for p in cfg.get("pool", [])] or None
    weights = F.weights if isinstance(F, MeasureSequence) else None
    if "weights2" in cfg:
        weights = load_weights(cfg.get("weights2"))
    c = fa.classify_sequence(F, pool, cfg.get("N", 12), cfg.get("P", 8), cfg.get("s", 0),
                             weights, _budget(cfg))
    return c, {}


def cmd_rotation(cfg):
    coeffs = parse_trig(_need(cfg, "trig", "for rotation"), cfg)
    r = co.rotation_demo(_need(cfg, "rotation", "for rotation"), coeffs, cfg.get("grid", 256),
                         cfg.get("N", 1000))
    return r, {"sup": r.series}


def cmd_reproduce(cfg):
    checks = run_catalog()
    passed = sum(c.passed for c in checks)
    failed = [f"{c.group}/{c.name}" for c in checks if not c.passed]
    return {"checks": checks, "passed": passed, "total": len(checks), "failed": failed}, {}


HANDLERS = {
    "pressure": cmd_pressure,
    "battery": cmd_battery,
    "equivalence": cmd_equivalence,
    "cohomology": cmd_cohomology,
    "cocycle": cmd_cocycle,
    "classify": cmd_classify,
    "rotation": cmd_rotation,
    "reproduce-paper": cmd_reproduce,
}


def resolve(data, dotted):
    """Follow ``a.b.0.c`` through dicts and lists; raise ``KeyError`` if absent."""
    cur = data
    for part in dotted.split("."):
        if isinstance(cur, list):
            cur = cur[int(part)]
        else:
            cur = cur[part]
    return cur


def evaluate_expectations(result, expect, tol):
    out = []
    for key in sorted(expect):
        want = expect[key]
        try:
            got = resolve(result, key)
        except (KeyError, IndexError, ValueError, TypeError):
            out.append({"check": key, "expected": want, "observed": None, "passed": False})
            continue
        if isinstance(want, bool) or isinstance(got, bool):
            ok = got == want
        elif isinstance(want, (int, float)) and isinstance(got, (int, float)):
            ok = abs(got - want) <= tol
        else:
            ok = str(got) == str(want)
        out.append({"check": key, "expected": want, "observed": got, "passed": bool(ok)})
    return out


def run(cfg: ExperimentConfig, out_dir, check=False, argv=None) -> int:
    command = cfg.command
    with trend.thresholds(**cfg.thresholds()):
        result, series = HANDLERS[command](cfg)
        active = trend.active_thresholds()
    result = reports.jsonable(result)
    checks = evaluate_expectations(result, cfg.expect, cfg.get("expect_tol", 1e-9))
    report = {
        "command": command,
        "version": __version__,
        "config": dict(cfg.raw),
        "thresholds": active,
        "result": result,
        "checks": checks,
    }
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = command.replace("-", "_")
    reports.write_json(out / f"{stem}.json", report)
    for name, values in sorted(series.items()):
        reports.write_csv(out / f"{stem}_{name}.csv", values)
    reports.write_json(out / "run-info.json", reports.run_info(command, argv))

    failed = [c["check"] for c in checks if not c["passed"]]
    if command == "reproduce-paper":
        failed += result["failed"]
        print(f"reproduce-paper: {result['passed']}/{result['total']} examples pass")
    for name in failed:
        print(f"check failed: {name}", file=sys.stderr)
    if command == "reproduce-paper" and result["failed"]:
        return 1
    return 1 if (check and failed) else 0


def _parser():
    p = argparse.ArgumentParser(prog="nonadditive", description=__doc__.splitlines()[0])
    p.add_argument("command", nargs="?", choices=COMMANDS,
                   help="experiment to run (may instead be given in the config)")
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--out", help="output directory (default: config 'out' or ./out)")
    p.add_argument("--threads", type=int, default=0,
                   help="accepted for compatibility; computations run single-threaded")
    p.add_argument("--check", action="store_true",
                   help="exit 1 when any expect.* value in the config is not met")
    p.add_argument("--version", action="version", version=__version__)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = _parser().parse_args(argv)
    try:
        if args.config:
            cfg = load_config(args.config)
        else:
            cfg = ExperimentConfig()
        if args.threads < 0:
            raise UsageError("--threads must be >= 0")
        command = args.command or cfg.command
        if command is None:
            raise UsageError("no command given on the command line or in the config")
        if args.command and cfg.command and args.command != cfg.command:
            raise UsageError(f"command {args.command!r} conflicts with config command "
                             f"{cfg.command!r}")
        cfg.values["command"] = command
        cfg.raw.setdefault("command", command)
        out_dir = args.out or cfg.get("out")
        if out_dir is None:
            out_dir = "out"
        elif not args.out and cfg.path is not None and not Path(out_dir).is_absolute():
            out_dir = cfg.path.parent / out_dir
        return run(cfg, out_dir, args.check, argv)
    except (FormatError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NonadditiveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
