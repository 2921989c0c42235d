"""Command-line driver.

    liedeform cohomology      [--input SRC] [--degree P]
    liedeform deform          [--input SRC] [--max-order N] [--cocycle EXPR ...] [--computed]
    liedeform cup A B         [--input SRC]
    liedeform verify FILE     [--input SRC] [--seed S]
    liedeform reproduce-paper [--seed S]

SRC is a JSON file or ``builtin:heisenberg-gl3`` (the default).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from .cohomology import coboundary_preimage, cohomology, delta, parse_cochain
from .deformation import (
    DeformationSeries,
    GuardExceeded,
    ObstructionReport,
    cup,
    integrate,
    mc_residual,
)
from .instances import InputError, Instance, load_instance
from .lie import LieError
from .reference import (
    BUILTIN,
    pointwise_homomorphism_failures,
    run_checklist,
    generic_matrix_comparison,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_OBSTRUCTION = 3
EXIT_GUARD = 4
EXIT_CHECK_FAILED = 5


@dataclass
class RunConfig:
    command: str
    input: str = BUILTIN
    format: str = "text"
    max_order: int = 10
    seed: int = 0


class UsageError(Exception):
    pass


def _emit(cfg: RunConfig, payload: dict, text: str):
    if cfg.format == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def _load(cfg: RunConfig) -> Instance:
    try:
        return load_instance(cfg.input)
    except (InputError, LieError) as exc:
        raise UsageError(str(exc)) from exc


def cmd_cohomology(cfg: RunConfig, degree: int = 1) -> int:
    inst = _load(cfg)
    if degree not in (1, 2):
        raise UsageError("cohomology is available in degrees 1 and 2")
    rep = cohomology(degree, inst.rho)
    z, b, h = rep.dims
    lines = [f"instance: {inst.name}",
             f"dim Z{degree}={z} dim B{degree}={b} dim H{degree}={h}",
             "representatives:"]
    lines += [f"  {r.render()}" for r in rep.representatives]
    _emit(cfg, {"instance": inst.name, **rep.to_json()}, "\n".join(lines))
    return EXIT_OK


def _verification(inst: Instance, d: DeformationSeries, seed: int) -> dict:
    out = {
        "residual_zero": mc_residual(d).is_zero(),
        "max_degree": d.max_degree,
        "obstructions": [],
        "pointwise_failures": pointwise_homomorphism_failures(d, 20, seed),
    }
    if inst.name == "heisenberg-gl3" and d.r == 4:
        out["generic_matrix_comparison"] = generic_matrix_comparison(d)
    return out


def cmd_deform(cfg: RunConfig, cocycle_exprs=None, computed: bool = False) -> int:
    inst = _load(cfg)
    rho = inst.rho
    if cocycle_exprs:
        try:
            cocycles = [parse_cochain(s, rho.source, rho.target, degree=1) for s in cocycle_exprs]
        except ValueError as exc:
            raise UsageError(f"bad cocycle: {exc}") from exc
    elif inst.cocycles is not None and not computed:
        cocycles = list(inst.cocycles)
    else:
        cocycles = list(cohomology(1, rho).representatives)
    for c in cocycles:
        if not delta(1, rho, c).is_zero():
            raise UsageError(f"{c.render()} is not a 1-cocycle")
    cocycle_text = [c.render() for c in cocycles]
    try:
        result = integrate(rho, cocycles, max_order=cfg.max_order)
    except GuardExceeded as exc:
        _emit(cfg, {"instance": inst.name, "cocycles": cocycle_text,
                    "error": "guard_exceeded", "order": exc.order, "max_order": exc.guard},
              f"guard exceeded: {exc}")
        return EXIT_GUARD
    if isinstance(result, ObstructionReport):
        _emit(cfg, {"instance": inst.name, "cocycles": cocycle_text,
                    "verification": {"residual_zero": False, "obstructions": [result.to_json()]}},
              f"obstruction at order {result.order}, monomial {result.to_json()['monomial']}:\n"
              f"  {result.rhs.render()}")
        return EXIT_OBSTRUCTION
    d = result
    ver = _verification(inst, d, cfg.seed)
    lines = [f"instance: {inst.name}", f"parameters: {d.r}", "cocycles:"]
    lines += [f"  t{i + 1}: {s}" for i, s in enumerate(cocycle_text)]
    lines += ["deformation:", d.render(),
              f"max degree: {d.max_degree}",
              f"orders examined: {[o.order for o in d.orders]}",
              f"residual zero: {ver['residual_zero']}"]
    _emit(cfg, {"instance": inst.name, "cocycles": cocycle_text,
                "deformation": d.to_json(), "verification": ver}, "\n".join(lines))
    return EXIT_OK if ver["residual_zero"] else EXIT_CHECK_FAILED


def cmd_cup(cfg: RunConfig, a: str, b: str) -> int:
    inst = _load(cfg)
    rho = inst.rho
    try:
        ca = parse_cochain(a, rho.source, rho.target, degree=1)
        cb = parse_cochain(b, rho.source, rho.target, degree=1)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    c = cup(ca, cb)
    pre = coboundary_preimage(c, rho)
    payload = {"cup": c.render(), "is_coboundary": pre is not None,
               "preimage": pre.render() if pre is not None else None}
    text = f"[[{ca.render()}, {cb.render()}]] = {c.render()}"
    text += f"\n  = delta1({pre.render()})" if pre is not None else "\n  not a coboundary"
    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, path: str) -> int:
    inst = _load(cfg)
    try:
        obj = json.loads(Path(path).read_text("utf-8"))
        if "deformation" in obj:
            obj = obj["deformation"]
        d = DeformationSeries.from_json(obj, inst.rho)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read deformation from {path}: {exc}") from exc
    ver = _verification(inst, d, cfg.seed)
    ok = ver["residual_zero"] and ver["pointwise_failures"] == 0
    text = (f"residual zero: {ver['residual_zero']}\n"
            f"max degree: {ver['max_degree']}\n"
            f"pointwise failures (20 random points): {ver['pointwise_failures']}")
    _emit(cfg, ver, text)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_reproduce_paper(cfg: RunConfig) -> int:
    checks, summary = run_checklist(seed=cfg.seed, max_order=cfg.max_order)
    failed = [c for c in checks if c.status == "FAIL"]
    counts = {s: sum(c.status == s for c in checks) for s in ("PASS", "DISCREPANCY", "FAIL")}
    payload = {
        "items": [{"name": c.name, "status": c.status, "detail": c.detail} for c in checks],
        "counts": counts,
        **summary,
    }
    text = "\n".join(c.line() for c in checks)
    text += (f"\n{counts['PASS']} passed, {counts['DISCREPANCY']} classified discrepancies, "
             f"{counts['FAIL']} failed")
    _emit(cfg, payload, text)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default=BUILTIN,
                        help="instance JSON file or builtin:heisenberg-gl3")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-order", type=int, default=10)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="liedeform", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("cohomology", parents=[common], help="Z, B and H in degree 1 or 2")
    c.add_argument("--degree", type=int, default=1)
    d = sub.add_parser("deform", parents=[common], help="integrate the Maurer-Cartan equation")
    d.add_argument("--cocycle", action="append", metavar="EXPR",
                   help="1-cocycle to use as a parameter direction (repeatable)")
    d.add_argument("--computed", action="store_true",
                   help="use computed H1 representatives even if the instance lists cocycles")
    u = sub.add_parser("cup", parents=[common], help="cup product of two 1-cochains")
    u.add_argument("a")
    u.add_argument("b")
    v = sub.add_parser("verify", parents=[common], help="check a deformation JSON file")
    v.add_argument("deformation")
    sub.add_parser("reproduce-paper", parents=[common],
                   help="recompute every published value for the built-in instance")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = RunConfig(args.command, args.input, args.format, args.max_order, args.seed)
    try:
        if args.command == "cohomology":
            return cmd_cohomology(cfg, args.degree)
        if args.command == "deform":
            return cmd_deform(cfg, args.cocycle, args.computed)
        if args.command == "cup":
            return cmd_cup(cfg, args.a, args.b)
        if args.command == "verify":
            return cmd_verify(cfg, args.deformation)
        return cmd_reproduce_paper(cfg)
    except UsageError as exc:
        print(f"liedeform: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
