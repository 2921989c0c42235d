"""Recompute the h1 -> gl(3) deformation end to end and dump the results.

    python3 scripts/reproduce_heisenberg.py [--out results/heisenberg.json] [--seed 0]
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from liedeform.reference import run_checklist


@dataclass
class Config:
    out: str = "results/heisenberg.json"
    seed: int = 0
    max_order: int = 10


def main():
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    for name, default in asdict(Config()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    cfg = Config(**vars(p.parse_args()))

    start = time.perf_counter()
    checks, summary = run_checklist(seed=cfg.seed, max_order=cfg.max_order)
    elapsed = time.perf_counter() - start

    for c in checks:
        print(c.line())
    counts = {s: sum(c.status == s for c in checks) for s in ("PASS", "DISCREPANCY", "FAIL")}
    print(f"{counts} in {elapsed:.2f}s")

    out = Path(cfg.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps({
        "config": asdict(cfg),
        "elapsed_s": elapsed,
        "counts": counts,
        "checks": [asdict(c) for c in checks],
        **summary,
    }, indent=2, ensure_ascii=False), encoding="utf-8")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
