"""Report corpus: certified instances swept over the distal and cell parameters.

Writes ``regularity.csv`` (eps, K), ``cutting.csv`` (r, l), ``neighborhoods.csv``
(ratio table), ``cells.csv`` and ``summary.json`` into the output directory.
"""

from __future__ import annotations

import csv
import json
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .cells import cell_partition, decode_cell, oracle_partition
from .distal import cutting, regularity
from .errors import InputError
from .generate import gen_certified
from .neighborhoods import distinct_neighborhoods


@dataclass(frozen=True)
class Family:
    t: int
    n: int
    seeds: tuple[int, ...]


@dataclass(frozen=True)
class SuiteConfig:
    families: tuple[Family, ...]
    set_size: int = 20
    epsilons: tuple[float, ...] = (0.2, 0.1, 0.05)
    thetas: tuple[int, ...] = (8,)
    ratio_samples: int = 20
    extra: dict = field(default_factory=dict, compare=False)

    @classmethod
    def default(cls) -> "SuiteConfig":
        return cls(tuple(Family(t, 200, (0, 1)) for t in (0, 1, 2)))

    @classmethod
    def from_json(cls, data) -> "SuiteConfig":
        if not isinstance(data, dict) or not data.get("families"):
            raise InputError("suite config needs a non-empty 'families' list")
        try:
            fams = tuple(Family(int(f["t"]), int(f["n"]), tuple(int(s) for s in f.get("seeds", [0])))
                         for f in data["families"])
            cfg = cls(fams,
                      int(data.get("setSize", 20)),
                      tuple(float(e) for e in data.get("epsilons", (0.2, 0.1, 0.05))),
                      tuple(int(x) for x in data.get("thetas", (8,))),
                      int(data.get("ratioSamples", 20)))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed suite config: {exc}") from None
        for f in cfg.families:
            if f.t < 0 or f.n < 2 or not f.seeds:
                raise InputError(f"bad family {f}")
        if cfg.set_size < 1 or not cfg.epsilons or any(not 0 < e <= 1 for e in cfg.epsilons):
            raise InputError("setSize must be positive and epsilons in (0, 1]")
        return cfg


def run_case(t: int, n: int, seed: int, cfg: SuiteConfig) -> dict:
    """Every measurement for one certified instance; pure given its arguments."""
    inst = gen_certified(t, n, seed)
    g, order = inst.graph, inst.order
    rng = random.Random(seed * 1_000_003 + n * 31 + t)
    A = sorted(rng.sample(range(n), min(cfg.set_size, n)))
    rows: dict[str, list] = {"cutting": [], "regularity": [], "ratio": [], "cells": []}
    failures: list[str] = []
    tag = f"t={t},n={n},seed={seed}"

    for r in sorted({1, math.ceil(math.sqrt(len(A))), len(A)}):
        res = cutting(g, order, A, r, seed)
        rows["cutting"].append([t, n, seed, len(A), r, len(res.parts), max(res.crossing_counts),
                                res.sample_size, res.retries])
        if r == len(A) and max(res.crossing_counts) != 0:
            failures.append(f"{tag}: r=|A| cutting has crossers")

    for eps in cfg.epsilons:
        res = regularity(g, eps, seed, order)
        rows["regularity"].append([t, n, seed, eps, res.K, res.defect / (n * n), res.sample_size,
                                   res.retries])

    for _ in range(cfg.ratio_samples):
        k = rng.randint(1, n)
        S = rng.sample(range(n), k)
        rows["ratio"].append([t, n, seed, k, distinct_neighborhoods(g, S), distinct_neighborhoods(g, S) / k])

    oracle = len(oracle_partition(g, A))
    for theta in sorted({max(2 * t, 2), *cfg.thetas}):
        part = cell_partition(g, order, A, theta)
        for c in part.cells:
            if tuple(decode_cell(g, order, A, c.descriptor)) != c.members:
                failures.append(f"{tag}: theta={theta} descriptor does not round-trip")
                break
        rows["cells"].append([t, n, seed, len(A), theta, len(part.cells), oracle, len(part.blocks),
                              part.max_parameters()])
    return {"rows": rows, "failures": failures}


def _workers() -> int:
    raw = os.environ.get("TWL_WORKERS", "")
    cap = int(raw) if raw.strip().isdigit() and int(raw) > 0 else (os.cpu_count() or 1)
    return max(1, cap)


HEADERS = {
    "cutting": ["t", "n", "seed", "setSize", "r", "l", "maxCrossing", "sampleSize", "retries"],
    "regularity": ["t", "n", "seed", "epsilon", "K", "defectRatio", "sampleSize", "retries"],
    "ratio": ["t", "n", "seed", "setSize", "distinct", "ratio"],
    "cells": ["t", "n", "seed", "setSize", "theta", "cells", "oracleClasses", "blocks", "maxParameters"],
}
FILES = {"cutting": "cutting.csv", "regularity": "regularity.csv", "ratio": "neighborhoods.csv",
         "cells": "cells.csv"}


def emit_suite(cfg: SuiteConfig, out_dir: Path) -> dict:
    cases = [(f.t, f.n, s) for f in cfg.families for s in f.seeds]
    if not cases:
        raise InputError("suite config has no cases")
    workers = min(_workers(), len(cases))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(run_case, *zip(*cases), [cfg] * len(cases)))
    else:
        results = [run_case(t, n, s, cfg) for t, n, s in cases]

    out_dir.mkdir(parents=True, exist_ok=True)
    merged = {k: sorted(row for r in results for row in r["rows"][k]) for k in HEADERS}
    for key, name in FILES.items():
        with open(out_dir / name, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(HEADERS[key])
            w.writerows(merged[key])
    ratio_max: dict[int, float] = {}
    for t, *_rest, ratio in merged["ratio"]:
        ratio_max[t] = max(ratio_max.get(t, 0.0), ratio)
    summary = {
        "cases": len(cases),
        "failures": sorted(f for r in results for f in r["failures"]),
        "ratioMax": {str(t): v for t, v in sorted(ratio_max.items())},
        "files": sorted(FILES.values()),
    }
    (out_dir / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return summary
