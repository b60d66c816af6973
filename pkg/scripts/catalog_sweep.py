"""Classify every standard catalog entry plus random direct sums and print a table.

    python scripts/catalog_sweep.py [--sums N] [--seed S] [--json OUT]
"""
import argparse
import json
import random
import time
from dataclasses import asdict, dataclass

from biinvariant.catalog import standard_catalog
from biinvariant.ce_cohomology import betti_numbers, vanishing_criterion
from biinvariant.invariant_forms import classify
from biinvariant.sampling import DEFAULT_SEED, random_direct_sum


@dataclass
class SweepConfig:
    sums: int = 20
    seed: int = DEFAULT_SEED
    json_out: str | None = None


@dataclass
class Row:
    name: str
    dim_g: int
    dim_a: int
    forms: int
    expected: int
    betti: list
    criterion: bool
    ok: bool
    seconds: float


def sweep(cfg: SweepConfig) -> list[Row]:
    rng = random.Random(cfg.seed)
    entries = standard_catalog() + [random_direct_sum(rng) for _ in range(cfg.sums)]
    rows = []
    for e in entries:
        t0 = time.perf_counter()
        rep = classify(e.algebra, strict=False)
        betti = betti_numbers(e.algebra)
        holds, _ = vanishing_criterion(e.algebra)
        rows.append(Row(e.name, rep.dim_g, rep.dim_a, rep.dim_invariant_space, rep.expected_dim,
                        betti, holds, rep.ok, time.perf_counter() - t0))
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sums", type=int, default=SweepConfig.sums)
    p.add_argument("--seed", type=int, default=SweepConfig.seed)
    p.add_argument("--json", dest="json_out")
    cfg = SweepConfig(**vars(p.parse_args()))
    rows = sweep(cfg)
    width = max(len(r.name) for r in rows)
    print(f"{'algebra':<{width}}  dim g  dim a  forms  C(a,2)  b0 b1 b2  H2-crit  ok    time")
    for r in rows:
        b = " ".join(f"{x:>2}" for x in r.betti)
        print(f"{r.name:<{width}}  {r.dim_g:>5}  {r.dim_a:>5}  {r.forms:>5}  {r.expected:>6}  {b}"
              f"  {str(r.criterion):<7}  {str(r.ok):<5} {r.seconds:5.2f}s")
    bad = [r.name for r in rows if not r.ok or r.forms != r.expected]
    print(f"\n{len(rows)} algebras, {len(bad)} failures {bad}")
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            json.dump([asdict(r) for r in rows], fh, indent=2)


if __name__ == "__main__":
    main()
