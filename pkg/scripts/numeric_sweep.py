"""Group-level Ad(exp tZ) check on every realized catalog entry.

    python scripts/numeric_sweep.py [--seed S] [--samples N] [--tol T]
"""
import argparse
from dataclasses import dataclass

from biinvariant.catalog import standard_catalog, su
from biinvariant.invariant_forms import invariant_two_forms, lambda2_basis
from biinvariant.numeric_check import (
    DEFAULT_SEED,
    INVARIANCE_TOL,
    ad_exp_invariance,
    finite_difference_check,
)


@dataclass
class NumericConfig:
    seed: int = DEFAULT_SEED
    samples: int = 5
    tol: float = INVARIANCE_TOL


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=NumericConfig.seed)
    p.add_argument("--samples", type=int, default=NumericConfig.samples)
    p.add_argument("--tol", type=float, default=NumericConfig.tol)
    cfg = NumericConfig(**vars(p.parse_args()))
    print(f"{'algebra':<28} forms  max rel err   fd err")
    for e in standard_catalog():
        if e.realization is None or e.dim == 0:
            continue
        errs = [ad_exp_invariance(e, f, samples=cfg.samples, tol=cfg.tol, seed=cfg.seed).max_relative_error
                for f in invariant_two_forms(e.algebra)]
        fd = finite_difference_check(e, seed=cfg.seed)
        worst = max(errs, default=0.0)
        print(f"{e.name:<28} {len(errs):>5}  {worst:11.2e}  {fd.max_abs_error:7.1e}")
    print("\nnegative controls on su(2) (not invariant):")
    for f in lambda2_basis(3, "g"):
        r = ad_exp_invariance(su(2), f, tol=cfg.tol, seed=cfg.seed)
        print(f"  {f.pretty():<10} max rel err {r.max_relative_error:.3f}  pass={r.passed}")


if __name__ == "__main__":
    main()
