"""Random skew forms: primitivity defect and presymplectic reduction statistics.

    python scripts/primitivity_sweep.py [--count N] [--max-dim D] [--seed S]
"""
import argparse
import random
from collections import Counter
from dataclasses import dataclass

from biinvariant.exact_linalg import rank
from biinvariant.primitivity import is_primitive, presymplectic_reduce, standard_symplectic
from biinvariant.sampling import DEFAULT_SEED, random_skew_form


@dataclass
class PrimitivityConfig:
    count: int = 1000
    max_dim: int = 8
    seed: int = DEFAULT_SEED


def run(cfg: PrimitivityConfig):
    rng = random.Random(cfg.seed)
    ranks, primitive, reduction_bad = Counter(), 0, 0
    for _ in range(cfg.count):
        n = rng.randint(1, cfg.max_dim)
        lam = random_skew_form(rng, n)
        r = rank(lam.coeffs)
        ranks[(n, r)] += 1
        if is_primitive(lam) != lam.is_zero():
            primitive += 1
        red = presymplectic_reduce(lam)
        q = red.projection
        if red.reduced_dim != r or q.T @ standard_symplectic(r // 2) @ q != lam.coeffs:
            reduction_bad += 1
    return ranks, primitive, reduction_bad


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=PrimitivityConfig.count)
    p.add_argument("--max-dim", type=int, default=PrimitivityConfig.max_dim)
    p.add_argument("--seed", type=int, default=PrimitivityConfig.seed)
    a = p.parse_args()
    cfg = PrimitivityConfig(a.count, a.max_dim, a.seed)
    ranks, primitive, bad = run(cfg)
    print("dim  rank  count")
    for (n, r), c in sorted(ranks.items()):
        print(f"{n:>3}  {r:>4}  {c:>5}")
    print(f"\nprimitive-but-nonzero or nonprimitive-zero: {primitive}")
    print(f"reduction identity failures: {bad}")


if __name__ == "__main__":
    main()
