"""Random sweep of the duality and convolution identities for Ext on the bundled complete fans.

For random divisor pairs (c1, c2) it compares
Ext(k(c1), k(c2)) with Ext(k(-c2), k(-c1)), and Ext from O(k) into the convolution
k(c1) * k(c2) with Ext from O(k) into k(c1 + c2).

    python scripts/ext_symmetry_sweep.py --pairs 20 --seed 1
"""
import random
import time
from dataclasses import dataclass

from _config import parse_config
from toric_ccc import bundled
from toric_ccc.ccc import convolve, hom_complex_betti, kappa_divisor


@dataclass(frozen=True)
class Config:
    fans: tuple = ("p1", "p2", "p1xp1", "p112", "football", "gerby_p1", "p2_subdivided")
    pairs: int = 10
    low: int = -1
    high: int = 2
    probes: tuple = (-1, 0, 1, 2)
    seed: int = 0


def main(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    failures = 0
    print(f"{'fan':<15}{'pairs':>6}{'duality':>9}{'monoid':>8}{'secs':>7}")
    for name in cfg.fans:
        F = bundled(name)
        t0 = time.perf_counter()
        dual_bad = mono_bad = 0
        probes = [kappa_divisor(F, (k,) + (0,) * (F.nrays - 1)) for k in cfg.probes]
        for _ in range(cfg.pairs):
            c1 = tuple(rng.randint(cfg.low, cfg.high) for _ in range(F.nrays))
            c2 = tuple(rng.randint(cfg.low, cfg.high) for _ in range(F.nrays))
            E1, E2 = kappa_divisor(F, c1), kappa_divisor(F, c2)
            neg = lambda c: kappa_divisor(F, tuple(-x for x in c))
            dual_bad += hom_complex_betti(E1, E2) != hom_complex_betti(neg(c2), neg(c1))
            conv = convolve(E1, E2)
            total = kappa_divisor(F, tuple(a + b for a, b in zip(c1, c2)))
            mono_bad += any(hom_complex_betti(P, conv) != hom_complex_betti(P, total) for P in probes)
        failures += dual_bad + mono_bad
        print(f"{name:<15}{cfg.pairs:>6}{dual_bad:>9}{mono_bad:>8}{time.perf_counter() - t0:>7.1f}")
    print(f"mismatches: {failures}")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main(parse_config(Config, __doc__)))
