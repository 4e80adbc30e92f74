"""Ext table between the line bundles O(0), ..., O(n) on a weighted projective line or plane.

Each entry is checked against weighted monomial counts: degree 0 has the
monomials of degree l - k, and the top degree n has those of degree
k - l - sum(weights).

    python scripts/exceptional_collection.py --fan p112.fan --weights 1,1,2 --top 3
"""
from dataclasses import dataclass

from _config import parse_config
from toric_ccc.ccc import hom_complex_betti, kappa_divisor
from toric_ccc.fanfile import parse, resolve_path
from toric_ccc.linebundle import count_weighted_monomials


@dataclass(frozen=True)
class Config:
    fan: str = "p112.fan"
    weights: tuple = (1, 1, 2)
    top: int = 3
    ray: int = 0  # O(k) is k times the divisor of this ray; it should have weight 1


def expected_ext(weights, d) -> dict:
    n = len(weights) - 1
    out = {0: count_weighted_monomials(weights, d)}
    top = count_weighted_monomials(weights, -d - sum(weights))
    out[n] = out.get(n, 0) + top
    return {k: v for k, v in out.items() if v}


def main(cfg: Config) -> int:
    F = parse(resolve_path(cfg.fan))
    objs = [kappa_divisor(F, tuple(k if j == cfg.ray else 0 for j in range(F.nrays)))
            for k in range(cfg.top + 1)]
    width = 10
    print("k\\l".ljust(6) + "".join(f"O({l})".rjust(width) for l in range(cfg.top + 1)))
    bad = 0
    for k, E in enumerate(objs):
        row = []
        for l, G in enumerate(objs):
            b = hom_complex_betti(E, G)
            expected = expected_ext(cfg.weights, l - k)
            bad += b != expected
            cell = ",".join(f"{d}:{v}" for d, v in sorted(b.items())) or "0"
            row.append((cell if b == expected else cell + "!").rjust(width))
        print(f"O({k})".ljust(6) + "".join(row))
    print(f"entries with unexpected Ext: {bad}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main(parse_config(Config, __doc__)))
