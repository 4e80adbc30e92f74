"""Write stack and coarse SVG pictures of the Lagrangian modulo M and count their pieces.

    python scripts/render_lambda.py --fan p112.fan --out-dir out
"""
import re
from dataclasses import dataclass
from pathlib import Path

from _config import parse_config
from toric_ccc.fanfile import parse, resolve_path
from toric_ccc.microlocal import lambda_svg


@dataclass(frozen=True)
class Config:
    fan: str = "p112.fan"
    window: tuple = (0.0, 0.0, 1.0, 1.0)
    out_dir: str = "lambda_out"
    precision: int = 6


def counts(svg: str) -> dict:
    out = {}
    for gid, body in re.findall(r'<g class="(?:ray|cone)" id="([^"]+)"[^>]*>(.*?)</g>', svg, re.S):
        out[gid] = len(re.findall(r"<(?:path|circle) ", body))
    return out


def main(cfg: Config) -> int:
    from fractions import Fraction
    F = parse(resolve_path(cfg.fan))
    window = tuple(Fraction(x).limit_denominator(10**6) for x in cfg.window)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(cfg.fan).stem
    table = {}
    for mode in ("stack", "coarse"):
        svg = lambda_svg(F, window, precision=cfg.precision, coarse=mode == "coarse")
        (out / f"{stem}_{mode}.svg").write_text(svg)
        table[mode] = counts(svg)
    print(f"{'group':<12}{'stack':>8}{'coarse':>8}")
    for gid in table["stack"]:
        print(f"{gid:<12}{table['stack'][gid]:>8}{table['coarse'].get(gid, 0):>8}")
    print(f"wrote {out}/{stem}_stack.svg and {out}/{stem}_coarse.svg")
    return 0


if __name__ == "__main__":
    raise SystemExit(main(parse_config(Config, __doc__)))
