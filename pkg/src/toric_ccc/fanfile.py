"""Plain-text stacky-fan files and fan-map files.

A fan file has three sections::

    # weighted projective plane P(1,1,2)
    [lattice]
    free_rank: 2
    torsion:
    [rays]
    1 0
    0 1
    -1 -2
    [fan]
    0 1
    1 2
    2 0

Each ray line is the free part, optionally followed by ``;`` and the torsion
part.  Torsion orders need not be in invariant-factor form; they are
normalized on load and rays are rewritten accordingly.  ``[fan]`` lists cones
by ray indices; faces are implied and non-maximal cones are dropped.

A fan-map file names a source and a target fan (paths relative to the map
file) and the matrix of ``f`` acting on lattice generators, one row per target
generator::

    [source]
    path: p1.fan
    [target]
    path: p1xp1.fan
    [matrix]
    1
    1
"""
from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

from .errors import FanFileError
from .stackyfan import StackyFan, StackyFanMorphism
from .zlat import FGAbelianGroup, GroupHom, IntMatrix, normalize_group


def _sections(text: str):
    """Yield ``(section, lineno, line)`` for meaningful lines."""
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise FanFileError(f"unterminated section header {line!r}", lineno)
            section = line[1:-1].strip().lower()
            yield section, lineno, None
            continue
        if section is None:
            raise FanFileError("content before the first section header", lineno)
        yield section, lineno, line


def _ints(text: str, lineno: int) -> list:
    parts = text.replace(",", " ").split()
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FanFileError(f"expected integers, got {text!r}", lineno) from None


def _key_value(line: str, lineno: int):
    if ":" not in line:
        raise FanFileError(f"expected 'key: value', got {line!r}", lineno)
    k, v = line.split(":", 1)
    return k.strip().lower(), v.strip()


def loads(text: str, name: str = "") -> StackyFan:
    free_rank = None
    torsion = []
    rays = []
    cones = []
    seen = set()
    for section, lineno, line in _sections(text):
        if line is None:
            if section not in ("lattice", "rays", "fan"):
                raise FanFileError(f"unknown section [{section}]", lineno)
            if section in seen:
                raise FanFileError(f"duplicate section [{section}]", lineno)
            seen.add(section)
            continue
        if section == "lattice":
            k, v = _key_value(line, lineno)
            if k == "free_rank":
                vals = _ints(v, lineno)
                if len(vals) != 1 or vals[0] < 0:
                    raise FanFileError("free_rank must be one nonnegative integer", lineno)
                free_rank = vals[0]
            elif k == "torsion":
                torsion = _ints(v, lineno)
                if any(a < 1 for a in torsion):
                    raise FanFileError("torsion orders must be positive", lineno)
            else:
                raise FanFileError(f"unknown lattice key {k!r}", lineno)
        elif section == "rays":
            if free_rank is None:
                raise FanFileError("[rays] before free_rank is set", lineno)
            free_txt, _, tor_txt = line.partition(";")
            free = _ints(free_txt, lineno)
            tor = _ints(tor_txt, lineno) if tor_txt.strip() else [0] * len(torsion)
            if len(free) != free_rank:
                raise FanFileError(f"ray has {len(free)} free coordinates, expected {free_rank}", lineno)
            if len(tor) != len(torsion):
                raise FanFileError(f"ray has {len(tor)} torsion coordinates, expected {len(torsion)}", lineno)
            rays.append((free + tor, lineno))
        elif section == "fan":
            idx = _ints(line, lineno)
            for i in idx:
                if not 0 <= i < len(rays):
                    raise FanFileError(f"ray index {i} out of range", lineno)
            cones.append(idx)
    for sec in ("lattice", "rays", "fan"):
        if sec not in seen:
            raise FanFileError(f"missing section [{sec}]")
    if free_rank is None:
        raise FanFileError("missing free_rank")
    group, iso = normalize_group(free_rank, torsion)
    new_rays = [group.reduce(iso @ tuple(r)) for r, _ in rays]
    return StackyFan.from_data(group, new_rays, cones, name=name)


def parse(path) -> StackyFan:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise FanFileError(f"cannot read {path}: {e.strerror}") from None
    return loads(text, name=path.stem)


def serialize(F: StackyFan) -> str:
    N = F.lattice
    out = ["[lattice]", f"free_rank: {N.free_rank}",
           "torsion: " + " ".join(str(a) for a in N.invariants) if N.invariants else "torsion:",
           "[rays]"]
    for b in F.rays:
        free = " ".join(str(x) for x in b[:N.free_rank])
        if N.invariants:
            out.append(f"{free} ; " + " ".join(str(x) for x in b[N.free_rank:]))
        else:
            out.append(free)
    out.append("[fan]")
    for c in F.maximal_cones:
        out.append(" ".join(str(i) for i in c))
    return "\n".join(out) + "\n"


def load_morphism(path) -> StackyFanMorphism:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise FanFileError(f"cannot read {path}: {e.strerror}") from None
    paths = {}
    rows = []
    for section, lineno, line in _sections(text):
        if line is None:
            if section not in ("source", "target", "matrix"):
                raise FanFileError(f"unknown section [{section}]", lineno)
            continue
        if section in ("source", "target"):
            k, v = _key_value(line, lineno)
            if k != "path":
                raise FanFileError(f"unknown key {k!r}", lineno)
            paths[section] = v
        else:
            rows.append((_ints(line, lineno), lineno))
    for sec in ("source", "target"):
        if sec not in paths:
            raise FanFileError(f"missing [{sec}] path")
    src = parse(path.parent / paths["source"])
    tgt = parse(path.parent / paths["target"])
    if len(rows) != tgt.lattice.ngens:
        raise FanFileError(f"matrix has {len(rows)} rows, expected {tgt.lattice.ngens}")
    for r, lineno in rows:
        if len(r) != src.lattice.ngens:
            raise FanFileError(f"matrix row has {len(r)} entries, expected {src.lattice.ngens}", lineno)
    try:
        f = GroupHom(src.lattice, tgt.lattice,
                     IntMatrix.from_rows([r for r, _ in rows], src.lattice.ngens))
    except ValueError as e:
        raise FanFileError(str(e)) from None
    return StackyFanMorphism(src, tgt, f, name=path.stem)


def bundled_dir() -> Path:
    return Path(str(resources.files("toric_ccc") / "fans"))


def bundled(name: str) -> StackyFan:
    """Load a fan shipped with the package, e.g. ``bundled("p112")``."""
    return parse(bundled_dir() / f"{name}.fan")


def bundled_morphism(name: str) -> StackyFanMorphism:
    return load_morphism(bundled_dir() / f"{name}.fan-map")


def resolve_path(arg: str) -> Path:
    """A path as given, falling back to the bundled fan directory."""
    p = Path(arg)
    if p.exists() or os.sep in arg:
        return p
    q = bundled_dir() / arg
    return q if q.exists() else p
