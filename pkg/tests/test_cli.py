import io
import subprocess
import sys

import pytest

from toric_ccc import bundled
from toric_ccc.cli import run
from toric_ccc.errors import FanFileError
from toric_ccc.fanfile import loads, serialize

from conftest import FAN_NAMES


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_ext_p112():
    code, out, _ = call("ext", "p112.fan", "--from", "0,0,0", "--to", "0,0,3")
    assert code == 0
    assert out.splitlines() == ["Ext^0 = 6", "Ext^1 = 0", "Ext^2 = 0"]


def test_ext_p1():
    assert call("ext", "p1.fan", "--from", "0,0", "--to", "0,1")[1].splitlines()[0] == "Ext^0 = 2"
    code, out, _ = call("ext", "p1.fan", "--from", "0,0", "--to", "0,-1")
    assert code == 0 and all(line.endswith("= 0") for line in out.splitlines())


def test_ample():
    code, out, _ = call("ample", "p112.fan", "--divisor", "1,0,0")
    assert code == 0 and out.splitlines()[0] == "Q-ample: yes"
    assert call("ample", "p112.fan", "--divisor", "0,0,0")[1].splitlines()[0] == "Q-ample: no"


@pytest.mark.parametrize("argv", [
    ["validate", "p2.fan"], ["gale", "gerby_p1.fan"], ["rigidify", "football.fan"],
    ["lift", "p112.fan"], ["sections", "p112.fan", "--divisor", "2,0,0"],
    ["kappa", "p112.fan", "--divisor", "1,0,0", "--simplify"],
    ["convolve", "p1.fan", "--left", "0,1", "--right", "0,1", "--probe", "0,0"],
    ["pullback", "--morphism", "diagonal_p1.fan-map", "--divisor", "1,0,1,0"],
    ["resolve", "quadrant.fan", "--ideal", "z0^2,z0*z1"],
    ["lambda-svg", "p112.fan", "--window", "0,0,1,1"],
])
def test_commands_succeed_deterministically(argv):
    first = call(*argv)
    assert first[0] == 0, first[2]
    assert first == call(*argv)


def test_gale_output():
    out = call("gale", "gerby_p1.fan")[1]
    assert "DG(beta): Z" in out and "generic stabilizer: [2]" in out


def test_convolve_probe():
    out = call("convolve", "p1.fan", "--left", "0,1", "--right", "0,1", "--probe", "0,0")[1]
    assert "Ext^0 = 3" in out


def test_pullback_output():
    out = call("pullback", "--morphism", "diagonal_p1.fan-map", "--divisor", "1,0,2,0")[1]
    assert "Ext^0 = 4" in out


def test_svg_to_file(tmp_path):
    target = tmp_path / "l.svg"
    code, out, _ = call("lambda-svg", "p112.fan", "-o", str(target))
    assert code == 0 and target.read_text().startswith("<?xml")


@pytest.mark.parametrize("argv,code", [
    ([], 2),
    (["ext", "p112.fan", "--from", "0,0,0"], 2),
    (["ext", "p112.fan", "--from", "0,0", "--to", "0,0,0"], 2),
    (["ample", "p112.fan", "--divisor", "a,b,c"], 2),
    (["lambda-svg", "p112.fan", "--window", "0,0,1"], 2),
    (["kappa", "quadrant.fan", "--divisor", "0,0"], 1),
    (["lambda-svg", "p1.fan"], 1),
    (["resolve", "quadrant.fan", "--ideal", "z0+z1"], 1),
    (["validate", "no_such.fan"], 1),
])
def test_error_codes(argv, code):
    got, _, err = call(*argv)
    assert got == code
    lines = err.strip().splitlines()
    assert len(lines) == 1 and lines[0].startswith("error: ")


def test_invalid_fan_file(tmp_path):
    p = tmp_path / "bad.fan"
    p.write_text("[lattice]\nfree_rank: 2\ntorsion:\n[rays]\n1 0\n2 0\n[fan]\n0 1\n")
    code, out, err = call("validate", str(p))
    assert code == 1 and "violation:" in out
    assert call("gale", str(p))[2].startswith("error: InvalidFanError")


def test_parse_errors_carry_line_numbers():
    with pytest.raises(FanFileError) as e:
        loads("[lattice]\nfree_rank: 1\ntorsion: 2\n[rays]\n1 ; 1 1\n[fan]\n0\n")
    assert e.value.line == 5
    with pytest.raises(FanFileError) as e:
        loads("[lattice]\nfree_rank: x\n")
    assert e.value.line == 2
    with pytest.raises(FanFileError):
        loads("1 0\n")


@pytest.mark.parametrize("name", FAN_NAMES)
def test_round_trip(name):
    F = bundled(name)
    text = serialize(F)
    assert loads(text) == F
    assert serialize(loads(text)) == text


def test_non_canonical_torsion_normalized():
    F = loads("[lattice]\nfree_rank: 1\ntorsion: 2 3\n[rays]\n1 ; 1 0\n-1 ; 0 1\n[fan]\n0\n1\n")
    assert F.lattice.invariants == (6,)
    assert serialize(loads(serialize(F))) == serialize(F)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "toric_ccc", "ample", "p112.fan", "--divisor", "1,0,0"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("Q-ample: yes")
