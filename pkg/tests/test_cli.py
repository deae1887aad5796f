import subprocess
import sys
from pathlib import Path

import pytest

from infeuler.cli import main

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = Path(__file__).parent / "golden"
RAY_FILE = ROOT / "graphs" / "ray.graph"

EXAMPLES = {
    "stream_ray_one_way.txt": ["stream", "--graph", "ray", "--mode", "one-way", "--count", "3"],
    "extendable_ray.txt": ["extendable", "--graph", "ray", "--mode", "one-way", "--path", "1 1 2"],
    "ball_ray.txt": ["ball", "--graph", "ray", "--vertex", "0", "--radius", "2", "--bound", "5"],
}


def run_cli(argv):
    proc = subprocess.run(
        [sys.executable, "-m", "infeuler", *argv], capture_output=True, cwd=ROOT, check=False
    )
    return proc.returncode, proc.stdout, proc.stderr


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("golden", sorted(EXAMPLES))
def test_golden_outputs_are_byte_stable(golden):
    first = run_cli(EXAMPLES[golden])
    second = run_cli(EXAMPLES[golden])
    assert first == second
    assert first[0] == 0
    assert first[1] == (GOLDEN / golden).read_bytes()


@pytest.mark.parametrize("golden", sorted(EXAMPLES))
def test_alias_file_gives_identical_output(capsys, golden):
    argv = EXAMPLES[golden]
    swapped = [str(RAY_FILE) if a == "ray" else a for a in argv]
    assert call(capsys, *argv) == call(capsys, *swapped)


def test_families(capsys):
    code, out, _ = call(capsys, "families")
    assert code == 0
    assert out.splitlines()[0] == "ray odd_vertex=true conditions=E1"
    assert len(out.splitlines()) == 4


def test_describe(capsys):
    code, out, _ = call(capsys, "describe", "--graph", "loop_star", "--vertex", "0",
                        "--vertex", "1", "--edge", "4")
    assert code == 0
    assert out.splitlines()[1:] == ["vertex 0 degree inf", "vertex 1 absent", "edge 4 joins 0 0"]


def test_two_way_stream_alternates(capsys):
    code, out, _ = call(capsys, "stream", "--graph", "line", "--mode", "two-way", "--count", "4")
    assert code == 0
    assert [line.split()[1] for line in out.splitlines()] == ["1", "-1", "2", "-2"]


def test_extendable_true(capsys):
    code, out, _ = call(capsys, "extendable", "--graph", "line", "--mode", "two-way",
                        "--path", "0 0 2")
    assert (code, out) == (0, "true\n")


def test_extendable_exhausted(capsys, tmp_path):
    fat_line = tmp_path / "fat_line.graph"
    fat_line.write_text(
        "family periodic\norientation two_way\ncell_vertices 1\n"
        "link_edge 0 0\nlink_edge 0 0\nodd_vertex false\nconditions none\n"
    )
    code, out, _ = call(capsys, "extendable", "--graph", str(fat_line), "--mode", "two-way",
                        "--path", "0 0 2 1 0", "--budget", "200")
    assert (code, out) == (4, "exhausted\n")


def test_ball_dot(capsys):
    code, out, _ = call(capsys, "ball", "--graph", "ray", "--vertex", "0", "--radius", "2",
                        "--bound", "5", "--dot")
    assert code == 0
    assert out.startswith("graph") and '0 -- 1 [label="0"];' in out


@pytest.mark.parametrize(
    "argv, code",
    [
        ([], 2),
        (["stream", "--graph", "ray"], 2),
        (["ball", "--graph", "ray", "--vertex", "-1", "--radius", "1", "--bound", "1"], 2),
        (["stream", "--graph", "nope", "--mode", "one-way", "--count", "1"], 3),
        (["stream", "--graph", "ray", "--mode", "one-way", "--start", "1", "--count", "1"], 3),
        (["stream", "--graph", "ray", "--mode", "two-way", "--count", "1"], 3),
        (["extendable", "--graph", "ray", "--mode", "one-way", "--path", "0 0 1 0 0"], 3),
        (["extendable", "--graph", "ray", "--mode", "one-way", "--path", "0 x"], 3),
        (["ball", "--graph", "loop_star", "--vertex", "4", "--radius", "1", "--bound", "1"], 3),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, out, err = call(capsys, *argv)
    assert got == code
    assert err


def test_bad_presentation_names_the_line(capsys, tmp_path):
    bad = tmp_path / "bad.graph"
    bad.write_text("family ray\nodd_vertex maybe\n")
    code, _, err = call(capsys, "describe", "--graph", str(bad))
    assert code == 3 and "line 2" in err


def test_module_entry_point():
    code, out, _ = run_cli(["families"])
    assert code == 0 and b"loop_star" in out
