import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def run(name, *args):
    return subprocess.run([sys.executable, str(SCRIPTS / name), *args], capture_output=True,
                          text=True, timeout=120)


def test_nichols_table():
    out = run("nichols_table.py", "--max-n", "4")
    assert out.returncode == 0
    assert "n=2: 1 3 1" in out.stdout and "integral ['x^3'], eps 0" in out.stdout


def test_braided_line_integrals():
    out = run("braided_line_integrals.py", "--max-cap", "4", "--dual-cap", "3")
    assert out.returncode == 0
    rows = [line.split() for line in out.stdout.splitlines()[1:]]
    assert [r[1] for r in rows] == ["0"] * 4
