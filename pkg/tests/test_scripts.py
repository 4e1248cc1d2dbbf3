import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize(
    "name,args,expect",
    [
        ("calibrate_root_vectors.py", [], "CALIBRATION = {"),
        ("girth_table.py", ["--max-edges", "1000"], "G2\tF2\t16\t[16, 16, 16, 16]"),
        ("witness.py", ["--max-height", "4"], "4\tTrue\tTrue\t8\t8"),
    ],
)
def test_script_runs(name, args, expect):
    r = subprocess.run([sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True, timeout=300)
    assert r.returncode == 0, r.stderr
    assert expect in r.stdout
