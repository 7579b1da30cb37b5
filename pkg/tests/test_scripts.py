import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


@pytest.mark.parametrize("name, args", [
    ("certification_sweep.py", ["--pairs", "2", "--n-grid", "30"]),
    ("collision_survey.py", ["--r0", "1"]),
    ("render_regions.py", ["--p", "1", "--outdir", "{tmp}"]),
])
def test_script_runs(tmp_path, name, args):
    args = [a.replace("{tmp}", str(tmp_path)) for a in args]
    res = subprocess.run([sys.executable, str(SCRIPTS / name), *args],
                         capture_output=True, text=True, cwd=tmp_path)
    assert res.returncode == 0, res.stderr
