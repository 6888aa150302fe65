import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "mindisp", *map(str, args)],
        capture_output=True,
        cwd=cwd,
    )


def load_schema(name: str) -> dict:
    return json.loads(resources.files("mindisp").joinpath("schemas", f"{name}.json").read_text())


def validate(doc, name: str) -> None:
    jsonschema.validate(doc, load_schema(name))


@pytest.fixture
def files(tmp_path):
    (tmp_path / "empty.txt").write_text("dim=2\n")
    (tmp_path / "centre.txt").write_text("0.5,0.5\n")
    (tmp_path / "bad.txt").write_text("0.5,x\n")
    (tmp_path / "single.fam").write_text("ground=3\n1\n2\n3\n")
    (tmp_path / "tri.fam").write_text("ground=3\n1 2\n2 3\n1 3\n")
    (tmp_path / "empty26.txt").write_text("dim=26\n")
    return tmp_path


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("]")[1].split(".")[0])):
            terminalreporter.write_line(line)
