import json
import os
import pathlib
import subprocess

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
CLI = os.environ.get("RESKIT_CLI", str(ROOT / "build" / "tools" / "resilience-kit"))
SCHEMAS = pathlib.Path(os.environ.get("RESKIT_SCHEMAS", ROOT / "schemas"))
FIXTURES = pathlib.Path(os.environ.get("RESKIT_FIXTURES", ROOT / "tests" / "fixtures"))


@pytest.fixture
def cli():
    def run(*args, check=True):
        proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)
        if check and proc.returncode != 0:
            raise AssertionError(f"exit {proc.returncode}: {proc.stderr}")
        return proc

    return run


@pytest.fixture
def schema():
    def load(name):
        return json.loads((SCHEMAS / f"{name}.schema.json").read_text())

    return load


@pytest.fixture
def fixture_csv():
    return FIXTURES / "synthetic.csv"
