import json

import pytest

from hellylab import cli, codes
from hellylab.serialize import family_to_json, load_schema, points_to_json

import jsonschema


@pytest.fixture
def w4():
    return codes.w4_family(), codes.w4_points()


@pytest.fixture
def write_json(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return write


@pytest.fixture
def w4_files(w4, write_json):
    family, S = w4
    return write_json("w4.json", family_to_json(family)), write_json("w4_s.json", points_to_json(S))


def check_schema(report):
    name = "error" if "error" in report else report["command"]
    jsonschema.validate(report, load_schema(name))


@pytest.fixture
def run_cli():
    """Run the CLI in-process and validate the report against its schema."""

    def run(*argv):
        code, report = cli.run([str(a) for a in argv])
        check_schema(report)
        return code, report

    return run
