"""End-to-end tests of the `cfr` command line interface (in-process)."""

import json

import pytest

from cfr.cli import main

PRIME = "32771"


def run(argv):
    return main(argv)


def test_admissible(capsys):
    assert run(["admissible", "14"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["admissible"] is True
    assert run(["admissible", "8"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["admissible"] is False


def test_missing_artifact_is_io_error(tmp_path, capsys):
    assert run(["congruence", "verify", str(tmp_path / "nope.json"),
                "--primes", PRIME]) == 4


def test_surface_build_and_verify(tmp_path, capsys):
    art = tmp_path / "s26.json"
    assert run(["surface", "build", "s26", "--seed", "7",
                "--primes", PRIME, "--out", str(art)]) == 0
    obj = json.loads(art.read_text())
    assert obj["kind"] == "surface"
    assert obj["surfaceId"] == 26
    assert obj["dimDegree"] == [2, 7]
    assert obj["generatorProfile"] == {"3": 14}

    cert = tmp_path / "cert.json"
    assert run(["congruence", "verify", str(art),
                "--out", str(cert)]) == 0
    cobj = json.loads(cert.read_text())
    assert cobj["kind"] == "certificate"
    assert cobj["agreement"] is True
    summary = cobj["certificates"][0][0]
    assert summary["secantLineCount"] == 5
    assert summary["linesInZ"] == 6
    assert summary["passed"] is True


def test_surface_build_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert run(["surface", "build", "s14", "--seed", "3",
                    "--primes", PRIME, "--out", str(out)]) == 0
    oa, ob = json.loads(a.read_text()), json.loads(b.read_text())
    oa.pop("timestamp"), ob.pop("timestamp")
    assert oa == ob


def test_bad_surface_id(tmp_path):
    assert run(["surface", "build", "s15", "--primes", PRIME,
                "--out", str(tmp_path / "x.json")]) == 4
