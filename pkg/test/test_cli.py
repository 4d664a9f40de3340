import json

from lowestcell import KLTable, cli
from lowestcell.exceptions import VerificationError
from lowestcell.spectra import Spectra


def write_config(tmp_path, document):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(document))
    return str(path)


# Test a run of the info and klbasis tasks for affine A1.
def test_info_klbasis(tmp_path):
    out = tmp_path / "out"
    code = cli.main(["--type", "A1", "--task", "info", "--task", "klbasis", "--radius", "4", "--out", str(out), "--quiet"])

    assert code == cli.EXIT_OK
    info = json.loads((out / "info.json").read_text())
    klbasis = json.loads((out / "klbasis.json").read_text())
    assert info["ok"]
    assert info["length_w0"] == 1
    assert len(info["box"]) == 2
    assert klbasis["radius"] == 4
    assert all(check["verdict"] == "pass" for check in klbasis["checks"])


# Test the decomposition task on the non-extended group with unequal parameters.
def test_xi_unequal(tmp_path):
    out = tmp_path / "out"
    path = write_config(
        tmp_path,
        {"type": "A1", "mode": "non-extended", "weights": {"s0": 1, "s1": 2}, "tasks": ["xi"], "radius": 4, "output": str(out)},
    )

    assert cli.main(["--config", path, "--quiet"]) == cli.EXIT_OK
    assert json.loads((out / "xi.json").read_text())["failures"] == []


# Test that reports are served from the cache on a second run.
def test_cache(tmp_path):
    path = write_config(tmp_path, {"type": "A1", "radius": 4, "cache": str(tmp_path / "cache"), "output": str(tmp_path / "out")})

    assert cli.main(["--config", path, "--quiet"]) == cli.EXIT_OK
    first = (tmp_path / "out" / "info.json").read_text()
    assert cli.main(["--config", path, "--quiet"]) == cli.EXIT_OK
    assert (tmp_path / "out" / "info.json").read_text() == first
    assert list((tmp_path / "cache").iterdir())


# Test that conjugate generators with different weights are a usage error.
def test_weight_conflict(tmp_path):
    path = write_config(tmp_path, {"type": "A2", "weights": {"s0": 1, "s1": 2, "s2": 1}, "output": str(tmp_path / "out")})

    assert cli.main(["--config", path, "--quiet"]) == cli.EXIT_USAGE


# Test that a group must be named.
def test_missing_type():
    assert cli.main(["--task", "info", "--quiet"]) == cli.EXIT_USAGE


# Test that a ball too small for the lowest cell is refused before any computation.
def test_radius_too_small(tmp_path):
    code = cli.main(["--type", "A1", "--task", "verify", "--radius", "1", "--out", str(tmp_path), "--quiet"])

    assert code == cli.EXIT_USAGE


# Test that a prime which is not a prime is a usage error.
def test_bad_field(tmp_path):
    code = cli.main(["--type", "A1", "--task", "spectra", "--field", "6", "--out", str(tmp_path), "--quiet"])

    assert code == cli.EXIT_USAGE


# Test that both decomposition checks of the xi task report their real outcome.
def test_xi_checks(tmp_path):
    out = tmp_path / "out"
    code = cli.main(["--type", "A2", "--task", "xi", "--radius", "5", "--out", str(out), "--quiet"])

    assert code == cli.EXIT_OK
    report = json.loads((out / "xi.json").read_text())
    assert report["checked"] > 0
    assert [check["verdict"] for check in report["checks"]] == ["pass", "pass"]
    assert report["second_failures"] == []


# Test that a failure of C_{w1 w0 p_x w2^-1} = C_{w1 w0 w2^-1} S_x is recorded with its witness.
def test_xi_second_failure(tmp_path, monkeypatch):
    original = KLTable.xi_verify

    def failing(self, w1, x, w2, check_second=True):
        if check_second:
            raise VerificationError("differs", witness=(w1, list(x), w2))
        return original(self, w1, x, w2, check_second=False)

    monkeypatch.setattr(KLTable, "xi_verify", failing)
    out = tmp_path / "out"
    code = cli.main(["--type", "A1", "--task", "xi", "--radius", "4", "--out", str(out), "--quiet"])

    assert code == cli.EXIT_VERIFICATION
    report = json.loads((out / "xi.json").read_text())
    assert [check["verdict"] for check in report["checks"]] == ["pass", "fail"]
    assert len(report["second_failures"]) == report["checked"]
    assert len(report["second_failures"][0]["witness"]) == 3


# Test that the spectra task compares λ(det) with the rank at every grid point.
def test_spectra_det_rank(tmp_path):
    out = tmp_path / "out"
    code = cli.main(["--type", "A1", "--task", "spectra", "--radius", "6", "--out", str(out), "--quiet"])

    assert code == cli.EXIT_OK
    report = json.loads((out / "spectra.json").read_text())
    assert report["det_rank_mismatches"] == []
    assert all(check["verdict"] == "pass" for check in report["checks"])


# Test that a grid point where λ(det) and the rank disagree fails the spectra task.
def test_spectra_det_rank_mismatch(tmp_path, monkeypatch):
    monkeypatch.setattr(Spectra, "det_rank_agree", lambda self, t: t.coordinates[0] != 3)
    out = tmp_path / "out"
    code = cli.main(["--type", "A1", "--task", "spectra", "--radius", "6", "--out", str(out), "--quiet"])

    assert code == cli.EXIT_VERIFICATION
    report = json.loads((out / "spectra.json").read_text())
    assert len(report["det_rank_mismatches"]) == 1
    assert report["checks"][1]["verdict"] == "fail"
