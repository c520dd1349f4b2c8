import json

import numpy as np
import pytest

from octavic import cli
from octavic.cusps import CuspMatrix


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_algebra(capsys):
    code, out, err = run(capsys, "verify", "--suite", "algebra")
    assert code == 0
    assert "N(xy)=N(x)N(y): pass" in err
    assert json.loads(out)["passed"] is True


def test_verify_wrong_calibration(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "embedding", "--calibration", "identity")
    assert code == 1
    assert json.loads(out)["counterexample"]["check"] == "equivariance of the point map"


def test_bad_arguments(capsys, tmp_path):
    assert run(capsys, "rank", "--primes", "7,10009")[0] == 3
    assert run(capsys, "frobnicate")[0] == 3
    assert run(capsys, "eval-theta", "--char", "zz", "--z1", "1i", "--z2", "1i")[0] == 3
    bad = tmp_path / "c.json"
    bad.write_text(json.dumps({"primes": [13, 11]}))
    assert run(capsys, "--config", str(bad), "verify")[0] == 3
    bad.write_text("{")
    assert run(capsys, "--config", str(bad), "verify")[0] == 3
    assert run(capsys, "--config", str(tmp_path / "none.json"), "verify")[0] == 2


def test_eval_theta(capsys):
    code, out, _ = run(capsys, "eval-theta", "--char", "0000", "--z1", "2i", "--z2", "2i",
                       "--bound", "3")
    rep = json.loads(out)
    assert code == 0 and rep["difference"] < 1e-8
    code, _, _ = run(capsys, "eval-theta", "--char", "0", "--z1", "1i", "--z2", "1i",
                     "--zf", "1i,0,0,0,0,0,0,0")
    assert code == 4


def test_rank_on_fixture(capsys, tmp_path):
    m = np.full((4, 4), 255, dtype=np.uint8)
    np.fill_diagonal(m, 0)
    path = tmp_path / "id4.octt"
    CuspMatrix([None] * 4, m, np.ones(4, dtype=np.int64)).write(path)
    code, out, _ = run(capsys, "rank", "--matrix", str(path))
    rep = json.loads(out)
    assert code == 0 and rep["rank"] == 4 and rep["ranks"] == {"10009": 4, "1000033": 4}
    assert run(capsys, "rank", "--matrix", str(tmp_path / "missing"))[0] == 2


def test_cusp_matrix_and_rank(capsys, tmp_path, cusp_matrix):
    path = tmp_path / "m.octt"
    code, out, _ = run(capsys, "--threads", "2", "cusp-matrix", "--out", str(path))
    rep = json.loads(out)
    assert code == 0 and rep["rows"] == 2047 and rep["isotropic_classes"] == 2079
    assert rep["sha256"] == cusp_matrix.sha256()
    assert run(capsys, "cusp-matrix", "--out", str(tmp_path / "no" / "dir.octt"))[0] == 2


def test_config_hash_in_reports(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"seed": 7, "tolerances": {"cross_sum": 1e-8}}))
    code, out, _ = run(capsys, "--config", str(cfg), "verify", "--suite", "algebra")
    assert code == 0
    loaded = cli.Config.load(cfg)
    assert json.loads(out)["config_sha256"] == loaded.sha256() != cli.Config().sha256()
