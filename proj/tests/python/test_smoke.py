import json
import math
import os
import subprocess

import numpy as np
import pytest

import qcorr


def bell():
    psi = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
    return qcorr.DensityMatrix.pure(psi, [2, 2])


def classical_pair():
    return qcorr.DensityMatrix(np.diag([0.5, 0, 0, 0.5]).astype(complex), [2, 2])


def quick():
    cfg = qcorr.OptimizerConfig()
    cfg.restarts = 2
    cfg.max_evals = 1000
    return cfg


def test_mutual_information_values():
    assert qcorr.mutual_information(bell()) == pytest.approx(2.0, abs=1e-9)
    assert qcorr.mutual_information(classical_pair()) == pytest.approx(1.0, abs=1e-9)


def test_partial_trace_and_entropy():
    reduced = qcorr.partial_trace(bell(), [0])
    assert reduced.dims == [2]
    np.testing.assert_allclose(reduced.matrix, np.eye(2) / 2, atol=1e-12)
    assert qcorr.von_neumann_entropy(reduced) == pytest.approx(1.0, abs=1e-12)


def test_validation_error_is_raised():
    with pytest.raises(qcorr.ValidationError):
        qcorr.DensityMatrix(np.diag([1.5, -0.5]).astype(complex))
    assert issubclass(qcorr.ValidationError, qcorr.Error)


def test_classifier_and_ppt():
    assert qcorr.is_cc(classical_pair())["kind"] == "CC"
    assert qcorr.is_cc(bell())["kind"] == "neither"
    assert qcorr.ppt_label(bell()) == "npt"


def test_report_chain():
    report = qcorr.correlation_report(bell(), quick())
    assert report["mutual_information"] == pytest.approx(2.0, abs=1e-9)
    assert report["mutual_information"] >= report["i_cq_lower"] >= report["i_cc_lower"] >= 0
    nats = qcorr.correlation_report(bell(), quick(), units="nats")
    assert nats["mutual_information"] == pytest.approx(2 * math.log(2), abs=1e-9)


def test_broadcast_of_classical_state():
    cfg = qcorr.OptimizerConfig.broadcast_defaults()
    cfg.restarts = 2
    cfg.max_evals = 300
    candidate = qcorr.broadcast_search(classical_pair(), cfg)
    assert candidate["valid"]
    assert abs(candidate["mi_deficit"]) <= 1e-9
    two = qcorr.two_copy_broadcast(bell())
    assert qcorr.broadcast_mutual_information(two) == pytest.approx(4.0, abs=1e-9)


def test_petz_recovery_of_unitary():
    u = np.array([[0, 1], [1, 0]], dtype=complex)
    rho = qcorr.DensityMatrix(np.array([[0.7, 0.2j], [-0.2j, 0.3]]))
    kraus = qcorr.petz_recovery_kraus([u], rho)
    out = qcorr.apply_local([u], 0, rho)
    back = qcorr.apply_local(kraus, 0, out)
    assert qcorr.trace_distance(back, rho) <= 1e-10


def test_state_file_round_trip(tmp_path):
    path = tmp_path / "bell.json"
    qcorr.write_state_file(path, bell())
    back = qcorr.read_state_file(path)
    np.testing.assert_allclose(back.matrix, bell().matrix, atol=0)
    with pytest.raises(qcorr.ParseError):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        qcorr.read_state_file(bad)


@pytest.mark.skipif(not os.environ.get("QCORR_CLI"), reason="command-line tool not available")
def test_cli_classify(tmp_path):
    files = qcorr.write_corpus(tmp_path / "corpus", 1)
    assert len(files) == 4
    out = tmp_path / "verdict.json"
    cc_file = [f for f in files if os.path.basename(f).startswith("cc-")][0]
    subprocess.run([os.environ["QCORR_CLI"], "classify", cc_file, "--out", str(out)], check=True,
                   capture_output=True)
    assert json.loads(out.read_text())["verdict"]["kind"] == "CC"
