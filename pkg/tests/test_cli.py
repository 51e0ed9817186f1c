import json
import subprocess
import sys

import pytest

from weakdeg.covers import IFPartition, verify_if_partition
from weakdeg.degeneracy import constant_fmap, parse_sequence, verify_op_sequence
from weakdeg.io import load_graph, parse_partition

from clihelp import SUBCOMMANDS, argv_for, run_cli, write_fixtures


@pytest.fixture(scope="module")
def fixtures(tmp_path_factory):
    return write_fixtures(tmp_path_factory.mktemp("fixtures"))


def _run(args):
    code, out, err = run_cli(args)
    return code, (json.loads(out) if out else None), err


def test_check_class_exit_codes(fixtures):
    assert _run(["check-class", fixtures["c8"]["graph"]])[0] == 0
    code, report, _ = _run(["check-class", fixtures["cube"]["graph"]])
    assert code == 1 and report["in_class"] is False


def test_embedding_commands_reject_edge_lists(fixtures):
    for command in ("check-class", "faces", "audit-lemma1", "discharge", "reduce", "structure"):
        code, _, err = _run([command, fixtures["k5"]["graph"]])
        assert code == 2 and "rotation" in err


def test_missing_file_is_input_error(tmp_path):
    assert _run(["wd", tmp_path / "absent.txt"])[0] == 2


def test_wd_values(fixtures):
    code, report, _ = _run(["wd", fixtures["k5"]["graph"]])
    assert code == 0 and report["value"] == 4 and report["degeneracy"] == 4
    code, report, _ = _run(["wd", fixtures["k5_g6"]["graph"], "--k", "3"])
    assert code == 1 and report["weakly_degenerate"] is False


def test_wd_size_cap(fixtures):
    code, _, err = _run(["wd", fixtures["truncated"]["graph"]])
    assert code == 2 and "cap" in err


def test_wd_certificate_replays(fixtures, tmp_path):
    cert = tmp_path / "c8.seq"
    code, report, _ = _run(["wd", fixtures["c8"]["graph"], "--cert", cert])
    assert code == 0 and report["value"] == 2
    code, report, _ = _run(["verify-seq", fixtures["c8"]["graph"], cert, "--k", "2"])
    assert code == 0 and report["ok"]
    assert _run(["verify-seq", fixtures["c8"]["graph"], cert, "--k", "1"])[0] == 1


def test_reduce_then_verify(fixtures, tmp_path):
    out = tmp_path / "host.seq"
    code, report, _ = _run(["reduce", fixtures["host_special"]["graph"], "--out", out,
                            "--prefer-configurations"])
    assert code == 0 and "ConfigOrdering(C_SPECIAL)" in report["provenance"]
    assert (tmp_path / "host.seq.provenance").read_text().count("\n") == len(report["steps"])
    assert _run(["verify-seq", fixtures["host_special"]["graph"], out])[0] == 0
    g = load_graph(fixtures["host_special"]["graph"]).graph
    assert verify_op_sequence(g, constant_fmap(g, 2), parse_sequence(out.read_text()))


def test_reduce_out_of_class(fixtures):
    code, report, _ = _run(["reduce", fixtures["cube"]["graph"]])
    assert code == 1 and "error" in report


def test_if_partition_certificates(fixtures, tmp_path):
    cert = tmp_path / "seven_face.part"
    assert _run(["if-partition", fixtures["seven_face"]["graph"], "--cert", cert])[0] == 0
    assert _run(["verify-partition", fixtures["seven_face"]["graph"], cert])[0] == 0
    ind, forest = parse_partition(cert.read_text())
    g = load_graph(fixtures["seven_face"]["graph"]).graph
    assert verify_if_partition(g, IFPartition(frozenset(ind), frozenset(forest)))
    code, report, _ = _run(["if-partition", fixtures["k5"]["graph"]])
    assert code == 1 and report == {"partition": "none"}


def test_sfdt_command(fixtures, tmp_path):
    cert = tmp_path / "t"
    files = fixtures["seven_face"]
    code, report, _ = _run(["sfdt", files["graph"], "--cover", files["cover"],
                            "--f", files["cover_f"], "--cert", cert])
    assert code == 0 and len(cert.read_text().splitlines()) == len(report["sfdt"])
    code, report, _ = _run(["sfdt", fixtures["k5"]["graph"], "--cover", fixtures["k5"]["cover"],
                            "--f", fixtures["k5"]["cover_f"]])
    assert code == 1 and report == {"sfdt": "none"}


def test_strict_check(fixtures):
    code, report, _ = _run(["strict-check", fixtures["c8"]["graph"], "--f", fixtures["c8"]["f"]])
    assert code == 1 and len(report["core"]) == 8
    code, report, _ = _run(["strict-check", fixtures["seven_face"]["graph"],
                            "--f", fixtures["seven_face"]["f"]])
    assert code == 1


def test_find_config_and_structure(fixtures):
    code, report, _ = _run(["find-config", fixtures["ca"]["graph"], "--kind", "CA"])
    assert code == 0 and report["count"] == 1
    assert _run(["find-config", fixtures["c8"]["graph"]])[0] == 1
    code, report, _ = _run(["structure", fixtures["truncated"]["graph"]])
    assert code == 0 and report["outcome"] == "configuration"


def test_faces_report_special(fixtures):
    code, report, _ = _run(["faces", fixtures["special_i"]["graph"]])
    assert code == 0
    assert [f["special"] for f in report["faces"] if f.get("special")] == ["I"]


def test_discharge_report(fixtures):
    code, report, _ = _run(["discharge", fixtures["seven_face_tail"]["graph"], "--ledger"])
    assert code == 0 and report["total_after"] == "-12" and report["ledger"]


def test_audit_exit_codes(fixtures):
    assert _run(["audit-lemma1", fixtures["truncated"]["graph"]])[0] == 0
    assert _run(["audit-lemma1", fixtures["cube"]["graph"]])[0] == 1


def test_every_subcommand_is_deterministic(fixtures, tmp_path):
    for name, files in fixtures.items():
        for command in SUBCOMMANDS:
            first = run_cli(argv_for(command, files, tmp_path))
            second = run_cli(argv_for(command, files, tmp_path))
            assert first == second, (name, command)
            assert first[0] in (0, 1, 2)


def test_module_entry_point(fixtures):
    proc = subprocess.run([sys.executable, "-m", "weakdeg", "degeneracy",
                           str(fixtures["k5"]["graph"])], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == 4
