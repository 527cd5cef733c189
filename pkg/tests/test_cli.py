import subprocess
import sys

from cdckit.cli import main, read_cdc, read_fdrmc


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bound_table11(capsys):
    code, out, _ = run_cli(["bound", "-q", "2", "-n", "18", "-d", "8",
                            "-k", "9", "--source", "table11"], capsys)
    assert code == 0
    assert "18015215399116937" in out
    assert "previous bound" in out and "1015379" in out


def test_bound_example_source(capsys):
    code, out, _ = run_cli(["bound", "-q", "3", "-n", "19", "-d", "8",
                            "-k", "9", "--source", "example:4"], capsys)
    assert code == 0
    assert "42391159260137223209995120164" in out


def test_bound_source_mismatch_flagged(capsys):
    code, out, _ = run_cli(["bound", "-q", "3", "-n", "15", "-d", "6",
                            "-k", "6", "--source", "th44"], capsys)
    assert code == 0
    assert "150102574834751811" in out
    assert "MISMATCH" in out and "150102606086671257" in out


def test_bound_auto_uses_registry(capsys):
    code, out, _ = run_cli(["bound", "-q", "3", "-n", "16", "-d", "6",
                            "-k", "6"], capsys)
    assert code == 0 and "12158308561614895971" in out


def test_table11_text_and_exit(capsys):
    code, out, _ = run_cli(["table11"], capsys)
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("A_")]
    assert len(lines) == 65
    assert all(l.endswith("ok") for l in lines)


def test_table11_csv(capsys):
    code, out, _ = run_cli(["table11", "--format", "csv"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "q,n,d,k,new,old,diff,status"
    assert len(lines) == 66
    assert lines[1].startswith("2,18,8,9,18015215399116937,")


def test_table11_consistency(capsys):
    code, out, _ = run_cli(["table11", "--consistency"], capsys)
    assert code == 0
    assert "53/65 rows match" in out


def test_table11_corrupted_registry(tmp_path, capsys):
    bad = tmp_path / "reg.txt"
    bad.write_text("2 18 8 9 18015215399116938 18015215398101558\n")
    code, out, err = run_cli(["table11", "--registry", str(bad)], capsys)
    assert code == 1
    assert "MISMATCH" in out and "FAILED" in err


def test_build_check_round_trip(tmp_path, capsys):
    out1 = tmp_path / "ml.cdc"
    code, _, _ = run_cli(["build", "--multilevel", "1100,0011", "-q", "2",
                          "--delta", "2", "--out", str(out1)], capsys)
    assert code == 0
    code, out, _ = run_cli(["check", "--in", str(out1)], capsys)
    assert code == 0 and "PASS" in out and "min_distance=4" in out
    # rebuild and compare bytes
    out2 = tmp_path / "ml2.cdc"
    run_cli(["build", "--multilevel", "1100,0011", "-q", "2",
             "--delta", "2", "--out", str(out2)], capsys)
    assert out1.read_bytes() == out2.read_bytes()
    # reread-rewrite is also byte-identical
    from cdckit.cli import write_cdc
    code_obj = read_cdc(str(out1))
    out3 = tmp_path / "ml3.cdc"
    write_cdc(code_obj, str(out3))
    assert out1.read_bytes() == out3.read_bytes()


def test_check_rejects_non_rref_block(tmp_path, capsys):
    f = tmp_path / "bad.cdc"
    f.write_text("cdc v1 q=2 n=4 k=2 d=4 count=1\n\n0101\n1010\n")
    code, _, err = run_cli(["check", "--in", str(f)], capsys)
    assert code == 2
    assert "parse error" in err and "line 3" in err


def test_check_fails_on_wrong_distance(tmp_path, capsys):
    f = tmp_path / "close.cdc"
    f.write_text("cdc v1 q=2 n=4 k=2 d=4 count=2\n\n"
                 "1000\n0100\n\n1000\n0010\n")
    code, out, _ = run_cli(["check", "--in", str(f)], capsys)
    assert code == 1 and "FAIL" in out


def test_rankdist(capsys):
    code, out, _ = run_cli(["rankdist", "-q", "2", "-m", "3", "-n", "3",
                            "--delta", "2"], capsys)
    assert code == 0
    assert "rank 2: 49" in out and "rank 3: 14" in out
    assert "total 64" in out and "identity OK" in out


def test_fdrmc_build_audit_round_trip(tmp_path, capsys):
    f = tmp_path / "c.fdrmc"
    code, _, _ = run_cli(["build", "--fdrmc", "F=[1,2,4]", "-q", "2",
                          "--delta", "2", "--out", str(f)], capsys)
    assert code == 0
    code, out, _ = run_cli(["audit", "--in", str(f)], capsys)
    assert code == 0 and "PASS" in out and "optimal: True" in out
    loaded = read_fdrmc(str(f))
    assert loaded.dim == 3 and loaded.optimal


def test_build_count_only_fallback(tmp_path, capsys, monkeypatch):
    import cdckit.cli as cli_mod
    monkeypatch.setattr(cli_mod, "BUILD_CAP", 3)
    out = tmp_path / "x.cdc"
    code, _, err = run_cli(["build", "--multilevel", "1100,0011", "-q", "2",
                            "--delta", "2", "--out", str(out)], capsys)
    assert code == 1 and "TooLarge" in err
    code, outtext, _ = run_cli(["build", "--multilevel", "1100,0011", "-q", "2",
                                "--delta", "2", "--out", str(out),
                                "--force-count-only"], capsys)
    assert code == 0 and "count-only: 5" in outtext


def test_usage_error_exit_code():
    proc = subprocess.run(
        [sys.executable, "-m", "cdckit.cli", "bound", "-q", "2"],
        capture_output=True)
    assert proc.returncode == 2


def test_check_kv_output(tmp_path, capsys):
    f = tmp_path / "ml.cdc"
    run_cli(["build", "--multilevel", "1100,0011", "-q", "2",
             "--delta", "2", "--out", str(f)], capsys)
    code, out, _ = run_cli(["check", "--in", str(f), "--kv"], capsys)
    assert code == 0
    assert "passed=true" in out and "min_distance=4" in out
