"""End-to-end CLI tests: exit codes, report formats, determinism."""

import pytest

from rleacs.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, format_phylip, main


@pytest.fixture()
def pair_fasta(tmp_path):
    path = tmp_path / "pair.fa"
    path.write_text(">X\naab\n>Y\nab\n", encoding="utf-8")
    return str(path)


@pytest.fixture()
def trio_fasta(tmp_path):
    path = tmp_path / "trio.fa"
    path.write_text(">alpha\naabba\n>beta\nabab\n>gamma\nbbbaa\n", encoding="utf-8")
    return str(path)


def test_acs_report(pair_fasta, capsys):
    assert main(["acs", pair_fasta]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "X: X (runs=2, length=3)"
    assert out[1] == "Y: Y (runs=2, length=2)"
    assert out[2] == "N: 4"
    assert out[3] == "ACS = 4/3 ≈ 1.333333"


def test_acs_identical_files_hits_self_closed_form(tmp_path, capsys):
    a = tmp_path / "a.fa"
    a.write_text(">L\naab\n", encoding="utf-8")
    b = tmp_path / "b.fa"
    b.write_text(">R\naab\n", encoding="utf-8")
    assert main(["acs", str(a), str(b)]) == EXIT_OK
    out = capsys.readouterr().out
    # identical content: average is (x+1)/2 = 2 for x = 3
    assert "ACS = 6/3 ≈ 2.000000" in out


def test_acs_disjoint_alphabets_is_zero(tmp_path, capsys):
    path = tmp_path / "disjoint.fa"
    path.write_text(">X\naaa\n>Y\nbb\n", encoding="utf-8")
    assert main(["acs", str(path)]) == EXIT_OK
    assert "ACS = 0/3 ≈ 0.000000" in capsys.readouterr().out


def test_acs_out_tsv(pair_fasta, tmp_path, capsys):
    out_path = tmp_path / "acs.tsv"
    assert main(["acs", pair_fasta, "--out", str(out_path)]) == EXIT_OK
    capsys.readouterr()
    lines = out_path.read_text(encoding="utf-8").splitlines()
    assert lines[0].split("\t") == [
        "x", "y", "runs_x", "runs_y", "length_x", "length_y", "lsum", "acs", "acs_decimal",
    ]
    assert lines[1].split("\t")[:8] == ["X", "Y", "2", "2", "3", "2", "4", "4/3"]


def test_dist_report_full_precision(pair_fasta, capsys):
    assert main(["dist", pair_fasta]) == EXIT_OK
    out = capsys.readouterr().out
    assert "ACS(X,Y) = 4/3" in out
    assert "ACS(Y,X) = 3/2" in out
    assert "Dist = 0.12043215657900697 (log base e)" in out


def test_dist_log_base_flag(pair_fasta, capsys):
    assert main(["dist", pair_fasta, "--log-base", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Dist = 0.17374687506009645 (log base 2)" in out


def test_wrong_sequence_count_is_data_error(trio_fasta, capsys):
    assert main(["acs", trio_fasta]) == EXIT_DATA
    assert "expected exactly 2 sequences, found 3" in capsys.readouterr().err


def test_matrix_phylip_shape(trio_fasta, capsys):
    assert main(["matrix", trio_fasta]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "3"
    assert len(lines) == 4
    names = []
    grid = []
    for line in lines[1:]:
        names.append(line[:10].strip())
        grid.append(line[10:].split())
    assert names == ["alpha", "beta", "gamma"]
    for i, row in enumerate(grid):
        assert len(row) == 3
        assert row[i] == "0.000000"
    for i in range(3):
        for j in range(3):
            assert grid[i][j] == grid[j][i]


def test_matrix_threads_byte_identical(trio_fasta, capsys):
    assert main(["matrix", trio_fasta, "--threads", "1"]) == EXIT_OK
    serial = capsys.readouterr().out
    assert main(["matrix", trio_fasta, "--threads", "8"]) == EXIT_OK
    threaded = capsys.readouterr().out
    assert serial == threaded


def test_matrix_out_file(trio_fasta, tmp_path, capsys):
    out_path = tmp_path / "m.phy"
    assert main(["matrix", trio_fasta, "--out", str(out_path)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert out_path.read_text(encoding="utf-8").splitlines()[0] == "3"


def test_matrix_duplicate_names(tmp_path, capsys):
    path = tmp_path / "dup.fa"
    path.write_text(">same\nab\n>same\nba\n", encoding="utf-8")
    assert main(["matrix", str(path)]) == EXIT_DATA
    assert "duplicate sequence name: same" in capsys.readouterr().err


def test_matrix_long_name_rejected_unless_relaxed(tmp_path, capsys):
    path = tmp_path / "long.fa"
    path.write_text(">averylongname1\nab\n>b\nba\n", encoding="utf-8")
    assert main(["matrix", str(path)]) == EXIT_DATA
    assert "averylongname1" in capsys.readouterr().err
    assert main(["matrix", str(path), "--relaxed-names"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[1].startswith("averylongname1 0.000000")


def test_matrix_failing_pair_is_named(tmp_path, capsys):
    path = tmp_path / "disjoint.fa"
    path.write_text(">one\naaa\n>two\nbbb\n", encoding="utf-8")
    assert main(["matrix", str(path)]) == EXIT_DATA
    err = capsys.readouterr().err
    assert "pair one/two" in err


def test_rle_format_and_line_numbered_errors(tmp_path, capsys):
    good = tmp_path / "good.rle"
    good.write_text(">X\na2 b1\n>Y\na1 b1\n", encoding="utf-8")
    assert main(["acs", str(good), "--format", "rle"]) == EXIT_OK
    assert "ACS = 4/3" in capsys.readouterr().out

    bad = tmp_path / "bad.rle"
    bad.write_text(">X\na2 zz9\n", encoding="utf-8")
    assert main(["acs", str(bad), "--format", "rle"]) == EXIT_DATA
    err = capsys.readouterr().err
    assert "line 2" in err and "zz9" in err


def test_text_format_uses_file_stems(tmp_path, capsys):
    left = tmp_path / "left.txt"
    left.write_text("aab\n", encoding="utf-8")
    right = tmp_path / "right.txt"
    right.write_text("ab\n", encoding="utf-8")
    assert main(["acs", str(left), str(right), "--format", "text"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "X: left" in out and "Y: right" in out and "ACS = 4/3" in out


def test_verify_command(capsys):
    assert main(["verify", "--trials", "6", "--n-max", "60", "--seed", "5"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "6/6 ok"
    assert main(["verify", "--trials", "0"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "0/0 ok"


def test_bench_smoke(capsys):
    assert main(["bench", "--n-max", "16384", "--trials", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "doubling sweep" in out
    assert "run-length scaling" in out
    assert "closed form check: ok" in out


def test_usage_errors_exit_one(capsys):
    assert main(["acs"]) == EXIT_USAGE
    assert main(["nosuch"]) == EXIT_USAGE
    assert main([]) == EXIT_USAGE
    assert main(["dist", "x.fa", "--log-base", "7"]) == EXIT_USAGE
    capsys.readouterr()


def test_missing_file_exits_two(capsys):
    assert main(["acs", "/nonexistent/path.fa"]) == EXIT_DATA
    assert "error:" in capsys.readouterr().err


def test_help_exits_zero(capsys):
    assert main(["--help"]) == EXIT_OK
    assert "acs" in capsys.readouterr().out


def test_phylip_formatter_round_trip():
    names = ["a", "abcdefghij", "x"]
    grid = [
        [0.0, 0.25, 0.5],
        [0.25, 0.0, 0.125],
        [0.5, 0.125, 0.0],
    ]
    text = format_phylip(names, grid, relaxed=False)
    lines = text.splitlines()
    assert lines[0] == "3"
    parsed_names = [line[:10].strip() for line in lines[1:]]
    parsed = [[float(v) for v in line[10:].split()] for line in lines[1:]]
    assert parsed_names == names
    assert parsed == [[round(v, 6) for v in row] for row in grid]
