"""Command-line front end tests.

Core claims:
    - describe emits a deterministic JSON document (and optional DOT)
    - verify exits 0 on equality and 1 on mismatch, with witness lines
    - member prints true/false; enumerate lists canonical terms
    - show pretty-prints entries with ranks
    - degenerate ideals and bad input exit 2 with a diagnostic on stderr
"""

import json

import pytest

from spdesc import from_json
from spdesc.cli import main


@pytest.fixture
def obstruction_file(tmp_path):
    def write(name, body):
        path = tmp_path / name
        path.write_text(body, encoding="utf-8")
        return str(path)

    return write


class TestDescribe:
    def test_json_to_stdout(self, obstruction_file, capsys):
        path = obstruction_file("diamond.txt", "# diamond\nC(*,A(*,*),*)\n")
        assert main(["describe", path]) == 0
        out = capsys.readouterr().out
        desc = from_json(out)
        assert desc.root == "C(*,A(*,*),*)"
        assert len(desc.entries) == 4

    def test_byte_identical_runs(self, obstruction_file, capsys):
        path = obstruction_file("f.txt", "C(*,*,*)\nA(*,*,*)\n")
        assert main(["describe", path]) == 0
        first = capsys.readouterr().out
        assert main(["describe", path]) == 0
        second = capsys.readouterr().out
        assert first == second

    def test_out_and_dot_files(self, obstruction_file, tmp_path, capsys):
        path = obstruction_file("f.txt", "C(*,*,*)\n")
        out = tmp_path / "doc.json"
        dot = tmp_path / "doc.dot"
        assert main(["describe", path, "--out", str(out), "--dot", str(dot)]) == 0
        assert capsys.readouterr().out == ""
        doc = json.loads(out.read_text())
        assert doc["root"] == "C(*,*,*)"
        assert dot.read_text().startswith("digraph")

    def test_trivial_ideal_exits_2(self, obstruction_file, capsys):
        path = obstruction_file("point.txt", "*\n")
        assert main(["describe", path]) == 2
        err = capsys.readouterr().err
        assert "trivial ideal" in err

    def test_void_ideal_exits_2(self, obstruction_file, capsys):
        path = obstruction_file("empty.txt", "0\n")
        assert main(["describe", path]) == 2
        assert "void ideal" in capsys.readouterr().err

    def test_bad_term_exits_2(self, obstruction_file, capsys):
        path = obstruction_file("bad.txt", "C(*\n")
        assert main(["describe", path]) == 2
        assert "error:" in capsys.readouterr().err

    def test_missing_file_exits_2(self, capsys):
        assert main(["describe", "/nonexistent/f.txt"]) == 2
        assert "error:" in capsys.readouterr().err


class TestVerify:
    def test_equal_exits_0(self, obstruction_file, capsys):
        path = obstruction_file("f.txt", "C(*,A(*,*),*)\n")
        assert main(["verify", path, "--max-size", "6"]) == 0
        out = capsys.readouterr().out
        assert out.strip().endswith("equal up to size 6")

    def test_corrupted_doc_exits_1_with_witnesses(self, obstruction_file, tmp_path, capsys):
        path = obstruction_file("f.txt", "C(*,*,*)\n")
        out = tmp_path / "doc.json"
        assert main(["describe", path, "--out", str(out)]) == 0
        capsys.readouterr()
        doc = json.loads(out.read_text())
        for entry in doc["entries"]:
            if entry["ideal"] == ["C(*,*,*)"]:
                entry["bits"] = [b for b in entry["bits"] if b["shape"] != "chain"]
        out.write_text(json.dumps(doc))
        assert main(["verify", path, "--max-size", "5", "--doc", str(out)]) == 1
        lines = capsys.readouterr().out.splitlines()
        assert any(line.startswith("missing ") for line in lines)
        assert "MISMATCH" in lines[-1]

    def test_block_cap_exits_2(self, obstruction_file, capsys):
        path = obstruction_file("f.txt", "A(*,*,*,*,*)\n")
        assert main(["verify", path, "--max-size", "5"]) == 2
        assert "cap" in capsys.readouterr().err
        assert main(["verify", path, "--max-size", "5", "--max-block", "5"]) == 0


class TestMember:
    def test_true(self, obstruction_file, capsys):
        path = obstruction_file("a2.txt", "A(*,*)\n")
        assert main(["member", path, "C(*,*,*)"]) == 0
        assert capsys.readouterr().out == "true\n"

    def test_false(self, obstruction_file, capsys):
        path = obstruction_file("a2.txt", "A(*,*)\n")
        assert main(["member", path, "A(*,C(*,*))"]) == 0
        assert capsys.readouterr().out == "false\n"

    def test_bad_term_exits_2(self, obstruction_file, capsys):
        path = obstruction_file("a2.txt", "A(*,*)\n")
        assert main(["member", path, "C(*"]) == 2
        assert "error:" in capsys.readouterr().err


class TestEnumerate:
    def test_lists_terms(self, capsys):
        assert main(["enumerate", "--max-size", "2"]) == 0
        assert capsys.readouterr().out == "0\n*\nC(*,*)\nA(*,*)\n"


class TestShow:
    def test_prints_entries_and_ranks(self, obstruction_file, tmp_path, capsys):
        path = obstruction_file("f.txt", "C(*,A(*,*),*)\n")
        out = tmp_path / "doc.json"
        assert main(["describe", path, "--out", str(out)]) == 0
        capsys.readouterr()
        assert main(["show", str(out)]) == 0
        text = capsys.readouterr().out
        assert text.startswith("root C(*,A(*,*),*)")
        assert "entry A(*,*)  (rank 1)" in text
        assert "entry C(*,A(*,*),*)  (rank 3)" in text

    def test_bad_doc_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"root": "x", "entries": [], "extra": 1}')
        assert main(["show", str(bad)]) == 2
        assert "error:" in capsys.readouterr().err


class TestUsage:
    def test_unknown_command_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2
