import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from intervalorders import cli, formats
from intervalorders.relations import check_axioms
from intervalorders.topology import FiniteTopology

CHAIN = "3\na b c\n111\n011\n001\n"
TWO_PLUS_TWO = "4\nx y z w\n1010\n0101\n0010\n0001\n"
INTERVALS = "# x=[0,1] y=[1/2,2] z=[3/2,3]\n3\nx y z\n111\n111\n011\n"


def test_parse_singleton_relation():
    R = formats.parse_relation("1\na\n1")
    assert R.elements == ("a",) and R.pairs() == [("a", "a")]


def test_parse_intervals_relation():
    R = formats.parse_relation(INTERVALS)
    assert check_axioms(R).interval_order
    assert formats.parse_relation(formats.format_relation(R)) == R


@pytest.mark.parametrize("text, line, fragment", [
    ("", None, "unexpected end"),
    ("two\na b\n", 1, "not an integer"),
    ("0\n", 1, "at least 1"),
    ("2\na\n11\n01\n", 2, "expected 2 labels"),
    ("2\na a\n11\n01\n", 2, "duplicate"),
    ("2\na b\n11\n0\n", 4, "expected 2 characters"),
    ("2\na b\n11\n01\n11\n", 5, "extra rows"),
    ("2\na b\n\n11\n", 4, "row 2"),
])
def test_relation_parse_errors_carry_lines(text, line, fragment):
    with pytest.raises(formats.ParseError) as err:
        formats.parse_relation(text, source="r.txt")
    assert err.value.line == line
    assert fragment in str(err.value)


def test_parse_topology():
    T = formats.parse_topology("2\na b\n00\n01\n11\n")
    assert T == FiniteTopology.from_sets("ab", [[], ["b"], ["a", "b"]])
    assert formats.parse_topology(formats.format_topology(T)) == T
    with pytest.raises(formats.ParseError, match="missing X ∈ opens"):
        formats.parse_topology("2\na b\n00\n10\n")
    with pytest.raises(formats.ParseError, match="at least 1"):
        formats.parse_topology("0\n\n")


def test_parse_function_pair():
    p = formats.parse_function_pair("a 0 1/2\nb 3/4 1\n")
    assert p.u == {"a": 0, "b": F(3, 4)} and p.v == {"a": F(1, 2), "b": 1}
    assert formats.parse_function_pair(formats.format_function_pair(p)) == p
    with pytest.raises(formats.ParseError, match="invalid rational") as err:
        formats.parse_function_pair("a 0 1\nb 1/0 2\n")
    assert err.value.line == 2
    with pytest.raises(formats.ParseError):
        formats.parse_function_pair("a 0.5 1\n")


def test_parse_biorder():
    B = formats.parse_biorder("2 2\na b\nx y\n11\n01\n")
    assert B.related("a", "x") and not B.related("b", "x")
    assert formats.parse_biorder(formats.format_biorder(B)) == B
    with pytest.raises(formats.ParseError, match="expected 'm n'"):
        formats.parse_biorder("2\na b\nx y\n11\n01\n")


def test_parse_scale():
    T = FiniteTopology.discrete("ab")
    sc = formats.parse_scale("2\n1/2 10\n1/1 11\n", T)
    assert sc.levels == (F(1, 2), 1) and sc.at(F(1, 2)) == {"a"}
    assert formats.parse_scale(formats.format_scale(sc), T) == sc
    with pytest.raises(formats.ParseError, match="all ones"):
        formats.parse_scale("1\n1/1 10\n", T)
    with pytest.raises(formats.ParseError, match="not dyadic"):
        formats.parse_scale("2\n1/3 10\n1/1 11\n", T)
    with pytest.raises(formats.ParseError, match="ascend"):
        formats.parse_scale("3\n1/2 10\n1/4 10\n1/1 11\n", T)


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def run(argv):
    args = cli.build_parser().parse_args(["--no-timestamp", *argv])
    return cli.execute(args)


def test_cli_check_two_plus_two(files):
    status, data = run(["check", files("r", TWO_PLUS_TWO)])
    assert status == 1
    x, z, y, w = data["witnesses"]["ferrers"]
    R = formats.parse_relation(TWO_PLUS_TWO)
    assert R.holds(x, z) and R.holds(y, w) and not R.holds(x, w) and not R.holds(y, z)
    assert data["result"]["interval_order"] is False


def test_cli_represent_chain(files, tmp_path):
    out = tmp_path / "pair.txt"
    status, data = run(["represent", files("r", CHAIN), "--out", str(out)])
    assert status == 0
    assert data["result"]["pair"] == {"u": {"a": "0", "b": "1", "c": "2"},
                                      "v": {"a": "0", "b": "1", "c": "2"}}
    assert formats.parse_function_pair(out.read_text()).u == {"a": 0, "b": 1, "c": 2}


def test_cli_represent_rejects_non_interval_order(files):
    status, data = run(["represent", files("r", TWO_PLUS_TWO)])
    assert status == 1 and len(data["witnesses"]["ferrers"]) == 4


def test_cli_verify_and_traces(files):
    rel = files("r", CHAIN)
    status, data = run(["verify", rel, files("p", "a 0 2\nb 1 2\nc 2 2\n")])
    assert status == 1 and data["witnesses"]["counterexample"] == ["b", "a"]
    status, data = run(["verify", "--almost", rel, files("q", "a 0 0\nb 1 1\nc 2 2\n")])
    assert status == 0
    status, data = run(["traces", files("i", INTERVALS)])
    assert status == 0 and data["result"]["star_classes"] == [["x"], ["y", "z"]]


def test_cli_weakcont(files):
    rel = files("r", "2\na b\n11\n01\n")
    status, data = run(["weakcont", rel, files("t", "2\na b\n00\n11\n")])
    assert status == 1
    assert data["witnesses"]["failing_pair"] == ["a", "b"]
    assert data["certificates"]["negative_cycle"]
    status, data = run(["weakcont", rel, files("d", "2\na b\n00\n10\n01\n11\n")])
    assert status == 0 and data["result"]["continuous_representation"] is True


def test_cli_separable_and_biorder(files):
    rel = files("r", CHAIN)
    assert run(["separable", rel])[0] == 0
    status, data = run(["separable", rel, "--dense", files("d", "b\n")])
    assert status == 1 and data["witnesses"]["failing_strict_pair"]
    bio = files("b", "2 2\na b\nx y\n11\n01\n")
    status, data = run(["biorder", bio, "--mode", "weak"])
    assert status == 0
    assert data["result"]["pair"] == {"u": {"x": "1", "y": "2"}, "v": {"a": "1", "b": "2"}}
    status, data = run(["biorder", files("c", "2 2\na b\nx y\n10\n01\n")])
    assert status == 1 and len(data["witnesses"]["ferrers"]) == 4
    status, data = run(["biorder", bio, "--top-a", files("ta", "2\na b\n00\n11\n"),
                        "--top-x", files("tx", "2\nx y\n00\n11\n")])
    assert status == 1 and data["result"]["weakly_continuous"] is False


def test_cli_scale(files):
    top = files("t", "2\na b\n00\n10\n01\n11\n")
    status, data = run(["scale", top, files("s", "2\n1/2 10\n1/1 11\n"), "--to-function"])
    assert status == 0 and data["result"]["function"] == {"a": "1/2", "b": "1"}
    sier = files("si", "2\na b\n00\n01\n11\n")
    status, data = run(["scale", sier, files("s2", "3\n1/4 01\n1/2 01\n1/1 11\n")])
    assert status == 1 and data["witnesses"]["levels"] == ["1/4", "1/2"]


def test_cli_audit_n3():
    status, data = run(["audit", "--n", "3"])
    assert status == 0
    assert data["result"]["violations"] == []
    assert data["counts"]["instances"] > 0


def test_cli_input_errors_exit_2(files, tmp_path):
    status, data = run(["check", files("bad", "2\na b\n1x\n01\n")])
    assert status == 2 and ":3:" in data["result"]["error"]
    status, _ = run(["check", str(tmp_path / "missing.txt")])
    assert status == 2
    status, _ = run(["audit", "--n", "9"])
    assert status == 2
    assert cli.main(["frobnicate"]) == 2


def test_cli_reports_are_deterministic(files, tmp_path):
    rel = files("r", INTERVALS)
    outs = []
    for k in range(2):
        path = tmp_path / f"out{k}.json"
        assert cli.main(["--no-timestamp", "-o", str(path), "represent", rel]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    data = json.loads(outs[0])
    assert set(data) == {"command", "inputs", "result", "witnesses", "certificates",
                         "counts", "status"}
    path = tmp_path / "stamped.json"
    cli.main(["-o", str(path), "represent", rel])
    assert "timestamp" in json.loads(path.read_text())


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "intervalorders", "--no-timestamp",
                           "check", files("r", CHAIN)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["interval_order"] is True
