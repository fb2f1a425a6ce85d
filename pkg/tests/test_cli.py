import io
import json
import pathlib
import subprocess
import sys

import pytest

from zpartial.cli import run

ROOT = pathlib.Path(__file__).resolve().parents[1]
Z4 = str(ROOT / "workspaces" / "z4_running.json")
Z12 = str(ROOT / "workspaces" / "z12_hull.json")
BAER = str(ROOT / "workspaces" / "baer_battery.json")


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


def doc_of(*argv):
    code, text = call(*argv)
    return code, json.loads(text)


def test_partial_check_running_example():
    code, doc = doc_of("partial", "check", "-w", Z4, "-u", "u", "-f", "f", "--structure", "pure")
    assert code == 0
    assert doc["result"]["is_partial"] is False
    assert doc["result"]["witness"] == {"d": "2", "k": ["1"]}


def test_hull_of_z2():
    code, doc = doc_of("hull", "-w", Z4, "-m", "M")
    assert code == 0
    assert doc["result"]["hull"] == ["4"]
    assert doc["result"]["embedding"] == [["2"]]
    assert all(doc["result"]["conditions"].values())


def test_snf():
    code, doc = doc_of("snf", "--matrix", "[[2,4],[6,8]]")
    assert code == 0 and doc["result"]["diagonal"] == ["2", "4"]


def _chains(divs, bound, start=1):
    """Divisibility chains with product <= bound, by plain recursion."""
    out = [[]]
    for d in divs:
        if d % start == 0 and d <= bound:
            out += [[d] + rest for rest in _chains(divs, bound // d, d)]
    return out


def test_corpus_gen_module_list():
    code, doc = doc_of("corpus", "gen", "--ring", "4", "--max-order", "16")
    assert code == 0
    got = list(doc["modules"].values())
    # [2, 2, 2, 2] has order exactly 16 and belongs to the list
    assert got == [[], ["2"], ["4"], ["2", "2"], ["2", "4"], ["4", "4"],
                   ["2", "2", "2"], ["2", "2", "4"], ["2", "2", "2", "2"]]
    expected = {tuple(str(x) for x in c) for c in _chains([2, 4], 16)}
    assert {tuple(c) for c in got} == expected


COMMANDS = [
    ("module", "info", "-w", Z12, "-m", "N"),
    ("module", "info", "--ring", "12", "--factors", "[2,3]"),
    ("hom", "-w", Z4, "--source", "U", "--target", "X", "--list"),
    ("pushout", "-w", Z4, "-f", "u", "-g", "f"),
    ("pullback", "-w", Z4, "-f", "two", "-g", "u"),
    ("is-pure", "-w", Z4, "-u", "u"),
    ("is-pure", "-w", Z4, "-u", "i"),
    ("substructure", "-w", Z4, "-c", "eta", "--structure", "pure"),
    ("substructure", "-w", Z4, "-c", "eta", "--structure", "hom-into", "--class", "X"),
    ("baer-sum", "-w", Z4, "-a", "eta", "-b", "eta"),
    ("ext", "push", "-w", Z4, "-c", "eta", "-g", "i"),
    ("ext", "pull", "-w", Z4, "-c", "eta", "-f", "p"),
    ("partial", "check", "-w", Z4, "-u", "u", "-f", "g"),
    ("partial", "witness", "-w", Z4, "-u", "u", "-f", "f"),
    ("partial", "extend", "-w", Z4, "-u", "u", "-f", "g"),
    ("cophantom", "-w", Z4, "-f", "f", "--embeddings", "u,i"),
    ("injective", "-w", BAER, "-m", "R", "--inflations", "baer"),
    ("injective", "-w", BAER, "-m", "D", "--inflations", "baer"),
    ("injective", "-w", BAER, "-m", "E2", "--inflations", "free"),
    ("essential", "-w", Z4, "-u", "u"),
    ("essential", "-w", Z4, "-u", "i"),
    ("small-over", "-w", Z4, "-v", "idX", "-u", "u"),
    ("hull", "-w", Z12, "-m", "M"),
    ("preenvelope", "-w", Z4, "-m", "M"),
    ("preenvelope", "-w", BAER, "-m", "D", "--inflations", "free"),
    ("minimize", "-w", Z4, "-u", "w"),
    ("suite", "run", "ext", "--ring", "4"),
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(x for x in a if "/" not in x))
def test_commands_succeed_and_certificates_verify(argv, tmp_path):
    code, text = call(*argv)
    assert code == 0, text
    doc = json.loads(text)
    assert "result" in doc and "caps" in doc
    path = tmp_path / "out.json"
    path.write_text(text)
    code, check = doc_of("verify", str(path))
    assert code == 0, check
    assert check["verified"] is True


def test_tampered_certificate_fails(tmp_path):
    _, doc = doc_of("partial", "check", "-w", Z4, "-u", "u", "-f", "f")
    cert = next(c for c in doc["certificates"] if c["kind"] == "partial")
    cert["is_partial"] = True
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, check = doc_of("verify", str(path))
    assert code == 1 and check["verified"] is False and check["problems"]


def test_tampered_hull_fails(tmp_path):
    _, doc = doc_of("hull", "-w", Z4, "-m", "M")
    cert = next(c for c in doc["certificates"] if c["kind"] == "hull")
    cert["embedding"] = [["0"]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _ = doc_of("verify", str(path))
    assert code == 1


@pytest.mark.parametrize("argv,code", [
    (("partial", "check", "-w", Z4, "-u", "nope", "-f", "f"), 2),
    (("partial", "check", "-w", Z4, "-u", "u", "-f", "f", "--ring", "8"), 2),
    (("snf", "--matrix", "[[1,2"), 2),
    (("frobnicate",), 2),
    (("hom", "-w", Z4, "--source", "E2", "--target", "E2", "--list", "--cap-hom", "4"), 3),
    (("corpus", "gen", "--ring", "4", "--max-order", "5000", "--cap-subgroups", "16"), 3),
    (("verify", "/nonexistent/file.json"), 2),
])
def test_exit_codes(argv, code):
    got, text = call(*argv)
    assert got == code, text


def test_determinism():
    argv = ("corpus", "gen", "--ring", "12", "--max-order", "24", "--count", "20", "--seed", "7")
    assert call(*argv)[1] == call(*argv)[1]
    assert call(*argv)[1] != call(*argv[:-1], "8")[1]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "zpartial", "snf", "--matrix", "[[2,4],[6,8]]"],
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["result"]["diagonal"] == ["2", "4"]
