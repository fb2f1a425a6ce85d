import json
import pathlib
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zpartial.corpus import modules_up_to, random_morphism
from zpartial.exact import ABELIAN, PURE, HomFrom, HomInto, cyclics
from zpartial.modules import FpModule
from zpartial.serialize import (
    Workspace,
    WorkspaceError,
    dumps,
    module_from_json,
    morphism_from_json,
    morphism_to_json,
    selector_from_json,
    selector_to_json,
)

WS = pathlib.Path(__file__).resolve().parents[1] / "workspaces"


@pytest.mark.parametrize("path", sorted(WS.glob("*.json")), ids=lambda p: p.name)
def test_example_workspaces_round_trip(path):
    ws = Workspace.load(str(path))
    again = Workspace.loads(ws.dumps())
    assert again.canonical() == ws.canonical()
    assert Workspace.loads(again.dumps()).dumps() == again.dumps()


def test_presentation_module():
    M = module_from_json(12, {"presentation": [["2", "0"], ["0", "3"]]})
    assert M.invariant_factors == (6,)


def test_numbers_as_strings_or_ints():
    assert module_from_json(4, ["2", 4]).invariant_factors == (2, 4)


BASE = {"format": "zpartial-workspace/1", "ring": "4",
        "modules": {"U": ["2"], "X": ["4"], "C": ["2"]},
        "morphisms": {"u": {"source": "U", "target": "X", "matrix": [["2"]]},
                      "p": {"source": "X", "target": "C", "matrix": [["1"]]}},
        "conflations": {"eta": {"i": "u", "p": "p"}}}


def _with(**patch):
    doc = json.loads(json.dumps(BASE))
    for k, v in patch.items():
        doc[k] = v
    return doc


@pytest.mark.parametrize("doc", [
    _with(format="other/1"),
    _with(ring="1"),
    _with(ring="x"),
    _with(modules={"U": ["4", "2"]}),
    _with(modules={"U": ["3"]}),
    _with(morphisms={"u": {"source": "U", "target": "X", "matrix": [["1"]]}}),
    _with(morphisms={"u": {"source": "U", "target": "Q", "matrix": [["2"]]}}),
    _with(morphisms={"u": {"source": "U", "target": "X"}}),
    _with(conflations={"eta": {"i": "u", "p": "u"}}),
    _with(batteries={"b": {"targets": ["nope"]}}),
    _with(inflation_sets={"h": {"members": ["u"], "structure": {"kind": "weird"}}}),
], ids=range(11))
def test_malformed_workspaces(doc):
    with pytest.raises(WorkspaceError):
        Workspace.from_json(doc)


def test_bad_json_text():
    with pytest.raises(WorkspaceError):
        Workspace.loads("{not json")


def test_base_loads():
    ws = Workspace.from_json(BASE)
    assert ws.conflation("eta").middle.invariant_factors == (4,)
    with pytest.raises(WorkspaceError):
        ws.morphism("missing")


@pytest.mark.parametrize("sel", [ABELIAN, PURE, HomInto([FpModule.of(4, [2])]), HomFrom(cyclics(4))])
def test_selector_round_trip(sel):
    assert selector_from_json(4, selector_to_json(sel)) == sel


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1]}) == '{\n  "a": [\n    1\n  ],\n  "b": 1\n}\n'


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([4, 6, 8, 12, 9]), st.integers(0, 2**32))
def test_random_workspace_round_trip(m, seed):
    rng = random.Random(seed)
    mods = modules_up_to(m, 32)
    ws = Workspace.from_json({"ring": str(m)})
    chosen = rng.sample(mods, min(4, len(mods)))
    for n, M in enumerate(chosen):
        ws.add_module(f"M{n}", M)
    for n in range(5):
        a, b = rng.choice(chosen), rng.choice(chosen)
        f = random_morphism(a, b, rng)
        ws.add_morphism(f"f{n}", f)
        assert morphism_from_json(m, morphism_to_json(f)) == f
    again = Workspace.loads(ws.dumps())
    assert again.canonical() == ws.canonical()
