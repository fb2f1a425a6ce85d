"""JSON interchange: workspaces, self-contained objects, verdict documents.

Ring elements, invariant factors and matrix entries travel as decimal
strings so nothing depends on a reader's integer width.  Counters and caps
are plain JSON numbers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from .exact import ABELIAN, PURE, Conflation, HomFrom, HomInto, Selector, cyclics
from .hulls import Battery, InflationSet
from .linalg import IntMatrix, RingSpec
from .modules import FpModule, Morphism, module_from_presentation

FORMAT = "zpartial-workspace/1"


class WorkspaceError(ValueError):
    """Malformed or inconsistent workspace input (CLI exit code 2)."""


def num(x: Any) -> int:
    if isinstance(x, bool):
        raise WorkspaceError(f"expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise WorkspaceError(f"expected a decimal integer, got {x!r}")


def ints(xs) -> list[str]:
    return [str(int(x)) for x in xs]


def matrix_out(rows) -> list[list[str]]:
    return [ints(r) for r in rows]


def matrix_in(rows) -> list[list[int]]:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise WorkspaceError(f"expected a nested list matrix, got {rows!r}")
    return [[num(x) for x in r] for r in rows]


# ---------------------------------------------------------------------------
# self-contained objects (used in certificates)


def module_to_json(M: FpModule) -> list[str]:
    return ints(M.invariant_factors)


def module_from_json(modulus: int, spec) -> FpModule:
    if isinstance(spec, dict):
        if "presentation" in spec:
            rel = matrix_in(spec["presentation"])
            ncols = len(rel[0]) if rel else num(spec.get("generators", 0))
            if any(len(r) != ncols for r in rel):
                raise WorkspaceError("presentation rows have different lengths")
            return module_from_presentation(RingSpec(modulus), IntMatrix.from_rows(rel, ncols) if rel
                                            else IntMatrix.zeros(0, ncols))
        spec = spec.get("factors", [])
    if not isinstance(spec, list):
        raise WorkspaceError(f"module must be a factor list or object, got {spec!r}")
    factors = [num(x) for x in spec]
    canon = FpModule.of(modulus, factors)
    if tuple(factors) != canon.invariant_factors:
        raise WorkspaceError(f"factors {factors} are not in invariant-factor form; "
                             f"use {list(canon.invariant_factors)} or a presentation")
    return canon


def morphism_to_json(f: Morphism) -> dict:
    return {"source": module_to_json(f.source), "target": module_to_json(f.target),
            "matrix": matrix_out(f.matrix)}


def morphism_from_json(modulus: int, d: dict) -> Morphism:
    try:
        A = module_from_json(modulus, d["source"])
        B = module_from_json(modulus, d["target"])
        return Morphism(A, B, tuple(tuple(r) for r in matrix_in(d["matrix"])))
    except KeyError as e:
        raise WorkspaceError(f"morphism is missing {e}") from None
    except ValueError as e:
        if isinstance(e, WorkspaceError):
            raise
        raise WorkspaceError(str(e)) from None


def conflation_to_json(eta: Conflation) -> dict:
    return {"i": morphism_to_json(eta.i), "p": morphism_to_json(eta.p)}


def selector_to_json(sel: Selector) -> dict:
    out = {"kind": sel.kind}
    if sel.kind in ("hom_into", "hom_from"):
        out["class"] = [module_to_json(x) for x in sel.members]
    return out


def selector_from_json(modulus: int, d: dict) -> Selector:
    kind = d.get("kind")
    if kind == "abelian":
        return ABELIAN
    if kind == "pure":
        return PURE
    if kind in ("hom_into", "hom_from"):
        cls = d.get("class", [])
        members = cyclics(modulus) if cls == "cyclics" else [module_from_json(modulus, x) for x in cls]
        return (HomInto if kind == "hom_into" else HomFrom)(members)
    raise WorkspaceError(f"unknown structure {kind!r}")


def dumps(doc: Any) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# workspaces


@dataclass
class Workspace:
    ring: RingSpec
    modules: dict[str, FpModule] = field(default_factory=dict)
    morphisms: dict[str, Morphism] = field(default_factory=dict)
    conflations: dict[str, Conflation] = field(default_factory=dict)
    batteries: dict[str, Battery] = field(default_factory=dict)
    inflation_sets: dict[str, InflationSet] = field(default_factory=dict)
    # names as written, so a dump reproduces the references
    _refs: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def modulus(self) -> int:
        return self.ring.modulus

    def _get(self, table: str, name: str):
        store = getattr(self, table)
        if name not in store:
            raise WorkspaceError(f"unknown {table[:-1].replace('_', ' ')} {name!r}")
        return store[name]

    def module(self, name: str) -> FpModule:
        return self._get("modules", name)

    def morphism(self, name: str) -> Morphism:
        return self._get("morphisms", name)

    def conflation(self, name: str) -> Conflation:
        return self._get("conflations", name)

    def battery(self, name: str) -> Battery:
        return self._get("batteries", name)

    def inflation_set(self, name: str) -> InflationSet:
        return self._get("inflation_sets", name)

    def module_name(self, M: FpModule) -> Optional[str]:
        for k, v in self.modules.items():
            if v == M:
                return k
        return None

    def add_module(self, name: str, M: FpModule):
        self.modules[name] = M
        self._refs.setdefault("modules", {})[name] = module_to_json(M)

    def add_morphism(self, name: str, f: Morphism):
        src, tgt = self.module_name(f.source), self.module_name(f.target)
        if src is None or tgt is None:
            raise WorkspaceError(f"morphism {name!r} needs named source and target modules")
        self.morphisms[name] = f
        self._refs.setdefault("morphisms", {})[name] = (src, tgt)

    # -- loading -------------------------------------------------------------

    @classmethod
    def from_json(cls, doc: dict) -> "Workspace":
        if not isinstance(doc, dict):
            raise WorkspaceError("workspace must be a JSON object")
        fmt = doc.get("format", FORMAT)
        if fmt != FORMAT:
            raise WorkspaceError(f"unsupported workspace format {fmt!r}")
        if "ring" not in doc:
            raise WorkspaceError("workspace needs a ring")
        m = num(doc["ring"])
        try:
            ws = cls(RingSpec(m))
            m = ws.ring.require_finite()
        except ValueError as e:
            raise WorkspaceError(str(e)) from None
        for name, spec in doc.get("modules", {}).items():
            ws.modules[name] = module_from_json(m, spec)
            ws._refs.setdefault("modules", {})[name] = spec
        for name, spec in doc.get("morphisms", {}).items():
            try:
                src, tgt = spec["source"], spec["target"]
                A, B = ws.module(src), ws.module(tgt)
                ws.morphisms[name] = Morphism(A, B, tuple(tuple(r) for r in matrix_in(spec["matrix"])))
            except KeyError as e:
                raise WorkspaceError(f"morphism {name!r} is missing {e}") from None
            except WorkspaceError:
                raise
            except ValueError as e:
                raise WorkspaceError(f"morphism {name!r}: {e}") from None
            ws._refs.setdefault("morphisms", {})[name] = (src, tgt)
        for name, spec in doc.get("conflations", {}).items():
            try:
                ws.conflations[name] = Conflation(ws.morphism(spec["i"]), ws.morphism(spec["p"]))
            except KeyError as e:
                raise WorkspaceError(f"conflation {name!r} is missing {e}") from None
            except WorkspaceError:
                raise
            except ValueError as e:
                raise WorkspaceError(f"conflation {name!r} does not validate: {e}") from None
            ws._refs.setdefault("conflations", {})[name] = (spec["i"], spec["p"])
        for name, spec in doc.get("batteries", {}).items():
            ws.batteries[name] = ws._battery_from(spec)
            ws._refs.setdefault("batteries", {})[name] = spec
        for name, spec in doc.get("inflation_sets", {}).items():
            ws.inflation_sets[name] = ws._inflations_from(name, spec)
            ws._refs.setdefault("inflation_sets", {})[name] = spec
        return ws

    def _battery_from(self, spec) -> Battery:
        if not isinstance(spec, dict):
            raise WorkspaceError(f"battery must be an object, got {spec!r}")
        if "targets" in spec:
            return Battery.explicit([self.module(n) for n in spec["targets"]])
        max_order = num(spec.get("max_order", 16))
        return Battery.default(self.modulus, max_order, [self.module(n) for n in spec.get("extra", [])])

    def _inflations_from(self, name: str, spec) -> InflationSet:
        if not isinstance(spec, dict):
            raise WorkspaceError(f"inflation set {name!r} must be an object")
        kind = spec.get("kind", "members")
        if kind == "baer":
            return InflationSet.baer(self.modulus)
        if kind == "free_subobjects":
            return InflationSet.free_subobjects(self.modulus, num(spec.get("max_rank", 2)))
        sel = selector_from_json(self.modulus, spec.get("structure", {"kind": "abelian"}))
        try:
            return InflationSet(tuple(self.morphism(n) for n in spec.get("members", [])), sel)
        except WorkspaceError:
            raise
        except ValueError as e:
            raise WorkspaceError(f"inflation set {name!r}: {e}") from None

    @classmethod
    def loads(cls, text: str) -> "Workspace":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise WorkspaceError(f"malformed JSON: {e}") from None
        return cls.from_json(doc)

    @classmethod
    def load(cls, path: str) -> "Workspace":
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise WorkspaceError(f"cannot read workspace: {e}") from None
        return cls.loads(text)

    # -- dumping -------------------------------------------------------------

    def to_json(self) -> dict:
        refs = self._refs
        doc = {"format": FORMAT, "ring": str(self.modulus)}
        doc["modules"] = {k: module_to_json(v) for k, v in self.modules.items()}
        doc["morphisms"] = {}
        for k, f in self.morphisms.items():
            src, tgt = refs["morphisms"][k]
            doc["morphisms"][k] = {"source": src, "target": tgt, "matrix": matrix_out(f.matrix)}
        doc["conflations"] = {k: {"i": i, "p": p} for k, (i, p) in refs.get("conflations", {}).items()}
        doc["batteries"] = {}
        for k in self.batteries:
            spec = dict(refs["batteries"][k])
            if "max_order" in spec:
                spec["max_order"] = str(num(spec["max_order"]))
            doc["batteries"][k] = spec
        doc["inflation_sets"] = {k: refs["inflation_sets"][k] for k in self.inflation_sets}
        return doc

    def dumps(self) -> str:
        return dumps(self.to_json())

    def canonical(self) -> tuple:
        """Hashable snapshot of every object, used to test round trips."""
        return (
            self.modulus,
            tuple(sorted(self.modules.items())),
            tuple(sorted((k, v.source, v.target, v.matrix) for k, v in self.morphisms.items())),
            tuple(sorted((k, v.i.matrix, v.p.matrix) for k, v in self.conflations.items())),
            tuple(sorted((k, v.targets) for k, v in self.batteries.items())),
            tuple(sorted((k, v.members, v.selector) for k, v in self.inflation_sets.items())),
        )
