"""Certificates and their standalone re-check.

A certificate carries every object it talks about, so it can be checked
without the workspace that produced it.  The checks here use elementwise
arithmetic wherever the sizes allow, not the solvers that made the claim.
"""
from __future__ import annotations

from itertools import product
from math import gcd
from typing import Optional

from . import config
from .exact import (
    Conflation,
    Selector,
    conflations_equivalent,
    is_inflation,
    is_pure_mono,
    split_conflation,
)
from .hulls import essential_all_subobjects
from .linalg import IntMatrix
from .modules import FpModule, Morphism, direct_sum, image_order, is_mono
from .partial import abelian_injective
from .serialize import (
    WorkspaceError,
    conflation_to_json,
    ints,
    matrix_in,
    matrix_out,
    module_from_json,
    module_to_json,
    morphism_from_json,
    morphism_to_json,
    num,
    selector_from_json,
    selector_to_json,
)

ENUM_LIMIT = 1 << 16


def _elements(M: FpModule):
    if M.order > ENUM_LIMIT:
        raise WorkspaceError(f"module of order {M.order} is too large to re-check by enumeration")
    return product(*[range(d) for d in M.invariant_factors])


def _is_multiple(M: FpModule, target, d: int) -> bool:
    """target ∈ dM, by enumeration."""
    target = M.reduce(target)
    return any(M.reduce([d * c for c in x]) == target for x in _elements(M))


# ---------------------------------------------------------------------------
# builders


def snf_certificate(a: IntMatrix, dec) -> dict:
    return {"kind": "snf", "matrix": matrix_out(a.to_rows()), "diagonal": ints(dec.diagonal),
            "left": matrix_out(dec.u.to_rows()), "right": matrix_out(dec.v.to_rows())}


def purity_certificate(i: Morphism, cert) -> dict:
    out = {"kind": "purity", "ring": str(i.source.modulus), "mono": morphism_to_json(i),
           "pure": cert.verdict, "witness": None}
    if cert.witness is not None:
        w = cert.witness
        out["witness"] = {"d": str(w.d), "k": ints(w.k), "k_ambient": ints(w.k_ambient)}
    return out


def partial_certificate(pm, verdict, extension: Optional[Morphism] = None,
                        retraction: Optional[Morphism] = None) -> dict:
    P, ubar, fbar = verdict.pushout
    out = {
        "kind": "partial",
        "ring": str(pm.domain.modulus),
        "structure": selector_to_json(verdict.selector),
        "u": morphism_to_json(pm.inclusion),
        "f": morphism_to_json(pm.map),
        "pushout": {"module": module_to_json(P), "ubar": matrix_out(ubar.matrix),
                    "fbar": matrix_out(fbar.matrix)},
        "is_partial": verdict.is_partial,
        "is_partial_iso": verdict.is_partial_iso,
        "witness": None,
        "extension": matrix_out(extension.matrix) if extension is not None else None,
        "retraction": matrix_out(retraction.matrix) if retraction is not None else None,
    }
    if verdict.system_witness is not None:
        w = verdict.system_witness
        out["witness"] = {"d": str(w.d), "k": ints(w.k), "k_ambient": ints(w.k_ambient),
                          "f_k": ints(w.image)}
    return out


def extension_certificate(u: Morphism, f: Morphism, g: Optional[Morphism]) -> dict:
    return {"kind": "extension", "ring": str(u.source.modulus), "u": morphism_to_json(u),
            "f": morphism_to_json(f), "extension": matrix_out(g.matrix) if g is not None else None}


def injective_certificate(E: FpModule, sel: Selector, report, battery) -> dict:
    out = {"kind": "injective", "ring": str(E.modulus), "module": module_to_json(E),
           "structure": selector_to_json(sel), "injective": report.verdict,
           "battery": [morphism_to_json(u) for u in battery], "witness": None}
    if report.witness is not None:
        u, f = report.witness
        out["witness"] = {"inflation": morphism_to_json(u), "map": morphism_to_json(f)}
    return out


def hull_certificate(M: FpModule, u: Morphism) -> dict:
    return {"kind": "hull", "ring": str(M.modulus), "embedding": morphism_to_json(u)}


def pushout_certificate(f: Morphism, g: Morphism, po) -> dict:
    return {"kind": "pushout", "ring": str(f.source.modulus), "f": morphism_to_json(f),
            "g": morphism_to_json(g), "module": module_to_json(po.module),
            "i1": matrix_out(po.i1.matrix), "i2": matrix_out(po.i2.matrix)}


def pullback_certificate(f: Morphism, g: Morphism, pb) -> dict:
    return {"kind": "pullback", "ring": str(f.source.modulus), "f": morphism_to_json(f),
            "g": morphism_to_json(g), "module": module_to_json(pb.module),
            "p1": matrix_out(pb.p1.matrix), "p2": matrix_out(pb.p2.matrix)}


def conflation_certificate(eta: Conflation, split_class: Optional[bool] = None) -> dict:
    out = {"kind": "conflation", "ring": str(eta.left.modulus), "conflation": conflation_to_json(eta)}
    if split_class is not None:
        out["splits"] = split_class
    return out


# ---------------------------------------------------------------------------
# checks


def _m(doc) -> int:
    return num(doc["ring"])


def _check_snf(doc) -> list[str]:
    A = matrix_in(doc["matrix"])
    U, V = matrix_in(doc["left"]), matrix_in(doc["right"])
    diag = [num(x) for x in doc["diagonal"]]
    r, c = len(A), len(A[0]) if A else 0
    Am, Um, Vm = IntMatrix.from_rows(A, c), IntMatrix.from_rows(U, r), IntMatrix.from_rows(V, c)
    D = (Um @ Am @ Vm).to_rows()
    errs = []
    for i in range(r):
        for j in range(c):
            want = diag[i] if i == j and i < len(diag) else 0
            if D[i][j] != want:
                errs.append(f"U·A·V differs from the diagonal at ({i}, {j})")
    if abs(Um.det()) != 1 or abs(Vm.det()) != 1:
        errs.append("transforms are not unimodular")
    nz = [d for d in diag if d]
    if any(d < 0 for d in diag) or any(b % a for a, b in zip(nz, nz[1:])) or diag[:len(nz)] != nz:
        errs.append("diagonal is not a nonnegative divisibility chain")
    return errs


def _check_purity(doc) -> list[str]:
    i = morphism_from_json(_m(doc), doc["mono"])
    U, X = i.source, i.target
    errs = []
    if not is_mono(i) or image_order(i) != U.order:
        return ["claimed mono is not injective"]
    w = doc.get("witness")
    if doc["pure"]:
        # dX ∩ Img i = i(dU) for every d, by enumeration
        img = {i(x): x for x in _elements(U)}
        for d in range(2, X.modulus + 1):
            if X.modulus % d:
                continue
            dX = {X.reduce([d * c for c in x]) for x in _elements(X)}
            dU = {U.reduce([d * c for c in x]) for x in _elements(U)}
            if any(y in dX and img[y] not in dU for y in img):
                errs.append(f"pure claimed but an equation x·{d} = k fails")
                break
    else:
        if w is None:
            return ["non-pure verdict without a witness"]
        d, k, ka = num(w["d"]), U.reduce([num(x) for x in w["k"]]), X.reduce([num(x) for x in w["k_ambient"]])
        if i(k) != ka:
            errs.append("witness k does not map to k_ambient")
        if not _is_multiple(X, ka, d):
            errs.append("x·d = k has no solution in the ambient")
        if _is_multiple(U, k, d):
            errs.append("x·d = k is solvable in the subobject")
    return errs


def _check_partial(doc) -> list[str]:
    m = _m(doc)
    u, f = morphism_from_json(m, doc["u"]), morphism_from_json(m, doc["f"])
    sel = selector_from_json(m, doc["structure"])
    U, X, Y = u.source, u.target, f.target
    po = doc["pushout"]
    P = module_from_json(m, po["module"])
    ubar = Morphism(Y, P, tuple(tuple(r) for r in matrix_in(po["ubar"])))
    fbar = Morphism(X, P, tuple(tuple(r) for r in matrix_in(po["fbar"])))
    errs = []
    if u.source != f.source or image_order(u) != U.order:
        return ["u is not a mono with the same source as f"]
    if ubar @ f != fbar @ u:
        errs.append("pushout square does not commute")
    # (ubar, fbar): Y ⊕ X → P onto, with |P| = |Y||X|/|U|, has kernel exactly
    # the antidiagonal copy of U, so P is the pushout
    if P.order * U.order != X.order * Y.order:
        errs.append("pushout has the wrong order")
    else:
        ds = direct_sum(Y, X)
        joint = ubar @ ds.proj_a + fbar @ ds.proj_b
        if image_order(joint) != P.order:
            errs.append("pushout legs are not jointly onto")
    if errs:
        return errs
    if sel.kind == "pure":
        w = doc.get("witness")
        if doc["is_partial"]:
            if doc.get("extension") is None:
                errs.append("pure partial verdict without an extension")
            else:
                g = Morphism(X, Y, tuple(tuple(r) for r in matrix_in(doc["extension"])))
                if g @ u != f:
                    errs.append("extension does not restrict to f")
        else:
            if w is None:
                return errs + ["non-partial verdict without a witness"]
            d, k = num(w["d"]), U.reduce([num(x) for x in w["k"]])
            if not _is_multiple(X, u(k), d):
                errs.append("x·d = u(k) is not solvable in X")
            if _is_multiple(Y, f(k), d):
                errs.append("x·d = f(k) is solvable in Y")
        if doc["is_partial_iso"]:
            if doc.get("retraction") is not None:
                h = Morphism(Y, X, tuple(tuple(r) for r in matrix_in(doc["retraction"])))
                if h @ f != u:
                    errs.append("retraction does not satisfy h∘f = u")
            elif not (is_mono(fbar) and _check_purity(purity_certificate(fbar, is_pure_mono(fbar))) == []):
                errs.append("partial iso claimed but f̄ is not pure")
        elif doc["is_partial"] and is_mono(fbar) and is_pure_mono(fbar).verdict:
            errs.append("f̄ is pure but the verdict says not a partial iso")
    else:
        if is_inflation(ubar, sel) != doc["is_partial"]:
            errs.append("ū inflation test disagrees with the verdict")
        iso = doc["is_partial"] and is_inflation(fbar, sel)
        if iso != doc["is_partial_iso"]:
            errs.append("f̄ inflation test disagrees with the verdict")
    return errs


def _check_extension(doc) -> list[str]:
    m = _m(doc)
    u, f = morphism_from_json(m, doc["u"]), morphism_from_json(m, doc["f"])
    X, Y = u.target, f.target
    if doc["extension"] is not None:
        g = Morphism(X, Y, tuple(tuple(r) for r in matrix_in(doc["extension"])))
        return [] if g @ u == f else ["extension does not restrict to f"]
    return _no_extension(u, f)


def _no_extension(u: Morphism, f: Morphism) -> list[str]:
    X, Y = u.target, f.target
    count = 1
    for x in X.invariant_factors:
        for y in Y.invariant_factors:
            count *= gcd(x, y)
    if count > config.CAP_HOM * 16:
        raise WorkspaceError(f"Hom-set of size {count} is too large to re-check")
    steps = [[y // gcd(x, y) for y in Y.invariant_factors] for x in X.invariant_factors]
    ranges = [range(gcd(x, y)) for x in X.invariant_factors for y in Y.invariant_factors]
    nY = Y.ngens
    for c in product(*ranges):
        rows = tuple(tuple(c[a * nY + b] * steps[a][b] for b in range(nY)) for a in range(X.ngens))
        if Morphism(X, Y, rows) @ u == f:
            return ["an extension exists although none was claimed"]
    return []


def _check_injective(doc) -> list[str]:
    m = _m(doc)
    E = module_from_json(m, doc["module"])
    sel = selector_from_json(m, doc["structure"])
    if doc["injective"]:
        errs = []
        if sel.kind == "abelian" and any(gcd(d, m // d) != 1 for d in E.invariant_factors):
            errs.append("injective claimed but an invariant factor shares a prime with its cofactor")
        for b in doc["battery"]:
            u = morphism_from_json(m, b)
            if not is_inflation(u, sel):
                errs.append("battery member is not an inflation")
        return errs
    w = doc.get("witness")
    if w is None:
        return ["non-injective verdict without a witness"]
    u, f = morphism_from_json(m, w["inflation"]), morphism_from_json(m, w["map"])
    if f.target != E:
        return ["witness map does not land in the module"]
    return _no_extension(u, f)


def _check_hull(doc) -> list[str]:
    u = morphism_from_json(_m(doc), doc["embedding"])
    errs = []
    if image_order(u) != u.source.order:
        errs.append("embedding is not injective")
    if not abelian_injective(u.target):
        errs.append("target is not injective")
    if not essential_all_subobjects(u):
        errs.append("some nonzero subgroup of the target misses the image")
    return errs


def _check_pushout(doc) -> list[str]:
    m = _m(doc)
    f, g = morphism_from_json(m, doc["f"]), morphism_from_json(m, doc["g"])
    P = module_from_json(m, doc["module"])
    i1 = Morphism(f.target, P, tuple(tuple(r) for r in matrix_in(doc["i1"])))
    i2 = Morphism(g.target, P, tuple(tuple(r) for r in matrix_in(doc["i2"])))
    if i1 @ f != i2 @ g:
        return ["pushout square does not commute"]
    # P is the quotient of M ⊕ N by the image of K; compare orders
    ds = direct_sum(f.target, g.target)
    rel_order = image_order(ds.inj_a @ f - ds.inj_b @ g)
    joint = i1 @ ds.proj_a + i2 @ ds.proj_b
    if P.order * rel_order != ds.module.order:
        return ["pushout has the wrong order"]
    if image_order(joint) != P.order:
        return ["pushout legs are not jointly onto"]
    return []


def _check_pullback(doc) -> list[str]:
    m = _m(doc)
    f, g = morphism_from_json(m, doc["f"]), morphism_from_json(m, doc["g"])
    Q = module_from_json(m, doc["module"])
    p1 = Morphism(Q, f.source, tuple(tuple(r) for r in matrix_in(doc["p1"])))
    p2 = Morphism(Q, g.source, tuple(tuple(r) for r in matrix_in(doc["p2"])))
    if f @ p1 != g @ p2:
        return ["pullback square does not commute"]
    # Q must map injectively onto {(a, b) : f(a) = g(b)}, counted by enumeration
    count = sum(1 for a in _elements(f.source) for b in _elements(g.source) if f(a) == g(b))
    if Q.order != count:
        return ["pullback has the wrong order"]
    pairs = {p1(q) + p2(q) for q in _elements(Q)}
    if len(pairs) != Q.order:
        return ["pullback legs are not jointly injective"]
    return []


def _check_conflation(doc) -> list[str]:
    m = _m(doc)
    c = doc["conflation"]
    try:
        eta = Conflation(morphism_from_json(m, c["i"]), morphism_from_json(m, c["p"]))
    except ValueError as e:
        return [f"conflation does not validate: {e}"]
    if "splits" in doc:
        split = conflations_equivalent(eta, split_conflation(eta.left, eta.right)) is not None
        if split != doc["splits"]:
            return ["split-class claim does not hold"]
    return []


CHECKS = {
    "snf": _check_snf,
    "purity": _check_purity,
    "partial": _check_partial,
    "extension": _check_extension,
    "injective": _check_injective,
    "hull": _check_hull,
    "pushout": _check_pushout,
    "pullback": _check_pullback,
    "conflation": _check_conflation,
}


def verify_certificate(doc: dict) -> list[str]:
    """Problems found in one certificate (empty when it re-verifies)."""
    kind = doc.get("kind") if isinstance(doc, dict) else None
    if kind not in CHECKS:
        return [f"unknown certificate kind {kind!r}"]
    try:
        return CHECKS[kind](doc)
    except KeyError as e:
        return [f"{kind} certificate is missing {e}"]
    except (TypeError, ValueError, IndexError) as e:
        # a certificate that no longer parses does not verify
        return [f"malformed {kind} certificate: {e}"]


def verify_document(doc: dict) -> dict:
    certs = doc.get("certificates", []) if isinstance(doc, dict) else None
    if certs is None or not isinstance(certs, list):
        raise WorkspaceError("expected a verdict document with a certificate list")
    problems = []
    for n, c in enumerate(certs):
        for p in verify_certificate(c):
            problems.append({"certificate": n, "kind": c.get("kind") if isinstance(c, dict) else None,
                             "problem": p})
    return {"verified": not problems, "checked": len(certs), "problems": problems}
