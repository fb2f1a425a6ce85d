"""Command-line entry point.

Every command prints one JSON document on standard output.  Exit codes:
0 computed (a false verdict is still 0), 1 property or certificate failure,
2 input error, 3 cap or resource limit exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from math import gcd
from typing import Optional, Sequence

from . import config
from .certify import (
    conflation_certificate,
    extension_certificate,
    hull_certificate,
    injective_certificate,
    partial_certificate,
    pullback_certificate,
    purity_certificate,
    pushout_certificate,
    snf_certificate,
    verify_document,
)
from .corpus import divisibility_chains, modules_up_to, sample_morphisms
from .errors import CapExceeded, InvariantViolation
from .exact import (
    ABELIAN,
    PURE,
    HomFrom,
    HomInto,
    Selector,
    baer_sum,
    conflations_equivalent,
    cyclics,
    ext_pullback,
    ext_pushout,
    in_substructure,
    is_pure_mono,
    pullback,
    pure_tri_check,
    pushout,
    split_conflation,
)
from .hulls import (
    Battery,
    InflationSet,
    default_inflations,
    is_essential,
    is_injective_hull,
    is_small_over,
    iterative_preenvelope,
    minimize_envelope,
    structural_injective_hull,
)
from .linalg import IntMatrix, smith_normal_form
from .modules import (
    FpModule,
    Morphism,
    enumerate_hom,
    extend_along,
    hom_count,
    hom_generators,
    is_mono,
)
from .partial import (
    PartialMorphism,
    abelian_injective,
    baer_battery,
    check_partial,
    find_extension,
    is_cophantom,
    is_f_injective,
)
from .serialize import (
    Workspace,
    WorkspaceError,
    conflation_to_json,
    dumps,
    ints,
    matrix_in,
    matrix_out,
    module_to_json,
    morphism_to_json,
    num,
    selector_to_json,
)
from .suites import SUITES, SuiteParams, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class Context:
    """Parsed arguments plus the workspace they refer to."""

    def __init__(self, args, argv):
        self.args = args
        self.argv = list(argv)
        self.ws: Optional[Workspace] = None
        self.battery_used: Optional[Battery] = None
        if getattr(args, "workspace", None):
            self.ws = Workspace.load(args.workspace)
            if args.ring is not None and args.ring != self.ws.modulus:
                raise WorkspaceError(f"--ring {args.ring} does not match the workspace ring "
                                     f"{self.ws.modulus}")

    @property
    def modulus(self) -> int:
        if self.ws is not None:
            return self.ws.modulus
        if self.args.ring is None:
            raise WorkspaceError("this command needs --ring or a workspace")
        if self.args.ring < 2:
            raise WorkspaceError("--ring must be at least 2")
        return self.args.ring

    def need_ws(self) -> Workspace:
        if self.ws is None:
            raise WorkspaceError("this command needs a workspace (-w)")
        return self.ws

    def module(self, name: str) -> FpModule:
        return self.need_ws().module(name)

    def morphism(self, name: str) -> Morphism:
        return self.need_ws().morphism(name)

    def selector(self) -> Selector:
        kind = (self.args.structure or "pure").replace("-", "_")
        if kind == "abelian":
            return ABELIAN
        if kind == "pure":
            return PURE
        if kind in ("hom_into", "hom_from"):
            raw = self.args.cls or ""
            if raw == "cyclics":
                members = cyclics(self.modulus)
            else:
                members = [self.module(n) for n in raw.split(",") if n]
            return (HomInto if kind == "hom_into" else HomFrom)(members)
        raise WorkspaceError(f"unknown structure {self.args.structure!r}")

    def battery(self, extra: Sequence[FpModule] = ()) -> Battery:
        raw = self.args.battery
        order = config.DEFAULT_BATTERY_ORDER
        if raw and raw != "default":
            if raw.startswith("default:") or raw.isdigit():
                order = num(raw.split(":")[-1])
            else:
                self.battery_used = self.need_ws().battery(raw)
                return self.battery_used
        if self.args.max_order is not None:
            order = self.args.max_order
        self.battery_used = Battery.default(self.modulus, order, extra)
        return self.battery_used

    def inflations(self, sel: Selector, battery_extra=()) -> tuple[Morphism, ...]:
        name = getattr(self.args, "inflations", None)
        if name == "baer" or (name is None and sel.kind == "abelian"):
            return tuple(baer_battery(self.modulus))
        if name == "free":
            return InflationSet.free_subobjects(self.modulus, 2).members
        if name:
            return self.need_ws().inflation_set(name).members
        return default_inflations(sel, self.battery(battery_extra))

    def envelope(self, result: dict, certificates=(), structure: Optional[Selector] = None) -> dict:
        doc = {"command": self.argv, "result": result, "certificates": list(certificates),
               "caps": config.caps()}
        try:
            doc["ring"] = str(self.modulus)
        except WorkspaceError:
            pass
        if structure is not None:
            doc["structure"] = selector_to_json(structure)
        if self.battery_used is not None:
            doc["battery"] = self.battery_used.to_json()
        return doc


# ---------------------------------------------------------------------------
# commands


def cmd_snf(ctx: Context):
    rows = _parse_matrix(ctx.args.matrix)
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise WorkspaceError("matrix rows have different lengths")
    a = IntMatrix.from_rows(rows, ncols)
    dec = smith_normal_form(a)
    diag = dec.diagonal
    result = {"diagonal": ints(diag), "rank": sum(1 for d in diag if d),
              "left": matrix_out(dec.u.to_rows()), "right": matrix_out(dec.v.to_rows())}
    if ctx.args.ring is not None:
        m = ctx.args.ring
        fs = [d for d in (gcd(d, m) for d in diag) if d != 1]
        fs += [m] * (ncols - len(diag))
        result["cokernel_factors"] = ints(sorted(fs))
    return EXIT_OK, ctx.envelope(result, [snf_certificate(a, dec)])


def _parse_matrix(text: str) -> list[list[int]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise WorkspaceError(f"malformed matrix JSON: {e}") from None
    return matrix_in(data)


def _module_arg(ctx: Context) -> FpModule:
    if ctx.args.module:
        return ctx.module(ctx.args.module)
    if ctx.args.factors is not None:
        fs = [num(x) for x in json.loads(ctx.args.factors)]
        try:
            return FpModule.of(ctx.modulus, fs)
        except ValueError as e:
            raise WorkspaceError(str(e)) from None
    raise WorkspaceError("give a module with -m NAME or --factors")


def cmd_module_info(ctx: Context):
    M = _module_arg(ctx)
    E, u = structural_injective_hull(M)
    exponent = max(M.invariant_factors, default=1)
    result = {"factors": module_to_json(M), "order": str(M.order), "generators": M.ngens,
              "exponent": str(exponent), "injective": abelian_injective(M),
              "hull": module_to_json(E)}
    if M.original_presentation is not None:
        result["presentation"] = matrix_out(M.original_presentation.to_rows())
    return EXIT_OK, ctx.envelope(result)


def cmd_hom(ctx: Context):
    A, B = ctx.module(ctx.args.source), ctx.module(ctx.args.target)
    result = {"count": str(hom_count(A, B)),
              "generators": [matrix_out(g.matrix) for g in hom_generators(A, B)]}
    if ctx.args.list:
        result["maps"] = [matrix_out(f.matrix) for f in enumerate_hom(A, B)]
    return EXIT_OK, ctx.envelope(result)


def cmd_pushout(ctx: Context):
    f, g = ctx.morphism(ctx.args.f), ctx.morphism(ctx.args.g)
    try:
        po = pushout(f, g)
    except ValueError as e:
        raise WorkspaceError(str(e)) from None
    result = {"module": module_to_json(po.module), "i1": matrix_out(po.i1.matrix),
              "i2": matrix_out(po.i2.matrix)}
    return EXIT_OK, ctx.envelope(result, [pushout_certificate(f, g, po)])


def cmd_pullback(ctx: Context):
    f, g = ctx.morphism(ctx.args.f), ctx.morphism(ctx.args.g)
    try:
        pb = pullback(f, g)
    except ValueError as e:
        raise WorkspaceError(str(e)) from None
    result = {"module": module_to_json(pb.module), "p1": matrix_out(pb.p1.matrix),
              "p2": matrix_out(pb.p2.matrix)}
    return EXIT_OK, ctx.envelope(result, [pullback_certificate(f, g, pb)])


def cmd_is_pure(ctx: Context):
    u = ctx.morphism(ctx.args.u)
    if not is_mono(u):
        raise WorkspaceError(f"{ctx.args.u} is not a monomorphism")
    cert = is_pure_mono(u)
    a, b, c = pure_tri_check(u)
    result = cert.to_json()
    if cert.witness is not None:
        w = cert.witness
        result["witness"] = {"d": str(w.d), "k": ints(w.k), "k_ambient": ints(w.k_ambient)}
    result["routes"] = {"hom_exactness": a, "orders": b, "search": c}
    return EXIT_OK, ctx.envelope(result, [purity_certificate(u, cert)])


def cmd_substructure(ctx: Context):
    eta = ctx.need_ws().conflation(ctx.args.conflation)
    sel = ctx.selector()
    return EXIT_OK, ctx.envelope({"in_substructure": in_substructure(eta, sel)}, [], sel)


def _conflation_result(eta):
    split = conflations_equivalent(eta, split_conflation(eta.left, eta.right)) is not None
    res = {"conflation": conflation_to_json(eta), "middle": module_to_json(eta.middle),
           "splits": split}
    return res, conflation_certificate(eta, split)


def cmd_baer_sum(ctx: Context):
    ws = ctx.need_ws()
    a, b = ws.conflation(ctx.args.a), ws.conflation(ctx.args.b)
    try:
        eta = baer_sum(a, b)
    except ValueError as e:
        raise WorkspaceError(str(e)) from None
    res, cert = _conflation_result(eta)
    return EXIT_OK, ctx.envelope(res, [cert])


def cmd_ext(ctx: Context):
    eta = ctx.need_ws().conflation(ctx.args.conflation)
    try:
        if ctx.args.ext_cmd == "push":
            out = ext_pushout(eta, ctx.morphism(ctx.args.g))
        else:
            out = ext_pullback(eta, ctx.morphism(ctx.args.f))
    except ValueError as e:
        raise WorkspaceError(str(e)) from None
    res, cert = _conflation_result(out)
    return EXIT_OK, ctx.envelope(res, [cert])


def _pm(ctx: Context) -> PartialMorphism:
    try:
        return PartialMorphism(ctx.morphism(ctx.args.u), ctx.morphism(ctx.args.f))
    except ValueError as e:
        if isinstance(e, WorkspaceError):
            raise
        raise WorkspaceError(str(e)) from None


def cmd_partial(ctx: Context):
    pm = _pm(ctx)
    sel = ctx.selector()
    sub = ctx.args.partial_cmd
    if sub == "extend":
        g = find_extension(pm)
        res = {"extension": matrix_out(g.matrix) if g is not None else None}
        return EXIT_OK, ctx.envelope(res, [extension_certificate(pm.u, pm.f, g)], sel)
    v = check_partial(pm, sel)
    g = find_extension(pm) if v.is_partial and sel.kind == "pure" else None
    h = extend_along(pm.u, pm.f) if v.is_partial_iso else None
    cert = partial_certificate(pm, v, g, h)
    w = v.system_witness
    wj = {"d": str(w.d), "k": ints(w.k)} if w is not None else None
    if sub == "witness":
        res = {"found": w is not None, "witness": cert["witness"]}
    else:
        P, ubar, fbar = v.pushout
        res = {"is_partial": v.is_partial, "is_partial_iso": v.is_partial_iso, "witness": wj,
               "pushout": {"module": module_to_json(P), "ubar": matrix_out(ubar.matrix),
                           "fbar": matrix_out(fbar.matrix)}}
    return EXIT_OK, ctx.envelope(res, [cert], sel)


def cmd_cophantom(ctx: Context):
    f = ctx.morphism(ctx.args.f)
    sel = ctx.selector()
    if ctx.args.embeddings:
        emb = [ctx.morphism(n) for n in ctx.args.embeddings.split(",") if n]
    else:
        emb = [u for Z in ctx.battery((f.source,)).targets
               for u in enumerate_hom(f.source, Z) if is_mono(u)]
    for u in emb:
        if not is_mono(u):
            raise WorkspaceError("cophantom battery members must be monomorphisms")
    try:
        ok, bad = is_cophantom(f, sel, emb)
    except ValueError as e:
        raise WorkspaceError(str(e)) from None
    res = {"cophantom": ok, "embeddings": len(emb),
           "failing_embedding": morphism_to_json(bad) if bad is not None else None}
    certs = [partial_certificate(PartialMorphism(bad, f), check_partial(PartialMorphism(bad, f), sel))] \
        if bad is not None else []
    return EXIT_OK, ctx.envelope(res, certs, sel)


def cmd_injective(ctx: Context):
    E = _module_arg(ctx)
    sel = ctx.selector() if ctx.args.structure else ABELIAN
    infl = ctx.inflations(sel, (E,))
    rep = is_f_injective(E, sel, infl)
    res = {"injective": rep.verdict, "battery_size": len(infl),
           "witness": None if rep.witness is None else {
               "inflation": morphism_to_json(rep.witness[0]), "map": morphism_to_json(rep.witness[1])}}
    return EXIT_OK, ctx.envelope(res, [injective_certificate(E, sel, rep, infl)], sel)


def _witness_json(w):
    if w is None:
        return None
    if isinstance(w, tuple) and len(w) == 2 and isinstance(w[1], Morphism):
        return {"module": module_to_json(w[0]), "map": morphism_to_json(w[1])}
    return repr(w)


def cmd_essential(ctx: Context):
    u = ctx.morphism(ctx.args.u)
    sel = ctx.selector() if ctx.args.structure else ABELIAN
    battery = ctx.battery((u.source, u.target))
    try:
        v = is_essential(u, sel, battery)
    except ValueError as e:
        raise WorkspaceError(str(e)) from None
    if v.method == "cyclic":
        ctx.battery_used = None
    res = {"essential": v.verdict, "method": v.method, "witness": _witness_json(v.witness)}
    return EXIT_OK, ctx.envelope(res, [], sel)


def cmd_small_over(ctx: Context):
    v, u = ctx.morphism(ctx.args.v), ctx.morphism(ctx.args.u)
    sel = ctx.selector() if ctx.args.structure else ABELIAN
    battery = ctx.battery((u.source, v.source, v.target))
    try:
        r = is_small_over(v, u, sel, battery)
    except ValueError as e:
        raise WorkspaceError(str(e)) from None
    res = {"small": r.verdict, "method": r.method, "witness": _witness_json(r.witness)}
    return EXIT_OK, ctx.envelope(res, [], sel)


def cmd_hull(ctx: Context):
    M = _module_arg(ctx)
    E, u = structural_injective_hull(M)
    battery = ctx.battery((M,))
    rep = is_injective_hull(u, ABELIAN, battery)
    res = {"hull": module_to_json(E), "embedding": matrix_out(u.matrix),
           "conditions": {"essential_injective": rep.essential_injective,
                          "small_injective": rep.small_injective,
                          "split_condition": rep.split_condition,
                          "envelope": rep.envelope,
                          "weakly_essential_injective": rep.weakly_essential_injective}}
    return EXIT_OK, ctx.envelope(res, [hull_certificate(M, u)], ABELIAN)


def _inflation_set(ctx: Context) -> InflationSet:
    name = ctx.args.inflations or "baer"
    if name == "baer":
        return InflationSet.baer(ctx.modulus)
    if name == "free":
        return InflationSet.free_subobjects(ctx.modulus, 2)
    return ctx.need_ws().inflation_set(name)


def cmd_preenvelope(ctx: Context):
    M = _module_arg(ctx)
    H = _inflation_set(ctx)
    steps = ctx.args.max_steps if ctx.args.max_steps is not None else config.MAX_STEPS
    trace = iterative_preenvelope(M, H, max_steps=steps)
    res = {"steps": trace.steps_used, "target": module_to_json(trace.target),
           "morphism": matrix_out(trace.final.matrix),
           "stages": [{"module": module_to_json(s.module), "map": matrix_out(s.morphism.matrix),
                       "selected": [{"member": k, "map": matrix_out(h.matrix)} for k, h in s.selected]}
                      for s in trace.stages]}
    return EXIT_OK, ctx.envelope(res, [], H.selector)


def cmd_minimize(ctx: Context):
    u = ctx.morphism(ctx.args.u)
    sel = ctx.selector() if ctx.args.structure else ABELIAN
    try:
        S, v = minimize_envelope(u, sel)
    except ValueError as e:
        raise WorkspaceError(str(e)) from None
    res = {"module": module_to_json(S), "embedding": matrix_out(v.matrix)}
    return EXIT_OK, ctx.envelope(res, [], sel)


def corpus_workspace(modulus: int, max_order: int, seed: int, count: int) -> Workspace:
    ws = Workspace.from_json({"ring": str(modulus)})
    mods = modules_up_to(modulus, max_order)
    for n, M in enumerate(mods):
        ws.add_module(f"M{n}", M)
    for n, (i, j, f) in enumerate(sample_morphisms(mods, count, seed) if mods else []):
        ws.add_morphism(f"f{n}", f)
    return ws


def cmd_corpus(ctx: Context):
    m = ctx.modulus
    max_order = ctx.args.max_order if ctx.args.max_order is not None else 16
    divisibility_chains(m, max_order)  # cap check
    ws = corpus_workspace(m, max_order, ctx.args.seed, ctx.args.count)
    return EXIT_OK, ws.to_json()


def cmd_suite(ctx: Context):
    name = ctx.args.name
    if name not in SUITES:
        raise WorkspaceError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    prm = SuiteParams(max_order=ctx.args.max_order, seed=ctx.args.seed,
                      count=ctx.args.count if ctx.args.count is not None else 10_000,
                      max_steps=ctx.args.max_steps if ctx.args.max_steps is not None else config.MAX_STEPS)
    rep = run_suite(name, ctx.modulus, prm)
    return (EXIT_OK if rep.passed else EXIT_FAIL), ctx.envelope(rep.to_json())


def cmd_verify(ctx: Context):
    path = ctx.args.document
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        doc = json.loads(text)
    except OSError as e:
        raise WorkspaceError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise WorkspaceError(f"malformed JSON: {e}") from None
    out = verify_document(doc)
    return (EXIT_OK if out["verified"] else EXIT_FAIL), out


# ---------------------------------------------------------------------------
# argument parsing


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("-w", "--workspace", help="workspace JSON file")
    p.add_argument("--ring", type=int, help="modulus m of the ring Z/m")
    p.add_argument("--max-order", type=int, dest="max_order")
    p.add_argument("--max-steps", type=int, dest="max_steps")
    p.add_argument("--battery", help="workspace battery name, 'default' or 'default:N'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap-hom", type=int, dest="cap_hom")
    p.add_argument("--cap-subgroups", type=int, dest="cap_subgroups")
    p.add_argument("--structure", help="abelian, pure, hom-into or hom-from")
    p.add_argument("--class", dest="cls", help="comma-separated module names, or 'cyclics'")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="zpartial", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        p.set_defaults(fn=fn)
        return p

    p = add("snf", cmd_snf, help="Smith normal form of an integer matrix")
    p.add_argument("--matrix", required=True, help='JSON, e.g. "[[2,4],[6,8]]"')

    p = sub.add_parser("module", help="module queries")
    msub = p.add_subparsers(dest="module_cmd", required=True)
    q = msub.add_parser("info", parents=[common])
    q.add_argument("-m", "--module")
    q.add_argument("--factors", help='JSON list, e.g. "[2,4]"')
    q.set_defaults(fn=cmd_module_info)

    p = add("hom", cmd_hom, help="Hom-set size and generators")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--list", action="store_true", help="list every map (bounded by --cap-hom)")

    for name, fn in (("pushout", cmd_pushout), ("pullback", cmd_pullback)):
        p = add(name, fn)
        p.add_argument("-f", required=True)
        p.add_argument("-g", required=True)

    p = add("is-pure", cmd_is_pure, help="purity of a monomorphism")
    p.add_argument("-u", required=True)

    p = add("substructure", cmd_substructure, help="membership of a conflation in a substructure")
    p.add_argument("-c", "--conflation", required=True)

    p = add("baer-sum", cmd_baer_sum)
    p.add_argument("-a", required=True)
    p.add_argument("-b", required=True)

    p = sub.add_parser("ext", help="Ext actions on conflations")
    esub = p.add_subparsers(dest="ext_cmd", required=True)
    q = esub.add_parser("push", parents=[common])
    q.add_argument("-c", "--conflation", required=True)
    q.add_argument("-g", required=True)
    q.set_defaults(fn=cmd_ext)
    q = esub.add_parser("pull", parents=[common])
    q.add_argument("-c", "--conflation", required=True)
    q.add_argument("-f", required=True)
    q.set_defaults(fn=cmd_ext)

    p = sub.add_parser("partial", help="partial morphisms")
    psub = p.add_subparsers(dest="partial_cmd", required=True)
    for name in ("check", "witness", "extend"):
        q = psub.add_parser(name, parents=[common])
        q.add_argument("-u", required=True)
        q.add_argument("-f", required=True)
        q.set_defaults(fn=cmd_partial)

    p = add("cophantom", cmd_cophantom)
    p.add_argument("-f", required=True)
    p.add_argument("--embeddings", help="comma-separated monomorphism names")

    p = add("injective", cmd_injective)
    p.add_argument("-m", "--module")
    p.add_argument("--factors")
    p.add_argument("--inflations", help="inflation set name, 'baer' or 'free'")

    p = add("essential", cmd_essential)
    p.add_argument("-u", required=True)

    p = add("small-over", cmd_small_over)
    p.add_argument("-v", required=True)
    p.add_argument("-u", required=True)

    p = add("hull", cmd_hull, help="injective hull of a module")
    p.add_argument("-m", "--module")
    p.add_argument("--factors")

    p = add("preenvelope", cmd_preenvelope)
    p.add_argument("-m", "--module")
    p.add_argument("--factors")
    p.add_argument("--inflations", help="inflation set name, 'baer' (default) or 'free'")

    p = add("minimize", cmd_minimize)
    p.add_argument("-u", required=True)

    p = sub.add_parser("corpus", help="corpus generation")
    csub = p.add_subparsers(dest="corpus_cmd", required=True)
    q = csub.add_parser("gen", parents=[common])
    q.add_argument("--count", type=int, default=0, help="number of sampled morphisms")
    q.set_defaults(fn=cmd_corpus)

    p = sub.add_parser("suite", help="property suites")
    ssub = p.add_subparsers(dest="suite_cmd", required=True)
    q = ssub.add_parser("run", parents=[common])
    q.add_argument("name", help=", ".join(sorted(SUITES)))
    q.add_argument("--count", type=int)
    q.set_defaults(fn=cmd_suite)

    p = sub.add_parser("verify", help="re-check the certificates of a verdict document")
    p.add_argument("document", help="file path, or - for standard input")
    p.set_defaults(fn=cmd_verify, ring=None, workspace=None)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    saved = (config.CAP_HOM, config.CAP_SUBGROUPS)
    if getattr(args, "cap_hom", None) is not None:
        config.CAP_HOM = args.cap_hom
    if getattr(args, "cap_subgroups", None) is not None:
        config.CAP_SUBGROUPS = args.cap_subgroups
    try:
        ctx = Context(args, argv)
        code, doc = args.fn(ctx)
    except CapExceeded as e:
        code, doc = EXIT_CAP, {"error": "cap exceeded", "detail": str(e), "caps": config.caps()}
    except (WorkspaceError, KeyError) as e:
        code, doc = EXIT_INPUT, {"error": "input error", "detail": str(e).strip("'\"")}
    except InvariantViolation as e:
        code, doc = EXIT_FAIL, {"error": "internal invariant violated", "detail": str(e)}
    except ValueError as e:
        code, doc = EXIT_INPUT, {"error": "input error", "detail": str(e)}
    finally:
        config.CAP_HOM, config.CAP_SUBGROUPS = saved
    out.write(dumps(doc))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
