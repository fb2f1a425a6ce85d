"""Acceptance criteria, one test per criterion.

Each test prints a single ``ACCEPTANCE <n> PASS|FAIL ...`` line; the lines
are repeated together in the terminal summary (see conftest.py).
Run only these with ``pytest tests/test_acceptance.py -v``.
"""
import functools
import io
import json

from zpartial.cli import run
from zpartial.suites import SuiteParams, run_suite
from zpartial.sweeps import instance_count, theorem_sweep

RESULTS: dict[int, str] = {}


def report(n: int, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


@functools.lru_cache(maxsize=None)
def sweep(m: int):
    return theorem_sweep(m, max_ambient=32, max_codomain=16)


SWEEP_RINGS = (4, 8, 12)


def test_1_pushout_vs_equation_oracle():
    parts, ok = [], True
    for m in SWEEP_RINGS:
        rep = sweep(m)
        ok &= rep.oracle_disagreements == 0 and rep.instances == instance_count(m, 32, 16)
        parts.append(f"Z/{m}: {rep.instances} maps, {rep.oracle_disagreements} disagreements")
    report(1, ok, "; ".join(parts))


def test_2_partial_iff_extendable():
    parts, ok = [], True
    for m in SWEEP_RINGS:
        rep = sweep(m)
        ok &= rep.extension_disagreements == 0 and rep.instances > 0
        parts.append(f"Z/{m}: {rep.extension_disagreements} disagreements ({rep.partial} partial)")
    report(2, ok, "; ".join(parts))


def _suite_line(reports):
    bad = [(r.ring, p.name, p.failures, p.first_failure)
           for r in reports for p in r.properties if p.failures]
    checked = sum(p.checked for r in reports for p in r.properties)
    return not bad, f"{checked} checks, failures: {bad[:3] if bad else 0}"


def test_3_closure_properties():
    reps = [run_suite("prop-2-5", m, SuiteParams(count=10_000, seed=0)) for m in (4, 12)]
    ok, line = _suite_line(reps)
    items = {p.name.split(")")[0] + ")" for r in reps for p in r.properties}
    enough = all(p.checked >= 10_000 for r in reps for p in r.properties)
    ok &= enough and items == {"(1)", "(2)", "(4a)", "(5)", "(6)", "(7)", "(8)"}
    report(3, ok, f"items {sorted(items)} x rings 4, 12, >=10^4 each: {enough}; {line}")


def test_4_purity_tri_agreement():
    reps = [run_suite("purity", m, SuiteParams(max_order=64)) for m in (4, 8, 12)]
    ok, line = _suite_line(reps)
    monos = [r.properties[0].checked for r in reps]
    witnesses = [r.properties[1].checked if len(r.properties) > 1 else 0 for r in reps]
    report(4, ok and all(monos) and all(witnesses),
           f"monos {monos}, witnesses {witnesses} (rings 4, 8, 12); {line}")


def test_5_ext_classes():
    rep = run_suite("ext", 4)
    d = rep.extra
    ok = rep.passed and d["classes"] == 2
    if ok:
        z, n = d["split_class"], 1 - d["split_class"]
        t = d["sum_table"]
        # split is neutral and nonsplit + nonsplit = split: the group Z/2
        ok = t[z][z] == z and t[z][n] == n and t[n][z] == n and t[n][n] == z
    report(5, ok, f"{d['conflations']} conflations, {d['classes']} classes, middles {d['middles']}, "
                  f"sum table {d['sum_table']}, split class {d['split_class']}")


def test_6_hulls():
    reps = [run_suite("hulls", m, SuiteParams(max_order=32)) for m in (4, 12)]
    ok, line = _suite_line(reps)
    counts = [r.properties[0].checked for r in reps]
    report(6, ok and all(counts), f"modules {counts} (rings 4, 12); {line}")


def test_7_pure_collapse():
    rep = run_suite("pure-collapse", 12, SuiteParams(max_order=32))
    ok, line = _suite_line([rep])
    report(7, ok and rep.extra["pure_monos"] > 0, f"{rep.extra['pure_monos']} pure monos; {line}")


def test_8_essentiality_routes():
    reps = [run_suite("essential", m, SuiteParams(max_order=32, battery_order=16)) for m in (4, 8, 12)]
    ok, line = _suite_line(reps)
    counts = [r.properties[0].checked for r in reps]
    report(8, ok and all(counts), f"monos {counts} (rings 4, 8, 12); {line}")


def test_9_fp_preenvelope():
    rep = run_suite("fp-preenvelope", 4, SuiteParams(max_order=16, max_steps=8))
    ok, line = _suite_line([rep])
    steps = rep.extra["steps"]
    report(9, ok and len(steps) == rep.prop("terminates within max_steps").checked,
           f"{len(steps)} modules, max steps {max(steps.values())}; {line}")


def _cli(argv):
    buf = io.StringIO()
    code = run(argv, buf)
    return code, buf.getvalue().encode()


def test_10_determinism():
    runs = [
        ["corpus", "gen", "--ring", "12", "--max-order", "32", "--count", "200", "--seed", "5"],
        ["suite", "run", "prop-2-5", "--ring", "4", "--count", "200", "--seed", "5"],
        ["suite", "run", "characterizations", "--ring", "12", "--count", "100", "--seed", "3"],
        ["hull", "--ring", "12", "--factors", "[2,6]"],
    ]
    same = []
    for argv in runs:
        a, b = _cli(argv), _cli(argv)
        same.append(a == b and a[0] == 0)
        json.loads(a[1])
    report(10, all(same), f"{sum(same)}/{len(runs)} commands byte-identical across two runs")
