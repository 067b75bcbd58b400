"""Acceptance criteria, one test each.

Every test records a single ``CRITERION <k> PASS|FAIL`` line with the measured
numbers, then asserts at the stated tolerance.  The lines are printed in an
"acceptance criteria" section at the end of the pytest run.
"""

import subprocess
import sys
import time

from conftest import record_criterion
from nsfourier.bounds import bound_report
from nsfourier.catalog import catalog_list, get_function, l1_discretization_error
from nsfourier.converge import spectrum_convergence
from nsfourier.verify import (
    hand_calculus_rows,
    suite_calculus,
    suite_dft_identity,
    suite_inversion,
    suite_oracle,
    suite_orthonormality,
)

SEED = 7


def report(k, ok, detail):
    print(f"CRITERION {k} {'PASS' if ok else 'FAIL'}: {detail}")
    return record_criterion(k, ok, detail)


def worst(rows):
    return max(r.value for r in rows)


def test_criterion_1_exact_inversion():
    ns = range(1, 33)
    t0 = time.perf_counter()
    fast = suite_inversion(ns, SEED, trials=100, method="fast")
    t_fast = time.perf_counter() - t0
    t0 = time.perf_counter()
    naive = suite_inversion(ns, SEED, trials=100, method="naive")
    t_naive = time.perf_counter() - t0
    ok = all(r.passed for r in fast + naive) and t_fast < 30 and t_naive < 300
    report(
        1,
        ok,
        f"max rel residual fast {worst(fast):.3g}, naive {worst(naive):.3g} (tol 1e-11); "
        f"runtime fast {t_fast:.1f}s, naive {t_naive:.1f}s",
    )
    assert ok


def test_criterion_2_orthonormality():
    rows = suite_orthonormality(range(1, 12), cyclic_max=256)
    ok = len(rows) == 256 + 11 and all(r.passed for r in rows)
    report(2, ok, f"{len(rows)} groups, max Gram deviation {worst(rows):.3g} (tol 1e-12)")
    assert ok


def test_criterion_3_discrete_calculus():
    hand = hand_calculus_rows()
    rows = suite_calculus(range(1, 17), SEED, trials=100)
    ok = all(r.passed for r in rows) and len(hand) == 3 and all(r.value == 0 for r in hand)
    per = {m: max(r.value for r in rows if r.metric == m) for m in ("ftc", "product_rule", "parts")}
    report(3, ok, ", ".join(f"{m} {v:.3g}" for m, v in per.items()) + " (tol 1e-12 scaled); n=1 hand cases exact")
    assert ok


def test_criterion_4_dft_derivative_identities():
    rows = suite_dft_identity([2, 4, 8, 16], SEED, trials=20)
    ok = all(r.passed for r in rows) and {r.function for r in rows} == {"random", "gaussian"}
    report(4, ok, f"max scaled residual {worst(rows):.3g} over all nonzero grid t (tol 1e-10)")
    assert ok


def test_criterion_5_bound_suite():
    fns = [f for f in catalog_list() if f.name != "zero"]
    rows = [r for f in fns for r in bound_report(f, range(1, 129), (0.5, 0.1, 0.02), (2, 4, 8))]
    violations = [r for r in rows if not r.passed]
    kinds = {r.quantity.split("[")[0] for r in rows}
    ok = not violations and {"psi_over_2t_min", "4t2_ghat_max", "tail_mass", "ext_tail"} <= kinds
    tails = sum(r.quantity.startswith("tail_mass") for r in rows)
    report(5, ok, f"{len(rows)} checks over {len(fns)} functions, n=1..128, {tails} eligible tail checks, "
           f"{len(violations)} violations")
    assert ok


def test_criterion_6_convergence_to_continuous():
    g = get_function("gaussian")
    ns = [4, 8, 16, 32, 64]
    rows = spectrum_convergence(g, ns)
    by_probe = {}
    for r in rows:
        by_probe.setdefault(r.metric, []).append(r)
    mono_fail = sorted({r.metric for r in rows if not r.passed})
    g64 = next(r.value for r in rows if r.metric == "spectrum_err[t=0]" and r.n == 64)
    l1 = [l1_discretization_error(g, n) for n in ns]
    l1_ok = all(b < a for a, b in zip(l1, l1[1:]))
    ok = not mono_fail and g64 <= 0.05 and l1_ok
    t0 = ", ".join(f"{r.value:.3g}" for r in by_probe["spectrum_err[t=0]"])
    report(
        6,
        ok,
        f"spectrum error at t=0 over n={ns}: [{t0}]; probes failing strict decrease: "
        f"{mono_fail or 'none'}; |ghat_64(0)-sqrt2| = {g64:.3g} (<= 0.05); "
        f"L1 error [{', '.join(f'{v:.4g}' for v in l1)}] strictly decreasing: {l1_ok}",
    )
    assert ok


def test_criterion_7_oracle_equivalence():
    rows = suite_oracle([1, 2, 4, 8, 16, 32], SEED, trials=50, bridge_max_n=8)
    fast = [r for r in rows if r.metric in ("fast_vs_naive", "ifast_vs_inaive")]
    bridge = [r for r in rows if r.metric == "char_bridge"]
    ok = all(r.passed for r in rows) and len(bridge) == 4
    report(7, ok, f"fast vs naive max rel {worst(fast):.3g} (tol 1e-10); "
           f"dft vs 2n*char_transform max rel {worst(bridge):.3g} for n<=8 (tol 1e-11)")
    assert ok


def test_criterion_8_determinism(tmp_path):
    outs = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        proc = subprocess.run(
            [sys.executable, "-m", "nsfourier.cli", "verify", "--suite", "all", "--seed", "7", "--out", str(path)],
            capture_output=True,
        )
        outs.append((proc.returncode, path.read_bytes()))
    same = outs[0][1] == outs[1][1]
    ok = same and outs[0][0] == 0 and len(outs[0][1]) > 0
    report(8, ok, f"two runs of verify --suite all --seed 7: {len(outs[0][1])} bytes, identical={same}, "
           f"exit codes {outs[0][0]}/{outs[1][0]}")
    assert ok
