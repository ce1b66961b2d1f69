"""Shipped acceptance criteria, one test per criterion.

Every test prints a single PASS/FAIL verdict line (run pytest -s to see
them all) and asserts the criterion at its shipped tolerance.  The
randomized criteria run on the full selftest profile at a fixed seed,
so the values are reproducible.  Criteria 1 and 2 carry runtime
budgets, timed around the computation alone.
"""

import json
import subprocess
import sys
import time

from ncdomain.selftest import (
    FULL,
    check_agler_identity,
    check_certificate_symmetry,
    check_composition_coherence,
    check_fixed_failure_eigenvalue,
    check_form_agreement,
    check_hardy_monotonicity,
    check_iteration_probe,
    check_moment_nilpotent,
    check_moment_radial,
    check_rank_one_defect,
    check_rescaling_certificates,
    check_row_grade_bounds,
    check_von_neumann,
    check_weight_oracle_equivalence,
)

SEED = 0


def _verdict(label: str, result) -> None:
    flag = "PASS" if result.passed else "FAIL"
    print(
        f"criterion {label} ({result.name}): value={result.value:.3e} "
        f"tol={result.tol:.1e} {flag}"
    )


def test_criterion_01_weight_oracle_equivalence():
    start = time.perf_counter()
    result = check_weight_oracle_equivalence(FULL, SEED)
    elapsed = time.perf_counter() - start
    _verdict("1", result)
    assert result.passed
    assert elapsed < 30.0


def test_criterion_02_exact_rank_one_defect():
    start = time.perf_counter()
    result = check_rank_one_defect(FULL, SEED)
    elapsed = time.perf_counter() - start
    _verdict("2", result)
    assert result.passed
    assert elapsed < 60.0


def test_criterion_03_row_contraction_and_grade_bounds():
    result = check_row_grade_bounds(FULL, SEED)
    _verdict("3", result)
    assert result.passed


def test_criterion_04a_moment_reproduction_nilpotent():
    result = check_moment_nilpotent(FULL, SEED)
    _verdict("4a", result)
    assert result.passed


def test_criterion_04b_moment_reproduction_classical_family():
    result = check_moment_radial(FULL, SEED)
    _verdict("4b", result)
    assert result.passed


def test_criterion_05_kernel_vs_resolvent_agreement():
    result = check_form_agreement(FULL, SEED)
    _verdict("5", result)
    assert result.passed


def test_criterion_06_von_neumann_inequality():
    result = check_von_neumann(FULL, SEED)
    _verdict("6", result)
    assert result.passed


def test_criterion_07_hardy_norm_monotonicity():
    result = check_hardy_monotonicity(FULL, SEED)
    _verdict("7", result)
    assert result.passed


def test_criterion_08_composition_coherence():
    result = check_composition_coherence(FULL, SEED)
    _verdict("8", result)
    assert result.passed


def test_criterion_09a_rescaling_certificates():
    result = check_rescaling_certificates(FULL, SEED)
    _verdict("9a", result)
    assert result.passed


def test_criterion_09b_doubling_failure_eigenvalue():
    result = check_fixed_failure_eigenvalue(FULL, SEED)
    _verdict("9b", result)
    assert result.passed


def test_criterion_09c_iteration_probe_flags():
    result = check_iteration_probe(FULL, SEED)
    _verdict("9c", result)
    assert result.passed


def test_criterion_09d_certificate_symmetry():
    result = check_certificate_symmetry(FULL, SEED)
    _verdict("9d", result)
    assert result.passed


def test_criterion_10_agler_expansion_identity():
    result = check_agler_identity(FULL, SEED)
    _verdict("10", result)
    assert result.passed


def test_criterion_11_selftest_determinism(tmp_path):
    cmd = [
        sys.executable, "-m", "ncdomain", "selftest",
        "--profile", "fast", "--seed", "7", "--format", "json",
    ]
    bodies = []
    for name in ("one.json", "two.json"):
        out = tmp_path / name
        proc = subprocess.run(
            cmd + ["--out", str(out)], capture_output=True, text=True
        )
        assert proc.returncode == 0, proc.stderr
        payload = json.loads(out.read_text())
        bodies.append(json.dumps(payload["report"], sort_keys=True))
        assert "wall_time_s" in payload
    same = bodies[0] == bodies[1]
    flag = "PASS" if same else "FAIL"
    print(
        f"criterion 11 (selftest_determinism): value={float(not same):.3e} "
        f"tol=0.0e+00 {flag}"
    )
    assert same
