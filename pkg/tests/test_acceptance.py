"""Acceptance criteria, each checked at zero tolerance.

Every criterion prints exactly one ``PASS``/``FAIL`` line. The lines are also
collected and repeated in the pytest terminal summary, and running this file
directly (``python tests/test_acceptance.py``) prints them without pytest.
"""

import hashlib
import subprocess
import sys
import time
from pathlib import Path

import pytest

from operadic import Field, ModuleSpace, coboundary_matrix, cohomology_dimensions
from operadic import cogravity as cg
from operadic import deformation as dfm
from operadic.errors import DegenerateTraceError
from operadic.exact import ExactTensor
from operadic.generators import (ALGEBRAS, dual_of_algebra, group_like, random_coassociative,
                                 random_coop, random_nonzero, random_scalars,
                                 random_symmetric_invertible, rng_for, unit_comultiplication)
from operadic.linalg import matmul
from operadic.verify import VerifyConfig, run_verification

Q, F5, F7 = Field.rational(), Field.prime(5), Field.prime(7)
FIELDS = (Q, F5)
DIMS = (1, 2, 3)
TRIALS = 100
SEED = 20240611

RESULTS: dict[int, str] = {}


def report(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {n:2d}  {title}: {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def sweep(names, trials=TRIALS, max_degree=4, dims=DIMS, fields=FIELDS):
    """Run ``names`` over every (d, field); returns per-identity totals."""
    totals = {name: {"exercised": 10**9, "checks": 0, "failures": 0} for name in names}
    for d in dims:
        for field in fields:
            cfg = VerifyConfig(dimension=d, field=field, max_degree=max_degree,
                               trials=trials, seed=SEED)
            for rec in run_verification(cfg, names).records:
                t = totals[rec.name]
                t["exercised"] = min(t["exercised"], rec.exercised)
                t["checks"] += rec.checks
                t["failures"] += rec.failures
    return totals


def summarize(totals, need=TRIALS):
    ok = all(t["failures"] == 0 and t["exercised"] >= need for t in totals.values())
    parts = [f"{name} {t['checks']} checks/{t['failures']} failures (min {t['exercised']} inputs)"
             for name, t in totals.items()]
    return ok, "; ".join(parts)


_SWEEP_SECONDS = {}


def test_criterion_01_preoperad_axioms():
    names = ["composition_relation_1", "composition_relation_2", "composition_relation_3",
             "unit_laws"]
    t0 = time.perf_counter()
    # case 1 needs i >= 1 and case 3 needs a slot past f, so some triples skip a case
    totals = sweep(names, trials=2 * TRIALS)
    _SWEEP_SECONDS[1] = time.perf_counter() - t0
    ok, detail = summarize(totals)
    report(1, "pre-operad axioms, d in {1,2,3}, degrees <= 4, Q and F_5", ok,
           f"{detail}; {_SWEEP_SECONDS[1]:.1f}s")


def test_criterion_02_graded_lie_structure():
    names = ["bracket_antisymmetry", "jacobi", "derivation_property", "commutation_relation"]
    t0 = time.perf_counter()
    totals = sweep(names)
    _SWEEP_SECONDS[2] = time.perf_counter() - t0
    ok, detail = summarize(totals)
    total = sum(_SWEEP_SECONDS.values())
    ok = ok and total < 60
    report(2, "graded Lie structure on the same sweep", ok,
           f"{detail}; {_SWEEP_SECONDS[2]:.1f}s (criteria 1+2: {total:.1f}s, limit 60s)")


def test_criterion_03_deformation_equation():
    ok, detail = summarize(sweep(["deformation_equation"], max_degree=2))
    report(3, "deformation equation A - A0 = d(omega) + 1/2 [omega,omega]", ok, detail)


def test_criterion_04_prolongation():
    ok, detail = summarize(sweep(["prolongation", "omega_triple_bracket"], max_degree=2))
    report(4, "prolongation and [[omega,omega],omega] = 0", ok, detail)


def test_criterion_05_square_and_bianchi():
    ok, detail = summarize(sweep(["d_square", "d_square_zero", "bianchi"], max_degree=3))
    # the named fixtures, each on its own, in addition to the rotating sampler
    named = {}
    for field in FIELDS:
        for d in (2, 3):
            named[f"group_like d={d} {field}"] = group_like(ModuleSpace(d, field))
        for kind in ALGEBRAS:
            named[f"{kind} d=2 {field}"] = dual_of_algebra(ModuleSpace(2, field), ALGEBRAS[kind])
    bad = []
    for label, d0 in named.items():
        for t in range(10):
            rng = rng_for(SEED, 5, t)
            ctx = dfm.DeformationContext.from_deformation(d0, random_coop(d0.space, 2, rng))
            f = random_coop(d0.space, int(rng.integers(1, 4)), rng)
            if not (dfm.coboundary(d0, dfm.coboundary(d0, f)).is_zero()
                    and dfm.bianchi_residual(ctx).is_zero()):
                bad.append(label)
    ok = ok and not bad
    report(5, "d^2 = d_A0, d^2 = 0 and Bianchi on coassociative fixtures", ok,
           f"{detail}; named fixtures {len(named)} x 10 trials, failing: {bad or 'none'}")


def test_criterion_06_nabla_square():
    ok, detail = summarize(sweep(["nabla_square", "covariant_decomposition"], max_degree=3))
    report(6, "nabla^2 f = [f, A] and nabla f = d f + [f, omega]", ok, detail)


def test_criterion_07_coassociator():
    ok, detail = summarize(sweep(["coassociator_direct"], max_degree=2))
    report(7, "associator = (D x 1 - 1 x D) o D", ok, detail)


def _all_fixtures(field):
    out = {"unit d=1": unit_comultiplication(ModuleSpace(1, field))}
    for d in (2, 3):
        out[f"group_like d={d}"] = group_like(ModuleSpace(d, field))
        out[f"transported d={d}"] = random_coassociative(ModuleSpace(d, field), rng_for(SEED, d))
    for kind in ALGEBRAS:
        out[f"{kind} d=2"] = dual_of_algebra(ModuleSpace(2, field), ALGEBRAS[kind])
    return out


def test_criterion_08_cohomology():
    dims = {str(f): cohomology_dimensions(unit_comultiplication(ModuleSpace(1, f)), 4).dims()
            for f in (Q, F5, F7)}
    ok = all(v == [1, 0, 0, 0, 0] for v in dims.values())
    checked, bad = 0, []
    for field in (Q, F5):
        for name, d0 in _all_fixtures(field).items():
            mats = [coboundary_matrix(d0, n).matrix for n in range(5)]
            for n in range(4):
                checked += 1
                if not matmul(mats[n + 1], mats[n]).is_zero():
                    bad.append(f"{name} {field} n={n}")
    ok = ok and not bad
    report(8, "cohomology of the d=1 unit and matrix-level dd = 0", ok,
           f"H^0..H^4 {dims}; {checked} products d_(n+1) d_n for n <= 3, nonzero: {bad or 'none'}")


def _instance(space, rng, slot):
    d = space.dimension
    gamma = cg.ConnectionCoefficients(
        space, ExactTensor.from_scalars(space.field, random_scalars(rng, space, (d, d, d))))
    metric = cg.Metric.from_matrix(random_symmetric_invertible(space, rng))
    k = cg.Coupling(random_nonzero(space, rng))
    d0 = group_like(space)
    ricci = cg.ricci_coassociator(cg.coassociator_components(cg.deformed(d0, gamma)), slot)
    return ricci, metric, k


def test_criterion_09_cogravity_round_trip():
    count, bad = 0, []
    nontrivial = 0
    for d in (1, 3):
        for field in (Q, F5):
            for slot in ("middle", "first", "last"):
                for t in range(20):
                    rng = rng_for(SEED, 9, d, field.p or 0, t, len(slot))
                    ricci, metric, k = _instance(ModuleSpace(d, field), rng, slot)
                    stress = cg.solve_stress(ricci, metric, k)
                    count += 1
                    nontrivial += not ricci.is_zero()
                    if not cg.cogravity_residual(ricci, stress, metric, k).is_zero():
                        bad.append((d, str(field), slot, t))
    refused, traceful = 0, 0
    for t in range(20):
        ricci, metric, k = _instance(ModuleSpace(2, Q), rng_for(SEED, 9, 2, t), "first")
        trace = cg.StressTensor(ricci, metric).trace
        if trace:
            traceful += 1
            try:
                cg.solve_stress(ricci, metric, k)
            except DegenerateTraceError:
                refused += 1
    ok = not bad and nontrivial > 0 and traceful > 0 and refused == traceful
    report(9, "cogravity round trip for d in {1,3}, d=2 refusal", ok,
           f"{count} instances ({nontrivial} with nonzero Ricci), nonzero residuals: "
           f"{bad or 'none'}; d=2: {refused}/{traceful} traceful instances refused")


def test_criterion_10_determinism(tmp_path):
    argv = [sys.executable, "-m", "operadic", "verify", "--dim", "2", "--max-degree", "3",
            "--trials", "20", "--seed", "7"]
    digests = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        proc = subprocess.run(argv + ["-o", str(out)], capture_output=True)
        assert proc.returncode == 0, proc.stderr.decode()
        digests.append(hashlib.sha256(out.read_bytes()).hexdigest())
    stdout = [subprocess.run(argv, capture_output=True).stdout for _ in range(2)]
    ok = digests[0] == digests[1] and stdout[0] == stdout[1] and stdout[0] == (tmp_path / "r0.json").read_bytes()
    report(10, "deterministic verify reports", ok,
           f"sha256 {digests[0][:16]} vs {digests[1][:16]}, stdout identical: {stdout[0] == stdout[1]}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
