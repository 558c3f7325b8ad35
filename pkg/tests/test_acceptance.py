"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import random

import pytest

from aicwb.aic import (
    PullbackSpec,
    build_pullback_aic,
    build_universal_aic_approx,
    idempotent_census,
    localized_certificate,
    projection_check,
    sample_elements,
    tightness_witness,
)
from aicwb.cli import ScenarioSpec, emit_report, run_scenario
from aicwb.exact_arith import GF, QQ, Fraction
from aicwb.finite import diagonal, galois_field, product, zmod
from aicwb.fol import (
    FiniteModel,
    check_type_omission,
    evaluate_formula,
    gamma_domains,
    gamma_finite,
    local_realization_scan,
    sigma2_truncation,
)
from aicwb.rings import RingPresentation, idempotents, sample_regular
from aicwb.tower import Tower

FLAGSHIP = "QQ[X,Y]/(X)(Y)"
FLAGSHIP_F5 = "GF(5)[X,Y]/(X)(Y)"
THREE = "GF(2)[X,Y]/(X)(Y)(X+Y)"


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {number}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail
    return emit


def _flagship_record(ring):
    report = run_scenario(ScenarioSpec("nonunique-aic", ring))
    return report, report.results[0]


def test_criterion_01_flagship_nonuniqueness(verdict):
    report, res = _flagship_record(FLAGSHIP)
    ok = (
        res["idempotent_count_T"] == 4
        and res["idempotent_count_T0"] == 2
        and res["rejected_element"] == {"element": (1, 0), "phi": "1", "psi": "0"}
        and report.passed
    )
    verdict(1, ok, f"T census {res['idempotent_count_T']}, T0 census {res['idempotent_count_T0']}, "
                   f"rejected {res['rejected_element']}")


def test_criterion_02_flagship_over_f5(verdict):
    report, res = _flagship_record(FLAGSHIP_F5)
    ok = res["idempotent_count_T"] == 4 and res["idempotent_count_T0"] == 2 and report.passed
    verdict(2, ok, f"over GF(5): T census {res['idempotent_count_T']}, T0 census {res['idempotent_count_T0']}")


def test_criterion_03_tightness_certificates(verdict):
    report = run_scenario(ScenarioSpec("tightness", FLAGSHIP, samples=20, seed=11))
    by_ambient = {r["ambient"]: r["certificates"] for r in report.results}
    counts = {k: len(v) for k, v in by_ambient.items()}
    checks = [c["checks"] for certs in by_ambient.values() for c in certs]
    required = ("h(t)=0", "h(0)!=0", "h(0)=t*s")
    ok = (
        counts.get("T", 0) >= 20 and counts.get("T0", 0) >= 20
        and all(all(c[k] for k in required) for c in checks)
        and all(c["s in T0"] for c in by_ambient["T0"] for c in [c["checks"]])
        and report.passed
    )
    passed = sum(all(c.values()) for c in checks)
    verdict(3, ok, f"{passed}/{len(checks)} certificates verify (T: {counts.get('T')}, T0: {counts.get('T0')})")


def test_criterion_04_factorization_over_t0(verdict):
    report = run_scenario(ScenarioSpec("factor", FLAGSHIP, samples=20, seed=5))
    rows = report.results[0]["factorizations"]
    multiset = [i for i in report.invariants if "multisets" in i["name"]]
    ok = (
        len(rows) >= 20
        and all(r["ambient"] == "T0" and r["reconstructs"] for r in rows)
        and len(multiset) == len(rows) and all(i["passed"] for i in multiset)
        and report.passed
    )
    good = sum(r["reconstructs"] for r in rows)
    verdict(4, ok, f"{good}/{len(rows)} monic polynomials split over T0 with matched root images")


def test_criterion_05_universal_census(verdict):
    counts = []
    for ring in ("QQ[Y]", FLAGSHIP, THREE):
        report = run_scenario(ScenarioSpec("build-aic", ring))
        counts.append(report.results[0]["idempotent_count_T"])
    verdict(5, counts == [2, 4, 8], f"censuses {counts} for 1, 2, 3 minimal primes")


def test_criterion_06_projection(verdict):
    outcomes = []
    for ring, polys in (
        (RingPresentation.from_factors(QQ, ["X", "Y"]), ["Z^2 - (X+Y)", "Z^3 - X*Z - Y - 1"]),
        (RingPresentation.from_factors(GF(2), ["X", "Y", "X+Y"]), ["Z^2 + Z + X + Y"]),
    ):
        A = build_universal_aic_approx(ring, polys)
        for i in range(len(A)):
            outcomes.append(projection_check(A, polys, i)[0])
    verdict(6, all(outcomes), f"{sum(outcomes)}/{len(outcomes)} component projections identical")


def test_criterion_07_localization(verdict):
    rng = random.Random(7)
    A = build_universal_aic_approx(RingPresentation.from_factors(QQ, ["X", "Y"]), ["Z^2 - (X+Y)"])
    regular = sample_regular(A.R, rng, 10)
    elements = sample_elements(A, rng, 10)
    results = []
    for t in elements:
        cert = tightness_witness(A, t)
        for r in regular:
            results.append(cert.valid and all(localized_certificate(A, cert, r).values()))
    verdict(7, len(results) == 100 and all(results), f"{sum(results)}/{len(results)} localized certificates valid")


def test_criterion_08_finite_model_evidence(verdict):
    F2xF2 = product(galois_field(2), galois_field(2))
    S, emb = diagonal(F2xF2)
    square = FiniteModel(S, F2xF2, emb)
    trunc = sigma2_truncation(F2xF2, 2, 2)
    row = local_realization_scan(gamma_domains(F2xF2), trunc, [square])[0]
    part_a = row.holds and row.consistency_witness is not None

    Z4 = zmod(4)
    S4, emb4 = diagonal(Z4)
    part_b = evaluate_formula(FiniteModel(S4, Z4, emb4), gamma_finite(Z4), {"x": (1, 0)})

    omits = [
        check_type_omission(FiniteModel(F2xF2), trunc).omits,
        check_type_omission(FiniteModel(Z4), sigma2_truncation(Z4, 2, 2)).omits,
    ]
    part_c = all(omits)
    verdict(8, part_a and part_b and part_c,
            f"(a) {len(trunc)} implications, {len(row.counterexamples)} counterexamples; "
            f"(b) gamma at (1,0): {part_b}; (c) omission in R: {omits}")


def test_criterion_09_oracles(verdict):
    idem = idempotents(RingPresentation.finite(zmod(36))).members
    brute = [x for x in range(36) if x * x % 36 == x]
    T, t = Tower(QQ).adjoin_root([-1, 0, 1])
    T2, verdicts = T.zero_test_split(T.sub(t, 1))
    residues = sorted(T2.coordinates(t, v.branch)[0] for v in verdicts)
    crt = (
        len(T2.branches) == 2
        and residues == [Fraction(-1), Fraction(1)]
        and sorted(v.is_zero for v in verdicts) == [False, True]
    )
    verdict(9, idem == brute == [0, 1, 9, 28] and crt,
            f"idempotents(Z/36) = {idem}; t^2 - 1 splits into t = {[str(r) for r in residues]}")


def test_criterion_10_determinism(verdict):
    specs = [
        ScenarioSpec("nonunique-aic", FLAGSHIP),
        ScenarioSpec("nonunique-aic", FLAGSHIP_F5),
        ScenarioSpec("tightness", FLAGSHIP, samples=20, seed=11),
        ScenarioSpec("factor", FLAGSHIP, samples=20, seed=5),
        ScenarioSpec("build-aic", THREE),
        ScenarioSpec("idempotents", "Z/36"),
        ScenarioSpec("fol-evidence", "Z/4"),
        ScenarioSpec("fol-evidence", "Z/2 x Z/2"),
    ]
    same = [emit_report(run_scenario(s)) == emit_report(run_scenario(s)) for s in specs]
    verdict(10, all(same), f"{sum(same)}/{len(same)} scenarios byte-identical across two runs")
