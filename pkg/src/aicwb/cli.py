"""Command-line scenarios with deterministic JSON reports.

Exit codes: 0 all invariants pass, 1 an invariant failed, 2 usage or input
error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import yaml

from . import aic as aicmod
from . import fol
from .errors import AicwbError, BudgetExceeded, ParseError
from .exact_arith import Polynomial, field_from_name
from .finite import diagonal, parse_finite_ring
from .parsing import parse_poly_expr
from .rings import (
    RingPresentation,
    idempotents,
    minimal_primes,
    non_comaximal_pair,
)

SCHEMA = "aicwb/1"
SCENARIOS = (
    "minimal-primes",
    "idempotents",
    "build-aic",
    "tightness",
    "pullback",
    "factor",
    "fol-evidence",
    "nonunique-aic",
)


def default_polys(R):
    """``Z^2 - s`` (``Z^2 + Z + s`` in characteristic 2) with ``s`` the sum of the generators."""
    if R.kind != "subdirect" or not R.generators:
        return ()
    s = " + ".join(sorted(R.generators))
    if R.field.characteristic == 2:
        return (f"Z^2 + Z + {s}",)
    return (f"Z^2 - ({s})",)


# ---------------------------------------------------------------- ring input


def ring_from_document(doc):
    """Build a presentation from a parsed ring-description mapping."""
    if not isinstance(doc, dict):
        raise ParseError("ring description must be a mapping", 1, 1)
    kind = doc.get("kind", "factored")
    if kind == "finite":
        return RingPresentation.finite(parse_finite_ring(str(doc["ring"])))
    k = field_from_name(str(doc.get("field", "QQ")))
    if kind == "factored":
        variables = tuple(doc.get("variables", ("X", "Y")))
        factors = [parse_poly_expr(str(f), k, set(variables)) for f in doc["factors"]]
        return RingPresentation.from_factors(k, factors, variables)
    if kind == "domain":
        return RingPresentation.domain(k, str(doc.get("var", "Y")))
    if kind == "field":
        return RingPresentation.field_ring(k)
    if kind == "subdirect":
        comps = [(str(c["tag"]), c.get("var")) for c in doc["components"]]
        gens = {}
        for name, images in doc["generators"].items():
            gens[str(name)] = [
                parse_poly_expr(str(img), k, {var} if var else set())
                for img, (_, var) in zip(images, comps)
            ]
        return RingPresentation.subdirect(k, comps, gens)
    raise ParseError(f"unknown ring kind {kind!r}", 1, 1)


_INLINE = re.compile(r"^\s*([A-Za-z_()0-9]+?)\s*(?:\[([A-Z\s,]+)\])?\s*(?:/\s*(.*))?$")


def parse_ring_text(text):
    """``QQ[X,Y]/(X)(Y)``, ``GF(5)[Y]``, ``QQ``, ``Z/4``, ``Z/2 x Z/2``, or a YAML file path."""
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            return ring_from_document(yaml.safe_load(fh))
    stripped = text.strip()
    if stripped.startswith("Z/") or (" x " in stripped) or (stripped.startswith("GF(") and "[" not in stripped
                                                             and _is_composite_gf(stripped)):
        return RingPresentation.finite(parse_finite_ring(stripped))
    m = _INLINE.match(stripped)
    if not m:
        raise ParseError(f"cannot read ring {text!r}", 1, 1)
    k = field_from_name(m.group(1))
    if m.group(2) is None:
        return RingPresentation.field_ring(k)
    variables = tuple(v.strip() for v in m.group(2).split(","))
    if m.group(3) is None:
        if len(variables) != 1:
            raise ParseError("a polynomial ring input takes one variable", 1, 1)
        return RingPresentation.domain(k, variables[0])
    factors = _split_factors(m.group(3))
    if len(variables) == 1:
        variables = variables + ("Y" if variables[0] != "Y" else "X",)
    polys = [parse_poly_expr(f, k, set(variables)) for f in factors]
    return RingPresentation.from_factors(k, polys, tuple(sorted(variables)))


def _is_composite_gf(text):
    try:
        q = int(text[3:-1])
    except ValueError:
        return False
    return not all(q % d for d in range(2, int(q ** 0.5) + 1))


def _split_factors(text):
    out, depth, cur = [], 0, ""
    for ch in text.replace(" ", ""):
        if ch == "(":
            if depth:
                cur += ch
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth:
                cur += ch
            else:
                out.append(cur)
                cur = ""
        elif depth:
            cur += ch
        elif ch != "*":
            raise ParseError(f"factors must be parenthesized: {text!r}", 1, 1)
    if depth or not out:
        raise ParseError(f"unbalanced factor list {text!r}", 1, 1)
    return out


# ---------------------------------------------------------------- scenarios and reports


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    ring: str
    polys: tuple | None = None
    budget: int = 64
    branches: int = 64
    seed: int = 0
    samples: int = 20
    max_n: int = 2
    max_m: int = 2
    pair: tuple | None = None

    def __post_init__(self):
        if self.name not in SCENARIOS:
            raise ParseError(f"unknown scenario {self.name!r}", 1, 1)
        for key in ("budget", "branches", "samples", "max_n", "max_m"):
            if getattr(self, key) < 1:
                raise ParseError(f"{key} must be a positive integer", 1, 1)


@dataclass
class Report:
    scenario: str
    ring: dict
    parameters: dict
    results: list = field(default_factory=list)
    invariants: list = field(default_factory=list)

    def check(self, name, passed, detail=None):
        entry = {"name": name, "passed": bool(passed)}
        if detail is not None:
            entry["detail"] = detail
        self.invariants.append(entry)
        return passed

    @property
    def passed(self):
        return all(i["passed"] for i in self.invariants)

    def to_dict(self):
        return {
            "schema": SCHEMA,
            "scenario": self.scenario,
            "ring": self.ring,
            "parameters": self.parameters,
            "results": self.results,
            "invariants": self.invariants,
            "passed": self.passed,
        }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, Fraction):
        return str(x)
    return str(x)


def emit_report(report, fmt="json"):
    data = _jsonable(report.to_dict())
    if fmt == "json":
        return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    lines = [f"{data['scenario']}: {'PASS' if data['passed'] else 'FAIL'}"]
    for res in data["results"]:
        for key, value in res.items():
            text = value if isinstance(value, str) else json.dumps(value, ensure_ascii=False)
            lines.append(f"  {key}: {text}")
    for inv in data["invariants"]:
        lines.append(f"  [{'ok' if inv['passed'] else 'FAIL'}] {inv['name']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- scenarios


def _spec_params(spec):
    return {
        "polys": None if spec.polys is None else list(spec.polys),
        "budget": spec.budget,
        "branches": spec.branches,
        "seed": spec.seed,
        "samples": spec.samples,
        "max_n": spec.max_n,
        "max_m": spec.max_m,
        "pair": list(spec.pair) if spec.pair else None,
    }


def _polys(R, spec):
    return default_polys(R) if spec.polys is None else spec.polys


def _build(R, spec, polys=None):
    return aicmod.build_universal_aic_approx(
        R, _polys(R, spec) if polys is None else polys, spec.budget, spec.branches
    )


def _pair(R, spec):
    if spec.pair:
        return tuple(spec.pair)
    return non_comaximal_pair(R)


def _cert_record(cert):
    return {
        "element": str(cert.element),
        "tag": cert.tag,
        "h": str(cert.h),
        "witness": str(cert.witness),
        "cofactor": str(cert.cofactor),
        "checks": cert.checks,
    }


def run_minimal_primes(R, spec, report):
    tags = minimal_primes(R)
    report.results.append({"kind": "minimal-primes", "count": len(tags), "tags": [str(t) for t in tags]})
    report.check("at least one minimal prime", len(tags) >= 1)


def run_idempotents(R, spec, report):
    census = idempotents(R)
    report.results.append({
        "kind": "idempotents",
        "count": census.count,
        "members": census.members,
        "undecided": census.undecided,
    })
    report.check("0 and 1 are idempotents", census.count >= 1)


def run_build_aic(R, spec, report):
    A = _build(R, spec)
    census = aicmod.idempotent_census(A)
    verdict = aicmod.aic_discriminator(census)
    report.results.append({
        "kind": "aic",
        "components": [str(t) for t in A.tags],
        "towers": [T.describe() for T in A.towers],
        "adjunctions": [rec.poly for rec in A.log],
        "idempotent_count_T": census.count,
        "verdict": verdict.verdict,
    })
    report.check("T census is 2^|min(R)|", census.count == 2 ** len(A))
    for i in range(len(A)):
        ok, _, _ = aicmod.projection_check(A, _polys(R, spec), i)
        report.check(f"projection at {A.tags[i]} matches the direct tower", ok)
    for rec in A.log:
        for i, roots in enumerate(rec.roots):
            report.check(f"{rec.poly} splits on {A.tags[i]}", aicmod.splits_on_component(A, rec.poly, i, roots))


def run_tightness(R, spec, report):
    rng = aicmod.make_rng(spec.seed)
    A = _build(R, spec)
    records = []
    for t in aicmod.sample_elements(A, rng, spec.samples):
        cert = aicmod.tightness_witness(A, t)
        records.append(_cert_record(cert))
        report.check(f"T certificate for {t}", cert.valid)
    report.results.append({"kind": "tightness", "ambient": "T", "certificates": records})
    pair = _pair(R, spec)
    if pair is not None:
        pb = aicmod.build_pullback_aic(A, aicmod.PullbackSpec(*pair))
        for f in _polys(R, spec):
            aicmod.factor_in_T0(pb, f)
        records = []
        for t in aicmod.sample_elements(pb, rng, spec.samples):
            cert = aicmod.tightness_witness(pb.approx, t, pb)
            records.append(_cert_record(cert))
            report.check(f"T0 certificate for {t}", cert.valid)
        report.results.append({"kind": "tightness", "ambient": "T0", "certificates": records})


def _pullback_record(pb):
    census = aicmod.idempotent_census(pb)
    return census, {
        "kind": "pullback",
        "tags": [str(pb.approx.tags[pb.spec.p]), str(pb.approx.tags[pb.spec.q])],
        "intersection": str(pb.intersection),
        "point": [pb.format_value(pb.params[pb.spec.p]), pb.format_value(pb.params[pb.spec.q])],
        "closure_tower": pb.kbar.describe(),
        "idempotent_count_T0": census.count,
        "members": census.members,
        "rejected": census.rejected,
    }


def run_pullback(R, spec, report):
    pair = _pair(R, spec)
    if pair is None:
        report.results.append({"kind": "pullback", "note": "no non-comaximal minimal pair"})
        return
    A = _build(R, spec)
    pb = aicmod.build_pullback_aic(A, aicmod.PullbackSpec(*pair))
    valid = pb.validate()
    census, record = _pullback_record(pb)
    record["generators_in_T0"] = valid
    report.results.append(record)
    report.check("image of R lies in T0", all(valid.values()))
    report.check("T0 census is 2^(|min(R)|-1)", census.count == 2 ** (len(A) - 1))


def random_monic(R, rng, degree):
    names = sorted(R.generators)
    Z = Polynomial.var("Z", R.field)
    f = Z ** degree
    for i in range(degree):
        c = Polynomial.constant(rng.randint(-2, 2), R.field)
        for n in names:
            c = c + Polynomial.var(n, R.field).scale(R.field(rng.randint(-1, 1)))
        f = f + c * Z ** i
    return f


def run_factor(R, spec, report):
    rng = aicmod.make_rng(spec.seed)
    A = _build(R, spec, ())
    polys = list(spec.polys or ())
    polys += [random_monic(R, rng, rng.randint(1, 3)) for _ in range(spec.samples)]
    pair = _pair(R, spec)
    rows = []
    for f in polys:
        if pair is None:
            F = aicmod.factor_in_T(A.copy(), f)
            ambient = "T"
        else:
            F = aicmod.factor_in_T0(aicmod.build_pullback_aic(A, aicmod.PullbackSpec(*pair)), f)
            ambient = "T0"
        rows.append({
            "poly": str(f),
            "ambient": ambient,
            "roots": [str(r) for r in F.roots],
            "matching": F.matching,
            "reconstructs": F.reconstructs,
        })
        report.check(f"{f} factors into linear factors over {ambient}", F.reconstructs)
        if F.multisets_equal is not None:
            report.check(f"{f}: root images agree as multisets", F.multisets_equal)
    report.results.append({"kind": "factor", "factorizations": rows})


def run_nonunique(R, spec, report):
    A = _build(R, spec)
    census_T = aicmod.idempotent_census(A)
    verdict_T = aicmod.aic_discriminator(census_T)
    pair = _pair(R, spec)
    record = {
        "kind": "nonunique-aic",
        "components": [str(t) for t in A.tags],
        "idempotent_count_T": census_T.count,
        "verdict_T": verdict_T.verdict,
    }
    report.check("T census is 2^|min(R)|", census_T.count == 2 ** len(A))
    if pair is None:
        record["verdict"] = "no non-comaximal minimal pair; unique aic"
        report.results.append(record)
        return
    pb = aicmod.build_pullback_aic(A, aicmod.PullbackSpec(*pair))
    census_T0, pb_record = _pullback_record(pb)
    verdict_T0 = aicmod.aic_discriminator(census_T0, 2 ** len(A))
    e_p = tuple(1 if i == pair[0] else 0 for i in range(len(A)))
    rejected = next((r for r in census_T0.rejected if tuple(r["element"]) == e_p), None)
    record.update({
        "pair": [str(A.tags[pair[0]]), str(A.tags[pair[1]])],
        "idempotent_count_T0": census_T0.count,
        "verdict_T0": verdict_T0.verdict,
        "connected_components_T": verdict_T.connected_components,
        "connected_components_T0": verdict_T0.connected_components,
        "rejected_element": rejected,
        "pullback": pb_record,
        "verdict": "non-isomorphic aics exhibited" if census_T0.count != census_T.count else "undecided",
    })
    report.results.append(record)
    report.check("image of R lies in T0", all(pb.validate().values()))
    report.check("T0 census is 2^(|min(R)|-1)", census_T0.count == 2 ** (len(A) - 1))
    report.check("e_p is rejected from T0", rejected is not None)


def _finite(R):
    if R.kind != "finite":
        raise AicwbError("fol-evidence needs a finite ring")
    return R.finite_ring


def run_fol(R, spec, report):
    ring = _finite(R)
    square, emb = diagonal(ring)
    S = fol.FiniteModel(square, ring, emb, square.name)
    base = fol.FiniteModel(ring)
    domains = all(f.is_reduced() and len(f.idempotents()) == 2 and len(f.prime_ideals()) == 1 and
                  len(f.minimal_prime_ideals()[0]) == 1 for f in ring.factors)
    gamma = fol.gamma_domains(ring) if domains else fol.gamma_finite(ring)
    trunc = fol.sigma2_truncation(ring, spec.max_n, spec.max_m)
    row = fol.local_realization_scan(gamma, trunc, [S])[0]
    s = (ring.one, ring.zero)
    at_s = fol.evaluate_formula(S, gamma, {"x": s})
    omission = fol.check_type_omission(base, trunc)
    report.results.append({
        "kind": "fol-evidence",
        "gamma": "delta(x) & x^2 = x" if domains else "finite-ring variant",
        "model": S.name,
        "truncation_size": len(trunc),
        "gamma_consistency_witness": s if at_s else row.consistency_witness,
        "gamma_holds_at_(1,0)": at_s,
        "gamma_realizers": row.gamma_realizers,
        "implication_counterexamples": row.counterexamples,
        "base_ring_omits_truncation": omission.omits,
        "base_ring_first_failures": omission.failing,
        "sigma_extra_in_square": fol.evaluate_formula(S, fol.sigma_extra(ring)),
        "sigma_extra_in_base": fol.evaluate_formula(base, fol.sigma_extra(ring)),
    })
    report.check("gamma is consistent: (1,0) realizes it in R x R", at_s)
    report.check("R omits the truncation", omission.omits)
    if domains:
        report.check("gamma implies every truncation member in R x R", row.holds)


RUNNERS = {
    "minimal-primes": run_minimal_primes,
    "idempotents": run_idempotents,
    "build-aic": run_build_aic,
    "tightness": run_tightness,
    "pullback": run_pullback,
    "factor": run_factor,
    "fol-evidence": run_fol,
    "nonunique-aic": run_nonunique,
}


def run_scenario(spec):
    R = parse_ring_text(spec.ring)
    report = Report(spec.name, R.describe(), _spec_params(spec))
    try:
        RUNNERS[spec.name](R, spec, report)
    except BudgetExceeded as exc:
        raise BudgetExceeded(f"{spec.name}: {exc}") from None
    return report


# ---------------------------------------------------------------- entry point


def build_parser():
    parser = argparse.ArgumentParser(prog="aicwb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="scenario", required=True)
    for name in SCENARIOS:
        p = sub.add_parser(name)
        p.add_argument("--ring", required=True, help="inline ring (QQ[X,Y]/(X)(Y), Z/4, ...) or YAML file")
        p.add_argument("--poly", action="append", help="monic polynomial in Z over R (repeatable)")
        p.add_argument("--budget", type=int, default=64, help="maximum tower dimension per component")
        p.add_argument("--branches", type=int, default=64, help="maximum branch count per tower")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=20)
        p.add_argument("--max-n", type=int, default=2)
        p.add_argument("--max-m", type=int, default=2)
        p.add_argument("--pair", help="component indices i,j for the pullback")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--output", help="write the report here instead of stdout")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        pair = tuple(int(x) for x in args.pair.split(",")) if args.pair else None
        spec = ScenarioSpec(
            args.scenario, args.ring, tuple(args.poly) if args.poly else None,
            args.budget, args.branches, args.seed, args.samples, args.max_n, args.max_m, pair,
        )
        report = run_scenario(spec)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (AicwbError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = emit_report(report, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
