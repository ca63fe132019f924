"""Verification sweep over all signatures up to a bound.

Every check is a function of one case key and returns a :class:`CheckResult`.
Seeds derive from the master seed by hashing the case key, so a report is
reproducible check by check. Failing checks carry the element and seed needed
to replay them with ``ga member`` or ``ga factor``.
"""

from __future__ import annotations

import hashlib
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable

from . import config as cfg
from .algebra import Multivector, Qt, Signature, project, signatures_up_to
from .centralizers import CLOSED_FORM_TARGETS, bruteforce_target, centralizer_closed_form
from .groups import (
    EQUIVALENCE_GROUPS,
    FACTOR_PLANS,
    GENERALIZED_GROUPS,
    GroupId,
    Mode,
    Representation,
    SamplingError,
    acts_as_identity,
    factor,
    factor_checks,
    has_stabilizer_form,
    kernel_of_rep,
    member,
    norms,
    random_unit,
    sample_group_member,
    sample_invertible,
)
from .lie import bracket_closure_check, lie_algebra_norm_form, lie_result
from .subspaces import named_subspace

log = logging.getLogger(__name__)

PASS, FAIL, NO_TABLE_ROW = "pass", "fail", "no_table_row"

# (smaller, larger, equal when n is even)
INCLUSIONS: tuple[tuple[GroupId, GroupId, bool], ...] = (
    (GroupId.Ac12, GroupId.A23, True),
    (GroupId.Bc01, GroupId.B12, True),
    (GroupId.A01, GroupId.A23, False),
    (GroupId.B12, GroupId.B03, False),
    (GroupId.Bc01, GroupId.Bc23, False),
    (GroupId.Qt12, GroupId.Qt03, False),
)


def case_seed(master: int, *key: object) -> int:
    digest = hashlib.sha256(repr((master,) + key).encode()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass
class CheckResult:
    check_id: str
    signature: str
    group_or_target: str
    status: str
    detail: dict[str, Any] = field(default_factory=dict)


def _result(check: str, sig: Signature, what: str, failures: list, **detail) -> CheckResult:
    if failures:
        detail["counterexamples"] = failures[:3]
        detail["failures"] = len(failures)
    return CheckResult(check, str(sig), what, FAIL if failures else PASS, detail)


# Individual checks


def check_centralizer(sig: Signature, target: str) -> CheckResult:
    brute = bruteforce_target(sig, target)
    closed = centralizer_closed_form(sig, target)
    ok = brute == closed.to_linear()
    fails = [] if ok else [{"bruteforce_dim": brute.dim, "closed_form_dim": closed.dim}]
    return _result("centralizer", sig, target, fails, dim=brute.dim)


def equivalence_samples(sig: Signature, g: GroupId, samples: int, seed: int, coeff_bound: int = 3):
    """Arbitrary invertible elements, so both answers are exercised."""
    for i in range(samples):
        s = case_seed(seed, "equivalence", str(sig), g.value, i)
        yield s, sample_invertible(sig, s, coeff_bound)


def check_equivalence(sig: Signature, g: GroupId, samples: int, seed: int, coeff_bound: int = 3) -> CheckResult:
    fails, members = [], 0
    for s, t in equivalence_samples(sig, g, samples, seed, coeff_bound):
        stab, norm = member(g, t, Mode.STABILIZER), member(g, t, Mode.NORM)
        members += norm
        if stab != norm:
            fails.append({"mv": str(t), "seed": s, "stab": stab, "norm": norm})
    # certified members exercise the "true" direction as well
    for i in range(max(1, samples // 10)):
        s = case_seed(seed, "equivalence-member", str(sig), g.value, i)
        t = sample_group_member(g, sig, s)
        if not member(g, t, Mode.STABILIZER):
            fails.append({"mv": str(t), "seed": s, "stab": False, "norm": True})
    return _result("equivalence", sig, g.value, fails, samples=samples, random_members=members)


def check_codomains(sig: Signature, samples: int, seed: int, coeff_bound: int = 3) -> CheckResult:
    c01, c03 = Qt("01"), Qt("03")
    fails = []
    for i in range(samples):
        rng = random.Random(case_seed(seed, "codomain", str(sig), i))
        t = Multivector(sig, {m: rng.randint(-coeff_bound, coeff_bound) for m in range(sig.dim)})
        psi, chi = norms(t)
        if psi != project(psi, c01) or chi != project(chi, c03):
            fails.append({"mv": str(t), "psi": str(psi), "chi": str(chi)})
    return _result("codomain", sig, "psi/chi", fails, samples=samples)


def check_kernel(sig: Signature, rep: Representation, samples: int, seed: int, coeff_bound: int = 3) -> CheckResult:
    span = kernel_of_rep(rep, sig)
    fails = []
    for i in range(samples):
        s = case_seed(seed, "kernel", str(sig), rep.value, i)
        rng = random.Random(s)
        t = random_unit(sig, span, rng, coeff_bound) if i % 2 else sample_invertible(sig, s, coeff_bound)
        if acts_as_identity(rep, t) != span.contains(t):
            fails.append({"mv": str(t), "seed": s})
    return _result("kernel", sig, rep.value, fails, samples=samples)


def check_factor(sig: Signature, g: GroupId, samples: int, seed: int) -> CheckResult:
    fails = []
    for i in range(samples):
        s = case_seed(seed, "factor", str(sig), g.value, i)
        t = sample_group_member(g, sig, s)
        try:
            t0, y = factor(g, t)
            checks = factor_checks(g, t, t0, y)
        except Exception as exc:  # reported as a counterexample, not raised
            fails.append({"mv": str(t), "seed": s, "error": str(exc)})
            continue
        if not all(checks.values()):
            fails.append({"mv": str(t), "seed": s, "checks": checks})
    return _result("factor", sig, g.value, fails, samples=samples)


def check_lie(sig: Signature, g: GroupId, closure: bool = True) -> CheckResult:
    res = lie_result(g, sig)
    detail: dict[str, Any] = {"dim": res.dim, "table_row": res.table_row}
    fails = []
    if has_stabilizer_form(g) and lie_algebra_norm_form(g, sig) != res.computed:
        fails.append({"reason": "stabilizer and norm linearizations differ"})
    if closure and not bracket_closure_check(res.computed, sig):
        fails.append({"reason": "not closed under the commutator"})
    if res.expected_span is None:
        if fails:
            return _result("lie", sig, g.value, fails, **detail)
        return CheckResult("lie", str(sig), g.value, NO_TABLE_ROW, detail)
    detail.update(expected_dim=res.expected_dim, span_match=res.span_match, dim_match=res.dim_match)
    if not res.match:
        fails.append({"reason": "computed Lie algebra differs from the table row"})
    return _result("lie", sig, g.value, fails, **detail)


def equality_exception(small: GroupId, large: GroupId, sig: Signature) -> bool:
    """Even n where A-check-12 is strictly smaller than A23: the pseudoscalar case.

    For n = 0 mod 4 and r in {n-2, n-1}, e + e_{1..n} lies in A23 but not in
    A-check-12, so the equality for even n holds everywhere else.
    """
    return (small, large) == (GroupId.Ac12, GroupId.A23) and sig.n % 4 == 0 and sig.r in (sig.n - 2, sig.n - 1)


def pseudoscalar_witness(sig: Signature) -> Multivector:
    return Multivector(sig, {0: 1, sig.dim - 1: 1})


def check_inclusion(
    sig: Signature, small: GroupId, large: GroupId, equal: bool, samples: int, seed: int, literal: bool = False
) -> CheckResult:
    """One-way inclusion on samples; for even n also the reverse, unless it is a known exception.

    ``literal=True`` checks the reverse direction at every even n.
    """
    exception = not literal and equality_exception(small, large, sig)
    both_ways = equal and sig.n % 2 == 0 and not exception
    fails = []
    if equal and exception:
        w = pseudoscalar_witness(sig)
        if not (member(large, w, Mode.STABILIZER) and not member(small, w, Mode.STABILIZER)):
            fails.append({"mv": str(w), "reason": "expected a witness separating the groups"})
    for i in range(samples):
        s = case_seed(seed, "inclusion", str(sig), small.value, large.value, i)
        source = (small, large)[i % 2] if both_ways else small
        t = sample_group_member(source, sig, s) if i % 3 else sample_invertible(sig, s)
        a, b = member(small, t), member(large, t)
        if (a and not b) or (both_ways and b and not a):
            fails.append({"mv": str(t), "seed": s, small.value: a, large.value: b})
    relation = "=" if both_ways else ("<" if equal and exception else "<=")
    return _result("inclusion", sig, f"{small.value}{relation}{large.value}", fails, samples=samples)


def check_special_cases(samples: int, seed: int) -> list[CheckResult]:
    from .special_cases import (
        GRASSMANN_IDENTIFICATIONS,
        aux_a_conditions,
        bc01_conditions,
        from_coefficients,
        identification_agrees,
        sample_aux_a_coefficients,
        sample_bc01_coefficients,
        sample_identification_element,
    )

    out = []
    for sig in (Signature(2, 0, 1), Signature(1, 1, 1), Signature(0, 2, 1)):
        for name, g, draw, test in (
            ("Bc01", GroupId.Bc01, lambda rng: sample_bc01_coefficients(rng), bc01_conditions),
            ("AuxAc", GroupId.AuxAc, lambda rng: sample_aux_a_coefficients(sig, rng), aux_a_conditions),
        ):
            rng = random.Random(case_seed(seed, "coefficients", str(sig), name))
            fails = []
            for _ in range(samples):
                c = draw(rng)
                t = from_coefficients(sig, c)
                got = False if t.is_zero() else member(g, t)
                if got != test(sig, c):
                    fails.append({"coefficients": [str(x) for x in c], "member": got})
            out.append(_result("coefficients", sig, name, fails, samples=samples))
    for k, ident in enumerate(GRASSMANN_IDENTIFICATIONS):
        rng = random.Random(case_seed(seed, "grassmann", k))
        fails = []
        for _ in range(samples):
            t = sample_identification_element(ident, rng)
            bad = [g.value for g, ok in identification_agrees(ident, t).items() if not ok]
            if bad:
                fails.append({"mv": str(t), "groups": bad})
        what = ",".join(g.value for g in ident.groups) + f" = units of {ident.span}"
        out.append(_result("grassmann", ident.sig, what, fails, samples=samples))
    return out


# Sweep


@dataclass
class VerifyReport:
    config: dict[str, Any]
    results: list[CheckResult]
    timing: dict[str, float]

    @property
    def summary(self) -> dict[str, int]:
        counts = {PASS: 0, FAIL: 0, NO_TABLE_ROW: 0}
        for r in self.results:
            counts[r.status] += 1
        return counts

    @property
    def ok(self) -> bool:
        return self.summary[FAIL] == 0

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        out = {
            "config": self.config,
            "results": [asdict(r) for r in self.results],
            "summary": self.summary,
        }
        if timing:
            out["timing"] = self.timing
        return out

    def text(self) -> str:
        lines = []
        for r in self.results:
            if r.status != PASS:
                lines.append(f"{r.status.upper():13} {r.check_id:12} {r.signature:12} {r.group_or_target}")
        s = self.summary
        lines.append(f"{s[PASS]} passed, {s[FAIL]} failed, {s[NO_TABLE_ROW]} without a table row")
        return "\n".join(lines)


def signature_checks(sig: Signature, conf: cfg.SweepConfig) -> list[CheckResult]:
    samples, seed, bound = conf.samples_per_case, conf.seed, conf.coeff_bound
    out = [check_centralizer(sig, target) for target in CLOSED_FORM_TARGETS]
    out += [check_equivalence(sig, g, samples, seed, bound) for g in EQUIVALENCE_GROUPS]
    out.append(check_codomains(sig, samples, seed, bound))
    out += [check_kernel(sig, rep, samples, seed, bound) for rep in Representation]
    if sig.r >= 1:
        out += [check_factor(sig, g, samples, seed) for g in FACTOR_PLANS]
    out += [check_lie(sig, g) for g in GENERALIZED_GROUPS]
    out += [check_inclusion(sig, a, b, eq, samples, seed) for a, b, eq in INCLUSIONS]
    return out


def _run_signature(args: tuple[Signature, cfg.SweepConfig]) -> list[CheckResult]:
    sig, conf = args
    try:
        return signature_checks(sig, conf)
    except SamplingError as exc:
        return [CheckResult("sampling", str(sig), "-", FAIL, {"error": str(exc)})]


def run_verify(conf: cfg.SweepConfig, workers: int = 1) -> VerifyReport:
    if not 1 <= conf.max_n <= cfg.n_max():
        raise ValueError(f"max_n must lie in [1, {cfg.n_max()}]")
    start = time.perf_counter()
    sigs = signatures_up_to(conf.max_n)
    jobs = [(sig, conf) for sig in sigs]
    results: list[CheckResult] = []
    chunks: Iterable[list[CheckResult]]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            chunks = list(pool.map(_run_signature, jobs))
    else:
        chunks = map(_run_signature, jobs)
    for sig, chunk in zip(sigs, chunks):
        log.info("verified %s", sig)
        results.extend(chunk)
    if conf.max_n >= 3:
        results.extend(check_special_cases(conf.samples_per_case, conf.seed))
    return VerifyReport(asdict(conf), results, {"seconds": round(time.perf_counter() - start, 3)})
