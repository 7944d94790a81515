"""Seeded fuzz campaigns over random perturbation pairs.

Trial ``i`` of a campaign with seed base ``s`` draws everything from
``random.Random(s + i)``, so trials are independent and can be farmed out
to worker processes; results are merged in seed order.
"""

from __future__ import annotations

import csv
import io
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field

from ..exactmat import Field, PrimeField, field_from_name, matrix_to_json, rank, rational_eigenvalues
from ..jordan import weyr
from ..perturb import (
    FAMILIES,
    check_restriction_interlacing,
    common_subspace,
    random_operator,
    random_perturbation,
    restriction_chain,
    sharp_example,
)
from .theorem import check_main_bounds, check_root_bounds, check_savchenko

CHECKS = ("theorem", "root", "savchenko", "interlacing")


@dataclass(frozen=True)
class CampaignConfig:
    field: str = "Q"
    p: int | None = None
    m_min: int = 2
    m_max: int = 8
    k_min: int = 0
    k_max: int = 3
    trials: int = 1000
    seed: int = 0
    bound: int = 3
    n_max: int | None = None  # None: n_max = m for every trial
    lam_policy: str = "eigen"  # "eigen": field eigenvalues of S and T plus 0; "zero": 0 only
    checks: tuple = CHECKS
    families: tuple = FAMILIES
    workers: int = dc_field(default=1, compare=False)

    def __post_init__(self):
        if self.field not in ("Q", "GF"):
            raise ValueError(f"field must be Q or GF, got {self.field!r}")
        if self.field == "GF":
            field_from_name("GF", self.p)
        if not 1 <= self.m_min <= self.m_max:
            raise ValueError("need 1 <= m_min <= m_max")
        if not 0 <= self.k_min <= self.k_max:
            raise ValueError("need 0 <= k_min <= k_max")
        if self.k_min > self.m_max:
            raise ValueError("k_min exceeds m_max")
        if self.trials < 0:
            raise ValueError("trials must be non-negative")
        if self.bound < 1:
            raise ValueError("entry bound must be at least 1")
        if self.n_max is not None and self.n_max < 1:
            raise ValueError("n_max must be at least 1")
        if self.lam_policy not in ("eigen", "zero"):
            raise ValueError(f"unknown lambda policy {self.lam_policy!r}")
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise ValueError(f"unknown checks {sorted(unknown)}")
        unknown = set(self.families) - set(FAMILIES)
        if unknown or not self.families:
            raise ValueError(f"bad operator families {sorted(unknown)}")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    @property
    def field_obj(self) -> Field:
        return field_from_name(self.field, self.p)

    def metadata(self) -> dict:
        out = asdict(self)
        out.pop("workers")
        out["checks"] = list(self.checks)
        out["families"] = list(self.families)
        return out


def lambda_candidates(S, T, policy: str = "eigen") -> list:
    F = S.field
    if policy == "zero":
        return [F.zero]
    if isinstance(F, PrimeField):
        return list(F.elements())
    lams = set(rational_eigenvalues(S)) | set(rational_eigenvalues(T)) | {F.zero}
    return sorted(lams)


def draw_pair(config: CampaignConfig, index: int):
    """The ``(S, T, meta)`` instance of trial ``index``."""
    F = config.field_obj
    seed = config.seed + index
    rng = random.Random(seed)
    m = rng.randint(config.m_min, config.m_max)
    k = rng.randint(min(config.k_min, m), min(config.k_max, m))
    family = rng.choice(config.families)
    S = random_operator(m, rng.getrandbits(63), config.bound, F, family)
    spec = random_perturbation(m, k, rng.getrandbits(63), config.bound, F)
    T = spec.apply(S)
    return S, T, {"seed": seed, "m": m, "k_nominal": k, "family": family}


def run_trial(config: CampaignConfig, index: int) -> dict:
    S, T, meta = draw_pair(config, index)
    F = S.field
    m = meta["m"]
    n_max = config.n_max if config.n_max is not None else m
    k = rank(S - T)
    record = dict(meta)
    record["k_effective"] = k
    lams = lambda_candidates(S, T, config.lam_policy)
    record["lambdas"] = [F.format(lam) for lam in lams]

    chains = None
    if "interlacing" in config.checks:
        model = common_subspace(S, T)
        chains = (
            restriction_chain(S, model.M, model.s_completions),
            restriction_chain(T, model.M, model.t_completions),
        )

    per_lambda = []
    violations = []
    cap = max(m, n_max + 1)
    for lam in lams:
        wS, wT = weyr(S, lam, cap), weyr(T, lam, cap)
        entry = {"lambda": F.format(lam), "w_S": list(wS.values(n_max)), "w_T": list(wT.values(n_max))}
        if "theorem" in config.checks:
            rep = check_main_bounds(S, T, lam, n_max, k=k, weyr_S=wS, weyr_T=wT)
            entry["theorem"] = {
                "passed": rep.passed,
                "gap_i": [r.gap_i for r in rep.records],
                "gap_ii": [r.gap_ii for r in rep.records],
            }
            if not rep.passed:
                violations.append({"check": "theorem", "report": rep.to_dict(include_inputs=True)})
        if "root" in config.checks:
            root = check_root_bounds(S, T, lam, k=k, weyr_S=wS, weyr_T=wT)
            entry["root"] = {"passed": root.passed, "gap_i": root.gap_i, "gap_ii": root.gap_ii,
                             "bound_i": root.bound_i, "bound_ii": root.bound_ii}
            if not root.passed:
                violations.append({"check": "root", "report": root.to_dict(F)})
        if "savchenko" in config.checks:
            sav = check_savchenko(S, T, lam, k=k, weyr_S=wS, weyr_T=wT)
            entry["savchenko"] = {"status": sav.status, "passed": sav.passed, "equality": sav.equality}
            if not sav.passed:
                violations.append({"check": "savchenko", "report": sav.to_dict(F)})
        if chains is not None:
            ok = True
            for side, chain in zip(("S", "T"), chains):
                inter = check_restriction_interlacing(chain, lam, n_max)
                if not inter.passed:
                    ok = False
                    violations.append({
                        "check": "interlacing",
                        "side": side,
                        "lambda": F.format(lam),
                        "violations": [asdict(r) for r in inter.violations],
                    })
            entry["interlacing"] = {"passed": ok}
        per_lambda.append(entry)
    record["per_lambda"] = per_lambda
    if violations:
        record["violations"] = violations
        record["S"] = matrix_to_json(S)
        record["T"] = matrix_to_json(T)
    return record


def _run_trial_star(args):
    return run_trial(*args)


def _aggregate(config: CampaignConfig, trials: list[dict]) -> dict:
    counts = {c: {"checked": 0, "violations": 0} for c in config.checks}
    gaps: dict[tuple, dict] = {}
    sharp_hits = {"i": 0, "ii": 0}
    sharp_slots = {"i": 0, "ii": 0}
    sav = {"checked": 0, "skipped": 0, "equality": 0}
    for t in trials:
        k = t["k_effective"]
        for entry in t["per_lambda"]:
            for c in config.checks:
                if c in entry:
                    counts[c]["checked"] += 1
                    if not entry[c]["passed"]:
                        counts[c]["violations"] += 1
            if "theorem" in entry:
                for n, (gi, gii) in enumerate(zip(entry["theorem"]["gap_i"], entry["theorem"]["gap_ii"])):
                    slot = gaps.setdefault((k, n), {"k": k, "n": n, "count": 0, "max_gap_i": 0,
                                                    "bound_i": k * n, "max_gap_ii": 0, "bound_ii": k})
                    slot["count"] += 1
                    slot["max_gap_i"] = max(slot["max_gap_i"], gi)
                    slot["max_gap_ii"] = max(slot["max_gap_ii"], gii)
                    if k > 0:
                        sharp_slots["ii"] += 1
                        sharp_hits["ii"] += gii == k
                        if n >= 1:
                            sharp_slots["i"] += 1
                            sharp_hits["i"] += gi == k * n
            if "savchenko" in entry:
                s = entry["savchenko"]
                if s["status"] == "checked":
                    sav["checked"] += 1
                    sav["equality"] += s["equality"]
                else:
                    sav["skipped"] += 1
    total_violations = sum(c["violations"] for c in counts.values())
    return {
        "trials": len(trials),
        "instances": sum(len(t["per_lambda"]) for t in trials),
        "checks": counts,
        "violations": total_violations,
        "zero_violations": total_violations == 0,
        "sharpness_hit_rate": {
            key: (f"{sharp_hits[key]}/{sharp_slots[key]}") for key in ("i", "ii")
        },
        "savchenko": sav,
        "max_gaps": [gaps[key] for key in sorted(gaps)],
    }


def fuzz_campaign(config: CampaignConfig) -> dict:
    """Run all trials and return the JSON-ready campaign report."""
    jobs = [(config, i) for i in range(config.trials)]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            trials = list(pool.map(_run_trial_star, jobs, chunksize=max(1, len(jobs) // (4 * config.workers))))
    else:
        trials = [run_trial(*job) for job in jobs]
    summary = _aggregate(config, trials)
    bundles = [
        {"seed": t["seed"], "S": t["S"], "T": t["T"], "violations": t["violations"]}
        for t in trials
        if "violations" in t
    ]
    return {
        "campaign": config.metadata(),
        "summary": summary,
        "violation_bundles": bundles,
        "trials": trials,
    }


def sharp_sweep(m_range=range(2, 7), k_range=range(1, 4), field: Field | None = None) -> dict:
    """Bound audit of the direct-sum shift family at ``lam = 0``."""
    from ..exactmat import QQ

    F = field if field is not None else QQ
    rows = []
    for m in m_range:
        for k in k_range:
            A, B = sharp_example(m, k, F)
            rep = check_main_bounds(A, B, 0)
            root = check_root_bounds(A, B, 0)
            sav = check_savchenko(A, B, 0)
            rows.append({
                "m": m,
                "k": k,
                "k_effective": rep.k,
                "passed": rep.passed and root.passed and sav.passed,
                "gap_i": [r.gap_i for r in rep.records],
                "gap_ii": [r.gap_ii for r in rep.records],
                "sharp_i_all": all(r.sharp_i for r in rep.records if 1 <= r.n <= m),
                "sharp_ii_all": all(r.sharp_ii for r in rep.records if r.n < m),
                "root_sharp_i": root.sharp_i,
                "savchenko_lhs": sav.lhs,
                "savchenko_rhs": sav.dim_L_T,
            })
    return {
        "preset": "sharp-sweep",
        "summary": {
            "cases": len(rows),
            "all_passed": all(r["passed"] for r in rows),
            "all_sharp": all(r["sharp_i_all"] and r["sharp_ii_all"] for r in rows),
        },
        "table": rows,
    }


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def gaps_to_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if "table" in report:
        cols = ["m", "k", "k_effective", "passed", "sharp_i_all", "sharp_ii_all", "savchenko_lhs", "savchenko_rhs"]
        writer.writerow(cols)
        for row in report["table"]:
            writer.writerow([row[c] for c in cols])
        return buf.getvalue()
    cols = ["k", "n", "count", "max_gap_i", "bound_i", "max_gap_ii", "bound_ii"]
    writer.writerow(cols)
    for row in report["summary"]["max_gaps"]:
        writer.writerow([row[c] for c in cols])
    return buf.getvalue()
