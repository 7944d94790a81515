"""Command-line front end.

Exit codes: 0 ok, 1 a bound was violated or a certificate failed, 2 parse or
flag error, 3 field mismatch, 4 shape mismatch, 5 ``rank(S - T) != 1``,
6 dependent input classes.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .bounds import (
    CampaignConfig,
    DependentClassesError,
    RankError,
    check_main_bounds,
    check_root_bounds,
    check_savchenko,
    fuzz_campaign,
    gaps_to_csv,
    lambda_candidates,
    proof_construct_rank_one,
    report_to_json,
    sharp_sweep,
)
from .exactmat import (
    Matrix,
    MatrixFormatError,
    dump_matrix,
    eigenvalue_multiplicities,
    field_from_name,
    load_matrix,
    rank,
    vector_to_json,
)
from .jordan import chain_verify, jordan_chains, root_subspace, segre_from_weyr, weyr
from .perturb import kernel_dims, sharp_example, truncated_shift_example

log = logging.getLogger("jordanpert")

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_FIELD, EXIT_SHAPE, EXIT_RANK, EXIT_DEPENDENT = 0, 1, 2, 3, 4, 5, 6


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple
    field: str | None
    p: int | None
    lam: str | None
    n_max: int | None
    output: str | None
    fmt: str
    verbose: int

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        inputs = tuple(getattr(ns, name) for name in ("matrix", "S", "T", "tops") if getattr(ns, name, None))
        cfg = cls(
            command=ns.command,
            inputs=inputs,
            field=getattr(ns, "field", None),
            p=getattr(ns, "p", None),
            lam=getattr(ns, "lam", None),
            n_max=getattr(ns, "n_max", None),
            output=getattr(ns, "out", None),
            fmt=getattr(ns, "format", "json"),
            verbose=ns.verbose,
        )
        if cfg.n_max is not None and cfg.n_max < 1:
            raise CliError("--n-max must be at least 1", EXIT_PARSE)
        if cfg.field == "GF" and cfg.p is None:
            raise CliError("--field GF needs --p", EXIT_PARSE)
        if cfg.field is not None:
            try:
                field_from_name(cfg.field, cfg.p)
            except ValueError as exc:
                raise CliError(str(exc), EXIT_PARSE) from None
        return cfg

    def expected_field(self):
        return None if self.field is None else field_from_name(self.field, self.p)


def _load(path: str, cfg: RunConfig) -> Matrix:
    try:
        A = load_matrix(path)
    except (OSError, MatrixFormatError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None
    expected = cfg.expected_field()
    if expected is not None and A.field != expected:
        raise CliError(f"{path}: matrix is over {A.field}, expected {expected}", EXIT_FIELD)
    return A


def _parse_lam(cfg: RunConfig, field):
    if cfg.lam is None:
        return None
    try:
        return field.parse(cfg.lam)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad --lam: {exc}", EXIT_PARSE) from None


def _pair(cfg: RunConfig, s_path: str, t_path: str):
    S, T = _load(s_path, cfg), _load(t_path, cfg)
    if S.field != T.field:
        raise CliError(f"S is over {S.field}, T is over {T.field}", EXIT_FIELD)
    if not S.is_square or S.shape != T.shape:
        raise CliError(f"need square matrices of one shape, got {S.shape} and {T.shape}", EXIT_SHAPE)
    return S, T


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fmt_tuple(values) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


# -- analyze ----------------------------------------------------------------


def analyze_matrix(A: Matrix, lam=None, n_max: int | None = None) -> dict:
    F = A.field
    mults, leftover = eigenvalue_multiplicities(A) if A.is_square else ({}, 0)
    lams = [lam] if lam is not None else sorted(mults)
    analyses = []
    for mu in lams:
        w = weyr(A, mu, n_max)
        seg = segre_from_weyr(w)
        chains = jordan_chains(A, mu)
        analyses.append({
            "lambda": F.format(mu),
            "weyr": list(w.dims),
            "stabilized": w.stabilized,
            "segre": list(seg.parts),
            "truncated": seg.truncated,
            "root_dim": root_subspace(A, mu).dim,
            "chains": [[vector_to_json(F, x) for x in c] for c in chains],
            "chain_lengths": [len(c) for c in chains],
            "chain_check": chain_verify(A, mu, chains).to_dict(F),
        })
    return {
        "field": F.to_json(),
        "m": A.rows,
        "eigenvalues": {F.format(k): v for k, v in mults.items()},
        "unsupported_degree": leftover,
        "analyses": analyses,
    }


def cmd_analyze(cfg: RunConfig, ns) -> int:
    A = _load(ns.matrix, cfg)
    if not A.is_square:
        raise CliError(f"analyze needs a square matrix, got {A.shape}", EXIT_SHAPE)
    result = analyze_matrix(A, _parse_lam(cfg, A.field), cfg.n_max)
    if ns.json:
        _emit(json.dumps(result, indent=2) + "\n", cfg.output)
        return EXIT_OK
    lines = [f"matrix {A.rows}x{A.cols} over {A.field}"]
    if result["unsupported_degree"]:
        lines.append(
            f"eigenvalues outside the field: degree {result['unsupported_degree']} (present but unsupported)"
        )
    for a in result["analyses"]:
        lines.append(f"lambda = {a['lambda']}")
        lines.append(f"  Weyr  {_fmt_tuple(a['weyr'])}{'' if a['stabilized'] else ' (not stabilized)'}")
        lines.append(f"  Segre {_fmt_tuple(a['segre'])}{' (truncated)' if a['truncated'] else ''}")
        lines.append(f"  root subspace dim {a['root_dim']}")
        lines.append(
            f"  chains: {len(a['chain_lengths'])} with lengths {_fmt_tuple(a['chain_lengths'])}, "
            f"check {'ok' if a['chain_check']['ok'] else a['chain_check']['condition']}"
        )
    if not result["analyses"]:
        lines.append("no eigenvalues in the field")
    _emit("\n".join(lines) + "\n", cfg.output)
    return EXIT_OK


# -- bounds -----------------------------------------------------------------


def bounds_report(S: Matrix, T: Matrix, lam=None, n_max: int | None = None) -> dict:
    F = S.field
    lams = [lam] if lam is not None else lambda_candidates(S, T)
    k = rank(S - T)
    entries = []
    for mu in lams:
        entries.append({
            "lambda": F.format(mu),
            "theorem": check_main_bounds(S, T, mu, n_max, k=k).to_dict(include_inputs=False),
            "root": check_root_bounds(S, T, mu, k=k).to_dict(F),
            "savchenko": check_savchenko(S, T, mu, k=k).to_dict(F),
        })
    passed = all(
        e["theorem"]["passed"] and e["root"]["pass_i"] and e["root"]["pass_ii"] and e["savchenko"]["passed"]
        for e in entries
    )
    out = {"field": F.to_json(), "m": S.rows, "k_effective": k, "passed": passed, "lambdas": entries}
    if not passed:
        from .exactmat import matrix_to_json

        out["S"] = matrix_to_json(S)
        out["T"] = matrix_to_json(T)
    return out


def cmd_bounds(cfg: RunConfig, ns) -> int:
    S, T = _pair(cfg, ns.S, ns.T)
    report = bounds_report(S, T, _parse_lam(cfg, S.field), cfg.n_max)
    if ns.json:
        _emit(json.dumps(report, indent=2) + "\n", cfg.output)
    else:
        lines = [f"{S.rows}x{S.rows} over {S.field}, rank(S - T) = {report['k_effective']}"]
        for e in report["lambdas"]:
            th, root, sav = e["theorem"], e["root"], e["savchenko"]
            lines.append(f"lambda = {e['lambda']}")
            gi = [r["gap_i"] for r in th["records"][1:]]
            gii = [r["gap_ii"] for r in th["records"]]
            sharp_ii = [r["n"] for r in th["records"] if r["sharp_ii"] and r["bound_ii"] > 0]
            lines.append(f"  Theorem (i)  gaps n=1..: {_fmt_tuple(gi)} <= k n  {'ok' if all(r['pass_i'] for r in th['records']) else 'VIOLATED'}")
            lines.append(f"  Theorem (ii) gaps n=0..: {_fmt_tuple(gii)} <= {th['k_effective']}  {'ok' if all(r['pass_ii'] for r in th['records']) else 'VIOLATED'}")
            if sharp_ii:
                lines.append(f"  sharp (ii) at n = {_fmt_tuple(sharp_ii)}")
            lines.append(
                f"  root bound (i)  |{root['dim_L_S']} - {root['dim_ker_T_p']}| <= {root['bound_i']}"
                f"  {'ok' if root['pass_i'] else 'VIOLATED'}{' (sharp)' if root['sharp_i'] and root['bound_i'] else ''}"
            )
            lines.append(
                f"  root bound (ii) |{root['dim_L_S']} - {root['dim_L_T']}| <= {root['bound_ii']}"
                f"  {'ok' if root['pass_ii'] else 'VIOLATED'}"
            )
            if sav["status"] == "checked":
                lines.append(
                    f"  Savchenko bound {sav['lhs']} <= {sav['dim_L_T']}  {'ok' if sav['passed'] else 'VIOLATED'}"
                    f"{' (equality)' if sav['equality'] else ''}"
                )
            else:
                lines.append(f"  Savchenko bound skipped: {sav['status']}")
        lines.append("all bounds hold" if report["passed"] else "VIOLATION FOUND")
        _emit("\n".join(lines) + "\n", cfg.output)
    return EXIT_OK if report["passed"] else EXIT_VIOLATION


# -- fuzz -------------------------------------------------------------------


def cmd_fuzz(cfg: RunConfig, ns) -> int:
    start = time.perf_counter()
    if ns.preset == "sharp-sweep":
        report = sharp_sweep()
        ok = report["summary"]["all_passed"]
        summary = [f"sharp-sweep: {report['summary']['cases']} cases"]
        summary.append(f"{'m':>3} {'k':>3} {'sharp (i)':>10} {'sharp (ii)':>11}  Savchenko")
        for r in report["table"]:
            summary.append(
                f"{r['m']:>3} {r['k']:>3} {str(r['sharp_i_all']):>10} {str(r['sharp_ii_all']):>11}"
                f"  {r['savchenko_lhs']} <= {r['savchenko_rhs']}"
            )
    else:
        try:
            config = CampaignConfig(
                field=ns.field or "Q",
                p=ns.p,
                m_min=ns.m_min,
                m_max=ns.m_max,
                k_min=ns.k_min,
                k_max=ns.k_max,
                trials=ns.trials,
                seed=ns.seed,
                bound=ns.bound,
                n_max=ns.n_max,
                lam_policy=ns.lam_policy,
                workers=ns.workers,
            )
        except ValueError as exc:
            raise CliError(str(exc), EXIT_PARSE) from None
        report = fuzz_campaign(config)
        s = report["summary"]
        ok = s["zero_violations"]
        summary = [
            f"fuzz: {s['trials']} trials, {s['instances']} (pair, lambda) instances over {config.field_obj}",
            *(f"  {name}: {c['checked']} checked, {c['violations']} violations" for name, c in s["checks"].items()),
            f"  sharpness hits (i) {s['sharpness_hit_rate']['i']}, (ii) {s['sharpness_hit_rate']['ii']}",
            f"  result: {'0 violations' if ok else str(s['violations']) + ' VIOLATIONS'}",
        ]
    if cfg.output:
        text = gaps_to_csv(report) if cfg.fmt == "csv" else report_to_json(report)
        Path(cfg.output).write_text(text, encoding="utf-8")
        summary.append(f"report written to {cfg.output}")
    sys.stdout.write("\n".join(summary) + "\n")
    log.info("fuzz finished in %.2fs", time.perf_counter() - start)
    return EXIT_OK if ok else EXIT_VIOLATION


# -- construct --------------------------------------------------------------


def cmd_construct(cfg: RunConfig, ns) -> int:
    S, T = _pair(cfg, ns.S, ns.T)
    F = S.field
    try:
        tops_m = load_matrix(ns.tops)
    except (OSError, MatrixFormatError) as exc:
        raise CliError(f"{ns.tops}: {exc}", EXIT_PARSE) from None
    if tops_m.field != F:
        raise CliError(f"tops are over {tops_m.field}, matrices over {F}", EXIT_FIELD)
    if tops_m.cols != S.rows:
        raise CliError(f"tops must have {S.rows} columns, got {tops_m.cols}", EXIT_SHAPE)
    if ns.n < 0:
        raise CliError("--n must be non-negative", EXIT_PARSE)
    lam = _parse_lam(cfg, F) if cfg.lam is not None else F.zero
    try:
        result = proof_construct_rank_one(S, T, lam, ns.n, tops_m.data)
    except RankError as exc:
        raise CliError(str(exc), EXIT_RANK) from None
    except DependentClassesError as exc:
        raise CliError(str(exc), EXIT_DEPENDENT) from None
    cert = result.certificate
    doc = {
        "z": [vector_to_json(F, z) for z in result.z],
        "chains": [[vector_to_json(F, x) for x in c] for c in result.chains],
        "certificate": cert.to_dict(F),
    }
    text = json.dumps(doc, indent=2) + "\n"
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
        sys.stdout.write(
            f"case {cert.case}: {len(result.z)} classes, certificate "
            f"{'verified' if cert.verified else 'FAILED'}; written to {cfg.output}\n"
        )
    else:
        sys.stdout.write(text)
    return EXIT_OK if cert.verified else EXIT_VIOLATION


# -- examples ---------------------------------------------------------------


def cmd_examples(cfg: RunConfig, ns) -> int:
    F = cfg.expected_field() or field_from_name("Q")
    out_dir = Path(ns.out_dir)
    try:
        if ns.kind == "sharp":
            S, T = sharp_example(ns.m, ns.k, F)
            names = ("A.json", "B.json")
        else:
            S, T = truncated_shift_example(ns.N, F)
            names = ("S.json", "T.json")
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    out_dir.mkdir(parents=True, exist_ok=True)
    dump_matrix(S, out_dir / names[0])
    dump_matrix(T, out_dir / names[1])
    m = S.rows
    a, b = names[0][0], names[1][0]
    lines = [
        f"wrote {out_dir / names[0]} and {out_dir / names[1]} ({m}x{m} over {F})",
        f"rank({a} - {b}) = {rank(S - T)}",
        f"dim ker {a}^j, j=1..{m}: {_fmt_tuple(kernel_dims(S, 0, m))}",
        f"dim ker {b}^j, j=1..{m}: {_fmt_tuple(kernel_dims(T, 0, m))}",
    ]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


# -- entry point ------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_PARSE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jordanpert", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def field_flags(p):
        p.add_argument("--field", choices=("Q", "GF"), help="required field of the inputs")
        p.add_argument("--p", type=int, help="prime modulus for GF")

    p = sub.add_parser("analyze", help="Weyr/Segre/Jordan chains of one matrix")
    p.add_argument("matrix")
    p.add_argument("--lam", help="eigenvalue as 'a' or 'a/b' (default: all field eigenvalues)")
    p.add_argument("--n-max", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    field_flags(p)

    p = sub.add_parser("bounds", help="audit the perturbation bounds for a pair S, T")
    p.add_argument("S")
    p.add_argument("T")
    p.add_argument("--lam")
    p.add_argument("--n-max", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    field_flags(p)

    p = sub.add_parser("fuzz", help="seeded random campaign")
    field_flags(p)
    p.add_argument("--preset", choices=("sharp-sweep",))
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m-min", type=int, default=2)
    p.add_argument("--m-max", type=int, default=8)
    p.add_argument("--k-min", type=int, default=0)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--bound", type=int, default=3, help="entry bound B for random integers")
    p.add_argument("--n-max", type=int)
    p.add_argument("--lam-policy", choices=("eigen", "zero"), default="eigen")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("construct", help="rank-one chain transfer with certificate")
    p.add_argument("S")
    p.add_argument("T")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tops", required=True, help="matrix file whose rows are the top vectors")
    p.add_argument("--lam")
    p.add_argument("--out")
    field_flags(p)

    p = sub.add_parser("examples", help="write the example matrix pairs")
    p.add_argument("kind", choices=("sharp", "shift"))
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--N", type=int, default=10)
    p.add_argument("--out-dir", default=".")
    field_flags(p)
    return parser


COMMANDS = {
    "analyze": cmd_analyze,
    "bounds": cmd_bounds,
    "fuzz": cmd_fuzz,
    "construct": cmd_construct,
    "examples": cmd_examples,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(ns.verbose, 2),
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = RunConfig.from_args(ns)
        return COMMANDS[ns.command](cfg, ns)
    except CliError as exc:
        sys.stderr.write(f"jordanpert {ns.command}: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
