"""Command-line front end: verification sweeps, slope tables, and measure
profiles with machine-readable output.

All numeric output is exact (integers or num/den rationals).  Exit codes:
0 every admissible cell verified, 1 a counterexample was found, 2 usage or
configuration error.  Runs are deterministic: cells are enumerated in sorted
order and workers return results in that order, so identical configurations
produce byte-identical outputs at any --jobs level.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import multiprocessing
import os
import sys

from . import combinatorics as comb
from . import lemma_checks as lc
from . import measures as ms
from . import modforms as mf
from . import symhecke as sh
from .padic import INFINITY, format_rational, is_prime

OUT_DIR_ENV = "PADICSLOPES_OUT_DIR"

VERIFY_TARGETS = (
    "lemma9", "lemma10", "lemma11", "lemma12", "lemma13", "lemma14", "lemma15",
    "lambda-system", "matrix-entries", "det-factorization",
    "interior-annihilator", "double-sum", "rho-annihilator",
    "integrality", "hecke",
)

# short ids accepted interchangeably with the descriptive names
TARGET_ALIASES = {
    "eq34": "lambda-system",
    "eq59": "matrix-entries",
    "det66": "det-factorization",
    "eq71": "interior-annihilator",
    "eq88": "double-sum",
    "eq105": "rho-annihilator",
}

DEFAULT_PRIMES = {
    "lemma9": [2, 3, 5, 7, 11, 13],
    "hecke": [5, 7],
}


class UsageError(Exception):
    pass


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


def _parse_range(text: str) -> list[int]:
    """'12' or '12..40' (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}") from exc


def _resolve_out(path: str | None) -> str | None:
    if path is None:
        return None
    base = os.environ.get(OUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _fmt_margin(m) -> str:
    if m is None:
        return ""
    return format_rational(m)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

VERIFY_HEADER = ["target", "p", "r", "alpha", "verdict", "min_margin", "checked"]


def _verify_cell(task: tuple) -> tuple[list, dict]:
    """Run one verification cell; returns (csv row, json record).

    Module-level so multiprocessing can pickle it; every branch is pure.
    Cells that violate a module precondition (possible when --r/--alpha pin
    tuples explicitly) are reported as rejected rather than silently skipped.
    """
    target = task[0]
    try:
        return _verify_cell_inner(task)
    except ValueError as exc:
        cell = list(task[1:4]) + [""] * (3 - len(task[1:4]))
        row = [target, *cell, "rejected", "", 0]
        return row, {"target": target, "cell": list(task[1:]), "rejected": str(exc)}


def _verify_cell_inner(task: tuple) -> tuple[list, dict]:
    target = task[0]
    if target in ("lemma10", "lemma11", "lemma12"):
        _, p, r, alpha = task
        rep = lc.verify_lemma(int(target[5:]), p, r, alpha)
        row = [target, p, r, alpha, rep.verdict, _fmt_margin(rep.min_margin), rep.checked]
        return row, lc.report_to_dict(rep)
    if target in ("lemma13", "lemma14", "lemma15"):
        _, p, r = task
        rep = lc.verify_lemma(int(target[5:]), p, r)
        row = [target, p, r, rep.alpha, rep.verdict, _fmt_margin(rep.min_margin), rep.checked]
        return row, lc.report_to_dict(rep)
    if target == "lambda-system":
        _, p, R, alpha = task
        table = comb.lambda_coefficients(p, R, alpha)
        ok = all(c == 0 for c in comb.lambda_defining_residual(table))
        ok = ok and comb.lambda_values_by_differences(p, R, alpha) == table.values
        row = ["lambda-system", p, R, alpha, "holds" if ok else "fails", "", R + 1]
        return row, {"target": "lambda-system", "p": p, "R": R, "alpha": alpha, "holds": ok}
    if target == "matrix-entries":
        _, p, r, alpha = task
        m = comb.build_matrix_M(p, r, alpha)
        rank = comb.interior_rank_report(p, r, alpha)
        ok = comb.trinomial_revision_check(m) and rank.permutation_ok and rank.full_rank_mod_p
        row = ["matrix-entries", p, r, alpha, "holds" if ok else "fails", "", m.nrows * m.ncols]
        return row, {"target": "matrix-entries", "p": p, "r": r, "alpha": alpha, "holds": ok, "rank_R": rank.R}
    if target == "det-factorization":
        _, p, R, gamma = task
        rep = comb.factor_and_rank_checks(p, R, gamma)
        ok = (
            rep.factorization_ok
            and rep.unitriangular_ok
            and rep.det_matches_closed_form
            and rep.full_rank_mod_p
        )
        row = ["det-factorization", p, R, gamma, "holds" if ok else "fails", "", R * R]
        rec = {
            "target": "det-factorization",
            "p": p,
            "R": R,
            "gamma": gamma,
            "holds": ok,
            "det": rep.det_binomial,
            "closed_form": rep.det_expected,
            "linear_power_agrees": rep.linear_power_agrees,
        }
        return row, rec
    if target == "interior-annihilator":
        _, p, r, alpha = task
        sysm = comb.build_interior_annihilator(p, r, alpha)
        prof = comb.vartheta_profile(sysm)
        ok = (
            not sysm.residual()
            and prof.zero_below_alpha
            and prof.valuation_at_alpha_is_ecal
            and prof.valuations_ok_up_to >= 2 * comb.rho_of(p, r)
        )
        row = ["interior-annihilator", p, r, alpha, "holds" if ok else "fails", "", len(sysm.row_values)]
        return row, {"target": "interior-annihilator", "p": p, "r": r, "alpha": alpha, "holds": ok}
    if target == "double-sum":
        _, p, r, alpha = task
        rep = comb.verify_vanishing_double_sum(p, r, alpha)
        row = ["double-sum", p, r, alpha, "holds" if rep.holds else "fails", "", len(rep.row_sums)]
        return row, {"target": "double-sum", "p": p, "r": r, "alpha": alpha, "holds": rep.holds}
    if target == "rho-annihilator":
        _, p, r = task
        sysm = comb.build_rho_annihilator(p, r)
        _, _, exact = comb.rho_zero_row_identity(sysm)
        ok = not sysm.residual() and exact
        row = ["rho-annihilator", p, r, comb.rho_of(p, r), "holds" if ok else "fails", "", len(sysm.row_values)]
        return row, {"target": "rho-annihilator", "p": p, "r": r, "holds": ok}
    if target == "integrality":
        _, p, r, alpha = task
        rep = lc.integrality_checks(p, r, alpha)
        margin = min(rep.c_prime_min_valuation, rep.c_double_min_valuation)
        row = [
            "integrality", p, r, alpha,
            "holds" if rep.holds else "fails",
            format_rational(margin),
            2 * (rep.rho_prime + 1),
        ]
        return row, {
            "target": "integrality", "p": p, "r": r, "alpha": alpha,
            "variant": rep.variant, "holds": rep.holds,
        }
    if target == "hecke":
        _, p, t, delta, alpha = task
        sp = sh.SurrogateParams(p=p, t=t, delta=delta, alpha=alpha)
        rep = sh.verify_T_expansion(sp, alpha)
        ok = rep.matches and rep.combined_form_matches is not False
        row = ["hecke", p, t, f"{delta}/{alpha}", "holds" if ok else "fails", "", 1]
        return row, {
            "target": "hecke", "p": p, "t": t, "delta": delta, "alpha": alpha,
            "holds": ok, "mismatch": rep.first_mismatch,
        }
    raise UsageError(f"unknown verify target {target!r}")


def _verify_tasks(target: str, args) -> list[tuple]:
    ps = args.p or DEFAULT_PRIMES.get(target, [5, 7, 11, 13])
    for p in ps:
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
        if target != "lemma9" and p <= 3:
            raise UsageError(f"target {target} needs primes > 3, got {p}")
    rs = set(args.r) if getattr(args, "r", None) else None
    alphas = set(args.alpha) if getattr(args, "alpha", None) else None
    tasks: list[tuple] = []
    if target in ("lemma10", "lemma11", "lemma12", "integrality"):
        if rs is not None:
            # pinned cells are taken literally; invalid ones get reported
            for p in ps:
                for r in sorted(rs):
                    if alphas is not None:
                        arange = sorted(alphas)
                    else:
                        arange = [a for _, rr, a in lc.admissible_general_cells(p, r) if rr == r]
                    tasks.extend((target, p, r, a) for a in arange)
        else:
            for p in ps:
                for cell in lc.admissible_general_cells(p, args.r_max):
                    tasks.append((target, *cell))
            if target == "integrality":
                for p in ps:
                    for _, r in lc.admissible_rho_cells(p, args.r_max):
                        tasks.append((target, p, r, comb.rho_of(p, r)))
    elif target in ("lemma13", "lemma14", "lemma15"):
        for p in ps:
            cells = lc.admissible_rho_cells(p, args.r_max)
            if rs is not None:
                cells = [(p, r) for r in sorted(rs)]
            tasks.extend((target, *cell) for cell in cells)
    elif target == "lambda-system":
        alpha_samples = range(1, args.alpha_max + 1, max(1, args.alpha_max // 12))
        for p in ps:
            for R in range(0, args.R_max + 1):
                for alpha in alpha_samples:
                    if alpha >= R:
                        tasks.append((target, p, R, alpha))
    elif target in ("matrix-entries", "interior-annihilator"):
        for p in ps:
            for r in sorted(rs) if rs is not None else range(1, args.r_max + 1):
                arange = sorted(alphas) if alphas is not None else range(0, comb.rho_of(p, r))
                tasks.extend((target, p, r, alpha) for alpha in arange)
    elif target == "double-sum":
        for p in ps:
            for r in sorted(rs) if rs is not None else range(1, args.r_max + 1):
                rho = comb.rho_of(p, r)
                if alphas is not None:
                    tasks.extend((target, p, r, alpha) for alpha in sorted(alphas))
                    continue
                for alpha in range(rho + 1, r // (p - 1) + 1):
                    rp = comb.rho_prime_of(p, r, alpha)
                    if rp >= 1 and alpha <= rho + rp:
                        tasks.append((target, p, r, alpha))
    elif target == "rho-annihilator":
        for p in ps:
            rho = 1
            while rho * (p + 1) + p - 2 <= args.r_max:
                tasks.append((target, p, rho * (p + 1) + p - 2))
                rho += 1
    elif target == "det-factorization":
        for p in ps:
            for R in range(1, args.R_max + 1):
                for gamma in (0, 1, 2, 5, 11):
                    tasks.append((target, p, R, gamma))
    elif target == "hecke":
        for p in ps:
            for t in range(2, args.t_max + 1):
                for delta in range(1, min(args.delta_max, t) + 1):
                    for alpha in range(0, delta + 1):
                        if alpha + delta <= t:
                            tasks.append((target, p, t, delta, alpha))
    elif target == "lemma9":
        tasks = [(target, p, args.a_max) for p in ps]
    else:
        raise UsageError(f"unknown verify target {target!r}")
    return sorted(tasks)


def _run_tasks(tasks: list[tuple], jobs: int) -> list[tuple[list, dict]]:
    if jobs > 1 and len(tasks) > 1:
        with multiprocessing.Pool(jobs) as pool:
            return pool.map(_verify_cell, tasks, chunksize=64)
    return [_verify_cell(t) for t in tasks]


def cmd_verify(args) -> int:
    target = TARGET_ALIASES.get(args.target, args.target)
    if target == "lemma9":
        ps = args.p or DEFAULT_PRIMES["lemma9"]
        reports = lc.sweep_lemma9_with_oracle(sorted(ps), args.a_max)
        rows = [
            ["lemma9", p, args.a_max, "", rep.verdict, "", rep.checked]
            for p, rep in sorted(reports.items())
        ]
        records = [
            {
                "target": "lemma9", "p": p, "a_max": args.a_max,
                "verdict": rep.verdict, "checked": rep.checked,
                "max_valuation": rep.max_valuation_seen,
                "violations": list(rep.violations),
            }
            for p, rep in sorted(reports.items())
        ]
    else:
        results = _run_tasks(_verify_tasks(target, args), args.jobs)
        rows = [row for row, _ in results]
        records = [rec for _, rec in results]

    failures = [row for row in rows if row[4] == "fails"]
    rejected = [rec for rec in records if "rejected" in rec]
    notes = []
    if target == "det-factorization":
        disagreements = [rec for rec in records if not rec["linear_power_agrees"]]
        if disagreements:
            notes.append(
                "note: determinant closed form is (p-1)^(R(R-1)/2), not "
                f"(p-1)^R (the forms differ on {len(disagreements)} cells; "
                "both are units mod p, so full rank is unaffected)"
            )
    if args.format == "json":
        payload = {"target": target, "records": records, "notes": notes,
                   "verified": not failures}
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    else:
        text = _csv_text(VERIFY_HEADER, rows)
        for note in notes:
            text += f"# {note}\n"
        _emit(text, args.out)
    if failures:
        sys.stderr.write(f"counterexample: {failures[0]}\n")
        return 1
    if rejected:
        sys.stderr.write(f"invalid cell: {rejected[0]['cell']}: {rejected[0]['rejected']}\n")
        return 2
    return 0


# ---------------------------------------------------------------------------
# slopes / measure / lambda / hecke-check
# ---------------------------------------------------------------------------


def cmd_slopes(args) -> int:
    ks = [k for k in args.k if k % 2 == 0 and k >= 4]
    if not ks:
        raise UsageError("no even weights >= 4 in --k")
    header = ms.SLOPES_CSV_HEADER + (["approx_decimal"] if args.approx else [])
    rows = []
    records = []
    for p in sorted(args.p):
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
        for k in ks:
            svals = mf.slopes(p, k)
            records.append({"p": p, "k": k, "slopes": [format_rational(s) for s in svals]})
            for s in svals:
                row = [p, k, format_rational(s)]
                if args.approx:
                    row.append("~" + (f"{float(s):.6f}" if s is not INFINITY else "inf"))
                rows.append(row)
    if args.format == "json":
        _emit(json.dumps({"records": records}, indent=2, sort_keys=True) + "\n", args.out)
    else:
        _emit(_csv_text(header, rows), args.out)
    return 0


def cmd_measure(args) -> int:
    p = args.p[0] if isinstance(args.p, list) else args.p
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    ks = args.k
    table = ms.middle_mass_profile(
        p, min(ks), max(ks),
        include_newforms=args.include_newforms,
        max_dim=args.max_dim,
    )
    if args.format == "json":
        _emit(json.dumps(ms.profile_to_dict(table), indent=2, sort_keys=True) + "\n", args.out)
    else:
        header = list(ms.PROFILE_CSV_HEADER)
        if args.dump_masses:
            header.append("masses")
        rows = []
        for row in table.rows:
            out = [
                row.p, row.k, row.dim_old, row.dim_new, row.count_middle,
                format_rational(row.fraction_middle),
                format_rational(row.left_end),
                format_rational(row.right_end),
            ]
            if args.dump_masses:
                out.append(";".join(format_rational(m) for m in row.masses))
            rows.append(out)
        text = _csv_text(header, rows)
        if table.cutoff:
            text += f"# cutoff: {table.cutoff}\n"
        _emit(text, args.out)
    if table.cutoff:
        sys.stderr.write(f"resource guard: {table.cutoff}\n")
    return 0


def cmd_lambda(args) -> int:
    table = comb.lambda_coefficients(args.p[0], args.R, args.alpha)
    if args.format == "json":
        payload = {
            "p": table.p, "R": table.R, "alpha": table.alpha,
            "values": {str(b): format_rational(v) for b, v in sorted(table.values.items())},
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    else:
        rows = [[b, format_rational(v)] for b, v in sorted(table.values.items())]
        _emit(_csv_text(["beta", "value"], rows), args.out)
    return 0


def cmd_hecke_check(args) -> int:
    args.target = "hecke"
    return cmd_verify(args)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padicslopes",
        description="Exact verification sweeps, Hecke slopes, and supersingularity measures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["csv", "json"], default="csv")
        sp.add_argument("--out", type=str, default=None,
                        help=f"output path (relative paths use ${OUT_DIR_ENV} when set)")
        sp.add_argument("--jobs", type=int, default=1)

    v = sub.add_parser("verify", help="run an identity or lemma sweep")
    v.add_argument(
        "target",
        choices=VERIFY_TARGETS + tuple(TARGET_ALIASES),
        metavar="target",
        help=f"one of {', '.join(VERIFY_TARGETS)} (short ids: {', '.join(TARGET_ALIASES)})",
    )
    v.add_argument("--p", type=_parse_int_list, default=None)
    v.add_argument("--r", type=_parse_range, default=None,
                   help="pin specific r values instead of sweeping to --r-max")
    v.add_argument("--alpha", type=_parse_range, default=None,
                   help="pin specific alpha values (invalid cells are reported)")
    v.add_argument("--r-max", type=int, default=200)
    v.add_argument("--a-max", type=int, default=2000)
    v.add_argument("--R-max", type=int, default=12)
    v.add_argument("--alpha-max", type=int, default=60)
    v.add_argument("--t-max", type=int, default=8)
    v.add_argument("--delta-max", type=int, default=4)
    common(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("slopes", help="slope multisets of the Hecke operator")
    s.add_argument("--p", type=_parse_int_list, required=True)
    s.add_argument("--k", type=_parse_range, required=True)
    s.add_argument("--approx", action="store_true",
                   help="append a clearly-marked decimal column for humans")
    common(s)
    s.set_defaults(func=cmd_slopes)

    m = sub.add_parser("measure", help="middle-interval mass profile")
    m.add_argument("--p", type=_parse_int_list, required=True)
    m.add_argument("--k", type=_parse_range, required=True)
    group = m.add_mutually_exclusive_group()
    group.add_argument("--oldforms", dest="include_newforms", action="store_false")
    group.add_argument("--include-newforms", dest="include_newforms", action="store_true")
    m.set_defaults(include_newforms=False)
    m.add_argument("--max-dim", type=int, default=80)
    m.add_argument("--dump-masses", action="store_true")
    common(m)
    m.set_defaults(func=cmd_measure)

    l = sub.add_parser("lambda", help="dump one Lambda coefficient table")
    l.add_argument("--p", type=_parse_int_list, required=True)
    l.add_argument("--R", type=int, required=True)
    l.add_argument("--alpha", type=int, required=True)
    common(l)
    l.set_defaults(func=cmd_lambda)

    h = sub.add_parser("hecke-check", help="Hecke expansion identity grid")
    h.add_argument("--p", type=_parse_int_list, default=None)
    h.add_argument("--t-max", type=int, default=8)
    h.add_argument("--delta-max", type=int, default=4)
    common(h)
    h.set_defaults(func=cmd_hecke_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.out = _resolve_out(args.out)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
