"""Command-line front end: build a field, resolve parameters, run reports.

Commands

  spectrum             per-u differential spectrum (closed form when u is in
                       scope, cross-checked against brute force)
  ddt                  per-(u, a) histogram of the DDT row values
  census               per-(a, b) solution census on a seeded pair sample
  verify-lemmas        the 18 character-sum identities per u
  verify-propositions  full-pair sweep: sign-vector prediction vs the DDT
  verify-theorem       closed-form spectrum vs brute force per u
  scan                 theorem + lemmas + propositions per u, one row each

Exit status: 0 all requested verifications pass, 1 any verification
mismatch, 2 usage or configuration error.  Output is deterministic for a
fixed configuration and seed; records are emitted in parameter order.

The --u selector accepts an element digit string ("120"), a generator
power ("gen^4"), "all" (every u with chi(u+1) != chi(u-1) outside GF(3)),
or "sample:N[:seed]" (seeded distinct sample of the same set; the :seed
part defaults to --seed).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import solution_census as census_mod
from . import charsums, ness, rng, spectrum
from .field import FieldCtx, InconsistencyError, make_context

COMMANDS = (
    "spectrum",
    "ddt",
    "census",
    "verify-lemmas",
    "verify-propositions",
    "verify-theorem",
    "scan",
)
SCOPE_COMMANDS = {"census", "verify-lemmas", "verify-propositions", "verify-theorem", "scan"}

SPECTRUM_COLUMNS = [
    "n", "modulus", "u", "class", "epsilon", "gamma3", "gamma4",
    "omega0", "omega1", "omega2", "omega3", "omega4", "source", "match",
]

USAGE_ERROR = 2
VERIFICATION_ERROR = 1


@dataclass(frozen=True)
class RunConfig:
    n: int
    modulus: Optional[str]
    u_spec: str
    command: str
    output_format: str
    seed: int
    jobs: int


class UsageError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nhspectrum",
        description="Differential-spectrum reports for the Ness-Helleseth binomial over GF(3^n).",
    )
    parser.add_argument("--n", type=int, required=True, help="odd extension degree, 3..13")
    parser.add_argument("--modulus", help="monic degree-n modulus digits, lowest degree first")
    parser.add_argument("--u", default="all", dest="u_spec",
                        help="element digits | gen^k | all | sample:N[:seed] (default: all)")
    parser.add_argument("--command", required=True, choices=COMMANDS)
    parser.add_argument("--format", default="json", choices=("json", "csv", "text"),
                        dest="output_format")
    parser.add_argument("--seed", type=int, default=0, help="seed for sample resolution")
    parser.add_argument("--jobs", type=int, default=1, help="worker threads for sweeps")
    return parser


def resolve_u(ctx: FieldCtx, u_spec: str, seed: int = 0) -> list[int]:
    """Expand a --u selector into a list of element indices."""
    if u_spec == "all":
        return spectrum.u0_nonf3_elements(ctx)
    if u_spec.startswith("sample:"):
        parts = u_spec.split(":")
        if len(parts) not in (2, 3):
            raise UsageError(f"bad sample spec {u_spec!r}; want sample:N or sample:N:seed")
        try:
            count = int(parts[1])
            sample_seed = int(parts[2]) if len(parts) == 3 else seed
        except ValueError as exc:
            raise UsageError(f"bad sample spec {u_spec!r}: {exc}") from None
        try:
            return rng.sample_u0_nonf3(ctx, count, sample_seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if u_spec.startswith("gen^"):
        try:
            k = int(u_spec[4:])
        except ValueError:
            raise UsageError(f"bad generator power {u_spec!r}") from None
        if k < 0:
            raise UsageError("generator power must be nonnegative")
        return [ctx.pow(ctx.generator, k)]
    try:
        return [ctx.parse_element(u_spec)]
    except ValueError as exc:
        raise UsageError(f"cannot resolve u spec {u_spec!r}: {exc}") from None


def _require_scope_for_command(ctx: FieldCtx, command: str, us: list[int]) -> None:
    if command not in SCOPE_COMMANDS:
        return
    for u in us:
        cls = spectrum.classify_u(ctx, u)
        if not cls.in_theorem_scope:
            raise UsageError(
                f"command {command!r} needs u with chi(u+1) != chi(u-1) outside GF(3); "
                f"u={ctx.format_element(u)} is in class {cls.label}"
            )


# ---------------------------------------------------------------------------
# per-command record builders; each returns (records, all_ok)
# ---------------------------------------------------------------------------


def _spectrum_records(ctx: FieldCtx, u: int, seed: int) -> tuple[list[dict], bool]:
    cls = spectrum.classify_u(ctx, u)
    base = {"n": ctx.n, "modulus": ctx.modulus_str, "u": ctx.format_element(u),
            "class": cls.label}
    brute = ness.spectrum_bruteforce(ctx, u)
    if cls.in_theorem_scope:
        ins = spectrum.closed_form_inputs(ctx, u)
        closed = spectrum.spectrum_closed_form(ctx, u)
        match = closed.omegas == brute.omegas
        rec = dict(base, epsilon=ins.epsilon, gamma3=ins.gamma3, gamma4=ins.gamma4,
                   omegas=list(closed.omegas), source="closed-form", match=match)
        return [rec], match
    rec = dict(base, epsilon=None, gamma3=None, gamma4=None,
               omegas=list(brute.omegas), source="brute-force", match=None)
    return [rec], True


def _ddt_records(ctx: FieldCtx, u: int, seed: int) -> tuple[list[dict], bool]:
    table = ness.ddt_table(ctx, u)
    records = []
    width = int(table[1:].max()) + 1
    for a in range(1, ctx.q):
        hist = np.bincount(table[a], minlength=width)
        records.append({
            "n": ctx.n, "modulus": ctx.modulus_str, "u": ctx.format_element(u),
            "a": ctx.format_element(a), "delta_hist": [int(c) for c in hist],
        })
    return records, True


def _census_records(ctx: FieldCtx, u: int, seed: int) -> tuple[list[dict], bool]:
    q = ctx.q
    total_pairs = (q - 1) * q
    pair_count = min(200, total_pairs)
    pair_ids = rng.sample_distinct(list(range(total_pairs)), pair_count, seed)
    records = []
    ok = True
    for pid in pair_ids:
        a = pid // q + 1
        b = pid % q
        c = census_mod.census(ctx, u, a, b)
        consistent = c.consistent and census_mod.predict_solution_count(ctx, u, a, b) == c.observed_total
        ok &= consistent
        records.append({
            "n": ctx.n, "modulus": ctx.modulus_str, "u": ctx.format_element(u),
            "a": ctx.format_element(a), "b": ctx.format_element(b),
            "z": ctx.format_element(c.z), "n1": c.n1,
            "case_i": c.case_counts["I"], "case_ii": c.case_counts["II"],
            "case_iii": c.case_counts["III"], "case_iv": c.case_counts["IV"],
            "predicted": c.predicted_total, "observed": c.observed_total,
            "consistent": consistent,
        })
    return records, ok


def _lemma_records(ctx: FieldCtx, u: int, seed: int) -> tuple[list[dict], bool]:
    reports = charsums.section2_identities(ctx, u)
    records = [
        dict({"n": ctx.n, "modulus": ctx.modulus_str, "u": ctx.format_element(u)},
             **rep.to_json_dict())
        for rep in reports
    ]
    return records, all(rep.passed for rep in reports)


def _proposition_records(ctx: FieldCtx, u: int, seed: int) -> tuple[list[dict], bool]:
    report = census_mod.verify_predictions(ctx, u)
    rec = {
        "n": ctx.n, "modulus": ctx.modulus_str, "u": report["u"],
        "pairs": report["pairs"], "mismatches": len(report["mismatches"]),
        "ok": report["ok"],
    }
    records = [rec] + report["mismatches"]
    return records, report["ok"]


def _theorem_records(ctx: FieldCtx, u: int, seed: int) -> tuple[list[dict], bool]:
    rec = spectrum.verify_theorem_record(ctx, u)
    rec = dict({"n": ctx.n, "modulus": ctx.modulus_str}, **rec)
    return [rec], rec["match"]


def _scan_records(ctx: FieldCtx, u: int, seed: int) -> tuple[list[dict], bool]:
    theorem = spectrum.verify_theorem_record(ctx, u)
    lemmas_ok = all(rep.passed for rep in charsums.section2_identities(ctx, u))
    props_ok = census_mod.verify_predictions(ctx, u)["ok"]
    match = bool(theorem["match"] and lemmas_ok and props_ok)
    rec = {
        "n": ctx.n, "modulus": ctx.modulus_str, "u": theorem["u"],
        "class": theorem["class"], "epsilon": theorem["epsilon"],
        "gamma3": theorem["gamma3"], "gamma4": theorem["gamma4"],
        "omegas": theorem["closed_form"], "source": "closed-form",
        "lemmas_pass": lemmas_ok, "propositions_pass": props_ok, "match": match,
    }
    return [rec], match


BUILDERS: dict[str, Callable[[FieldCtx, int, int], tuple[list[dict], bool]]] = {
    "spectrum": _spectrum_records,
    "ddt": _ddt_records,
    "census": _census_records,
    "verify-lemmas": _lemma_records,
    "verify-propositions": _proposition_records,
    "verify-theorem": _theorem_records,
    "scan": _scan_records,
}


# ---------------------------------------------------------------------------
# output formatting
# ---------------------------------------------------------------------------

CSV_COLUMNS: dict[str, list[str]] = {
    "spectrum": SPECTRUM_COLUMNS,
    "scan": SPECTRUM_COLUMNS,
    "verify-theorem": SPECTRUM_COLUMNS,
    "ddt": ["n", "modulus", "u", "a", "delta_hist"],
    "census": ["n", "modulus", "u", "a", "b", "z", "n1", "case_i", "case_ii",
               "case_iii", "case_iv", "predicted", "observed", "consistent"],
    "verify-lemmas": ["n", "modulus", "u", "identity", "lhs", "rhs", "pass"],
    "verify-propositions": ["n", "modulus", "u", "pairs", "mismatches", "ok"],
}


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return ";".join(str(v) for v in value)
    return str(value)


def _to_csv_row(command: str, rec: dict) -> Optional[list[str]]:
    if command == "verify-propositions" and "pairs" not in rec:
        return None  # mismatch detail records are JSON-only
    flat = dict(rec)
    if command == "verify-theorem":
        flat["source"] = "closed-form"
        flat.update({f"omega{i}": w for i, w in enumerate(rec.get("closed_form", []))})
    elif command in ("spectrum", "scan"):
        flat.update({f"omega{i}": w for i, w in enumerate(rec.get("omegas", []))})
        for i in range(5):
            flat.setdefault(f"omega{i}", 0)
    return [_csv_cell(flat.get(col)) for col in CSV_COLUMNS[command]]


def _format_text(rec: dict) -> str:
    parts = []
    for key, value in rec.items():
        if isinstance(value, list):
            value = "[" + ",".join(str(v) for v in value) + "]"
        parts.append(f"{key}={value}")
    return "  ".join(parts)


def emit(command: str, records: list[dict], output_format: str, out: io.TextIOBase) -> None:
    if output_format == "json":
        for rec in records:
            out.write(json.dumps(rec, separators=(", ", ": ")) + "\n")
    elif output_format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_COLUMNS[command])
        for rec in records:
            row = _to_csv_row(command, rec)
            if row is not None:
                writer.writerow(row)
    else:
        for rec in records:
            out.write(_format_text(rec) + "\n")


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


def run(config: RunConfig, out: Optional[io.TextIOBase] = None,
        err: Optional[io.TextIOBase] = None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        ctx = make_context(config.n, config.modulus)
        us = resolve_u(ctx, config.u_spec, config.seed)
        _require_scope_for_command(ctx, config.command, us)
    except (UsageError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return USAGE_ERROR

    builder = BUILDERS[config.command]
    try:
        if config.jobs > 1:
            with ThreadPoolExecutor(max_workers=config.jobs) as pool:
                results = list(pool.map(lambda u: builder(ctx, u, config.seed), us))
        else:
            results = [builder(ctx, u, config.seed) for u in us]
    except InconsistencyError as exc:
        err.write(json.dumps({"status": "inconsistency", "detail": str(exc)}) + "\n")
        return VERIFICATION_ERROR

    records: list[dict] = []
    all_ok = True
    for recs, ok in results:
        records.extend(recs)
        all_ok &= ok
    emit(config.command, records, config.output_format, out)
    if not all_ok:
        err.write(json.dumps({
            "status": "fail", "command": config.command, "n": config.n,
            "records": len(records),
        }) + "\n")
        return VERIFICATION_ERROR
    return 0


def main(argv: Optional[list[str]] = None) -> None:
    args = build_parser().parse_args(argv)
    config = RunConfig(
        n=args.n, modulus=args.modulus, u_spec=args.u_spec, command=args.command,
        output_format=args.output_format, seed=args.seed, jobs=args.jobs,
    )
    try:
        status = run(config)
        sys.stdout.flush()
    except BrokenPipeError:
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        sys.exit(141)  # conventional SIGPIPE status
    sys.exit(status)


if __name__ == "__main__":
    main()
