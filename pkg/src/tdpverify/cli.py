"""Command-line front end: JSON in, JSON or TSV reports out.

Exit codes: 0 for verified/valid outcomes, 1 for refuted outcomes (not
feasible, not direct, invalid array, failed scan), 2 for input errors.
Reports are always emitted on standard output; identical inputs and seeds
produce byte-identical reports.  The environment variable TDP_THREADS caps
the fan-out of batch commands.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from random import Random

from .errors import RootOfUnity, TdpError
from .exactfield import FieldCtx
from .mu import mu_verification
from .params import (
    ParameterArray,
    ParameterSequence,
    check_feasible,
    geometric_sequence,
    qracah_witness,
    recurrence_sequence,
    sample_feasible,
    validate_parameter_array,
)
from .relators import directness_check, verify_psi_identities
from .words import Generator, WordType, bracket_type, enumerate_words, enumerate_zigzag

CERT_COLUMNS = ("lambda", "d", "field", "dim", "zigzag", "relators", "rank", "direct", "p_digest")


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _fail(message: str) -> int:
    _emit({"error": message})
    print(f"error: {message}", file=sys.stderr)
    return 2


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("TDP_THREADS", "1")))
    except ValueError:
        return 1


def _read_json(args) -> dict:
    if args.inline is not None:
        return json.loads(args.inline)
    if args.input is None:
        raise ValueError("provide --input PATH or --inline JSON")
    if args.input == "-":
        return json.load(sys.stdin)
    with open(args.input, encoding="utf-8") as fh:
        return json.load(fh)


def parse_lambda_spec(text: str) -> WordType:
    """Parse "n=K" (bracket type) or "length=L,begin=E0,end=e1"."""
    fields = {}
    for part in text.split(","):
        key, _, value = part.partition("=")
        if not value:
            raise ValueError(f"bad lambda spec fragment: {part!r}")
        fields[key.strip()] = value.strip()
    if "n" in fields:
        return bracket_type(int(fields["n"]))
    length = int(fields["length"])
    if length == 0:
        return WordType(0)
    return WordType(length, Generator.parse(fields["begin"]), Generator.parse(fields["end"]))


def _lambda_text(lam_json: dict) -> str:
    if "n" in lam_json:
        return f"[{lam_json['n']}]"
    if lam_json["length"] == 0:
        return "len=0"
    return f"len={lam_json['length']}:{lam_json['begin']}..{lam_json['end']}"


def _cert_tsv_row(cert_json: dict) -> str:
    lam_text = _lambda_text(cert_json["lambda"])
    field = cert_json["field"]
    field_text = "rational" if field["kind"] == "rational" else f"prime:{field['p']}"
    row = (
        lam_text,
        str(cert_json["d"]),
        field_text,
        str(cert_json["dim"]),
        str(cert_json["zigzag"]),
        str(cert_json["relators"]),
        str(cert_json["rank"]),
        str(cert_json["direct"]).lower(),
        cert_json["p_digest"],
    )
    return "\t".join(row)


def _emit_certs(cert_jsons: list[dict], wrapper: dict | None, fmt: str) -> None:
    if fmt == "tsv":
        lines = ["\t".join(CERT_COLUMNS)]
        lines.extend(_cert_tsv_row(c) for c in cert_jsons)
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        _emit(wrapper)


def all_types(d: int, max_length: int) -> list[WordType]:
    """Every consistent type of length <= max_length over indices 0..d."""
    types = [WordType(0)]
    for length in range(1, max_length + 1):
        for starred in (True, False):
            for i in range(d + 1):
                begin = Generator(starred, i)
                if length == 1:
                    types.append(WordType(1, begin, begin))
                    continue
                end_starred = starred == (length % 2 == 1)
                for j in range(d + 1):
                    types.append(WordType(length, begin, Generator(end_starred, j)))
    return types


def conjecture_scan(
    d: int, max_length: int, samples: int, seed: int, ctx: FieldCtx, workers: int = 1
) -> dict:
    """Directness sweep over every type up to max_length for seeded random
    feasible sequences; any failure is dumped with its certificate."""
    if max_length < 1:
        raise ValueError("max_length must be >= 1")
    rng = Random(seed)
    sequences = [sample_feasible(d, ctx, rng) for _ in range(samples)]
    types = all_types(d, max_length)
    jobs = [(lam, idx) for lam in types for idx in range(len(sequences))]

    def run_one(job):
        lam, idx = job
        return directness_check(lam, sequences[idx])

    if workers > 1 and jobs:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            certs = list(pool.map(run_one, jobs))
    else:
        certs = [run_one(job) for job in jobs]

    failures = []
    rows = []
    for (lam, idx), cert in zip(jobs, certs):
        row = cert.to_json()
        row["sample"] = idx
        rows.append(row)
        if not cert.direct:
            failures.append(
                {"sample": idx, "certificate": cert.to_json(), "p": sequences[idx].to_json()}
            )
    return {
        "d": d,
        "max_length": max_length,
        "samples": samples,
        "seed": seed,
        "field": ctx.to_json(),
        "types_checked": len(types),
        "checks": len(jobs),
        "direct": sum(1 for c in certs if c.direct),
        "failures": failures,
        "certificates": rows,
    }


def _cmd_feas_check(args) -> int:
    p = ParameterSequence.from_json(_read_json(args))
    report = check_feasible(p)
    _emit(report.to_json())
    return 0 if report.feasible else 1


def _cmd_qracah(args) -> int:
    p = ParameterSequence.from_json(_read_json(args))
    witness = qracah_witness(p)
    _emit(witness.to_json())
    return 0 if witness.is_qracah else 1


def _cmd_gen_geometric(args) -> int:
    ctx = FieldCtx.from_str(args.field)
    try:
        p = geometric_sequence(ctx.parse(args.vartheta), args.d, ctx)
    except RootOfUnity as exc:
        _emit({"error": str(exc), "kind": "root-of-unity"})
        return 1
    _emit(p.to_json())
    return 0


def _cmd_gen_recurrence(args) -> int:
    ctx = FieldCtx.from_str(args.field)
    beta = ctx.parse(args.beta)
    theta = recurrence_sequence(
        beta, ctx.parse(args.t0), ctx.parse(args.t1), ctx.parse(args.t2), args.d
    )
    starred = (args.t0_star or args.t0, args.t1_star or args.t1, args.t2_star or args.t2)
    theta_star = recurrence_sequence(beta, *(ctx.parse(t) for t in starred), args.d)
    p = ParameterSequence(ctx, args.d, tuple(theta), tuple(theta_star))
    out = p.to_json()
    report = check_feasible(p)
    out["feasible"] = report.feasible
    _emit(out)
    return 0 if report.feasible else 1


def _cmd_validate_array(args) -> int:
    arr = ParameterArray.from_json(_read_json(args))
    report = validate_parameter_array(arr)
    _emit(report.to_json())
    return 0 if report.valid else 1


def _enumerate_cmd(args, enumerate_fn) -> int:
    lam = parse_lambda_spec(args.lam)
    found = enumerate_fn(lam, args.d)
    if args.count_only:
        sys.stdout.write(f"{len(found)}\n")
        return 0
    _emit(
        {
            "d": args.d,
            "lambda": lam.to_json(),
            "count": len(found),
            "words": [w.text() for w in found],
        }
    )
    return 0


def _cmd_words(args) -> int:
    return _enumerate_cmd(args, enumerate_words)


def _cmd_zigzag(args) -> int:
    return _enumerate_cmd(args, enumerate_zigzag)


def _cmd_directness(args) -> int:
    p = ParameterSequence.from_json(_read_json(args))
    if args.d is not None and args.d != p.d:
        return _fail(f"--d {args.d} contradicts input diameter {p.d}")
    if (args.n is None) == (args.lam is None):
        return _fail("provide exactly one of --n or --lambda")
    lam = bracket_type(args.n) if args.n is not None else parse_lambda_spec(args.lam)
    cert = directness_check(lam, p)
    _emit_certs([cert.to_json()], cert.to_json(), args.format)
    return 0 if cert.direct else 1


def _cmd_mu_verify(args) -> int:
    p = ParameterSequence.from_json(_read_json(args))
    report = mu_verification(p, args.n_max, workers=_workers())
    payload = report.to_json()
    _emit_certs(payload["certificates"], payload, args.format)
    return 0 if report.mu_isomorphism_verdict else 1


def _cmd_psi_check(args) -> int:
    p = ParameterSequence.from_json(_read_json(args))
    report = verify_psi_identities(p, allow_large_d=args.allow_large_d)
    _emit(report.to_json())
    return 0 if report.all_hold else 1


def _cmd_conjecture_scan(args) -> int:
    ctx = FieldCtx.from_str(args.field)
    summary = conjecture_scan(
        args.d, args.max_length, args.samples, args.seed, ctx, workers=_workers()
    )
    if args.format == "tsv":
        rows = summary.pop("certificates")
        lines = ["\t".join(CERT_COLUMNS + ("sample",))]
        lines.extend(_cert_tsv_row(r) + f"\t{r['sample']}" for r in rows)
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        summary.pop("certificates")
        _emit(summary)
    return 0 if not summary["failures"] else 1


def _add_input_flags(sub) -> None:
    sub.add_argument("--input", help="path to a JSON input, or - for stdin")
    sub.add_argument("--inline", help="inline JSON input")


def _add_format_flag(sub) -> None:
    sub.add_argument("--format", choices=("json", "tsv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tdpverify",
        description=(
            "Exact-arithmetic checks for tridiagonal-pair parameter sequences, "
            "zigzag word combinatorics, and relator rank certificates."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("feas-check", help="feasibility report for a parameter sequence")
    _add_input_flags(s)
    s.set_defaults(fn=_cmd_feas_check)

    s = sub.add_parser("qracah", help="q-Racah witness for a feasible sequence (d >= 3)")
    _add_input_flags(s)
    s.set_defaults(fn=_cmd_qracah)

    s = sub.add_parser("gen-geometric", help="emit the geometric sequence vartheta^i")
    s.add_argument("--vartheta", required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--field", default="rational", help="rational or prime:P (default rational)")
    s.set_defaults(fn=_cmd_gen_geometric)

    s = sub.add_parser("gen-recurrence", help="emit a sequence from beta and seed triples")
    s.add_argument("--beta", required=True)
    s.add_argument("--t0", required=True)
    s.add_argument("--t1", required=True)
    s.add_argument("--t2", required=True)
    s.add_argument("--t0-star", dest="t0_star")
    s.add_argument("--t1-star", dest="t1_star")
    s.add_argument("--t2-star", dest="t2_star")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--field", default="rational")
    s.set_defaults(fn=_cmd_gen_recurrence)

    s = sub.add_parser("validate-array", help="validate a full parameter array")
    _add_input_flags(s)
    s.set_defaults(fn=_cmd_validate_array)

    for name, fn in (("words", _cmd_words), ("zigzag", _cmd_zigzag)):
        s = sub.add_parser(name, help=f"enumerate {name} of one type")
        s.add_argument("--d", type=int, required=True)
        s.add_argument("--lambda", dest="lam", required=True, help='"n=K" or "length=L,begin=E0,end=e1"')
        s.add_argument("--count-only", action="store_true")
        s.set_defaults(fn=fn)

    s = sub.add_parser("directness", help="directness certificate for one type")
    _add_input_flags(s)
    s.add_argument("--d", type=int, help="optional consistency check against the input")
    s.add_argument("--n", type=int, help="bracket type [n]")
    s.add_argument("--lambda", dest="lam", help="general type spec")
    _add_format_flag(s)
    s.set_defaults(fn=_cmd_directness)

    s = sub.add_parser("mu-verify", help="bracket-type directness evidence up to n-max")
    _add_input_flags(s)
    s.add_argument("--n-max", type=int, required=True)
    _add_format_flag(s)
    s.set_defaults(fn=_cmd_mu_verify)

    s = sub.add_parser("psi-check", help="central-element identity suite (d <= 2)")
    _add_input_flags(s)
    s.add_argument("--allow-large-d", action="store_true")
    s.set_defaults(fn=_cmd_psi_check)

    s = sub.add_parser("conjecture-scan", help="directness sweep over all types")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--max-length", type=int, required=True)
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--field", default="prime:1000003")
    _add_format_flag(s)
    s.set_defaults(fn=_cmd_conjecture_scan)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (TdpError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        return _fail(f"{type(exc).__name__}: {exc}")


def run(argv: list[str] | None = None) -> int:
    """Alias of main(); parses a job, dispatches, returns the exit code."""
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
