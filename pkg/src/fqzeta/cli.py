"""Command-line front end: count, height, zeta, congruence, survey.

Exit codes: 0 success (and all congruence checks pass), 1 when a
congruence check fails, 2 on usage errors.  All numeric output is exact.
Relative --out paths resolve under FQZETA_OUT_DIR when that is set.
A key=value config file supplies defaults for format/out/threads/
max-field-size; explicit flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import counting, congruence, formal_groups, survey, zeta
from .counting import DiagonalForm, parse_variety
from .ffield import DEFAULT_MAX_FIELD_SIZE
from .survey import EllipticCurveQ, write_records_csv

_CONFIG_KEYS = {"format", "out", "threads", "max-field-size"}


def _read_config(path: str) -> dict[str, str]:
    cfg = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {line!r} is not key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ValueError(f"unknown config key {key!r}")
        cfg[key] = value
    return cfg


def _parse_kv_spec(spec: str) -> dict[str, str]:
    # "d=4,coeffs=1,1,1,1" -> {"d": "4", "coeffs": "1,1,1,1"}
    out: dict[str, str] = {}
    key = None
    for chunk in spec.split(","):
        if "=" in chunk:
            key, value = chunk.split("=", 1)
            out[key.strip()] = value
        elif key is not None:
            out[key] += "," + chunk
        else:
            raise ValueError(f"cannot parse {spec!r}")
    return out


def _parse_coeff(tok: str):
    tok = tok.strip()
    if tok.startswith("g^"):
        return counting.GenPow(int(tok[2:]))
    if tok == "g":
        return counting.GenPow(1)
    return int(tok)


def _parse_diagonal(spec: str) -> DiagonalForm:
    kv = _parse_kv_spec(spec)
    if set(kv) != {"d", "coeffs"}:
        raise ValueError('diagonal spec needs "d=<deg>,coeffs=<c0,c1,...>"')
    coeffs = tuple(_parse_coeff(t) for t in kv["coeffs"].split(","))
    return DiagonalForm(d=int(kv["d"]), coeffs=coeffs)


def _parse_system(spec: str):
    spec = spec.strip()
    if spec.startswith("{"):
        return parse_variety(spec)
    return parse_variety(Path(spec).read_text())


def _parse_krange(spec: str) -> list[int]:
    if "-" in spec.lstrip("-"):
        lo, hi = spec.split("-", 1)
        ks = list(range(int(lo), int(hi) + 1))
    else:
        ks = [int(spec)]
    if not ks or any(k < 1 for k in ks):
        raise ValueError(f"bad k range {spec!r}")
    return ks


def _parse_counts(spec: str) -> list[int]:
    return [int(t) for t in spec.split(",") if t.strip() != ""]


def _parse_height(spec: str):
    if spec.lower() in ("inf", "infinity", "infinite"):
        return congruence.INFINITE
    return int(spec)


def _out_path(args) -> str | None:
    if not args.out:
        return None
    path = Path(args.out)
    base = os.environ.get("FQZETA_OUT_DIR")
    if base and not path.is_absolute():
        path = Path(base) / path
    return str(path)


def _emit(args, text: str) -> None:
    out = _out_path(args)
    if out:
        Path(out).write_text(text + ("\n" if not text.endswith("\n") else ""))
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_count(args) -> int:
    ks = _parse_krange(args.k)
    diagonal = None
    if args.diagonal:
        diagonal = _parse_diagonal(args.diagonal)
        system = diagonal
    elif args.system:
        system = _parse_system(args.system)
        if isinstance(system, DiagonalForm):
            diagonal = system
    elif args.ngon:
        rows = [{"k": k, "count": counting.count_ngon(args.ngon, args.p, args.e, k)} for k in ks]
        return _emit_counts(args, rows)
    elif args.chain:
        kv = _parse_kv_spec(args.chain)
        rows = [
            {"k": k, "count": counting.count_chain(int(kv["N"]), int(kv["n"]), args.p, args.e, k)}
            for k in ks
        ]
        return _emit_counts(args, rows)
    else:
        raise ValueError("count needs --diagonal, --system, --ngon, or --chain")

    oracle = args.oracle
    if oracle == "convolution" and diagonal is None:
        raise ValueError("--oracle convolution needs a diagonal form")
    rows = []
    for k in ks:
        if oracle == "brute" or (oracle == "auto" and diagonal is None):
            n = counting.count_projective(
                system, args.p, args.e, k,
                max_field_size=args.max_field_size, threads=args.threads,
            )
        else:
            n = counting.count_diagonal(
                diagonal, args.p, args.e, k, max_field_size=args.max_field_size
            )
        rows.append({"k": k, "count": n})
    return _emit_counts(args, rows)


def _emit_counts(args, rows) -> int:
    if args.format == "json":
        _emit(args, json.dumps({"counts": rows}, indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["k", "count"])
        for r in rows:
            w.writerow([r["k"], r["count"]])
        _emit(args, buf.getvalue().rstrip("\n"))
    else:
        if len(rows) == 1:
            _emit(args, str(rows[0]["count"]))
        else:
            _emit(args, "\n".join(f"k={r['k']}: {r['count']}" for r in rows))
    return 0


def _cmd_height(args) -> int:
    if args.slopes is not None:
        data = formal_groups.dieudonne_slopes(args.slopes, args.p)
        payload = {
            "h": data.h,
            "p": data.p,
            "charpoly": list(data.charpoly),
            "slopes": [str(s) for s in data.slopes],
        }
        if args.format == "json":
            _emit(args, json.dumps(payload, indent=2))
        else:
            _emit(args, f"charpoly={zeta.zpoly_str(data.charpoly)} slopes="
                  + ",".join(str(s) for s in data.slopes))
        return 0
    if args.elliptic_count is not None:
        r = formal_groups.elliptic_height(args.p, args.e, args.elliptic_count)
        _emit(args, json.dumps({"height": str(r)}) if args.format == "json" else str(r))
        return 0
    if args.d is None:
        raise ValueError("height needs --d (diagonal degree), --elliptic-count, or --slopes")
    results = {}
    if args.method in ("criterion", "both"):
        results["criterion"] = str(formal_groups.diagonal_height(args.d, args.p))
    if args.method in ("series", "both"):
        order = args.p ** args.bound
        log = formal_groups.stienstra_log(args.d, args.a, order)
        series = formal_groups.mult_by_p(log, args.p, order)
        results["series"] = str(
            formal_groups.height_from_p_series(series, args.p, args.bound)
        )
    if args.format == "json":
        _emit(args, json.dumps(results, indent=2))
    else:
        _emit(args, "\n".join(f"{k}: {v}" for k, v in results.items()))
    return 0


def _cmd_zeta(args) -> int:
    builder = args.builder
    if builder == "log-k3":
        if args.type is None:
            raise ValueError("zeta log-k3 needs --type II|III")
        kind = zeta.K3_TYPE_II if args.type == "II" else zeta.K3_TYPE_III
        lz = zeta.build_log_zeta(kind, args.q, args.a)
        z = lz.zeta
        per_degree = {
            str(i): [[zeta.zpoly_str(p), m] for p, m in fs]
            for i, fs in lz.degree_factors
        }
    elif builder == "log-enriques":
        lz = zeta.build_log_zeta(zeta.ENRIQUES, args.q, args.a)
        z = lz.zeta
        per_degree = {
            str(i): [[zeta.zpoly_str(p), m] for p, m in fs]
            for i, fs in lz.degree_factors
        }
    elif builder in ("k3", "enriques"):
        if args.type is None:
            raise ValueError("--type II|III is required for degeneration zetas")
        kind = {
            ("k3", "II"): zeta.K3_TYPE_II,
            ("k3", "III"): zeta.K3_TYPE_III,
            ("enriques", "II"): zeta.ENRIQUES_TYPE_II,
            ("enriques", "III"): zeta.ENRIQUES_TYPE_III,
        }[(builder, args.type)]
        data = zeta.SnclSurfaceData(
            kind=kind, q=args.q, M=args.M, M1=args.M1, M2=args.M2,
            m=args.m, d=args.d, T=args.T, trace=args.a,
        )
        z = zeta.build_k3_zeta(data) if builder == "k3" else zeta.build_enriques_zeta(data)
        per_degree = None
    else:
        raise ValueError(f"unknown zeta builder {builder!r}")

    payload: dict = {"zeta": z.to_json(), "factored": str(z)}
    if per_degree is not None:
        payload["h_factors"] = per_degree
    if args.expand:
        payload["series"] = str(zeta.expand_rational(z, args.expand))
    if args.format == "json":
        _emit(args, json.dumps(payload, indent=2))
    else:
        lines = [str(z)]
        if args.expand:
            lines.append(f"series: {payload['series']}")
        _emit(args, "\n".join(lines))
    return 0


def _cmd_congruence(args) -> int:
    checker = args.checker
    if checker == "height":
        if args.counts is None or args.height is None:
            raise ValueError("congruence height needs --counts and --height")
        report = congruence.check_height_congruence(
            _parse_counts(args.counts), args.p, args.e, _parse_height(args.height)
        )
    elif checker == "gauss":
        if args.counts is None:
            raise ValueError("congruence gauss needs --counts")
        report = congruence.gauss_bound_check(_parse_counts(args.counts), args.p, args.e)
    elif checker == "ax-katz":
        if args.system is None:
            raise ValueError("congruence ax-katz needs --system")
        system = _parse_system(args.system)
        if isinstance(system, DiagonalForm):
            system = system.as_poly_system()
        report = congruence.ax_katz_check(
            system, args.p, args.e, args.kmax,
            max_field_size=args.max_field_size, threads=args.threads,
        )
    else:
        raise ValueError(f"unknown congruence checker {checker!r}")
    if args.format == "json":
        _emit(args, json.dumps(report.to_json(), indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["k", "count", "modulus", "residue", "pass"])
        for r in report.rows:
            w.writerow([r.k, r.count, r.modulus, r.residue, r.passed])
        _emit(args, buf.getvalue().rstrip("\n"))
    else:
        _emit(args, report.to_table())
    return 0 if report.passed else 1


def _cmd_survey(args) -> int:
    if args.kind == "elliptic":
        curve = EllipticCurveQ(args.A, args.B)
        result = survey.elliptic_survey(curve, args.D, args.xmax)
    else:
        form = DiagonalForm(d=args.d, coeffs=tuple(_parse_coeff(t) for t in args.coeffs.split(",")))
        result = survey.k3_survey(form, args.xmax)
    out = _out_path(args)
    if out:
        write_records_csv(result.records, out)
    summary = result.to_json()
    if not args.records_in_summary:
        summary.pop("records", None)
    if args.format == "json":
        print(json.dumps(summary, indent=2))
    else:
        if args.kind == "elliptic":
            ss = [r for r in result.records if r.supersingular]
            print(f"inert primes: {len(result.records)}  supersingular: {len(ss)}")
            print("alpha values: " + (", ".join(sorted({str(r.alpha) for r in ss})) or "-"))
        else:
            print(f"primes: {len(result.records)}  histogram: {result.alpha_histogram}")
        if out:
            print(f"records written to {out}")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fqzeta",
        description="point counts, formal-group heights, congruence checks, "
        "and degeneration zeta functions over finite fields",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default=None)
    common.add_argument("--out", default=None, help="write the report to this path")
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--max-field-size", type=int, default=None)
    common.add_argument("--config", default=None, help="key=value defaults file")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="point counts over F_{q^k}")
    c.add_argument("--diagonal", help='e.g. "d=4,coeffs=1,1,1,1"')
    c.add_argument("--system", help="inline JSON or a path to a variety document")
    c.add_argument("--ngon", type=int, help="cycle of n projective lines")
    c.add_argument("--chain", help='blow-up chain, e.g. "N=2,n=3"')
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--e", type=int, default=1)
    c.add_argument("--k", default="1", help='extension degree or range "1-3"')
    c.add_argument("--oracle", choices=("auto", "brute", "convolution"), default="auto")
    c.set_defaults(func=_cmd_count)

    h = sub.add_parser("height", parents=[common], help="formal-group heights and slopes")
    h.add_argument("--d", type=int, help="diagonal degree")
    h.add_argument("--a", type=int, default=1, help="product of the diagonal coefficients")
    h.add_argument("--p", type=int, required=True)
    h.add_argument("--e", type=int, default=1)
    h.add_argument("--bound", type=int, default=2, help="scan [p](t) up to p^bound")
    h.add_argument("--method", choices=("criterion", "series", "both"), default="both")
    h.add_argument("--elliptic-count", type=int, help="#E(F_q) for the trace criterion")
    h.add_argument("--slopes", type=int, help="emit slope data for this height")
    h.set_defaults(func=_cmd_height)

    z = sub.add_parser("zeta", parents=[common], help="factored zeta functions")
    z.add_argument("builder", choices=("log-k3", "log-enriques", "k3", "enriques"))
    z.add_argument("--type", choices=("II", "III"))
    z.add_argument("--q", type=int, required=True)
    z.add_argument("--a", type=int, default=None, help="trace of the double elliptic curve")
    z.add_argument("--M", type=int)
    z.add_argument("--M1", type=int)
    z.add_argument("--M2", type=int)
    z.add_argument("--m", type=int, default=0)
    z.add_argument("--d", type=int, default=0)
    z.add_argument("--T", type=int, default=0)
    z.add_argument("--expand", type=int, default=0, help="also expand to this order")
    z.set_defaults(func=_cmd_zeta)

    g = sub.add_parser(
        "congruence", parents=[common],
        help="congruence checkers (hypothesis satisfaction is the caller's responsibility)",
    )
    g.add_argument("checker", choices=("height", "gauss", "ax-katz"))
    g.add_argument("--counts", help="comma-separated N_1,N_2,...")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--e", type=int, default=1)
    g.add_argument("--height", help='1, 2, ... or "inf"')
    g.add_argument("--system", help="inline JSON or path (ax-katz)")
    g.add_argument("--kmax", type=int, default=1)
    g.set_defaults(func=_cmd_congruence)

    s = sub.add_parser("survey", parents=[common], help="supersingular-reduction surveys")
    s.add_argument("kind", choices=("elliptic", "k3"))
    s.add_argument("--A", type=int, default=1)
    s.add_argument("--B", type=int, default=0)
    s.add_argument("--D", type=int, default=-1, help="quadratic field Q(sqrt(D))")
    s.add_argument("--d", type=int, default=4)
    s.add_argument("--coeffs", default="1,1,1,1")
    s.add_argument("--xmax", type=int, required=True)
    s.add_argument("--records-in-summary", action="store_true")
    s.set_defaults(func=_cmd_survey)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        cfg = _read_config(args.config) if args.config else {}
        if args.format is None:
            args.format = cfg.get("format", "table")
        if args.out is None:
            args.out = cfg.get("out")
        if args.threads is None:
            args.threads = int(cfg.get("threads", "1"))
        if args.max_field_size is None:
            args.max_field_size = int(cfg.get("max-field-size", DEFAULT_MAX_FIELD_SIZE))
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
