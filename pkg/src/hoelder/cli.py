"""Command-line entry point: ``hoelder <command> [options]``.

Exit status is 0 on success, 1 when a verification fails and 2 on bad input.
Inconclusive verdicts are not failures; they exit 0 and say "inconclusive".
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from . import __version__
from .chain import ChainComplex, ExplicitComplex, materialize, rank_bundle, validate
from .construct import GreedyState, builtin, greedy_certificate, real_target
from .demo import run_demo
from .euler import PreconditionError, chi_h, chi_via_chain_modules, rc_identity_check
from .fmodel import ConstructionError, approximate, verify_approximation
from .io import (
    InputError,
    dumps,
    load_json,
    read_complex,
    read_ledger,
    read_map,
    read_sequence,
    read_ses,
    write_complex,
)
from .k0 import check_relations, surjectivity_witness
from .seq import RationalSeq, Status, SummabilityConfig, cesaro_power_prefix, rule
from .ses import (
    PeriodicSes,
    additivity_chi_check,
    additivity_identity_check,
    admissibility_of_ses,
    delta_seq,
    two_out_of_three,
    validate_ses,
)

__all__ = ["main", "run", "decimal_string"]

DEFAULT_N_MAX = 100_000
ROWS_DEFAULT = 1000


class Failure(Exception):
    """Verification failed; carries the result so it is still emitted."""

    def __init__(self, result: dict, table=None):
        super().__init__("verification failed")
        self.result = result
        self.table = table


def decimal_string(x: Fraction, digits: int = 12) -> str:
    """``x`` correctly rounded to ``digits`` significant digits."""
    x = Fraction(x)
    if x == 0:
        return "0"
    n, d = abs(x.numerator), x.denominator
    # scale so the quotient has a few more digits than needed, then keep a
    # sticky digit for the remainder so a single rounding step is exact
    s = max(0, digits + 2 - int((n.bit_length() - d.bit_length()) * 0.30103))
    q, rem = divmod(n * 10**s, d)
    q = q * 10 + (1 if rem else 0)
    with localcontext() as ctx:
        ctx.prec = digits
        out = str(+Decimal(q).scaleb(-(s + 1)))
    if "." in out and "E" not in out:
        out = out.rstrip("0").rstrip(".")
    return ("-" if x < 0 else "") + out


def _default_n_max() -> int:
    raw = os.environ.get("HOELDER_NMAX")
    if raw is None:
        return DEFAULT_N_MAX
    try:
        return int(raw)
    except ValueError:
        raise InputError("HOELDER_NMAX", f"not an integer: {raw!r}") from None


def _params(pairs) -> dict:
    out = {}
    for p in pairs or ():
        key, sep, val = p.partition("=")
        if not sep:
            raise InputError("--param", f"expected key=value, got {p!r}")
        try:
            out[key] = int(val)
        except ValueError:
            out[key] = val
    return out


def _config(args) -> SummabilityConfig:
    try:
        return SummabilityConfig(
            n_max=args.n_max if args.n_max is not None else _default_n_max(),
            k_max=args.k_max,
            tol=Decimal(args.tol),
            tail_fraction=Fraction(args.tail_fraction),
        )
    except (ValueError, ArithmeticError) as exc:
        raise InputError("config", str(exc)) from None


def _complex_from_args(args) -> ChainComplex:
    if args.builtin:
        try:
            return builtin(args.builtin, **_params(args.param))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("--builtin", str(exc)) from None
    if args.input:
        return read_complex(load_json(args.input))
    raise InputError("arguments", "give --builtin NAME or --input FILE")


def _table_rows(header_k: int, columns: list[list[Fraction]], digits: int, exact: bool):
    header = ["n"] + [f"k{k}" for k in range(header_k + 1)]
    if exact:
        header.append("exact")
    rows = []
    for i in range(len(columns[0])):
        row = [str(i + 1)] + [decimal_string(c[i], digits) for c in columns]
        if exact:
            row.append(str(columns[-1][i]))
        rows.append(row)
    return header, rows


def _csv(table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table[0])
    w.writerows(table[1])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands


def cmd_chi(args, cfg):
    C = _complex_from_args(args)
    report = chi_h(C, cfg)
    result = report.to_dict()
    table = None
    if args.emit_table or args.format == "csv":
        hc = rank_bundle(C).hc
        k_top = report.chi.k_used if report.chi.found else cfg.k_max
        n = min(args.rows, cfg.n_max)
        table = _table_rows(k_top, [cesaro_power_prefix(hc, k, n) for k in range(k_top + 1)], args.digits, args.exact)
    return result, table


def _sequence_from_args(args) -> RationalSeq:
    if args.rule:
        try:
            return rule(args.rule, **_params(args.param))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("--rule", str(exc)) from None
    if args.input:
        return read_sequence(load_json(args.input))
    raise InputError("arguments", "give --rule NAME or --input FILE")


def cmd_cesaro(args, cfg):
    a = _sequence_from_args(args)
    if args.k < 0 or args.n < 1:
        raise InputError("arguments", "need -k >= 0 and -n >= 1")
    cols = [cesaro_power_prefix(a, k, args.n) for k in range(args.k + 1)]
    result = {
        "n": args.n,
        "k": args.k,
        "final": {f"k{k}": decimal_string(c[-1], args.digits) for k, c in enumerate(cols)},
    }
    if args.exact:
        result["final_exact"] = {f"k{k}": str(c[-1]) for k, c in enumerate(cols)}
    return result, _table_rows(args.k, cols, args.digits, args.exact)


def cmd_construct(args, cfg):
    if args.resume:
        try:
            state = GreedyState.from_dict(load_json(args.resume))
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(args.resume, str(exc)) from None
        C, state = real_target(state.r, state.a, state.b, args.horizon)
    elif args.target is None:
        raise InputError("--target", "required unless --resume is given")
    elif args.a is not None or args.b is not None:
        if args.a is None or args.b is None:
            raise InputError("--a/--b", "give both or neither")
        try:
            C, state = real_target(Decimal(args.target) if "/" not in args.target else args.target, args.a, args.b, args.horizon)
        except (ValueError, ArithmeticError) as exc:
            raise InputError("--target", str(exc)) from None
    else:
        try:
            w = surjectivity_witness(args.target, n_max=cfg.n_max, cfg=cfg)
        except (ValueError, ArithmeticError) as exc:
            raise InputError("--target", str(exc)) from None
        result = {"witness": w.to_dict(), "complex": write_complex(w.complex, args.horizon - 1)}
        if w.kind == "greedy":
            result["complex"] = write_complex(materialize(w.complex, args.horizon - 1))
            if not w.greedy.holds:
                raise Failure(result)
        return result, None
    top = args.horizon - 1
    if top < 0:
        raise InputError("--horizon", "must be at least 1")
    state.extend(args.horizon)
    state_dict = state.to_dict()
    cert = greedy_certificate(state, cfg.n_max)
    result = {
        "complex": write_complex(materialize(C, top)),
        "state": state_dict,
        "certificate": cert.to_dict(),
    }
    if not cert.holds:
        raise Failure(result)
    return result, None


def _ses_from_args(args):
    if args.builtin:
        return read_ses({"kind": "builtin", "name": args.builtin, "top": args.top})
    if args.input:
        return read_ses(load_json(args.input))
    raise InputError("arguments", "give --builtin times_two or --input FILE")


def cmd_ses_check(args, cfg):
    S = _ses_from_args(args)
    report = S.validate() if isinstance(S, PeriodicSes) else validate_ses(S)
    result = {"validation": report.to_dict()}
    if not report.ok:
        raise Failure(result)
    top = S.top if not isinstance(S, PeriodicSes) else args.top or 60
    n = top + 1
    residuals = additivity_identity_check(S, n)
    delta = delta_seq(S).prefix(n)
    result["delta"] = [str(x) for x in delta]
    result["residuals_zero"] = all(r == 0 for r in residuals)
    result["admissibility"] = admissibility_of_ses(S, cfg).to_dict()
    try:
        rec = additivity_chi_check(S, cfg)
        result["additivity"] = rec.to_dict()
        ok = rec.ok
    except PreconditionError as exc:
        result["additivity"] = {"status": "inconclusive", "reason": str(exc)}
        ok = True
    result["two_out_of_three"] = two_out_of_three(S, cfg=cfg).to_dict()
    table = (["n", "delta", "residual"], [[str(i + 1), str(delta[i]), str(residuals[i])] for i in range(n)])
    if not (result["residuals_zero"] and ok):
        raise Failure(result, table)
    return result, table


def cmd_rc_check(args, cfg):
    C = _complex_from_args(args)
    if not C.has_chain_modules:
        raise InputError("complex", "the identity needs chain modules, not only homology ranks")
    rep = validate(C)
    if not rep.ok:
        raise Failure({"validation": rep.to_dict()})
    n = C.top + 1 if isinstance(C, ExplicitComplex) else min(args.rows, cfg.n_max)
    residuals = rc_identity_check(C, n)
    chi = chi_h(C, cfg).chi
    result = {"n": n, "residuals_zero": all(r == 0 for r in residuals), "chi_h": chi.to_dict()}
    agree = True
    try:
        via = chi_via_chain_modules(C, cfg)
        result["chi_via_chain_modules"] = via.to_dict()
        if via.status is Status.EXACT and chi.status is Status.EXACT:
            agree = via.value == chi.value
        elif via.found and chi.found:
            agree = abs(_dec(via.value) - _dec(chi.value)) <= 3 * cfg.tol
    except PreconditionError as exc:
        result["chi_via_chain_modules"] = {"status": "inconclusive", "reason": str(exc)}
    result["agree"] = agree
    table = (["n", "residual"], [[str(i + 1), str(r)] for i, r in enumerate(residuals)])
    if not (result["residuals_zero"] and agree):
        raise Failure(result, table)
    return result, table


def _dec(x) -> Decimal:
    if isinstance(x, Fraction):
        return Decimal(x.numerator) / Decimal(x.denominator)
    return x


def cmd_approximate(args, cfg):
    if not args.input:
        raise InputError("--input", "a map file is required")
    f = read_map(load_json(args.input))
    rep = f.check(f.target.top if isinstance(f.target, ExplicitComplex) else args.max_degree)
    if not rep.ok:
        raise InputError(args.input, f"not a chain map: {rep.problems[0]}")
    if not 0 <= args.max_degree <= f.target.top:
        raise InputError("--max-degree", f"must lie in 0..{f.target.top}")
    try:
        res = approximate(f, args.max_degree)
    except ConstructionError as exc:
        raise Failure({"error": str(exc), "witness": str(exc.witness)}) from None
    ver = verify_approximation(res)
    result = dict(res.to_dict(), verification=ver.to_dict())
    if not ver.ok:
        raise Failure(result)
    return result, None


def cmd_k0_check(args, cfg):
    result = {}
    ok = True
    if args.input:
        ledger = read_ledger(load_json(args.input))
        rep = check_relations(ledger, cfg)
        result["relations"] = rep.to_dict()
        ok = rep.ok
    if args.witness:
        ws = []
        for r in args.witness:
            try:
                w = surjectivity_witness(r, n_max=cfg.n_max, cfg=cfg)
            except (ValueError, ArithmeticError) as exc:
                raise InputError("--witness", f"{r!r}: {exc}") from None
            ws.append(w.to_dict())
            ok = ok and (w.chi.value == w.target if w.kind == "exact" else w.greedy.holds)
        result["witnesses"] = ws
    if not result:
        raise InputError("arguments", "give --input LEDGER and/or --witness R")
    if not ok:
        raise Failure(result)
    return result, None


def cmd_demo(args, cfg):
    checks = run_demo(cfg)
    result = {"checks": [c.to_dict() for c in checks], "ok": all(c.ok for c in checks)}
    table = (["name", "expected", "actual", "ok"], [[c.name, c.expected, c.actual, "pass" if c.ok else "FAIL"] for c in checks])
    if not result["ok"]:
        raise Failure(result, table)
    return result, table


COMMANDS = {
    "chi": cmd_chi,
    "cesaro": cmd_cesaro,
    "construct": cmd_construct,
    "ses-check": cmd_ses_check,
    "rc-check": cmd_rc_check,
    "approximate": cmd_approximate,
    "k0-check": cmd_k0_check,
    "demo": cmd_demo,
}


# ---------------------------------------------------------------------------
# argument parsing and emission


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("summability")
    g.add_argument("--n-max", type=int, default=None, help=f"ladder horizon (default {DEFAULT_N_MAX}, or $HOELDER_NMAX)")
    g.add_argument("--k-max", type=int, default=8, help="highest Cesaro order tried (default 8)")
    g.add_argument("--tol", default="1e-6", help="tail oscillation tolerance (default 1e-6)")
    g.add_argument("--tail-fraction", default="1/10", help="tail window as a fraction of n-max (default 1/10)")
    o = common.add_argument_group("output")
    o.add_argument("--format", choices=("json", "csv", "text"), default=None, help="json (default), csv for tables, text for demo")
    o.add_argument("-o", "--output", help="write the main output here instead of stdout")
    o.add_argument("--emit-table", metavar="PATH", help="also write the CSV table here")
    o.add_argument("--digits", type=int, default=12, help="significant digits in CSV tables (default 12)")
    o.add_argument("--exact", action="store_true", help="add an exact p/q column to CSV tables")
    o.add_argument("--seed", type=int, default=0, help="seed for randomized corpora (default 0)")

    p = argparse.ArgumentParser(prog="hoelder", description="Hoelder summability and infinite Euler characteristics.")
    p.add_argument("--version", action="version", version=f"hoelder {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def complex_source(sp):
        sp.add_argument("--builtin", help="builtin complex name")
        sp.add_argument("--param", action="append", help="builtin parameter key=value (repeatable)")
        sp.add_argument("--input", help="complex JSON file")

    sp = sub.add_parser("chi", parents=[common], help="chi_H report for a complex")
    complex_source(sp)
    sp.add_argument("--rows", type=int, default=ROWS_DEFAULT, help="rows in the convergence table")

    sp = sub.add_parser("cesaro", parents=[common], help="prefix tables of iterated Cesaro means")
    sp.add_argument("--rule", help="named rule sequence")
    sp.add_argument("--param", action="append", help="rule parameter key=value (repeatable)")
    sp.add_argument("--input", help="sequence JSON file")
    sp.add_argument("-k", type=int, default=2, help="highest order k")
    sp.add_argument("-n", type=int, default=1000, help="number of terms")

    sp = sub.add_parser("construct", parents=[common], help="complex with a prescribed chi_H")
    sp.add_argument("--target", help="rational p/q, integer or decimal")
    sp.add_argument("--a", type=int, help="low rank parameter (greedy construction)")
    sp.add_argument("--b", type=int, help="high rank parameter (greedy construction)")
    sp.add_argument("--horizon", type=int, default=64, help="degrees to materialise")
    sp.add_argument("--resume", help="greedy state file to replay and extend")

    sp = sub.add_parser("ses-check", parents=[common], help="validate a short exact sequence and check additivity")
    sp.add_argument("--input", help="sequence JSON file")
    sp.add_argument("--builtin", help="builtin family (times_two)")
    sp.add_argument("--top", type=int, default=None, help="horizon for periodic families")

    sp = sub.add_parser("rc-check", parents=[common], help="module-rank identity and chain-level chi")
    complex_source(sp)
    sp.add_argument("--rows", type=int, default=ROWS_DEFAULT, help="terms checked for infinite complexes")

    sp = sub.add_parser("approximate", parents=[common], help="finite-model approximation of a chain map")
    sp.add_argument("--input", help="map JSON file")
    sp.add_argument("--max-degree", type=int, required=True, help="horizon K")

    sp = sub.add_parser("k0-check", parents=[common], help="check a K0 ledger and build witnesses")
    sp.add_argument("--input", help="ledger JSON file")
    sp.add_argument("--witness", action="append", help="target value for a surjectivity witness (repeatable)")

    sub.add_parser("demo", parents=[common], help="reproduce the reference examples")
    return p


def _config_dict(cfg: SummabilityConfig, args) -> dict:
    return {
        "n_max": cfg.n_max,
        "k_max": cfg.k_max,
        "tol": str(cfg.tol),
        "tail_fraction": str(cfg.tail_fraction),
        "digits": args.digits,
        "seed": args.seed,
    }


def _text(command: str, result: dict, table) -> str:
    if table is None:
        return dumps(result)
    if command == "demo":
        w = max(len(r[0]) for r in table[1])
        lines = [f"{r[3]:4}  {r[0]:<{w}}  expected {r[1]}  got {r[2]}" for r in table[1]]
        passed = sum(r[3] == "pass" for r in table[1])
        lines.append(f"{passed}/{len(table[1])} passed")
        return "\n".join(lines) + "\n"
    return _csv(table)


def _write(path: str | None, text: str, stdout) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)


def _check_paths(args) -> None:
    for attr in ("input", "resume"):
        p = getattr(args, attr, None)
        if p and not Path(p).is_file():
            raise InputError(p, "no such file")
    for attr in ("output", "emit_table"):
        p = getattr(args, attr, None)
        if p and not Path(p).resolve().parent.is_dir():
            raise InputError(p, "parent directory does not exist")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    status = 0
    if args.exact and hasattr(sys, "set_int_max_str_digits"):
        # iterated means have denominators with thousands of digits
        sys.set_int_max_str_digits(0)
    try:
        _check_paths(args)
        cfg = _config(args)
        try:
            result, table = COMMANDS[args.command](args, cfg)
        except Failure as exc:
            result, table, status = exc.result, exc.table, 1
    except InputError as exc:
        stderr.write(f"hoelder {args.command}: input error at {exc}\n")
        return 2

    fmt = args.format or ("text" if args.command == "demo" else "json")
    if fmt == "csv" and table is None:
        stderr.write(f"hoelder {args.command}: no table to emit as csv\n")
        return 2
    if fmt == "json":
        text = dumps({"version": __version__, "command": args.command, "config": _config_dict(cfg, args), "result": result})
    elif fmt == "csv":
        text = _csv(table)
    else:
        text = _text(args.command, result, table)

    if args.command == "construct" and args.output and "state" in result:
        stem = Path(args.output)
        _write(str(stem.with_name(stem.stem + ".state.json")), dumps(result["state"]), stdout)
        if fmt == "json":
            text = dumps(result["complex"])
    _write(args.output, text, stdout)
    if args.emit_table and table is not None:
        _write(args.emit_table, _csv(table), stdout)
    return status


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
