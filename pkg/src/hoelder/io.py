"""JSON formats for sequences, matrices, complexes, sequences of complexes and ledgers.

Rationals are written as ``"p/q"`` strings (or integers).  Readers raise
:class:`InputError` with the JSON path of the offending value.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .chain import (
    ChainComplex,
    ChainMap,
    ExplicitComplex,
    HomologyOnlyComplex,
    PeriodicComplex,
    ZeroDifferentialComplex,
    materialize,
)
from .construct import builtin
from .k0 import K0Ledger
from .linalg import IntMatrix
from .seq import EventuallyPeriodic, ExplicitPrefix, RationalSeq, RuleBased, as_fraction, rule
from .ses import SesSpec, times_two

__all__ = [
    "InputError",
    "load_json",
    "read_sequence",
    "read_matrix",
    "read_complex",
    "read_ses",
    "read_map",
    "read_ledger",
    "write_sequence",
    "write_matrix",
    "write_complex",
    "dumps",
]


class InputError(ValueError):
    """Malformed input; ``where`` is a JSON path such as ``relations[2].f[0]``."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def load_json(path: str | Path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(str(path), f"cannot read file ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _need(obj, key, where):
    if not isinstance(obj, dict):
        raise InputError(where, "expected an object")
    if key not in obj:
        raise InputError(where, f"missing key {key!r}")
    return obj[key]


def _rationals(xs, where) -> tuple[Fraction, ...]:
    if not isinstance(xs, list):
        raise InputError(where, "expected a list of rationals")
    out = []
    for i, x in enumerate(xs):
        try:
            out.append(as_fraction(x))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{where}[{i}]", str(exc)) from None
    return tuple(out)


def _rat_str(x: Fraction) -> str | int:
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# sequences


def read_sequence(obj, where: str = "$") -> RationalSeq:
    kind = _need(obj, "kind", where)
    if kind == "eventually_periodic":
        period = _rationals(_need(obj, "period", where), where + ".period")
        if not period:
            raise InputError(where + ".period", "period must be non-empty")
        return EventuallyPeriodic(_rationals(obj.get("preperiod", []), where + ".preperiod"), period)
    if kind == "explicit":
        tail = obj.get("tail", "zero")
        if tail not in ("zero", "error"):
            raise InputError(where + ".tail", "must be 'zero' or 'error'")
        return ExplicitPrefix(_rationals(_need(obj, "terms", where), where + ".terms"), tail)
    if kind == "rule":
        name = _need(obj, "name", where)
        params = obj.get("params", {})
        try:
            return rule(name, **params)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(where + ".name", str(exc)) from None
    raise InputError(where + ".kind", f"unknown sequence kind {kind!r}")


def write_sequence(a: RationalSeq) -> dict:
    if isinstance(a, EventuallyPeriodic):
        return {
            "kind": "eventually_periodic",
            "preperiod": [_rat_str(x) for x in a.preperiod],
            "period": [_rat_str(x) for x in a.period],
        }
    if isinstance(a, ExplicitPrefix):
        return {"kind": "explicit", "terms": [_rat_str(x) for x in a.terms], "tail": a.tail}
    if isinstance(a, RuleBased) and a.name:
        return {"kind": "rule", "name": a.name, "params": {k: v for k, v in a.params}}
    raise TypeError("only eventually periodic, explicit and named rule sequences can be written")


# ---------------------------------------------------------------------------
# matrices and complexes


def read_matrix(obj, where: str = "$") -> IntMatrix:
    rows, cols, entries = _need(obj, "rows", where), _need(obj, "cols", where), _need(obj, "entries", where)
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 0 or cols < 0:
        raise InputError(where, "rows and cols must be non-negative integers")
    if not isinstance(entries, list) or len(entries) != rows:
        raise InputError(where + ".entries", f"expected {rows} rows")
    for i, r in enumerate(entries):
        if not isinstance(r, list) or len(r) != cols:
            raise InputError(f"{where}.entries[{i}]", f"expected {cols} entries")
        for j, x in enumerate(r):
            if not isinstance(x, int) or isinstance(x, bool):
                raise InputError(f"{where}.entries[{i}][{j}]", "entries must be integers")
    return IntMatrix(rows, cols, tuple(tuple(r) for r in entries))


def write_matrix(m: IntMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": m.to_lists()}


def _matrices(xs, where) -> tuple[IntMatrix, ...]:
    if not isinstance(xs, list):
        raise InputError(where, "expected a list of matrices")
    return tuple(read_matrix(m, f"{where}[{i}]") for i, m in enumerate(xs))


def _ranks(xs, where) -> tuple[int, ...]:
    if not isinstance(xs, list) or not all(isinstance(r, int) and r >= 0 for r in xs):
        raise InputError(where, "expected a list of non-negative integers")
    return tuple(xs)


def read_complex(obj, where: str = "$") -> ChainComplex:
    kind = _need(obj, "kind", where)
    if kind == "explicit":
        return ExplicitComplex(_ranks(_need(obj, "ranks", where), where + ".ranks"), _matrices(obj.get("boundaries", []), where + ".boundaries"))
    if kind == "periodic":
        pre = obj.get("preperiod", {"ranks": [], "boundaries": []})
        rep = _need(obj, "repeat", where)
        entry = read_matrix(obj["entry"], where + ".entry") if obj.get("entry") is not None else None
        rep_ranks = _ranks(_need(rep, "ranks", where + ".repeat"), where + ".repeat.ranks")
        if not rep_ranks:
            raise InputError(where + ".repeat.ranks", "repeat block needs at least one degree")
        return PeriodicComplex(
            _ranks(pre.get("ranks", []), where + ".preperiod.ranks"),
            _matrices(pre.get("boundaries", []), where + ".preperiod.boundaries"),
            rep_ranks,
            _matrices(_need(rep, "boundaries", where + ".repeat"), where + ".repeat.boundaries"),
            entry,
        )
    if kind == "homology_only":
        return HomologyOnlyComplex(read_sequence(_need(obj, "hranks", where), where + ".hranks"))
    if kind == "zero_differential":
        return ZeroDifferentialComplex(read_sequence(_need(obj, "ranks", where), where + ".ranks"))
    if kind == "builtin":
        try:
            return builtin(_need(obj, "name", where), **obj.get("params", {}))
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(where + ".name", str(exc)) from None
    raise InputError(where + ".kind", f"unknown complex kind {kind!r}")


def write_complex(C: ChainComplex, top: int | None = None) -> dict:
    """JSON for ``C``; greedy and other rule-driven complexes are materialised to ``top``."""
    if isinstance(C, ExplicitComplex):
        return {"kind": "explicit", "ranks": list(C.ranks), "boundaries": [write_matrix(m) for m in C.boundaries]}
    if isinstance(C, PeriodicComplex):
        out = {
            "kind": "periodic",
            "preperiod": {"ranks": list(C.pre_ranks), "boundaries": [write_matrix(m) for m in C.pre_boundaries]},
            "repeat": {"ranks": list(C.rep_ranks), "boundaries": [write_matrix(m) for m in C.rep_boundaries]},
        }
        if C.entry is not None:
            out["entry"] = write_matrix(C.entry)
        return out
    if isinstance(C, HomologyOnlyComplex):
        return {"kind": "homology_only", "hranks": write_sequence(C.hranks)}
    if isinstance(C, ZeroDifferentialComplex):
        if top is None:
            raise ValueError("a horizon is needed to write a rule-driven complex")
        return write_complex(materialize(C, top))
    raise TypeError(f"cannot write {type(C).__name__}")


# ---------------------------------------------------------------------------
# sequences of complexes, maps, ledgers


def read_ses(obj, where: str = "$"):
    if isinstance(obj, dict) and obj.get("kind") == "builtin":
        name = obj.get("name")
        if name == "times_two":
            fam = times_two()
            top = obj.get("top")
            return fam.materialize(int(top)) if top is not None else fam
        raise InputError(where + ".name", f"unknown builtin sequence {name!r}")
    parts = {}
    for key in ("A", "B", "C"):
        C = read_complex(_need(obj, key, where), f"{where}.{key}")
        if not isinstance(C, ExplicitComplex):
            raise InputError(f"{where}.{key}", "members of a short exact sequence must be explicit complexes")
        parts[key] = C
    return SesSpec(parts["A"], parts["B"], parts["C"], _matrices(_need(obj, "f", where), where + ".f"), _matrices(_need(obj, "g", where), where + ".g"))


def read_map(obj, where: str = "$") -> ChainMap:
    C = read_complex(_need(obj, "C", where), where + ".C")
    D = read_complex(_need(obj, "D", where), where + ".D")
    for key, X in (("C", C), ("D", D)):
        if not isinstance(X, ExplicitComplex):
            raise InputError(f"{where}.{key}", "must be an explicit complex")
    return ChainMap(C, D, _matrices(_need(obj, "f", where), where + ".f"))


def read_ledger(obj, where: str = "$") -> K0Ledger:
    gens = _need(obj, "generators", where)
    if not isinstance(gens, dict):
        raise InputError(where + ".generators", "expected an object of named complexes")
    ledger = K0Ledger()
    for name in sorted(gens):
        ledger.add(name, read_complex(gens[name], f"{where}.generators.{name}"))
    rels = obj.get("relations", [])
    if not isinstance(rels, list):
        raise InputError(where + ".relations", "expected a list")
    for i, rel in enumerate(rels):
        w = f"{where}.relations[{i}]"
        kind = _need(rel, "kind", w)
        names = ("a", "b") if kind == "weq" else ("a", "b", "quotient")
        if kind not in ("weq", "cofib"):
            raise InputError(w + ".kind", f"unknown relation kind {kind!r}")
        for key in names:
            if _need(rel, key, w) not in ledger.generators:
                raise InputError(f"{w}.{key}", f"unknown generator {rel[key]!r}")
        if kind == "weq":
            m = None
            if rel.get("map") is not None:
                m = ChainMap(ledger.generators[rel["a"]], ledger.generators[rel["b"]], _matrices(rel["map"], w + ".map"))
            ledger.weq(rel["a"], rel["b"], m, int(rel.get("horizon", 0)))
        else:
            A, B, Q = (ledger.generators[rel[k]] for k in names)
            for key, X in zip(names, (A, B, Q)):
                if not isinstance(X, ExplicitComplex):
                    raise InputError(f"{w}.{key}", "cofibration members in a ledger file must be explicit complexes")
            S = SesSpec(A, B, Q, _matrices(_need(rel, "f", w), w + ".f"), _matrices(_need(rel, "g", w), w + ".g"))
            ledger.cofib(rel["a"], rel["b"], rel["quotient"], S, bool(rel.get("split", False)))
    return ledger
