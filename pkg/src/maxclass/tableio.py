"""Spec files and table exports.

Spec files are JSON objects::

    {"field": {"kind": "prime", "p": 5},
     "algebra": {"name": "q_algebra", "q": 5},
     "N": 40}

``algebra.name`` is one of ``a, m, m2, witt, q_algebra, L_lambda`` or
``custom``.  ``q_algebra`` and ``L_lambda`` accept ``"method": "matrix"`` to
go through the matrix realisation.  A ``custom`` algebra gives either
``"mu": [...]`` (type 2) or ``"delta": [...]`` (type 1, ``"inf"`` for
``C_i = span(x)``), each with an optional ``"start"`` weight (default 3 for
mu, 2 for delta).  Coefficients are strings in the scalar text format or
integers.  Unknown keys are rejected.

Exports are line-oriented text::

    # maxclass table
    field: F5
    type: 2
    N: 40
    provenance: q_algebra q=5
    entries:
    3 2 0
    ...
    full:            (only with the full-table option)
    4 3 0
    ...

Type-1 entries read ``i y delta_i``; raw tables list every ``i j gamma``
with ``i > j`` under ``entries``.
"""

from __future__ import annotations

import json
from typing import Any

from .constructions import ConstructionSpec, build, build_L_lambda_matrix, build_q_algebra_matrix
from .liecore import GradedTable, Type1Table, Type2Table
from .scalars import Field, make_field, parse_field

Table = Type2Table | Type1Table | GradedTable


class SpecError(ValueError):
    """Malformed spec file or export."""


_TOP_KEYS = {"field", "algebra", "N"}
_FIELD_KEYS = {"kind", "p"}
_ALG_KEYS = {
    "a": {"name"},
    "m": {"name"},
    "m2": {"name"},
    "witt": {"name"},
    "q_algebra": {"name", "q", "method"},
    "L_lambda": {"name", "lambda", "method"},
    "custom": {"name", "mu", "delta", "start"},
}


def _check_keys(obj: dict, allowed: set, where: str) -> None:
    if not isinstance(obj, dict):
        raise SpecError(f"{where} must be an object")
    extra = sorted(set(obj) - allowed)
    if extra:
        raise SpecError(f"unknown key(s) in {where}: {', '.join(extra)}")


def _scalar(f: Field, v: Any) -> Any:
    if isinstance(v, bool):
        raise SpecError(f"bad coefficient {v!r}")
    if isinstance(v, int):
        return f.from_int(v)
    if isinstance(v, str):
        try:
            return f.parse(v)
        except (ValueError, ZeroDivisionError) as e:
            raise SpecError(f"bad coefficient {v!r}: {e}") from None
    raise SpecError(f"bad coefficient {v!r}")


def parse_spec(data: dict) -> tuple[ConstructionSpec | None, Table | None, str]:
    """Return ``(spec, None, provenance)`` for named algebras or ``(None, table, 'custom')``."""
    _check_keys(data, _TOP_KEYS, "spec")
    for k in _TOP_KEYS:
        if k not in data:
            raise SpecError(f"spec is missing {k!r}")
    fd = data["field"]
    _check_keys(fd, _FIELD_KEYS, "field")
    try:
        f = make_field(fd.get("kind"), fd.get("p"))
    except (ValueError, TypeError) as e:
        raise SpecError(f"bad field: {e}") from None
    N = data["N"]
    if not isinstance(N, int) or isinstance(N, bool) or N < 3:
        raise SpecError("N must be an integer >= 3")
    alg = data["algebra"]
    if not isinstance(alg, dict) or alg.get("name") not in _ALG_KEYS:
        raise SpecError(f"unknown algebra {alg.get('name') if isinstance(alg, dict) else alg!r}")
    name = alg["name"]
    _check_keys(alg, _ALG_KEYS[name], "algebra")
    method = alg.get("method", "table")
    if method not in ("table", "matrix"):
        raise SpecError(f"method must be 'table' or 'matrix', not {method!r}")
    if name == "custom":
        return None, _custom_table(f, N, alg), "custom"
    q = alg.get("q")
    if name == "q_algebra" and not isinstance(q, int):
        raise SpecError("q_algebra needs an integer q")
    lam = None
    if name == "L_lambda":
        if "lambda" not in alg:
            raise SpecError("L_lambda needs lambda")
        lam = _scalar(f, alg["lambda"])
    spec = ConstructionSpec(name, f, N, q=q, lam=lam, params={"method": method})
    prov = spec.describe() + (" (matrix)" if method == "matrix" else "")
    return spec, None, prov


def _custom_table(f: Field, N: int, alg: dict) -> Table:
    if ("mu" in alg) == ("delta" in alg):
        raise SpecError("custom algebra needs exactly one of mu, delta")
    if "mu" in alg:
        start = alg.get("start", 3)
        vals = alg["mu"]
        if not isinstance(vals, list):
            raise SpecError("mu must be a list")
        mu = {start + k: _scalar(f, v) for k, v in enumerate(vals)}
        try:
            return Type2Table(f, N, mu)
        except ValueError as e:
            raise SpecError(str(e)) from None
    start = alg.get("start", 2)
    vals = alg["delta"]
    if not isinstance(vals, list):
        raise SpecError("delta must be a list")
    delta = {start + k: (None if v == "inf" else _scalar(f, v)) for k, v in enumerate(vals)}
    try:
        return Type1Table(f, N, delta)
    except ValueError as e:
        raise SpecError(str(e)) from None


def realize(spec: ConstructionSpec) -> Table:
    """Build a parsed spec, honouring the matrix method."""
    if spec.params.get("method") == "matrix":
        f = spec.field
        if spec.name == "q_algebra":
            if f.kind != "prime":
                raise SpecError("the matrix route builds over a prime field")
            return build_q_algebra_matrix(f.characteristic, spec.q, spec.N)
        if f.kind != "prime" or f.characteristic != 3:
            from .constructions import ConstructionError

            raise ConstructionError("the L(lambda) matrices live in characteristic 3")
        return build_L_lambda_matrix(spec.lam, spec.N)
    return build(spec)


def load_spec(path: str) -> tuple[Table, str]:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as e:
        raise SpecError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise SpecError(f"{path} is not valid JSON: {e}") from None
    spec, table, prov = parse_spec(data)
    if table is None:
        table = realize(spec)
    return table, prov


# ---------------------------------------------------------------------------
# Exports


def table_type(table: Table) -> str:
    if isinstance(table, Type2Table):
        return "2"
    if isinstance(table, Type1Table):
        return "1"
    return "raw"


def export_entries(table: Table) -> list[tuple[int, Any, str]]:
    f = table.field
    if isinstance(table, Type2Table):
        return [(i, 2, f.format(table.mu[i])) for i in range(3, table.N - 1)]
    if isinstance(table, Type1Table):
        return [
            (i, "y", "inf" if d is None else f.format(d)) for i, d in sorted(table.delta.items())
        ]
    return [(i, j, f.format(c)) for i, j, c in sorted(table.gamma_entries())]


def full_entries(table: Table) -> list[tuple[int, int, str]]:
    f = table.field
    if isinstance(table, Type1Table):
        return [
            (i, j, f.format(table.beta(i, j)))
            for i in range(3, table.N)
            for j in range(2, min(i, table.N - i + 1))
        ]
    return [(i, j, f.format(c)) for i, j, c in sorted(table.gamma_entries())]


def export_text(table: Table, provenance: str, full: bool = False) -> str:
    lines = [
        "# maxclass table",
        f"field: {table.field.describe()}",
        f"type: {table_type(table)}",
        f"N: {table.N}",
        f"provenance: {provenance}",
        "entries:",
    ]
    lines += [f"{i} {j} {c}" for i, j, c in export_entries(table)]
    if full:
        lines.append("full:")
        lines += [f"{i} {j} {c}" for i, j, c in full_entries(table)]
    return "\n".join(lines) + "\n"


def export_structured(table: Table, provenance: str, full: bool = False) -> str:
    obj: dict = {
        "field": table.field.describe(),
        "type": table_type(table),
        "N": table.N,
        "provenance": provenance,
        "entries": [[i, j, c] for i, j, c in export_entries(table)],
    }
    if full:
        obj["full"] = [[i, j, c] for i, j, c in full_entries(table)]
    return json.dumps(obj, indent=1) + "\n"


def parse_export(text: str) -> tuple[Table, str]:
    """Inverse of :func:`export_text` (the ``full`` block is ignored)."""
    lines = [ln.rstrip("\n") for ln in text.splitlines()]
    if not lines or lines[0] != "# maxclass table":
        raise SpecError("not a table export")
    head: dict[str, str] = {}
    k = 1
    while k < len(lines) and lines[k] != "entries:":
        key, _, val = lines[k].partition(": ")
        head[key] = val
        k += 1
    try:
        f = parse_field(head["field"])
        N = int(head["N"])
        kind = head["type"]
    except (KeyError, ValueError) as e:
        raise SpecError(f"bad export header: {e}") from None
    rows = []
    for ln in lines[k + 1:]:
        if ln == "full:":
            break
        i, j, c = ln.split(" ", 2)
        rows.append((int(i), j, c))
    if kind == "2":
        return Type2Table(f, N, {i: f.parse(c) for i, _, c in rows}), head.get("provenance", "")
    if kind == "1":
        delta = {i: (None if c == "inf" else f.parse(c)) for i, _, c in rows}
        return Type1Table(f, N, delta), head.get("provenance", "")
    gam = {(i, int(j)): f.parse(c) for i, j, c in rows}
    return GradedTable.from_brackets(f, N, lambda i, j: gam[(i, j)]), head.get("provenance", "")


# ---------------------------------------------------------------------------
# Comparison


def first_difference(a: Table, b: Table) -> tuple[int, Any] | None:
    """First differing stored coefficient, in export order; ``None`` if identical."""
    if isinstance(a, Type2Table) and isinstance(b, Type2Table):
        for i in range(3, a.N - 1):
            if a.mu[i] != b.mu[i]:
                return (i, 2)
        return None
    if isinstance(a, Type1Table) and isinstance(b, Type1Table):
        for i in range(2, a.N):
            if a.delta[i] != b.delta[i]:
                return (i, "y")
        return None
    if isinstance(a, Type1Table) or isinstance(b, Type1Table):
        raise SpecError("cannot compare a type-1 table with a one-dimensional-component table")
    return a.first_difference(b)
