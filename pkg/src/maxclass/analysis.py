"""Structural passages between type-1 and type-2 tables.

* :func:`constituents` reads the constituent pattern off a mu-sequence.
* :func:`two_step_centralizers` lists the ``C_i`` of a type-1 table and
  looks for an element of ``L_1`` outside all of them.
* :func:`derive_type2` restricts an uncovered type-1 table to
  ``span(z) + L_2 + L_3 + ...``.
* :func:`lift_to_type1` adjoins the weight-1 derivation ``e_1 -> -e_2``,
  ``e_2 -> 0``.
* :func:`deflate` keeps the components of weight divisible by ``p`` and
  adjoins ``ad(e_1)^p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import count
from typing import Any, Iterator

from .liecore import Type1Table, Type2Table, jacobi_check
from .scalars import Field


class AnalysisError(ValueError):
    """An analysis was asked of a table outside its domain."""


class NoConstituentTheoryError(AnalysisError):
    pass


class NotLiftableError(AnalysisError):
    pass


class SpanningError(AnalysisError):
    def __init__(self, message: str, weight: int):
        super().__init__(message)
        self.weight = weight


class DepthError(AnalysisError):
    pass


# ---------------------------------------------------------------------------
# Constituents


@dataclass(frozen=True)
class Constituent:
    """A constituent running from marked weight ``start`` to ``end``.

    ``type_pair`` is ``(mu_end, mu_{end+1})``; the first constituent carries
    only its length.
    """

    start: int
    end: int
    type_pair: tuple[Any, Any]

    @property
    def length(self) -> int:
        return self.end - self.start


@dataclass
class ConstituentSequence:
    """``first_length`` is ``None`` when mu vanishes on the whole range.

    ``first_index`` is the smallest ``n`` with ``mu_n != 0``; the first
    constituent has length ``n + 1``.
    """

    first_length: int | None
    first_index: int | None
    first_end_pair: tuple[Any, Any] | None
    body: list[Constituent] = dc_field(default_factory=list)
    analyzed_bound: int = 0

    @property
    def infinite_first(self) -> bool:
        return self.first_length is None

    def lengths(self) -> list[int]:
        return [c.length for c in self.body]


def _marks(table: Type2Table) -> list[int]:
    """Weights ``n`` with ``mu_n != 0`` and ``mu_{n-1} == 0``."""
    f = table.field
    mu = table.mu
    out = []
    for n in range(3, table.N - 1):
        if f.is_zero(mu[n]):
            continue
        if n == 3 or f.is_zero(mu[n - 1]):
            out.append(n)
        elif n - 2 >= 3 and not f.is_zero(mu[n - 2]):
            raise AnalysisError(
                f"mu_{n - 2}, mu_{n - 1}, mu_{n} are all non-zero: not a constituent pattern"
            )
    return out


def constituents(table: Type2Table) -> ConstituentSequence:
    """Constituent sequence of a type-2 table with ``[e_3 e_2] = 0``.

    A constituent ends at a pair ``(n, n+1)`` with ``mu_{n-1} = 0`` and
    ``mu_n != 0``; its type is ``(mu_n, mu_{n+1})``.  A final pair whose
    second entry lies beyond the truncation is dropped, as is the run of
    zeros after the last complete pair.
    """
    f = table.field
    if table.N >= 5 and not f.is_zero(table.mu[3]):
        raise NoConstituentTheoryError("[e_3 e_2] != 0: no theory of constituents")
    marks = [n for n in _marks(table) if n + 1 <= table.N - 2]
    if not marks:
        return ConstituentSequence(None, None, None, [], table.N)
    mu = table.mu
    first = marks[0]
    body = [
        Constituent(a, b, (mu[b], mu[b + 1])) for a, b in zip(marks, marks[1:])
    ]
    return ConstituentSequence(first + 1, first, (mu[first], mu[first + 1]), body, table.N)


def _is_lambda_minus_lambda(f: Field, pair: tuple[Any, Any]) -> bool:
    return f.is_zero(f.reduce(pair[0] + pair[1]))


# ---------------------------------------------------------------------------
# Two-step centralizers


def _candidates(f: Field) -> Iterator[Any]:
    """Non-zero field elements in a fixed order (residues ascending for F_p)."""
    if f.kind == "prime":
        yield from range(1, f.characteristic)
    elif f.kind == "rationals":
        for n in count(1):
            yield f.reduce(n)
    else:
        t = f.t
        yield from range(1, f.characteristic)
        for k in count(1):
            yield t ** k


def spans_at(table: Type1Table, z: tuple[Any, Any], i: int) -> bool:
    """``[v_i, z] != 0`` for ``z = a x + b y``."""
    a, b = z
    f = table.field
    return not f.is_zero(f.reduce(a * table.ax[i] + b * table.ay[i]))


def first_spanning_failure(table: Type1Table, z: tuple[Any, Any]) -> int | None:
    for i in range(2, table.N):
        if not spans_at(table, z, i):
            return i
    return None


@dataclass
class CentralizerReport:
    delta: list[Any]
    uncovered: bool
    witness: tuple[Any, Any] | None

    def describe(self, f: Field) -> str:
        vals = ["inf" if d is None else f.format(d) for d in self.delta]
        head = f"delta_2.. = [{', '.join(vals)}]"
        if not self.uncovered:
            return head + "\nnot uncovered on range"
        a, b = self.witness
        return head + f"\nuncovered on range, z = {f.format(a)}*x + {f.format(b)}*y"


def two_step_centralizers(table: Type1Table) -> CentralizerReport:
    """``delta_2 .. delta_{N-1}`` plus an uncovered witness if there is one.

    Candidates are tried as ``z = x``, then ``x + c y`` for ``c`` in
    ascending field order, then ``z = y``.
    """
    f = table.field
    delta = [table.delta[i] for i in range(2, table.N)]
    one, zero = f.one, f.zero
    cands: list[tuple[Any, Any]] = [(one, zero)]
    if f.kind == "prime":
        cands += [(one, c) for c in _candidates(f)] + [(zero, one)]
        it: Any = iter(cands)
    else:
        # Finitely many C_i cannot cover an infinite projective line.
        it = ((one, c) for c in _candidates(f))
        it = iter([(one, zero)] + [next(it) for _ in range(len(delta) + 1)])
    for z in it:
        if first_spanning_failure(table, z) is None:
            return CentralizerReport(delta, True, z)
    return CentralizerReport(delta, False, None)


# ---------------------------------------------------------------------------
# Type 1 -> type 2


def derive_type2(table: Type1Table, z: tuple[Any, Any]) -> Type2Table:
    """Type-2 table on ``e_1 = z``, ``e_2 = [y', z]`` with ``0 != y'`` in ``C_2``.

    ``z = (a, b)`` stands for ``a x + b y``.  With ``e_k = c_k v_k`` the
    bracket ``[e_i e_2] = c_i c_2 beta(i, 2) v_{i+2}`` gives
    ``mu_i = c_i c_2 beta(i, 2) / c_{i+2}``.
    """
    f = table.field
    red = f.reduce
    a, b = red(z[0]), red(z[1])
    bad = first_spanning_failure(table, (a, b))
    if bad is not None:
        raise SpanningError(f"z lies in C_{bad}: [L_{bad} z] = 0", bad)
    d2 = table.delta[2]
    alpha, beta = (red(-d2), f.one) if d2 is not None else (f.one, f.zero)
    # [alpha x + beta y, a x + b y] = (beta a - alpha b) v_2
    c = {2: red(beta * a - alpha * b)}
    for k in range(2, table.N):
        c[k + 1] = red(c[k] * (a * table.ax[k] + b * table.ay[k]))
    mu = {
        i: f.div(red(c[i] * c[2] * table.beta(i, 2)), c[i + 2])
        for i in range(3, table.N - 1)
    }
    return Type2Table(f, table.N, mu)


# ---------------------------------------------------------------------------
# Type 2 -> type 1


def derivation_values(table: Type2Table) -> dict[int, Any]:
    """``d_i`` with ``e_i D = d_i e_{i+1}``: ``d_2 = 0``, ``d_{i+1} = d_i - mu_i``."""
    f = table.field
    d = {2: f.zero}
    for i in range(2, table.N - 1):
        mu_i = table.mu[i] if i >= 3 else f.zero
        d[i + 1] = f.reduce(d[i] - mu_i)
    return d


def lift_to_type1(table: Type2Table) -> Type1Table:
    """Adjoin the derivation ``D`` with ``e_1 D = -e_2``, ``e_2 D = 0``.

    The result has ``x = e_1``, ``y = D``, ``v_i = e_i`` and
    ``delta_i = d_i``.  Every constituent, including the pair that closes the
    first one, must have type ``(lambda, -lambda)``; the output is
    re-verified with :func:`jacobi_check`.
    """
    f = table.field
    seq = constituents(table)
    if seq.first_end_pair is not None and not _is_lambda_minus_lambda(f, seq.first_end_pair):
        lam, mu = (f.format(x) for x in seq.first_end_pair)
        raise NotLiftableError(
            f"first constituent closes at weight {seq.first_index} with type ({lam}, {mu}), "
            "not of the form (lambda, -lambda)"
        )
    for c in seq.body:
        if not _is_lambda_minus_lambda(f, c.type_pair):
            lam, mu = (f.format(x) for x in c.type_pair)
            raise NotLiftableError(
                f"constituent {c.start}..{c.end} has type ({lam}, {mu}), not (lambda, -lambda)"
            )
    d = derivation_values(table)
    out = Type1Table(f, table.N, {i: d[i] for i in range(2, table.N)})
    rep = jacobi_check(out)
    if not rep.ok:
        raise NotLiftableError(f"lifted table is inconsistent: {rep.describe()}")
    return out


def deflate(table: Type2Table, p: int | None = None) -> Type1Table:
    """Type-1 table on ``x = ad(e_1)^p``, ``y = e_p`` with ``v_i = e_{ip}``.

    ``delta_i = gamma(ip, p)``; the new weight bound is ``floor(N / p)``.
    """
    f = table.field
    p = p or f.characteristic
    if not p:
        raise AnalysisError("deflation needs a prime")
    if table.N < 3 * p:
        raise DepthError(f"deflation by {p} needs N >= {3 * p}, got N = {table.N}")
    Np = table.N // p
    delta = {i: table.gamma(i * p, p) for i in range(2, Np)}
    return Type1Table(f, Np, delta)


__all__ = [
    "AnalysisError",
    "CentralizerReport",
    "Constituent",
    "ConstituentSequence",
    "DepthError",
    "NoConstituentTheoryError",
    "NotLiftableError",
    "SpanningError",
    "constituents",
    "deflate",
    "derivation_values",
    "derive_type2",
    "first_spanning_failure",
    "lift_to_type1",
    "two_step_centralizers",
]
