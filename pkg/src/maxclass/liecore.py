"""Truncated graded bracket tables and their consistency checks.

Two shapes of algebra are handled.

*Type 2* (and raw one-dimensional-component tables such as the Witt algebra):
basis ``e_1, ..., e_N`` with ``e_i`` of weight ``i`` and
``[e_i, e_j] = gamma(i, j) e_{i+j}``.  A :class:`Type2Table` is determined
by its mu-sequence ``[e_i, e_2] = mu_i e_{i+2}`` together with the convention
``[e_i, e_1] = e_{i+1}`` (``i >= 2``); everything else is derived.

*Type 1*: ``L_1 = span(x, y)``, ``v_2 = [y, x]`` and ``L_i = span(v_i)`` for
``i >= 2``.  The two-step centralizer ``C_i`` of ``L_i`` in ``L_1`` is encoded
by ``delta_i``: for finite ``delta_i`` we have ``[v_i, x] = v_{i+1}`` and
``[v_i, y] = delta_i v_{i+1}`` so ``C_i = span(y - delta_i x)``; ``delta_i``
of ``None`` stands for ``C_i = span(x)``, with ``[v_i, x] = 0`` and
``[v_i, y] = v_{i+1}``.

Structure constants are stored by anti-diagonal: ``diag[s][i]`` is the
coefficient of ``[b_i, b_{s-i}]`` for the weight-``s`` product.  Everything of
weight above ``N`` is zero (the quotient by the ideal of weight ``> N``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .scalars import Field

Label = Hashable  # int weight for one-dimensional components, 'x' / 'y' in type 1


class TruncationError(ValueError):
    """A product would land above the truncation bound."""


class MissingValueError(ValueError):
    """A defining sequence has a gap inside the truncation range."""


# ---------------------------------------------------------------------------
# Anti-diagonal derivation for type-2 tables


def next_type2_diagonal(field: Field, diag: Sequence[Sequence[Any] | None], s: int, mu_s2: Any) -> list[Any]:
    """Diagonal ``s`` of a type-2 table, given diagonals ``< s`` and ``mu_{s-2}``.

    Uses ``[e_i e_j] = [[e_i e_{j-1}] e_1] - [[e_i e_1] e_{j-1}]`` on the upper
    triangle ``i > j >= 3`` and completes by antisymmetry.
    """
    red = field.reduce
    d: list[Any] = [field.zero] * s
    if s >= 3:
        d[s - 1] = field.one
        d[1] = red(-1)
    if s >= 5:
        d[s - 2] = red(mu_s2)
        d[2] = red(-mu_s2)
    prev = diag[s - 1]
    for i in range(s - 3, s // 2, -1):
        d[i] = red(prev[i] - d[i + 1])
        d[s - i] = red(-d[i])
    return d


def type2_residual(diag: Sequence[Sequence[Any]], i: int, j: int, k: int) -> Any:
    """Unreduced Jacobi cyclic sum for ``(e_i, e_j, e_k)``."""
    w = diag[i + j + k]
    return (
        diag[i + j][i] * w[i + j]
        + diag[j + k][j] * w[j + k]
        + diag[k + i][k] * w[k + i]
    )


def weight_triples(W: int, lo: int = 1) -> Iterator[tuple[int, int, int]]:
    """Triples ``lo <= i < j < k`` with ``i + j + k == W``, lexicographically."""
    for i in range(lo, W // 3 + 1):
        for j in range(i + 1, (W - i + 1) // 2):
            k = W - i - j
            if k > j:
                yield i, j, k


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    triple: tuple | None = None
    residual: Any = None
    field: Field | None = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "jacobi: pass"
        a, b, c = self.triple
        res = self.field.format(self.residual) if self.field else str(self.residual)
        return f"jacobi: FAIL at ({a}, {b}, {c}) residual {res}"


@dataclass(frozen=True)
class MaximalClassReport:
    ok: bool
    weight: int | None = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "maximal class: pass"
        return f"maximal class: FAIL, [L_{self.weight} L_1] != L_{self.weight + 1}"


class GradedTable:
    """Bracket table with one-dimensional components ``e_1 .. e_N``.

    Used directly for raw tables (every ``gamma`` given, including
    ``gamma(i, 1)``); :class:`Type2Table` specialises it.
    """

    kind = "raw"

    def __init__(self, field: Field, N: int, diag: list[list[Any] | None]):
        self.field = field
        self.N = N
        self.diag = diag

    @classmethod
    def from_brackets(cls, field: Field, N: int, gamma: Callable[[int, int], Any]) -> "GradedTable":
        """Raw table from ``gamma(i, j)`` on ``i > j``; antisymmetry fills the rest."""
        red = field.reduce
        diag: list[list[Any] | None] = [None, None]
        for s in range(2, N + 1):
            d = [field.zero] * s
            for i in range(s - 1, s // 2, -1):
                d[i] = red(gamma(i, s - i))
                d[s - i] = red(-d[i])
            diag.append(d)
        return cls(field, N, diag)

    # -- access ---------------------------------------------------------------
    def gamma(self, i: int, j: int) -> Any:
        if i < 1 or j < 1:
            raise ValueError("weights start at 1")
        if i + j > self.N:
            raise TruncationError(f"[e_{i} e_{j}] has weight {i + j} > {self.N}")
        return self.diag[i + j][i]

    def labels(self) -> list[Label]:
        return list(range(1, self.N + 1))

    @staticmethod
    def weight(label: Label) -> int:
        return label  # type: ignore[return-value]

    def product_label(self, w: int) -> Label:
        return w

    def coef(self, a: Label, b: Label) -> Any:
        return self.gamma(a, b)  # type: ignore[arg-type]

    def gamma_entries(self) -> Iterator[tuple[int, int, Any]]:
        """Every ``(i, j, gamma)`` with ``i > j`` and ``i + j <= N``."""
        for i in range(2, self.N):
            for j in range(1, min(i, self.N - i + 1)):
                yield i, j, self.diag[i + j][i]

    def same_brackets(self, other: "GradedTable") -> bool:
        return (
            self.field == other.field
            and self.N == other.N
            and all(self.diag[s] == other.diag[s] for s in range(2, self.N + 1))
        )

    def first_difference(self, other: "GradedTable") -> tuple[int, int] | None:
        for (i, j, a), (_, _, b) in zip(self.gamma_entries(), other.gamma_entries()):
            if a != b:
                return i, j
        return None

    def truncate(self, N: int) -> "GradedTable":
        if N > self.N:
            raise TruncationError(f"cannot raise the bound from {self.N} to {N}")
        return GradedTable(self.field, N, self.diag[: N + 1])

    def __eq__(self, other: object) -> bool:
        if type(other) is GradedTable and type(self) is GradedTable:
            return self.same_brackets(other)
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"<{type(self).__name__} over {self.field.describe()} N={self.N}>"


class Type2Table(GradedTable):
    """Type-2 truncation determined by ``mu_3 .. mu_{N-2}``."""

    kind = "type2"

    def __init__(self, field: Field, N: int, mu: Mapping[int, Any]):
        if N < 4:
            raise ValueError("type-2 tables need N >= 4")
        missing = [i for i in range(3, N - 1) if i not in mu]
        if missing:
            raise MissingValueError(f"mu missing at weights {missing[:5]}")
        red = field.reduce
        self.mu: dict[int, Any] = {i: red(mu[i]) for i in range(3, N - 1)}
        diag: list[list[Any] | None] = [None, None, [field.zero, field.zero]]
        for s in range(3, N + 1):
            diag.append(next_type2_diagonal(field, diag, s, self.mu.get(s - 2, 0)))
        super().__init__(field, N, diag)

    def mu_sequence(self) -> list[Any]:
        return [self.mu[i] for i in range(3, self.N - 1)]

    def with_bound(self, N: int) -> "Type2Table":
        if N > self.N:
            raise TruncationError(f"cannot raise the bound from {self.N} to {N}")
        return Type2Table(self.field, N, {i: v for i, v in self.mu.items() if i <= N - 2})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Type2Table):
            return self.field == other.field and self.N == other.N and self.mu == other.mu
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]


def derive_full_table(field: Field, N: int, mu: Mapping[int, Any]) -> Type2Table:
    """Type-2 table from its mu-sequence; values outside ``3..N-2`` are dropped."""
    return Type2Table(field, N, mu)


# ---------------------------------------------------------------------------


class Type1Table:
    """Type-1 truncation determined by the two-step centralizers ``C_2 .. C_{N-1}``."""

    kind = "type1"

    def __init__(self, field: Field, N: int, delta: Mapping[int, Any]):
        if N < 3:
            raise ValueError("type-1 tables need N >= 3")
        missing = [i for i in range(2, N) if i not in delta]
        if missing:
            raise MissingValueError(f"delta missing at weights {missing[:5]}")
        self.field = field
        self.N = N
        red = field.reduce
        self.delta: dict[int, Any] = {
            i: (None if delta[i] is None else red(delta[i])) for i in range(2, N)
        }
        # [v_i, x] = ax[i] v_{i+1}, [v_i, y] = ay[i] v_{i+1}
        self.ax: dict[int, Any] = {}
        self.ay: dict[int, Any] = {}
        for i, d in self.delta.items():
            if d is None:
                self.ax[i], self.ay[i] = field.zero, field.one
            else:
                self.ax[i], self.ay[i] = field.one, d
        self.diag = self._derive()

    def _derive(self) -> list[list[Any] | None]:
        f = self.field
        red = f.reduce
        ax, ay, N = self.ax, self.ay, self.N
        diag: list[list[Any] | None] = [None] * 4 + [[f.zero] * 4]
        for s in range(5, N + 1):
            d = [f.zero] * s
            i = s - 2
            # [v_i, [y, x]] = [[v_i y] x] - [[v_i x] y]
            d[i] = red(ay[i] * ax[i + 1] - ax[i] * ay[i + 1])
            d[2] = red(-d[i])
            prev = diag[s - 1]
            for i in range(s - 3, s // 2, -1):
                j = s - i
                # v_j = [v_{j-1}, g] with g = x unless C_{j-1} = span(x)
                g = ax if self.delta[j - 1] is not None else ay
                d[i] = red(prev[i] * g[i + j - 1] - g[i] * d[i + 1])
                d[j] = red(-d[i])
            diag.append(d)
        return diag

    # -- access ---------------------------------------------------------------
    def beta(self, i: int, j: int) -> Any:
        if i + j > self.N:
            raise TruncationError(f"[v_{i} v_{j}] has weight {i + j} > {self.N}")
        return self.diag[i + j][i]

    def labels(self) -> list[Label]:
        return ["x", "y"] + list(range(2, self.N + 1))

    @staticmethod
    def weight(label: Label) -> int:
        return 1 if label in ("x", "y") else label  # type: ignore[return-value]

    def product_label(self, w: int) -> Label:
        return w

    def coef(self, a: Label, b: Label) -> Any:
        f = self.field
        wa, wb = self.weight(a), self.weight(b)
        if wa + wb > self.N:
            raise TruncationError(f"[{a} {b}] has weight {wa + wb} > {self.N}")
        if wa == 1 and wb == 1:
            if a == b:
                return f.zero
            return f.one if (a, b) == ("y", "x") else f.reduce(-1)
        if wb == 1:
            return (self.ax if b == "x" else self.ay)[a]
        if wa == 1:
            return f.reduce(-(self.ax if a == "x" else self.ay)[b])
        return self.diag[wa + wb][a]

    def centralizer(self, i: int) -> Any:
        """``delta_i`` (``None`` when ``C_i = span(x)``)."""
        return self.delta[i]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Type1Table):
            return self.field == other.field and self.N == other.N and self.delta == other.delta
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"<Type1Table over {self.field.describe()} N={self.N}>"


# ---------------------------------------------------------------------------
# Graded elements and bracket evaluation


def _label_key(label: Label) -> tuple:
    return (1, 0, label) if isinstance(label, str) else (label, 1, "")


class GradedElement:
    """Finite linear combination of basis labels with no explicit zeros."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: Mapping[Label, Any] | Iterable[tuple[Label, Any]] = ()):
        self.field = field
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Label, Any] = {}
        for lab, c in items:
            acc[lab] = acc.get(lab, 0) + c
        self.terms = {
            lab: field.reduce(c)
            for lab, c in sorted(acc.items(), key=lambda kv: _label_key(kv[0]))
            if not field.is_zero(c)
        }

    @classmethod
    def basis(cls, field: Field, label: Label, coeff: Any = 1) -> "GradedElement":
        return cls(field, {label: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GradedElement") -> "GradedElement":
        return GradedElement(self.field, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "GradedElement":
        return GradedElement(self.field, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + (-other)

    def scale(self, c: Any) -> "GradedElement":
        return GradedElement(self.field, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        fmt = self.field.format
        return " + ".join(f"{fmt(c)}*{'e' if isinstance(k, int) else ''}{k}" for k, c in self.terms.items())


Table = GradedTable | Type1Table


def bracket(table: Table, u: GradedElement, v: GradedElement) -> GradedElement:
    """Bilinear extension of the basis table."""
    out: dict[Label, Any] = {}
    for a, ca in u.terms.items():
        for b, cb in v.terms.items():
            c = table.coef(a, b)
            lab = table.product_label(table.weight(a) + table.weight(b))
            out[lab] = out.get(lab, 0) + ca * cb * c
    return GradedElement(table.field, out)


def left_normed(table: Table, *elements: GradedElement) -> GradedElement:
    """``[a b c ...] = [[[a b] c] ...]``."""
    acc = elements[0]
    for el in elements[1:]:
        acc = bracket(table, acc, el)
    return acc


def right_normed_expand(table: Table, z: Label, y: Label, n: int, x: Label | None = None) -> GradedElement:
    """``[z [y x^n]]`` via ``sum_i (-1)^i C(n, i) [z x^i y x^(n-i)]``.

    ``x`` defaults to ``e_1`` (type 2) or the generator ``x`` (type 1).
    Binomials are evaluated with Lucas' theorem in characteristic p.
    """
    f = table.field
    if x is None:
        x = "x" if isinstance(table, Type1Table) else 1
    total = table.weight(z) + table.weight(y) + n * table.weight(x)
    if total > table.N:
        raise TruncationError(f"expansion has weight {total} > {table.N}")
    ez, ey, ex = (GradedElement.basis(f, lab) for lab in (z, y, x))
    out = GradedElement(f)
    for i in range(n + 1):
        c = f.binomial(n, i)
        if f.is_zero(c):
            continue
        term = left_normed(table, ez, *([ex] * i), ey, *([ex] * (n - i)))
        out = out + term.scale(c if i % 2 == 0 else -c)
    return out


def nested_bracket(table: Table, z: Label, y: Label, n: int, x: Label | None = None) -> GradedElement:
    """``[z [y x^n]]`` computed literally; the oracle for :func:`right_normed_expand`."""
    f = table.field
    if x is None:
        x = "x" if isinstance(table, Type1Table) else 1
    inner = GradedElement.basis(f, y)
    ex = GradedElement.basis(f, x)
    for _ in range(n):
        inner = bracket(table, inner, ex)
    return bracket(table, GradedElement.basis(f, z), inner)


# ---------------------------------------------------------------------------
# Checks


def jacobi_check(table: Table) -> JacobiReport:
    """Jacobi cyclic sum on every basis triple of total weight ``<= N``.

    Triples with a repeated basis element vanish by antisymmetry, which the
    tables enforce, so only distinct triples are scanned.  The report names
    the lexicographically smallest failing triple.
    """
    if isinstance(table, Type1Table):
        return _jacobi_generic(table)
    f = table.field
    diag, N = table.diag, table.N
    for i in range(1, N // 3 + 1):
        for j in range(i + 1, (N - i + 1) // 2):
            for k in range(j + 1, N - i - j + 1):
                r = type2_residual(diag, i, j, k)
                if not f.is_zero(r):
                    return JacobiReport(False, (i, j, k), f.reduce(r), f)
    return JacobiReport(True, field=f)


def jacobi_residual(table: Table, a: Label, b: Label, c: Label) -> Any:
    """Cyclic sum coefficient for three basis labels, through ``coef`` only."""
    f = table.field
    w = table.weight
    pl = table.product_label
    r = (
        table.coef(a, b) * table.coef(pl(w(a) + w(b)), c)
        + table.coef(b, c) * table.coef(pl(w(b) + w(c)), a)
        + table.coef(c, a) * table.coef(pl(w(c) + w(a)), b)
    )
    return f.reduce(r)


def _jacobi_generic(table: Table) -> JacobiReport:
    f = table.field
    labels = table.labels()
    w = table.weight
    n = len(labels)
    for ia in range(n):
        a = labels[ia]
        for ib in range(ia + 1, n):
            b = labels[ib]
            if w(a) + w(b) + w(b) > table.N and w(a) + w(b) + 1 > table.N:
                break
            for ic in range(ib + 1, n):
                c = labels[ic]
                if w(a) + w(b) + w(c) > table.N:
                    break
                r = jacobi_residual(table, a, b, c)
                if not f.is_zero(r):
                    return JacobiReport(False, (a, b, c), r, f)
    return JacobiReport(True, field=f)


def jacobi_check_generic(table: Table) -> JacobiReport:
    """Label-level scan used for type 1; also an independent route for type 2."""
    return _jacobi_generic(table)


def maximal_class_check(table: Table) -> MaximalClassReport:
    """First weight ``w >= 2`` with ``[L_w L_1] != L_{w+1}``."""
    f = table.field
    if isinstance(table, Type1Table):
        for w in range(2, table.N):
            if f.is_zero(table.ax[w]) and f.is_zero(table.ay[w]):
                return MaximalClassReport(False, w)
        return MaximalClassReport(True)
    for w in range(2, table.N):
        if f.is_zero(table.gamma(w, 1)):
            return MaximalClassReport(False, w)
    return MaximalClassReport(True)
