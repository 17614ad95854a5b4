"""Named algebras and the semidirect-product matrix realisations.

The mu-table builders write down the defining sequences directly.  The matrix
builders realise the soluble algebras inside ``V + End(V)`` over ``F_p(t)``,
generate ``e_{i+1} = [e_i, e_1]`` and read off ``mu_i`` from
``[e_i, e_2] = mu_i e_{i+2}``; the two routes are compared in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any

from .liecore import GradedTable, Type1Table, Type2Table
from .scalars import Field, PrimeField, RatFunc, RationalFunctions, Rationals

NAMES = ("a", "m", "m2", "witt", "q_algebra", "L_lambda")


class ConstructionError(ValueError):
    """Parameters outside a builder's domain."""


class ProportionalityError(RuntimeError):
    """``[e_i, e_2]`` is not a constant multiple of ``e_{i+2}``."""


def is_power_of(q: int, p: int) -> bool:
    if q < p:
        return False
    while q % p == 0:
        q //= p
    return q == 1


@dataclass(frozen=True)
class ConstructionSpec:
    """Which named algebra to build, over which field, up to which weight."""

    name: str
    field: Field
    N: int
    q: int | None = None
    lam: Any = None
    params: dict = dc_field(default_factory=dict, compare=False, hash=False)

    def describe(self) -> str:
        extra = ""
        if self.name == "q_algebra":
            extra = f" q={self.q}"
        elif self.name == "L_lambda":
            extra = f" lambda={self.field.format(self.field.reduce(self.lam))}"
        return f"{self.name}{extra}"


# ---------------------------------------------------------------------------
# mu / delta patterns


def q_algebra_mu(field: Field, q: int, i: int) -> Any:
    """``mu_i`` of the soluble algebra whose first constituent has length ``q + 1``."""
    half = field.inv(field.from_int(2))
    if i == q:
        return field.one
    if i % q == 0:
        return half
    if i % q == 1 and i > 1:
        return field.reduce(-half)
    return field.zero


def L_lambda_mu(field: Field, lam: Any, i: int) -> Any:
    """``mu_i`` of the characteristic-3 family ``L(lambda)``."""
    if i == 3:
        return field.one
    r = i % 3
    if r == 1:
        return field.one
    if r == 2:
        return field.reduce(lam)
    return field.reduce(-1 - lam)


def _mu_table(field: Field, N: int, fn) -> Type2Table:
    return Type2Table(field, N, {i: fn(i) for i in range(3, N - 1)})


def build(spec: ConstructionSpec) -> Type2Table | Type1Table | GradedTable:
    """Build the named algebra as a truncated table."""
    f, N, name = spec.field, spec.N, spec.name
    if name == "m":
        return _mu_table(f, N, lambda i: 0)
    if name == "m2":
        return _mu_table(f, N, lambda i: 1)
    if name == "a":
        return Type1Table(f, N, {i: 0 for i in range(2, N)})
    if name == "witt":
        return GradedTable.from_brackets(f, N, lambda i, j: i - j)
    if name == "q_algebra":
        q = spec.q
        p = f.characteristic
        if q is None or p == 0 or not is_power_of(q, p):
            raise ConstructionError(f"q={q} is not a power of the characteristic {p}")
        return _mu_table(f, N, lambda i: q_algebra_mu(f, q, i))
    if name == "L_lambda":
        if f.characteristic != 3:
            raise ConstructionError("L(lambda) exists only in characteristic 3")
        if spec.lam is None:
            raise ConstructionError("L(lambda) needs a value for lambda")
        return _mu_table(f, N, lambda i: L_lambda_mu(f, spec.lam, i))
    raise ConstructionError(f"unknown construction {name!r}")


# ---------------------------------------------------------------------------
# Sparse matrices over F_p(t); rows act on row vectors from the right.

Matrix = dict  # (row, col) -> RatFunc, no zero entries
Vector = dict  # col -> RatFunc, no zero entries


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if not v.is_zero()}


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows: dict[int, list] = {}
    for (r, c), v in b.items():
        rows.setdefault(r, []).append((c, v))
    out: dict = {}
    for (i, k), x in a.items():
        for j, y in rows.get(k, ()):
            out[(i, j)] = out[(i, j)] + x * y if (i, j) in out else x * y
    return _clean(out)


def mat_add(a: Matrix, b: Matrix, sign: int = 1) -> Matrix:
    out = dict(a)
    for k, v in b.items():
        w = v if sign == 1 else -v
        out[k] = out[k] + w if k in out else w
    return _clean(out)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_add(mat_mul(a, b), mat_mul(b, a), -1)


def vec_mat(u: Vector, m: Matrix) -> Vector:
    out: dict = {}
    for (r, c), y in m.items():
        if r in u:
            out[c] = out[c] + u[r] * y if c in out else u[r] * y
    return _clean(out)


def scalar_matrix(c: RatFunc, n: int) -> Matrix:
    return {} if c.is_zero() else {(i, i): c for i in range(n)}


@dataclass(frozen=True)
class SemidirectElement:
    """``(u, f)`` in ``V + End(V)`` with ``[(u,f),(w,g)] = (u g - w f, f g - g f)``."""

    vector: Vector
    endo: Matrix

    def bracket(self, other: "SemidirectElement") -> "SemidirectElement":
        u = vec_mat(self.vector, other.endo)
        w = vec_mat(other.vector, self.endo)
        vec = dict(u)
        for k, v in w.items():
            vec[k] = vec[k] - v if k in vec else -v
        return SemidirectElement(_clean(vec), commutator(self.endo, other.endo))

    def is_zero(self) -> bool:
        return not self.vector and not self.endo

    def coordinates(self) -> dict:
        out: dict = {("v", c): x for c, x in self.vector.items()}
        out.update({("m",) + k: x for k, x in self.endo.items()})
        return out


def q_algebra_matrices(p: int, q: int) -> tuple[Matrix, Matrix]:
    """``E`` (cyclic shift, ``v_{q-1} -> t v_0``) and ``D`` (``v_0 -> v_2``, ``v_{q-1} -> -t v_1``)."""
    if not is_power_of(q, p) or q < 3:
        raise ConstructionError(f"q={q} must be a power of p={p} with q >= 3")
    one, t = RatFunc.const(1, p), RatFunc.t(p)
    E = {(i, i + 1): one for i in range(q - 1)}
    E[(q - 1, 0)] = t
    D = {(0, 2): one, (q - 1, 1): -t}
    return E, D


def ad_power(a: Matrix, b: Matrix, n: int) -> Matrix:
    """Left-normed ``[a b^n]``."""
    for _ in range(n):
        a = commutator(a, b)
    return a


def _extract_mu(elements: list[SemidirectElement], N: int, p: int) -> Type2Table:
    e2 = elements[2]
    mu: dict[int, int] = {}
    for i in range(3, N - 1):
        lhs = elements[i].bracket(e2).coordinates()
        rhs = elements[i + 2].coordinates()
        if not rhs:
            raise ProportionalityError(f"e_{i + 2} vanishes")
        key = min(rhs)
        ratio = lhs.get(key, RatFunc.const(0, p)) / rhs[key]
        if not ratio.is_constant():
            raise ProportionalityError(f"[e_{i} e_2] / e_{i + 2} = {ratio} is not a constant")
        for k in set(lhs) | set(rhs):
            if lhs.get(k, RatFunc.const(0, p)) != ratio * rhs.get(k, RatFunc.const(0, p)):
                raise ProportionalityError(f"[e_{i} e_2] is not a multiple of e_{i + 2}")
        mu[i] = ratio.constant_value()
    return Type2Table(PrimeField(p), N, mu)


def _generate(e1: SemidirectElement, e2: SemidirectElement, N: int) -> list[SemidirectElement]:
    elements = [None, e1, e2]
    for _ in range(3, N + 1):
        elements.append(elements[-1].bracket(e1))
    return elements  # type: ignore[return-value]


def q_algebra_elements(p: int, q: int, N: int) -> list[SemidirectElement]:
    """``[None, e_1, ..., e_N]`` with ``e_1 = E`` and ``e_2 = -(1/2t) v_1 - D/2``."""
    E, D = q_algebra_matrices(p, q)
    t = RatFunc.t(p)
    half = RatFunc.const(1, p) / 2
    e1 = SemidirectElement({}, E)
    e2 = SemidirectElement(_clean({1: -(half / t)}), _clean({k: -half * v for k, v in D.items()}))
    return _generate(e1, e2, N)


def build_q_algebra_matrix(p: int, q: int, N: int) -> Type2Table:
    """mu-table of the q-algebra read off its matrix realisation."""
    return _extract_mu(q_algebra_elements(p, q, N), N, p)


def L_lambda_matrices(lam: int) -> tuple[Matrix, Matrix]:
    """3x3 ``E`` and ``D`` over ``F_3(t)`` with ``[D, E] = (1 - lambda) t``."""
    p = 3
    one, t = RatFunc.const(1, p), RatFunc.t(p)
    E = {(0, 1): one, (1, 2): one, (2, 0): t}
    D = _clean({(0, 2): one, (1, 0): t * lam, (2, 1): -t * (1 + lam)})
    return E, D


def L_lambda_elements(lam: int, N: int) -> list[SemidirectElement]:
    E, D = L_lambda_matrices(lam)
    t = RatFunc.t(3)
    e1 = SemidirectElement({}, E)
    e2 = SemidirectElement({1: RatFunc.const(1, 3) / t}, D)
    return _generate(e1, e2, N)


def build_L_lambda_matrix(lam: int, N: int) -> Type2Table:
    """mu-table of ``L(lambda)`` (``lambda`` in ``F_3``) read off its matrix realisation."""
    return _extract_mu(L_lambda_elements(PrimeField(3).reduce(lam), N), N, 3)


def default_field(name: str, p: int | None) -> Field:
    """Field used when a builder is called without an explicit one."""
    if p is None:
        return Rationals()
    return PrimeField(p)


__all__ = [
    "NAMES",
    "ConstructionError",
    "ConstructionSpec",
    "ProportionalityError",
    "SemidirectElement",
    "ad_power",
    "build",
    "build_L_lambda_matrix",
    "build_q_algebra_matrix",
    "L_lambda_elements",
    "L_lambda_matrices",
    "L_lambda_mu",
    "q_algebra_elements",
    "q_algebra_matrices",
    "q_algebra_mu",
    "scalar_matrix",
    "RationalFunctions",
]
