"""Exact coefficient fields: Q, F_p and F_p(t).

Every field is a small immutable descriptor object.  Field elements are kept
in a *raw* representation chosen so that Python's ``+``, ``-`` and ``*`` work
on them directly:

* ``PrimeField(p)``        -- ``int`` residues in ``[0, p)``
* ``Rationals()``          -- :class:`fractions.Fraction`
* ``RationalFunctions(p)`` -- :class:`RatFunc`

Sums of products computed with plain operators may leave the canonical range
(prime-field residues grow); ``field.reduce`` brings them back.  This lets the
structure-constant inner loops run on bare ints and only reduce once per
Jacobi residual.  :class:`Scalar` wraps a raw value together with its field
for use at API boundaries.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator


class FieldMismatchError(ValueError):
    """Operands live in different coefficient fields."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_odd_prime(p: int) -> None:
    if not isinstance(p, int) or isinstance(p, bool) or p < 3 or not is_prime(p):
        raise ValueError(f"expected an odd prime, got {p!r}")


# ---------------------------------------------------------------------------
# Dense polynomials over F_p: tuples of residues, lowest degree first, with no
# trailing zeros.  The zero polynomial is ().


def _ptrim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _ptrim(out)


def poly_neg(a: tuple[int, ...], p: int) -> tuple[int, ...]:
    return tuple((-c) % p for c in a)


def poly_sub(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    return poly_add(a, poly_neg(b, p), p)


def poly_scale(a: tuple[int, ...], c: int, p: int) -> tuple[int, ...]:
    c %= p
    if c == 0:
        return ()
    return tuple((x * c) % p for x in a)


def poly_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    if len(a) == 1:
        return poly_scale(b, a[0], p)
    if len(b) == 1:
        return poly_scale(a, b[0], p)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim([c % p for c in out])


def poly_divmod(
    a: tuple[int, ...], b: tuple[int, ...], p: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    quo = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = (rem[k + db] * inv_lead) % p
        if c:
            quo[k] = c
            for j, y in enumerate(b):
                rem[k + j] = (rem[k + j] - c * y) % p
    return _ptrim(quo), _ptrim(rem[:db] if db else [])


def poly_monic(a: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a:
        return a
    return poly_scale(a, pow(a[-1], -1, p), p)


def poly_gcd(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Monic gcd (Euclid)."""
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    return poly_monic(a, p)


# ---------------------------------------------------------------------------


class RatFunc:
    """A reduced fraction ``num/den`` of polynomials over F_p, ``den`` monic."""

    __slots__ = ("num", "den", "p", "_hash")

    def __init__(self, num: tuple[int, ...], den: tuple[int, ...], p: int, *, reduced: bool = False):
        if not reduced:
            num = _ptrim([c % p for c in num])
            den = _ptrim([c % p for c in den])
            if not den:
                raise ZeroDivisionError("rational function with zero denominator")
            if not num:
                den = (1,)
            elif den != (1,):
                g = poly_gcd(num, den, p)
                if g != (1,):
                    num = poly_divmod(num, g, p)[0]
                    den = poly_divmod(den, g, p)[0]
                lead = den[-1]
                if lead != 1:
                    inv = pow(lead, -1, p)
                    num = poly_scale(num, inv, p)
                    den = poly_scale(den, inv, p)
        self.num = num
        self.den = den
        self.p = p
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c: int, p: int) -> "RatFunc":
        c %= p
        return cls((c,) if c else (), (1,), p, reduced=True)

    @classmethod
    def t(cls, p: int) -> "RatFunc":
        return cls((0, 1), (1,), p, reduced=True)

    def _coerce(self, other: Any) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p}(t) vs F_{other.p}(t)")
            return other
        if isinstance(other, int):
            return RatFunc.const(other, self.p)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return self.den == (1,) and len(self.num) <= 1

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num[0] if self.num else 0

    def __add__(self, other: Any) -> "RatFunc":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            if self.den == (1,):
                return RatFunc(poly_add(self.num, o.num, p), (1,), p, reduced=True)
            return RatFunc(poly_add(self.num, o.num, p), self.den, p)
        num = poly_add(poly_mul(self.num, o.den, p), poly_mul(o.num, self.den, p), p)
        return RatFunc(num, poly_mul(self.den, o.den, p), p)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(poly_neg(self.num, self.p), self.den, self.p, reduced=True)

    def __sub__(self, other: Any) -> "RatFunc":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other: Any) -> "RatFunc":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other: Any) -> "RatFunc":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        if not self.num or not o.num:
            return RatFunc((), (1,), p, reduced=True)
        if self.den == (1,) and o.den == (1,):
            return RatFunc(poly_mul(self.num, o.num, p), (1,), p, reduced=True)
        return RatFunc(poly_mul(self.num, o.num, p), poly_mul(self.den, o.den, p), p)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in F_p(t)")
        return RatFunc(self.den, self.num, self.p)

    def __truediv__(self, other: Any) -> "RatFunc":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> "RatFunc":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFunc.const(1, self.p)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, int):
            other = RatFunc.const(other, self.p)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.p == other.p and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"RatFunc({format_ratfunc(self)}, p={self.p})"

    def __str__(self) -> str:
        return format_ratfunc(self)


def format_poly(a: tuple[int, ...]) -> str:
    if not a:
        return "0"
    return " + ".join(f"{c}*t^{k}" for k, c in reversed(list(enumerate(a))) if c)


def format_ratfunc(f: RatFunc) -> str:
    return f"({format_poly(f.num)})/({format_poly(f.den)})"


_TERM = re.compile(r"^\s*(-?\d+)?\s*\*?\s*(t(\s*\^\s*(\d+))?)?\s*$")


def parse_poly(s: str, p: int) -> tuple[int, ...]:
    s = s.strip()
    if s in ("", "0"):
        return ()
    coeffs: dict[int, int] = {}
    for term in re.split(r"\s*\+\s*", s.replace("- ", "+ -").lstrip("+ ")):
        m = _TERM.match(term)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"bad polynomial term {term!r}")
        c = int(m.group(1)) if m.group(1) is not None else 1
        k = 0
        if m.group(2):
            k = int(m.group(4)) if m.group(4) is not None else 1
        coeffs[k] = coeffs.get(k, 0) + c
    deg = max(coeffs)
    return _ptrim([coeffs.get(k, 0) % p for k in range(deg + 1)])


def parse_ratfunc(s: str, p: int) -> RatFunc:
    s = s.strip()
    m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", s)
    if m:
        return RatFunc(parse_poly(m.group(1), p), parse_poly(m.group(2), p), p)
    return RatFunc(parse_poly(s.strip("()"), p), (1,), p)


# ---------------------------------------------------------------------------
# Field descriptors


class Field:
    """Common interface of the three coefficient fields."""

    kind: str
    characteristic: int

    # raw-value arithmetic -------------------------------------------------
    def reduce(self, x: Any) -> Any:
        raise NotImplementedError

    def add(self, x: Any, y: Any) -> Any:
        return self.reduce(x + y)

    def sub(self, x: Any, y: Any) -> Any:
        return self.reduce(x - y)

    def mul(self, x: Any, y: Any) -> Any:
        return self.reduce(x * y)

    def neg(self, x: Any) -> Any:
        return self.reduce(-x)

    def inv(self, x: Any) -> Any:
        raise NotImplementedError

    def div(self, x: Any, y: Any) -> Any:
        return self.mul(x, self.inv(y))

    def is_zero(self, x: Any) -> bool:
        return self.reduce(x) == 0

    def from_int(self, n: int) -> Any:
        return self.reduce(n)

    @property
    def zero(self) -> Any:
        return self.from_int(0)

    @property
    def one(self) -> Any:
        return self.from_int(1)

    def binomial(self, a: int, b: int) -> Any:
        """C(a, b) as a field element: Lucas in characteristic p."""
        if self.characteristic:
            return self.from_int(lucas_binomial(a, b, self.characteristic))
        return self.from_int(math.comb(a, b) if 0 <= b <= a else 0)

    # text -----------------------------------------------------------------
    def format(self, x: Any) -> str:
        raise NotImplementedError

    def parse(self, s: str) -> Any:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    # wrapping ---------------------------------------------------------------
    def __call__(self, x: Any) -> "Scalar":
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatchError(f"{x.field.describe()} vs {self.describe()}")
            return x
        if isinstance(x, str):
            return Scalar(self, self.parse(x))
        return Scalar(self, self.reduce(x))

    def elements(self) -> Iterator[Any]:
        raise TypeError(f"{self.describe()} is not finite")


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self) -> None:
        _check_odd_prime(self.p)

    kind = "prime"

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    def reduce(self, x: Any) -> int:
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return x % self.p

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return pow(x, -1, self.p)

    def is_zero(self, x: int) -> bool:
        return x % self.p == 0

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def format(self, x: int) -> str:
        return str(x % self.p)

    def parse(self, s: str) -> int:
        s = s.strip()
        if "/" in s:
            n, d = s.split("/")
            return self.div(int(n), int(d))
        return int(s) % self.p

    def describe(self) -> str:
        return f"F{self.p}"


@dataclass(frozen=True)
class Rationals(Field):
    kind = "rationals"
    characteristic = 0

    def reduce(self, x: Any) -> Fraction:
        return x if isinstance(x, Fraction) else Fraction(x)

    def inv(self, x: Fraction) -> Fraction:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(x)

    def is_zero(self, x: Any) -> bool:
        return x == 0

    def format(self, x: Fraction) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def parse(self, s: str) -> Fraction:
        return Fraction(s.strip())

    def describe(self) -> str:
        return "Q"


@dataclass(frozen=True)
class RationalFunctions(Field):
    p: int

    def __post_init__(self) -> None:
        _check_odd_prime(self.p)

    kind = "rational_functions"

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    def reduce(self, x: Any) -> RatFunc:
        if isinstance(x, RatFunc):
            if x.p != self.p:
                raise FieldMismatchError(f"F_{x.p}(t) vs F_{self.p}(t)")
            return x
        if isinstance(x, Fraction):
            return RatFunc.const(x.numerator, self.p) / RatFunc.const(x.denominator, self.p)
        return RatFunc.const(x, self.p)

    def inv(self, x: RatFunc) -> RatFunc:
        return self.reduce(x).inverse()

    def is_zero(self, x: Any) -> bool:
        return self.reduce(x).is_zero()

    @property
    def t(self) -> RatFunc:
        return RatFunc.t(self.p)

    def format(self, x: RatFunc) -> str:
        return format_ratfunc(self.reduce(x))

    def parse(self, s: str) -> RatFunc:
        return parse_ratfunc(s, self.p)

    def describe(self) -> str:
        return f"F{self.p}(t)"


def make_field(kind: str, p: int | None = None) -> Field:
    if kind in ("rationals", "Q"):
        return Rationals()
    if kind in ("prime", "F_p"):
        if p is None:
            raise ValueError("prime field needs p")
        return PrimeField(p)
    if kind in ("rational_functions", "F_p(t)"):
        if p is None:
            raise ValueError("rational function field needs p")
        return RationalFunctions(p)
    raise ValueError(f"unknown field kind {kind!r}")


def parse_field(text: str) -> Field:
    """Inverse of ``Field.describe``: ``Q``, ``F5``, ``F5(t)``."""
    text = text.strip()
    if text == "Q":
        return Rationals()
    m = re.fullmatch(r"F(\d+)(\(t\))?", text)
    if not m:
        raise ValueError(f"unknown field {text!r}")
    p = int(m.group(1))
    return RationalFunctions(p) if m.group(2) else PrimeField(p)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field; immutable and hashable."""

    field: Field
    value: Any

    def _other(self, other: Any) -> Any:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"{self.field.describe()} vs {other.field.describe()}"
                )
            return other.value
        return self.field.reduce(other)

    def __add__(self, other: Any) -> "Scalar":
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "Scalar":
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other: Any) -> "Scalar":
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other: Any) -> "Scalar":
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, self.field.neg(self.value))

    def __truediv__(self, other: Any) -> "Scalar":
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other: Any) -> "Scalar":
        return Scalar(self.field, self.field.div(self._other(other), self.value))

    def invert(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction, RatFunc)):
            try:
                return self.value == self.field.reduce(other)
            except (FieldMismatchError, ZeroDivisionError):
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __str__(self) -> str:
        return self.field.format(self.value)

    def __repr__(self) -> str:
        return f"{self.field.describe()}({self})"


def lucas_binomial(a: int, b: int, p: int) -> int:
    """C(a, b) mod p as a residue, digit by digit in base p.

    Zero whenever some base-p digit of ``b`` exceeds the matching digit of
    ``a`` (in particular whenever ``b > a``).
    """
    if a < 0 or b < 0:
        raise ValueError("lucas_binomial needs non-negative arguments")
    out = 1
    while b:
        ad, bd = a % p, b % p
        if bd > ad:
            return 0
        out = out * math.comb(ad, bd) % p
        a //= p
        b //= p
    return out % p
