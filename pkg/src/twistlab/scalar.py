"""Exact field arithmetic: the rationals, prime fields and cyclotomic fields.

Every element is kept in a canonical form so that equality of payloads is
equality of field elements.  There is no floating point anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union


class FieldError(Exception):
    """Base class for scalar-level errors."""


class FieldMismatch(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class UnsupportedOrder(FieldError):
    pass


class ScalarParseError(FieldError, ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# -- polynomial helpers over Q (coefficient lists, lowest degree first) ----

def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a, b) -> tuple[list, list]:
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise DivisionByZero("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        _trim(a)
    return _trim(q), a


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest first.

    Obtained by dividing x^n - 1 by every Phi_d with d a proper divisor of n.
    """
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
    assert all(c.denominator == 1 for c in num)
    return tuple(int(c) for c in num)


def _euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


# -- field specification ---------------------------------------------------

_FIELD_RE = re.compile(
    r"^\s*(?:(?P<q>Q|QQ|rational)|(?:GF|F)\((?P<p>\d+)\)|prime:(?P<p2>\d+)"
    r"|Q\(zeta_(?P<n>\d+)\)|cyclotomic:(?P<n2>\d+))\s*$"
)


@dataclass(frozen=True)
class FieldSpec:
    """Identifies the ground field k: ``rational``, ``prime`` (F_p) or ``cyclotomic`` (Q(zeta_n))."""

    kind: str
    param: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.param is not None:
                raise ValueError("the rational field takes no parameter")
        elif self.kind == "prime":
            if not isinstance(self.param, int) or not is_prime(self.param):
                raise ValueError(f"{self.param!r} is not a prime")
        elif self.kind == "cyclotomic":
            if not isinstance(self.param, int) or self.param < 1:
                raise ValueError(f"cyclotomic index must be a positive integer, got {self.param!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls("prime", p)

    @classmethod
    def cyclotomic(cls, n: int) -> FieldSpec:
        return cls("cyclotomic", n)

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse ``Q``, ``GF(p)`` or ``Q(zeta_n)`` (also ``prime:p``, ``cyclotomic:n``)."""
        m = _FIELD_RE.match(text)
        if not m:
            raise ScalarParseError(f"cannot parse field {text!r}")
        if m.group("q"):
            return cls.rational()
        p = m.group("p") or m.group("p2")
        if p:
            if not is_prime(int(p)):
                raise ScalarParseError(f"{p} is not a prime")
            return cls.prime(int(p))
        n = int(m.group("n") or m.group("n2"))
        if n < 1:
            raise ScalarParseError("cyclotomic index must be positive")
        return cls.cyclotomic(n)

    def __str__(self) -> str:
        if self.kind == "rational":
            return "Q"
        if self.kind == "prime":
            return f"GF({self.param})"
        return f"Q(zeta_{self.param})"

    @property
    def characteristic(self) -> int:
        return self.param if self.kind == "prime" else 0

    @property
    def degree(self) -> int:
        """Dimension over the prime field (1 unless cyclotomic)."""
        return _euler_phi(self.param) if self.kind == "cyclotomic" else 1

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __call__(self, value: ScalarLike) -> Scalar:
        """Coerce an int, Fraction, string or Scalar into this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value} lives in {value.field}, not {self}")
            return value
        if isinstance(value, str):
            return self.parse_scalar(value)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            value = Fraction(value)
        if not isinstance(value, Fraction):
            raise TypeError(f"cannot coerce {type(value).__name__} into {self}")
        if self.kind == "rational":
            return Scalar(self, value)
        if self.kind == "prime":
            p = self.param
            if value.denominator % p == 0:
                raise DivisionByZero(f"{value} has denominator divisible by {p}")
            return Scalar(self, value.numerator * pow(value.denominator, -1, p) % p)
        return Scalar(self, _reduce_cyclo((value,), self.param))

    def generator(self) -> Scalar:
        """The distinguished primitive n-th root of unity z of Q(zeta_n)."""
        if self.kind != "cyclotomic":
            raise UnsupportedOrder(f"{self} has no distinguished generator")
        return Scalar(self, _reduce_cyclo((Fraction(0), Fraction(1)), self.param))

    def root_of_unity(self, order: int) -> Scalar:
        """A primitive root of unity of exactly the given order."""
        if order < 1:
            raise UnsupportedOrder(f"order must be positive, got {order}")
        if self.kind == "rational":
            if order == 1:
                return self.one
            if order == 2:
                return self(-1)
            raise UnsupportedOrder(f"Q has no primitive root of unity of order {order}")
        if self.kind == "prime":
            p = self.param
            if (p - 1) % order:
                raise UnsupportedOrder(f"{order} does not divide {p - 1}")
            # smallest element of exact order, by exhaustive search
            for a in range(1, p):
                if _multiplicative_order(a, p) == order:
                    return Scalar(self, a)
            raise AssertionError("unreachable")
        n = self.param
        z = self.generator()
        if n % order == 0:
            return z ** (n // order)
        if n % 2 and (2 * n) % order == 0:
            return (-z) ** (2 * n // order)
        raise UnsupportedOrder(f"Q(zeta_{n}) has no primitive root of unity of order {order}")

    def parse_scalar(self, text: str) -> Scalar:
        text = text.strip()
        try:
            if self.kind == "rational":
                return Scalar(self, Fraction(text))
            if self.kind == "prime":
                m = re.fullmatch(r"(-?\d+(?:/\d+)?)\s*(?:mod\s*(\d+))?", text)
                if not m:
                    raise ScalarParseError(f"cannot parse {text!r} as an element of {self}")
                if m.group(2) and int(m.group(2)) != self.param:
                    raise FieldMismatch(f"{text!r} is not in {self}")
                return self(Fraction(m.group(1)))
            return Scalar(self, _reduce_cyclo(_parse_poly(text), self.param))
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, FieldError):
                raise
            raise ScalarParseError(f"cannot parse {text!r} as an element of {self}") from exc


def _multiplicative_order(a: int, p: int) -> int:
    k, x = 1, a % p
    while x != 1:
        x = x * a % p
        k += 1
    return k


def _reduce_cyclo(coeffs, n: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    c = list(coeffs)
    # phi is monic: eliminate from the top
    for top in range(len(c) - 1, d - 1, -1):
        lead = c[top]
        if lead:
            for i, y in enumerate(phi):
                if y:
                    c[top - d + i] -= lead * y
    c = c[:d] + [0] * (d - len(c))
    # integral coefficients are kept as ints (they compare and hash like Fractions)
    return tuple(x.numerator if isinstance(x, Fraction) and x.denominator == 1 else x for x in c)


_TERM_RE = re.compile(r"^(?:(\d+(?:/\d+)?)\*?)?(z(?:\^(\d+))?)?$")


def _parse_poly(text: str) -> list[Fraction]:
    s = text.replace(" ", "").replace("zeta", "z")
    if not s:
        raise ScalarParseError("empty scalar")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise ScalarParseError(f"cannot parse {text!r}")
    out: dict[int, Fraction] = {}
    for t in terms:
        sign = -1 if t.startswith("-") else 1
        body = t.lstrip("+-")
        m = _TERM_RE.match(body)
        if not m or not body:
            raise ScalarParseError(f"cannot parse term {t!r} in {text!r}")
        coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        if m.group(2):
            exp = int(m.group(3)) if m.group(3) else 1
        else:
            if not m.group(1):
                raise ScalarParseError(f"cannot parse term {t!r} in {text!r}")
            exp = 0
        out[exp] = out.get(exp, Fraction(0)) + sign * coeff
    top = max(out)
    return [out.get(i, Fraction(0)) for i in range(top + 1)]


def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Scalar:
    """An immutable element of a :class:`FieldSpec` in canonical form."""

    __slots__ = ("field", "value", "_hash")

    def __init__(self, field: FieldSpec, value):
        self.field = field
        self.value = value
        self._hash = None

    def _coerce(self, other) -> Scalar:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine elements of {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        kind = self.field.kind
        if kind == "rational":
            return Scalar(self.field, self.value + other.value)
        if kind == "prime":
            return Scalar(self.field, (self.value + other.value) % self.field.param)
        return Scalar(self.field, tuple(a + b for a, b in zip(self.value, other.value)))

    __radd__ = __add__

    def __neg__(self):
        kind = self.field.kind
        if kind == "rational":
            return Scalar(self.field, -self.value)
        if kind == "prime":
            return Scalar(self.field, -self.value % self.field.param)
        return Scalar(self.field, tuple(-a for a in self.value))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        kind = self.field.kind
        if kind == "rational":
            return Scalar(self.field, self.value * other.value)
        if kind == "prime":
            return Scalar(self.field, self.value * other.value % self.field.param)
        x, y = self.value, other.value
        if y[0] == 1 and not any(y[1:]):
            return self
        if x[0] == 1 and not any(x[1:]):
            return other
        prod = _poly_mul(x, y)
        return Scalar(self.field, _reduce_cyclo(prod, self.field.param))

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if not self:
            raise DivisionByZero(f"{self} is not invertible in {self.field}")
        kind = self.field.kind
        if kind == "rational":
            return Scalar(self.field, 1 / self.value)
        if kind == "prime":
            return Scalar(self.field, pow(self.value, -1, self.field.param))
        # extended Euclid in Q[x] against the cyclotomic polynomial
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.field.param)]
        r0, r1 = phi, _trim(list(self.value))
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            qs = _poly_mul(q, s1)
            s_next = [(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)
                      for i in range(max(len(s0), len(qs)))]
            s0, s1 = s1, _trim(s_next)
        # r0 is a nonzero constant since phi is irreducible
        assert len(r0) == 1
        inv = [c / r0[0] for c in s0]
        return Scalar(self.field, _reduce_cyclo(inv, self.field.param))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int) -> Scalar:
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = self.field.one
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self) -> bool:
        kind = self.field.kind
        if kind == "cyclotomic":
            return any(self.value)
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self == self.field(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.value))
        return self._hash

    def __str__(self) -> str:
        kind = self.field.kind
        if kind == "rational":
            return _fmt_fraction(self.value)
        if kind == "prime":
            return f"{self.value} mod {self.field.param}"
        terms = []
        for i, c in enumerate(self.value):
            if not c:
                continue
            mag = abs(c)
            if i == 0:
                body = _fmt_fraction(mag)
            else:
                z = "z" if i == 1 else f"z^{i}"
                body = z if mag == 1 else f"{_fmt_fraction(mag)}*{z}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Scalar({self.field}, {self})"


ScalarLike = Union[Scalar, int, Fraction, str]


def characteristic(field: FieldSpec) -> int:
    return field.characteristic


def root_of_unity(field: FieldSpec, order: int) -> Scalar:
    return field.root_of_unity(order)
