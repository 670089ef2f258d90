"""Exact integer Laurent polynomials in ``A`` and their fraction field.

Polynomials are stored densely: a lowest exponent plus a tuple of integer
coefficients whose first and last entries are non-zero.  The zero polynomial
has an empty coefficient tuple.  Values are immutable and hashable.
"""

from __future__ import annotations

import cmath
import math
import re
from functools import reduce
from typing import Iterable, Mapping, Union

__all__ = [
    "LaurentPoly",
    "RationalFunction",
    "InexactDivisionError",
    "sigma",
    "A",
    "ONE",
    "ZERO",
    "mirror",
    "eval_complex",
    "rf_reduce",
    "parse_poly",
    "poly_gcd",
]


class InexactDivisionError(ArithmeticError):
    """Raised when an exact Laurent division leaves a remainder."""


Scalar = Union[int, "LaurentPoly"]


def _trim(lo: int, coeffs: list[int]) -> tuple[int, tuple[int, ...]]:
    start = 0
    n = len(coeffs)
    while start < n and coeffs[start] == 0:
        start += 1
    if start == n:
        return 0, ()
    end = n
    while coeffs[end - 1] == 0:
        end -= 1
    return lo + start, tuple(coeffs[start:end])


class LaurentPoly:
    __slots__ = ("lo", "coeffs", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        if not terms:
            self.lo, self.coeffs = 0, ()
        else:
            lo = min(terms)
            hi = max(terms)
            dense = [0] * (hi - lo + 1)
            for k, c in terms.items():
                dense[k - lo] += int(c)
            self.lo, self.coeffs = _trim(lo, dense)
        self._hash = None

    @classmethod
    def _raw(cls, lo: int, coeffs: Iterable[int]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.lo, obj.coeffs = _trim(lo, list(coeffs))
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls._raw(0, [c])

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LaurentPoly":
        return cls._raw(k, [c])

    @classmethod
    def coerce(cls, x: Scalar) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return {self.lo + i: c for i, c in enumerate(self.coeffs) if c}

    @property
    def hi(self) -> int:
        """Highest exponent (``lo - 1`` for the zero polynomial)."""
        return self.lo + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> int:
        i = k - self.lo
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def span(self) -> int:
        """Degree of the shifted ordinary polynomial ``A**-lo * self``."""
        return len(self.coeffs) - 1 if self.coeffs else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs and (not self.coeffs or self.lo == other.lo)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.lo if self.coeffs else 0, self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        return self.to_string()

    def to_string(self, var: str = "A") -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            k = self.lo + i
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    # -- ring operations ----------------------------------------------------

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.lo, [-c for c in self.coeffs])

    def __pos__(self) -> "LaurentPoly":
        return self

    def __add__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        dense = [0] * (hi - lo + 1)
        off = self.lo - lo
        for i, c in enumerate(self.coeffs):
            dense[off + i] = c
        off = other.lo - lo
        for i, c in enumerate(other.coeffs):
            dense[off + i] += c
        return LaurentPoly._raw(lo, dense)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.const(other) - self
        return NotImplemented

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly._raw(self.lo, [c * other for c in self.coeffs])
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        out = [0] * (len(a) + len(b) - 1)
        for j, cb in enumerate(b):
            if cb:
                for i, ca in enumerate(a):
                    out[i + j] += ca * cb
        return LaurentPoly._raw(self.lo + other.lo, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self.coeffs) == 1 and abs(self.coeffs[0]) == 1:
                return LaurentPoly.monomial(self.lo * n, self.coeffs[0] ** -n)
            raise ValueError("negative powers are only defined for units c*A^k with c = +-1")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``A**k``."""
        if not self.coeffs:
            return self
        return LaurentPoly._raw(self.lo + k, self.coeffs)

    def mirror(self) -> "LaurentPoly":
        """Substitute ``A -> A**-1``."""
        if not self.coeffs:
            return self
        return LaurentPoly._raw(-self.hi, self.coeffs[::-1])

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    # -- exact division -----------------------------------------------------

    def divmod_exact(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Laurent long division; returns ``(q, r)`` with ``self = q*other + r``.

        Division runs on the shifted ordinary polynomials, so ``r`` is zero
        exactly when ``other`` divides ``self`` in ``Z[A, 1/A]`` with integer
        quotient coefficients.  Raises :class:`InexactDivisionError` as soon as
        an integer quotient coefficient cannot be produced.
        """
        other = LaurentPoly.coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self.coeffs:
            return ZERO, ZERO
        num = list(self.coeffs)
        den = other.coeffs
        dl = len(den)
        lead = den[-1]
        if len(num) < dl:
            raise InexactDivisionError(f"{self} is not divisible by {other}")
        qlen = len(num) - dl + 1
        quot = [0] * qlen
        for i in range(qlen - 1, -1, -1):
            c = num[i + dl - 1]
            if c == 0:
                continue
            q, r = divmod(c, lead)
            if r:
                raise InexactDivisionError(f"{self} is not divisible by {other}")
            quot[i] = q
            for j in range(dl):
                num[i + j] -= q * den[j]
        rem = LaurentPoly._raw(self.lo, num)
        return LaurentPoly._raw(self.lo - other.lo, quot), rem

    def exact_div(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            out = []
            for c in self.coeffs:
                q, r = divmod(c, other)
                if r:
                    raise InexactDivisionError(f"{self} is not divisible by {other}")
                out.append(q)
            return LaurentPoly._raw(self.lo, out)
        q, r = self.divmod_exact(other)
        if r:
            raise InexactDivisionError(f"{self} is not divisible by {other}")
        return q

    def divides(self, other: "LaurentPoly") -> bool:
        try:
            other.exact_div(self)
        except InexactDivisionError:
            return False
        return True

    # -- evaluation ---------------------------------------------------------

    def __call__(self, z: complex) -> complex:
        return eval_complex(self, z)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
A = LaurentPoly.monomial(1)


def sigma() -> LaurentPoly:
    """``A + 1 + A^-1``."""
    return _SIGMA


_SIGMA = LaurentPoly({1: 1, 0: 1, -1: 1})


def mirror(p: LaurentPoly) -> LaurentPoly:
    return p.mirror()


def eval_complex(p: LaurentPoly, z: complex) -> complex:
    """Evaluate ``p`` at ``z`` in double precision.

    The non-negative and negative exponent parts are each evaluated by
    Horner's rule (in ``z`` and ``1/z`` respectively).
    """
    z = complex(z)
    if not p.coeffs:
        return 0j
    if z == 0:
        if p.lo < 0:
            raise ZeroDivisionError("cannot evaluate negative powers at z = 0")
        return complex(p.coefficient(0))
    pos = 0j
    for k in range(p.hi, -1, -1):
        pos = pos * z + p.coefficient(k)
    neg = 0j
    if p.lo < 0:
        w = 1 / z
        for k in range(p.lo, 0):
            neg = neg * w + p.coefficient(k)
        neg *= w
    return pos + neg


def eval_normalized(p: LaurentPoly, z: complex) -> tuple[complex, float]:
    """Return ``(p(z) / S, S)`` with ``S = max_k |c_k| |z|^k``.

    Each term is formed from logarithms of its modulus, so neither huge
    coefficients nor large ``|z|`` overflow.  ``S`` itself is returned as a
    float and may be ``inf`` when it exceeds the double range.
    """
    z = complex(z)
    if not p.coeffs:
        return 0j, 0.0
    if z == 0:
        raise ZeroDivisionError("z must be non-zero")
    logr = math.log(abs(z))
    theta = cmath.phase(z)
    logs = []
    for i, c in enumerate(p.coeffs):
        if c:
            k = p.lo + i
            logs.append((math.log(abs(c)) + k * logr, k, c))
    top = max(t[0] for t in logs)
    acc = 0j
    for lg, k, c in logs:
        mag = math.exp(lg - top)
        acc += math.copysign(mag, c) * cmath.exp(1j * k * theta)
    try:
        scale = math.exp(top)
    except OverflowError:
        scale = math.inf
    return acc, scale


# -- gcd over Q on the ordinary-polynomial images ----------------------------


def _prim(coeffs: list[int]) -> list[int]:
    g = reduce(math.gcd, coeffs, 0)
    if g > 1:
        coeffs = [c // g for c in coeffs]
    if coeffs and coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    return coeffs


def _strip_high(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of ``a`` by ``b`` (coefficient lists, low degree first)."""
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for j in range(len(b)):
            a[shift + j] -= la * b[j]
        _strip_high(a)
    return a


def poly_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Primitive gcd of the shifted images of ``p`` and ``q``.

    The result has lowest exponent 0, content 1 and positive leading
    coefficient; it is a gcd over ``Q[A, 1/A]`` up to units.
    """
    if not p.coeffs:
        return LaurentPoly._raw(0, _prim(list(q.coeffs))) if q.coeffs else ZERO
    if not q.coeffs:
        return LaurentPoly._raw(0, _prim(list(p.coeffs)))
    a = _prim(list(p.coeffs))
    b = _prim(list(q.coeffs))
    while b:
        if len(b) == 1:
            return ONE
        r = _prem(a, b)
        a, b = b, (_prim(r) if r else [])
    return LaurentPoly._raw(0, a)


class RationalFunction:
    """Reduced quotient ``num/den`` of integer Laurent polynomials.

    Canonical form: ``num`` and ``den`` coprime over ``Q``, the combined
    integer content is 1, ``den`` has lowest exponent 0 and a positive
    lowest coefficient.  The zero function is ``0/1``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Scalar, den: Scalar = 1, *, _reduced: bool = False):
        num = LaurentPoly.coerce(num)
        den = LaurentPoly.coerce(den)
        if not den.coeffs:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            num, den = _canonical(num, den)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Scalar) -> "RationalFunction":
        p = LaurentPoly.coerce(p)
        return cls(p, ONE, _reduced=True)

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def to_poly(self) -> LaurentPoly:
        if not self.is_polynomial():
            raise InexactDivisionError(f"{self} is not a Laurent polynomial")
        return self.num

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def __bool__(self) -> bool:
        return bool(self.num.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, LaurentPoly)):
            other = RationalFunction.from_poly(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({self})"

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    @staticmethod
    def _lift(x: object) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, int):
            return RationalFunction.from_poly(x)
        raise TypeError(
            f"cannot combine RationalFunction with {type(x).__name__}; promote explicitly"
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __add__(self, other: object) -> "RationalFunction":
        other = self._lift(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other: object) -> "RationalFunction":
        return self + (-self._lift(other))

    def __rsub__(self, other: object) -> "RationalFunction":
        return self._lift(other) - self

    def __mul__(self, other: object) -> "RationalFunction":
        other = self._lift(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "RationalFunction":
        other = self._lift(other)
        if not other.num.coeffs:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: object) -> "RationalFunction":
        return self._lift(other) / self

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return RationalFunction(1) / (self ** -n)
        return RationalFunction(self.num ** n, self.den ** n, _reduced=True)

    def mirror(self) -> "RationalFunction":
        return RationalFunction(self.num.mirror(), self.den.mirror())

    def __call__(self, z: complex) -> complex:
        return eval_complex(self.num, z) / eval_complex(self.den, z)


def _canonical(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if not num.coeffs:
        return ZERO, ONE
    g = poly_gcd(num, den)
    if g.span() > 0:
        num = num.exact_div(g)
        den = den.exact_div(g)
    shift = -den.lo
    num, den = num.shift(shift), den.shift(shift)
    if den.coeffs[0] < 0:
        num, den = -num, -den
    c = math.gcd(num.content(), den.content())
    if c > 1:
        num, den = num.exact_div(c), den.exact_div(c)
    return num, den


def rf_reduce(num: Scalar, den: Scalar) -> RationalFunction:
    return RationalFunction(num, den)


# -- text format -------------------------------------------------------------

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+)\s*(?:\*\s*(?P<v1>[A-Za-z]\w*)(?:\s*\^\s*(?P<e1>[+-]?\d+))?)?
        | (?P<v2>[A-Za-z]\w*)(?:\s*\^\s*(?P<e2>[+-]?\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_poly(text: str, var: str = "A") -> LaurentPoly:
    """Parse the canonical text form, e.g. ``A + 1 + A^-1`` or ``-2*A^3 + 4``."""
    s = text.strip()
    if s == "0":
        return ZERO
    if not s:
        raise ValueError("empty polynomial text")
    terms: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing operator near {s[pos:]!r}")
        v = m.group("v1") or m.group("v2")
        if v is not None and v != var:
            raise ValueError(f"unexpected variable {v!r} (expected {var!r})")
        if m.group("coef") is not None:
            c = int(m.group("coef"))
            e = m.group("e1")
            k = (int(e) if e is not None else 1) if v else 0
        else:
            c = 1
            e = m.group("e2")
            k = int(e) if e is not None else 1
        if m.group("sign") == "-":
            c = -c
        terms[k] = terms.get(k, 0) + c
        pos = m.end()
        first = False
    return LaurentPoly(terms)

