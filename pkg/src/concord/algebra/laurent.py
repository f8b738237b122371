"""Laurent polynomials and rational functions over Q.

``LaurentPoly`` is the workhorse for Q[t, t^-1]; polynomials in an ordinary
variable (Sturm sequences, characteristic polynomials) use the same class with
non-negative exponents only.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["LaurentPoly", "RationalFunction", "poly_gcd", "poly_lcm", "extended_gcd", "residue_mod", "T"]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class LaurentPoly:
    """Immutable element of Q[t, t^-1] stored as ``{exponent: coefficient}``.

    The zero polynomial is the empty map; no zero coefficient is ever stored.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in dict(coeffs).items():
                v = _frac(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def _raw(cls, c):
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def one(cls):
        return cls._raw({0: Fraction(1)})

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, coeff=1, exp=1):
        return cls({exp: coeff})

    @classmethod
    def from_list(cls, coeffs, shift=0):
        """Coefficients listed from the lowest exponent (``shift``) upward."""
        return cls({shift + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        return cls.const(x)

    # -- inspection -------------------------------------------------------
    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __getitem__(self, e) -> Fraction:
        return self._c.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    @property
    def degree(self) -> int:
        """Degree as an ordinary polynomial; -1 for zero."""
        return max(self._c) if self._c else -1

    @property
    def span(self) -> int:
        """max exponent - min exponent; -1 for zero (the Euclidean size)."""
        return max(self._c) - min(self._c) if self._c else -1

    @property
    def leading(self) -> Fraction:
        return self._c[self.max_exp]

    @property
    def trailing(self) -> Fraction:
        return self._c[self.min_exp]

    def is_unit(self) -> bool:
        return len(self._c) == 1

    def is_constant(self) -> bool:
        return not self._c or set(self._c) == {0}

    def is_polynomial(self) -> bool:
        return not self._c or self.min_exp >= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self[0]

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        c = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise ValueError("only monomials are invertible in Q[t, t^-1]")
            (e, v), = self._c.items()
            return LaurentPoly._raw({e * k: v ** k})
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "LaurentPoly":
        c = _frac(c)
        if not c:
            return LaurentPoly.zero()
        return LaurentPoly._raw({e: v * c for e, v in self._c.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """The involution t -> t^-1."""
        return LaurentPoly._raw({-e: v for e, v in self._c.items()})

    def reflect(self) -> "LaurentPoly":
        """p(-t)."""
        return LaurentPoly._raw({e: (-v if e % 2 else v) for e, v in self._c.items()})

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly._raw({e - 1: v * e for e, v in self._c.items() if e})

    def __call__(self, x):
        """Evaluate at an exact value (or anything supporting + and *)."""
        if not self._c:
            return Fraction(0)
        lo = min(self._c)
        hi = max(self._c)
        acc = 0
        for e in range(hi, lo - 1, -1):
            acc = acc * x + self._c.get(e, 0)
        if lo:
            acc = acc * (x ** lo) if lo > 0 else acc / (x ** (-lo))
        return acc

    # -- Euclidean structure ----------------------------------------------
    def divmod(self, other: "LaurentPoly"):
        """Euclidean division in Q[t, t^-1] with ``span`` as the size.

        Returns ``(q, r)`` with ``self == q*other + r`` and
        ``r.span < other.span``.
        """
        other = LaurentPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(), LaurentPoly.zero()
        i, j = self.min_exp, other.min_exp
        a = dict((e - i, v) for e, v in self._c.items())
        b = dict((e - j, v) for e, v in other._c.items())
        db = max(b)
        lb = b[db]
        q = {}
        while a and max(a) >= db:
            da = max(a)
            f = a[da] / lb
            k = da - db
            q[k] = f
            for e, v in b.items():
                s = a.get(e + k, 0) - f * v
                if s:
                    a[e + k] = s
                else:
                    a.pop(e + k, None)
        quo = LaurentPoly._raw(q).shift(i - j)
        rem = LaurentPoly._raw(a).shift(i)
        return quo, rem

    def pdivmod(self, other: "LaurentPoly"):
        """Ordinary polynomial division; both operands must be polynomials."""
        other = LaurentPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if not (self.is_polynomial() and other.is_polynomial()):
            raise ValueError("pdivmod needs polynomials")
        a = dict(self._c)
        b = other._c
        db = max(b)
        lb = b[db]
        q = {}
        while a and max(a) >= db:
            da = max(a)
            f = a[da] / lb
            k = da - db
            q[k] = f
            for e, v in b.items():
                s = a.get(e + k, 0) - f * v
                if s:
                    a[e + k] = s
                else:
                    a.pop(e + k, None)
        return LaurentPoly._raw(q), LaurentPoly._raw(a)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other) -> "LaurentPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other) -> bool:
        other = LaurentPoly.coerce(other)
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    def normalized(self) -> "LaurentPoly":
        """Unit-normal associate: leading coefficient 1, minimal exponent 0."""
        if self.is_zero():
            return self
        return self.shift(-self.min_exp).scale(1 / self.leading)

    def unit_part(self) -> "LaurentPoly":
        """The unit u with ``self == u * self.normalized()``."""
        if self.is_zero():
            raise ValueError("zero has no unit part")
        return LaurentPoly._raw({self.min_exp: self.leading})

    def associated(self, other) -> bool:
        """Equal up to multiplication by a unit c*t^k."""
        other = LaurentPoly.coerce(other)
        return self.normalized() == other.normalized()

    def primitive_integer(self) -> "LaurentPoly":
        """Integer-coefficient associate with content 1 and positive leading term."""
        if self.is_zero():
            return self
        from math import gcd, lcm
        den = 1
        for v in self._c.values():
            den = lcm(den, v.denominator)
        ints = [int(v * den) for v in self._c.values()]
        g = 0
        for v in ints:
            g = gcd(g, v)
        p = self.scale(Fraction(den, g))
        return p if p.leading > 0 else -p

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- text -------------------------------------------------------------
    def to_str(self, var: str = "t") -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            sign = "-" if v < 0 else "+"
            a = abs(v)
            if e == 0:
                body = str(a)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                if a == 1:
                    body = mono
                elif a.denominator == 1:
                    body = f"{a}{mono}"
                else:
                    body = f"({a}){mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"LaurentPoly({self.to_str()!r})"

    _TERM = re.compile(
        r"\s*([+-]?)\s*(\(?\s*\d+(?:\s*/\s*\d+)?\s*\)?)?\s*\*?\s*"
        r"(?:([A-Za-z])(?:\s*\^\s*(\(?\s*-?\d+\s*\)?))?)?\s*"
    )

    @classmethod
    def parse(cls, text: str, var: str | None = None) -> "LaurentPoly":
        """Parse strings such as ``"2t^2 - 5t + 2"``, ``"t^-1 + 3/2"``, ``"(1/2)t"``."""
        from ..errors import ParseError

        s = text.strip()
        if not s:
            raise ParseError(f"empty polynomial {text!r}", 0)
        pos = 0
        c: dict[int, Fraction] = {}
        first = True
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ParseError(f"bad polynomial {text!r}", pos)
            sign, coef, letter, exp = m.groups()
            if not sign and not first:
                raise ParseError(f"missing operator in {text!r}", pos)
            if coef is None and letter is None:
                raise ParseError(f"bad term in {text!r}", pos)
            if letter is not None and var is not None and letter != var:
                raise ParseError(f"unexpected variable {letter!r} in {text!r}", m.start(3))
            v = Fraction(coef.replace("(", "").replace(")", "").replace(" ", "")) if coef else Fraction(1)
            if sign == "-":
                v = -v
            e = 0
            if letter is not None:
                e = int(exp.replace("(", "").replace(")", "").replace(" ", "")) if exp else 1
            c[e] = c.get(e, 0) + v
            pos = m.end()
            first = False
        return cls(c)


def _coerce_or_none(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    return None


T = LaurentPoly.monomial(1, 1)


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Unit-normalized gcd in Q[t, t^-1]; gcd(0, 0) = 0."""
    a, b = LaurentPoly.coerce(a), LaurentPoly.coerce(b)
    while b:
        a, b = b, a.divmod(b)[1]
    return a.normalized()


def poly_lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.is_zero() or b.is_zero():
        return LaurentPoly.zero()
    return (a * b).exact_div(poly_gcd(a, b)).normalized()


def extended_gcd(a: LaurentPoly, b: LaurentPoly):
    """Return ``(g, s, u)`` with ``s*a + u*b == g`` and g normalized."""
    r0, r1 = a, b
    s0, s1 = LaurentPoly.one(), LaurentPoly.zero()
    u0, u1 = LaurentPoly.zero(), LaurentPoly.one()
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    if r0.is_zero():
        return r0, s0, u0
    unit_inv = r0.unit_part() ** -1
    return r0 * unit_inv, s0 * unit_inv, u0 * unit_inv


class RationalFunction:
    """Element of Q(t), kept reduced with a unit-normal denominator.

    The denominator is a polynomial with nonzero constant term and leading
    coefficient 1; units of Q[t, t^-1] are carried by the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = LaurentPoly.coerce(num)
        den = LaurentPoly.one() if den is None else LaurentPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = num, LaurentPoly.one()
            return
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
        u = den.unit_part()
        uinv = u ** -1
        self.num = num * uinv
        self.den = den * uinv

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        return cls(LaurentPoly.coerce(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == 1

    def __add__(self, other):
        o = _rf_or_none(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        r = RationalFunction.__new__(RationalFunction)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, other):
        o = _rf_or_none(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _rf_or_none(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _rf_or_none(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _rf_or_none(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = _rf_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def bar(self) -> "RationalFunction":
        return RationalFunction(self.num.bar(), self.den.bar())

    def mod_laurent(self) -> "RationalFunction":
        """Canonical representative of the class in Q(t)/Q[t, t^-1].

        The result r/d has d unit-normal and r a polynomial of degree < deg d;
        it is zero exactly when self is a Laurent polynomial.
        """
        d = self.den
        if d.degree <= 0:
            return RationalFunction(LaurentPoly.zero())
        # t is invertible modulo d because d(0) != 0
        return RationalFunction(residue_mod(self.num, d), d)

    def __eq__(self, other):
        o = _rf_or_none(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def to_str(self, var="t") -> str:
        if self.den == 1:
            return self.num.to_str(var)
        return f"({self.num.to_str(var)})/({self.den.to_str(var)})"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RationalFunction({self.to_str()!r})"


def _rf_or_none(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (LaurentPoly, int, Fraction)):
        return RationalFunction(LaurentPoly.coerce(x))
    return None


def _t_inverse_mod(d: LaurentPoly) -> LaurentPoly:
    """Polynomial representative of t^-1 modulo a polynomial d with d(0) != 0."""
    d0 = d[0]
    e = LaurentPoly._raw({k - 1: v for k, v in d.coeffs.items() if k})
    return e.scale(-1 / d0)


def residue_mod(n: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Polynomial r of degree < deg d with r == n in Q[t, t^-1]/(d).

    ``d`` must be a polynomial with nonzero constant term.
    """
    if n.is_zero():
        return n
    k = n.min_exp
    r = n.shift(-k).pdivmod(d)[1]
    if k > 0:
        step = LaurentPoly.monomial(1, 1)
    else:
        step = _t_inverse_mod(d)
    for _ in range(abs(k)):
        r = (r * step).pdivmod(d)[1]
    return r
