"""Levine-Tristram signature step functions and the integral rho_0.

Points of the upper unit semicircle omega = exp(i theta), 0 <= theta <= pi, are
parametrized by x = 2cos(theta): x = 2 is omega = 1 and x = -2 is omega = -1.
Jumps and plateaus are stored in order of increasing theta, i.e. decreasing x.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv, mp, nstr, mpf
from mpmath.libmp import to_rational

from .algebra.hermitian import hermitian_char_poly, signature_from_charpoly
from .algebra.laurent import LaurentPoly
from .algebra.roots import AlgebraicNumber
from .errors import DomainError
from .seifert import SeifertMatrix, alexander_polynomial

__all__ = [
    "SignatureFunction",
    "Rho0Value",
    "symmetrized_alexander",
    "signature_function",
    "sigma_at",
    "rho0",
    "step_records",
]

_TWO = Fraction(2)
# jump abscissa x = 2cos(theta) -> theta/pi, for the rational cases allowed by Niven
_NIVEN = {Fraction(1): Fraction(1, 3), Fraction(0): Fraction(1, 2), Fraction(-1): Fraction(2, 3)}


def symmetrized_alexander(V) -> LaurentPoly:
    """P(x) with Delta(t) = t^d P(t + 1/t), d = span(Delta)/2."""
    delta = alexander_polynomial(V)
    span = delta.span
    if span % 2:
        raise ValueError("Alexander polynomial has odd span")
    d = span // 2
    sym = delta.shift(-delta.min_exp - d)
    if sym.bar() != sym:
        raise ValueError("Alexander polynomial is not symmetric")
    # t^k + t^-k = C_k(x) with C_0 = 2, C_1 = x, C_{k+1} = x C_k - C_{k-1}
    x = LaurentPoly.monomial(1, 1)
    cheb = [LaurentPoly.const(2), x]
    while len(cheb) <= d:
        cheb.append(x * cheb[-1] - cheb[-2])
    P = LaurentPoly.const(sym[0])
    for k in range(1, d + 1):
        P = P + cheb[k].scale(sym[k])
    return P


@dataclass(frozen=True)
class SignatureFunction:
    """Step function theta -> sigma on the upper semicircle.

    ``plateaus[k]`` is the value on the open arc between ``jumps[k-1]`` and
    ``jumps[k]`` (with theta = 0 and theta = pi as the outer ends), and
    ``sample_points[k]`` is the rational x at which it was evaluated.
    """

    jumps: tuple
    plateaus: tuple
    sample_points: tuple
    value_at_minus_one: int
    matrix: SeifertMatrix

    def is_zero(self) -> bool:
        return not any(self.plateaus)

    def value(self, c) -> int:
        """Plateau value containing x = c (c must not be a jump)."""
        c = Fraction(c)
        for k, a in enumerate(self.jumps):
            while a.lo < c < a.hi:
                if a.poly(c) == 0:
                    raise DomainError("evaluation at a discontinuity")
                a = a.bisect()
            if c >= a.hi:
                return self.plateaus[k]
        return self.plateaus[-1]


def _refine_inside(a: AlgebraicNumber) -> AlgebraicNumber:
    while a.lo <= -_TWO or a.hi >= _TWO:
        a = a.bisect()
    return a


def signature_function(V) -> SignatureFunction:
    V = SeifertMatrix.of(V)
    if V.size == 0:
        return SignatureFunction((), (0,), (Fraction(0),), 0, V)
    P = symmetrized_alexander(V)
    roots = [] if P.degree <= 0 else AlgebraicNumber.isolate_all(P, -2, 2)
    roots = [_refine_inside(a) for a in roots]
    roots.sort(key=lambda a: a.lo, reverse=True)
    samples = []
    upper = _TWO
    for a in roots:
        samples.append((upper + a.hi) / 2)
        upper = a.lo
    samples.append((upper - _TWO) / 2)
    plateaus = tuple(signature_from_charpoly(hermitian_char_poly(V.entries, c)) for c in samples)
    at_minus_one = signature_from_charpoly(hermitian_char_poly(V.entries, -2))
    return SignatureFunction(tuple(roots), plateaus, tuple(samples), at_minus_one, V)


def sigma_at(V, c) -> int:
    """Signature of H(omega) at 2cos(theta) = c, away from jumps."""
    V = SeifertMatrix.of(V)
    c = Fraction(c)
    if abs(c) > 2:
        raise DomainError(f"c = {c} lies outside [-2, 2]")
    if V.size and -2 < c < 2:
        P = symmetrized_alexander(V)
        if P.degree > 0 and P(c) == 0:
            raise DomainError("evaluation at a discontinuity")
    return signature_from_charpoly(hermitian_char_poly(V.entries, c))


# -- rho_0 ---------------------------------------------------------------------

def _iv_bounds(x) -> tuple[Fraction, Fraction]:
    lo, hi = x._mpi_
    return Fraction(*map(int, to_rational(lo))), Fraction(*map(int, to_rational(hi)))


def _theta_over_pi(a: AlgebraicNumber):
    """Interval enclosure of arccos(x/2)/pi for x in the isolating interval."""
    x = a.interval()
    th_lo = iv.atan2(iv.sqrt(4 - iv.mpf(x.b) ** 2), iv.mpf(x.b))
    th_hi = iv.atan2(iv.sqrt(4 - iv.mpf(x.a) ** 2), iv.mpf(x.a))
    return iv.mpf([th_lo.a, th_hi.b]) / iv.pi


@dataclass(frozen=True)
class Rho0Value:
    """rho_0 as an exact rational when available plus a certified enclosure [lo, hi]."""

    exact: Fraction | None
    lo: Fraction
    hi: Fraction

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def rad(self) -> Fraction:
        return (self.hi - self.lo) / 2

    def contains(self, q) -> bool:
        return self.lo <= Fraction(q) <= self.hi

    def is_zero(self) -> bool:
        return self.exact == 0

    def is_nonzero(self) -> bool:
        return (self.exact is not None and self.exact != 0) or not self.contains(0)

    def __add__(self, other: "Rho0Value") -> "Rho0Value":
        ex = None if self.exact is None or other.exact is None else self.exact + other.exact
        return Rho0Value(ex, self.lo + other.lo, self.hi + other.hi)

    def __neg__(self) -> "Rho0Value":
        return Rho0Value(None if self.exact is None else -self.exact, -self.hi, -self.lo)

    def interval_str(self, digits: int = 35) -> str:
        return f"{_dec(self.mid, digits)}±{_dec_up(self.rad)}"

    def __str__(self):
        if self.exact is not None:
            return _frac_str(self.exact)
        return self.interval_str()

    def to_dict(self) -> dict:
        return {
            "exact": None if self.exact is None else _frac_str(self.exact),
            "interval": self.interval_str(),
        }


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _dec(q: Fraction, digits: int) -> str:
    with mp.workdps(digits + 10):
        return nstr(mpf(q.numerator) / q.denominator, digits)


def _dec_up(q: Fraction) -> str:
    """A short decimal upper bound for a nonnegative rational."""
    if q == 0:
        return "0"
    e = 0
    while q * 10 ** e < 100:
        e += 1
    while q * 10 ** e >= 1000:
        e -= 1
    m = -((-q * 10 ** e).__floor__())  # ceiling of the 3 significant digits
    return f"{m}e{-e}" if e else str(m)


def rho0(V, radius=Fraction(1, 10 ** 30)) -> Rho0Value:
    """Normalized integral of the signature function over the unit circle.

    rho_0 = sigma_last - sum_i (sigma_i - sigma_{i-1}) theta_i / pi, summed over
    jumps in theta order.
    """
    sf = V if isinstance(V, SignatureFunction) else signature_function(V)
    radius = Fraction(radius)
    steps = [(a, sf.plateaus[k + 1] - sf.plateaus[k]) for k, a in enumerate(sf.jumps)]
    steps = [(a, d) for a, d in steps if d]
    last = sf.plateaus[-1]

    exact = Fraction(last)
    for a, d in steps:
        q = a.rational_value(_NIVEN)
        if q is None:
            exact = None
            break
        exact -= d * _NIVEN[q]
    if not steps:
        return Rho0Value(exact, exact, exact)

    width = Fraction(1, 2 ** 20)
    prec = 128
    old = iv.prec
    try:
        while True:
            iv.prec = prec
            steps = [(a.refined(width), d) for a, d in steps]
            total = iv.mpf(last)
            for a, d in steps:
                total -= d * _theta_over_pi(a)
            lo, hi = _iv_bounds(total)
            if (hi - lo) / 2 <= radius:
                break
            width /= 2 ** 32
            prec *= 2
    finally:
        iv.prec = old
    if exact is not None:
        assert lo <= exact <= hi, "exact rho_0 outside its enclosure"
    return Rho0Value(exact, lo, hi)


def theta_bounds(a: AlgebraicNumber, digits: int = 30) -> tuple[Fraction, Fraction]:
    """Enclosure of theta = arccos(x/2) of width below 10^-(digits+2)."""
    target = Fraction(1, 10 ** (digits + 2))
    width = Fraction(1, 2 ** 20)
    old = iv.prec
    try:
        iv.prec = 4 * digits + 40
        while True:
            a = a.refined(width)
            th = _theta_over_pi(a) * iv.pi
            lo, hi = _iv_bounds(th)
            if hi - lo <= target:
                return lo, hi
            width /= 2 ** 16
            iv.prec += 64
    finally:
        iv.prec = old


def _pi_decimal(digits: int) -> str:
    with mp.workdps(digits + 20):
        return _fixed(Fraction(str(+mp.pi)), digits)


def step_records(V, digits: int = 30) -> list[tuple[str, str, int]]:
    """(theta_lo, theta_hi, sigma) per arc with decimal endpoints accurate to 10^-digits."""
    sf = V if isinstance(V, SignatureFunction) else signature_function(V)
    cuts = [_fixed(Fraction(0), digits)]
    for a in sf.jumps:
        lo, hi = theta_bounds(a, digits)
        cuts.append(_fixed((lo + hi) / 2, digits))
    cuts.append(_pi_decimal(digits))
    return [(cuts[k], cuts[k + 1], s) for k, s in enumerate(sf.plateaus)]


def _fixed(q: Fraction, digits: int) -> str:
    scaled = q * 10 ** digits
    n = (scaled + Fraction(1, 2)).__floor__()
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"
