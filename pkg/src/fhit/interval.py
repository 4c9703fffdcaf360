"""Directed-rounding interval arithmetic on double endpoints.

Every operation returns an enclosure of the exact mathematical image of its
input sets.  Rounding strategy: IEEE round-to-nearest double arithmetic
followed by an outward nudge of the endpoints (``math.nextafter`` toward
±inf).  One ulp suffices for the correctly-rounded operations (+ - * / sqrt);
libm-backed transcendentals get a wider nudge to absorb their < 1 ulp error.

Values are immutable; all operations are pure.
"""

from __future__ import annotations

import math

from .errors import DivisionByZeroInterval, DomainError, EmptyInterval, NonFinite

_INF = math.inf

# glibc's exp/log/sin/cos are faithful to <= 1 ulp; 3 ulps leaves margin.
_LIBM_ULPS = 3

# math.exp overflows just above 709.78; refuse earlier so bounds stay finite.
_EXP_ARG_LIMIT = 709.0


def _up(x: float, steps: int = 1) -> float:
    for _ in range(steps):
        x = math.nextafter(x, _INF)
    return x


def _down(x: float, steps: int = 1) -> float:
    for _ in range(steps):
        x = math.nextafter(x, -_INF)
    return x


class RealInterval:
    """Closed interval [lo, hi] of reals with finite double endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float | None = None):
        if hi is None:
            hi = lo
        lo = float(lo)
        hi = float(hi)
        if math.isnan(lo) or math.isnan(hi):
            raise NonFinite("NaN endpoint")
        if math.isinf(lo) or math.isinf(hi):
            raise NonFinite(f"infinite endpoint [{lo}, {hi}]")
        if lo > hi:
            raise EmptyInterval(f"lo {lo!r} > hi {hi!r}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("RealInterval is immutable")

    # -- queries --------------------------------------------------------

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "RealInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "RealInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0.0 <= self.hi

    def abs_upper(self) -> float:
        """Upper bound of |x| over the interval (exact, no rounding needed)."""
        return max(-self.lo, self.hi)

    def abs_lower(self) -> float:
        """Lower bound of |x| over the interval."""
        if self.contains_zero():
            return 0.0
        return min(abs(self.lo), abs(self.hi))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return _make(_down(self.lo + other.lo), _up(self.hi + other.hi))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return _make(_down(self.lo - other.hi), _up(self.hi - other.lo))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return _make(-self.hi, -self.lo)

    def __mul__(self, other):
        other = _coerce(other)
        p1 = self.lo * other.lo
        p2 = self.lo * other.hi
        p3 = self.hi * other.lo
        p4 = self.hi * other.hi
        return _make(_down(min(p1, p2, p3, p4)), _up(max(p1, p2, p3, p4)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.contains_zero():
            raise DivisionByZeroInterval(f"denominator {other} contains 0")
        q1 = self.lo / other.lo
        q2 = self.lo / other.hi
        q3 = self.hi / other.lo
        q4 = self.hi / other.hi
        return _make(_down(min(q1, q2, q3, q4)), _up(max(q1, q2, q3, q4)))

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def sq(self) -> "RealInterval":
        """Enclosure of x^2 (tighter than self*self when 0 is inside)."""
        a = abs(self.lo)
        b = abs(self.hi)
        hi = _up(max(a, b) * max(a, b))
        if self.contains_zero():
            return _make(0.0, hi)
        m = min(a, b)
        return _make(max(0.0, _down(m * m)), hi)

    def __repr__(self):
        return f"RealInterval({self.lo!r}, {self.hi!r})"

    def __eq__(self, other):
        return (
            isinstance(other, RealInterval)
            and self.lo == other.lo
            and self.hi == other.hi
        )

    def __hash__(self):
        return hash((self.lo, self.hi))

    # -- elementary functions ---------------------------------------------

    def exp(self) -> "RealInterval":
        if self.hi > _EXP_ARG_LIMIT:
            raise NonFinite(f"exp argument {self.hi} too large")
        lo = max(0.0, _down(math.exp(self.lo), _LIBM_ULPS))
        hi = _up(math.exp(self.hi), _LIBM_ULPS)
        return _make(lo, hi)

    def log(self) -> "RealInterval":
        if self.lo <= 0.0:
            raise DomainError(f"log requires lo > 0, got {self.lo}")
        return _make(_down(math.log(self.lo), _LIBM_ULPS), _up(math.log(self.hi), _LIBM_ULPS))

    def sqrt(self) -> "RealInterval":
        if self.lo < 0.0:
            raise DomainError(f"sqrt requires lo >= 0, got {self.lo}")
        return _make(max(0.0, _down(math.sqrt(self.lo))), _up(math.sqrt(self.hi)))

    def __abs__(self) -> "RealInterval":
        if self.lo >= 0.0:
            return self
        if self.hi <= 0.0:
            return -self
        return _make(0.0, self.abs_upper())

    def sin(self) -> "RealInterval":
        return _trig_range(self, math.sin, 0.25, -0.25)

    def cos(self) -> "RealInterval":
        return _trig_range(self, math.cos, 0.0, 0.5)

    def cosh(self) -> "RealInterval":
        a = abs(self)
        if a.hi > _EXP_ARG_LIMIT:
            raise NonFinite(f"cosh argument {a.hi} too large")
        return _make(
            max(1.0, _down(math.cosh(a.lo), _LIBM_ULPS)),
            _up(math.cosh(a.hi), _LIBM_ULPS),
        )

    def sinh(self) -> "RealInterval":
        if abs(self).hi > _EXP_ARG_LIMIT:
            raise NonFinite(f"sinh argument out of range [{self.lo}, {self.hi}]")
        return _make(
            _down(math.sinh(self.lo), _LIBM_ULPS),
            _up(math.sinh(self.hi), _LIBM_ULPS),
        )


def _make(lo: float, hi: float) -> RealInterval:
    # endpoints come pre-ordered from the callers; constructor re-checks finiteness
    return RealInterval(lo, hi)


def _coerce(x) -> RealInterval:
    if isinstance(x, RealInterval):
        return x
    if isinstance(x, (int, float)):
        return RealInterval(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as RealInterval")


# Enclosure of pi: math.pi underestimates; one ulp up overshoots.
PI = RealInterval(math.pi, _up(math.pi))
TWO_PI = RealInterval(_down(2.0 * math.pi), _up(2.0 * math.pi))
_HALF = RealInterval(0.5)


def pi_enclosure() -> RealInterval:
    """Interval of width <= 2 ulp containing pi."""
    return PI


def two_pi() -> RealInterval:
    """Interval enclosure of 2*pi."""
    return TWO_PI


def _contains_integer(x: RealInterval) -> bool:
    return math.floor(x.hi) >= math.ceil(x.lo)


def _trig_range(x: RealInterval, fn, max_frac: float, min_frac: float) -> RealInterval:
    """Range of sin/cos over an interval.

    ``fn`` attains its maximum at (max_frac + m)*2*pi and its minimum at
    (min_frac + m)*2*pi, m integer.  Critical-point membership is decided
    conservatively: if the enclosure of (x/2pi - frac) may contain an
    integer, the corresponding extremum is assumed reached.  Between
    critical points the function is monotone, so endpoint values bound it.
    """
    if x.width >= TWO_PI.lo:
        return _make(-1.0, 1.0)
    t = x / TWO_PI
    has_max = _contains_integer(t - max_frac)
    has_min = _contains_integer(t - min_frac)
    if has_max and has_min:
        return _make(-1.0, 1.0)
    fa = fn(x.lo)
    fb = fn(x.hi)
    lo = _down(min(fa, fb), _LIBM_ULPS)
    hi = _up(max(fa, fb), _LIBM_ULPS)
    if has_max:
        hi = 1.0
    if has_min:
        lo = -1.0
    return _make(max(lo, -1.0), min(hi, 1.0))


class ComplexInterval:
    """Rectangular complex enclosure: independent real/imaginary intervals."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0.0):
        object.__setattr__(self, "re", _coerce(re))
        object.__setattr__(self, "im", _coerce(im))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexInterval is immutable")

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexInterval":
        return cls(z.real, z.imag)

    @property
    def mid(self) -> complex:
        return complex(self.re.mid, self.im.mid)

    def contains(self, z: complex) -> bool:
        return self.re.contains(z.real) and self.im.contains(z.imag)

    def contains_interval(self, other: "ComplexInterval") -> bool:
        return self.re.contains_interval(other.re) and self.im.contains_interval(other.im)

    def intersects(self, other: "ComplexInterval") -> bool:
        return self.re.intersects(other.re) and self.im.intersects(other.im)

    def __add__(self, other):
        other = _coerce_c(other)
        return ComplexInterval(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_c(other)
        return ComplexInterval(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce_c(other) - self

    def __neg__(self):
        return ComplexInterval(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce_c(other)
        return ComplexInterval(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_c(other)
        denom = other.re.sq() + other.im.sq()
        if denom.contains_zero():
            raise DivisionByZeroInterval(f"|denominator|^2 {denom} contains 0")
        num = self * other.conj()
        return ComplexInterval(num.re / denom, num.im / denom)

    def __rtruediv__(self, other):
        return _coerce_c(other) / self

    def conj(self) -> "ComplexInterval":
        return ComplexInterval(self.re, -self.im)

    def scale(self, r: RealInterval) -> "ComplexInterval":
        return ComplexInterval(self.re * r, self.im * r)

    def abs_upper(self) -> float:
        """Upper bound for sup |z| over the rectangle."""
        a = self.re.abs_upper()
        b = self.im.abs_upper()
        return _up(math.sqrt(_up(_up(a * a) + _up(b * b))))

    def abs_lower(self) -> float:
        """Lower bound for inf |z| over the rectangle."""
        a = self.re.abs_lower()
        b = self.im.abs_lower()
        return max(0.0, _down(math.sqrt(_down(_down(a * a) + _down(b * b)))))

    def width(self) -> float:
        return max(self.re.width, self.im.width)

    def __eq__(self, other):
        return (
            isinstance(other, ComplexInterval)
            and self.re == other.re
            and self.im == other.im
        )

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"ComplexInterval({self.re!r}, {self.im!r})"


def _coerce_c(x) -> ComplexInterval:
    if isinstance(x, ComplexInterval):
        return x
    if isinstance(x, RealInterval):
        return ComplexInterval(x, RealInterval(0.0))
    if isinstance(x, complex):
        return ComplexInterval(x.real, x.imag)
    if isinstance(x, (int, float)):
        return ComplexInterval(float(x), 0.0)
    raise TypeError(f"cannot interpret {type(x).__name__} as ComplexInterval")


CI_ZERO = ComplexInterval(0.0, 0.0)
CI_ONE = ComplexInterval(1.0, 0.0)


def exp_2pi(arg: RealInterval) -> RealInterval:
    """Enclosure of e^{2*pi*x} for x in ``arg``, guarding the double range."""
    e = TWO_PI * arg
    if e.hi > _EXP_ARG_LIMIT:
        raise NonFinite(f"exp(2*pi*{arg.hi}) overflows")
    return e.exp()


def unit_phase(angle_over_2pi: RealInterval) -> ComplexInterval:
    """Enclosure of e^{2*pi*i*t} for t in the given interval."""
    a = TWO_PI * angle_over_2pi
    return ComplexInterval(a.cos(), a.sin())


def golden_mean() -> RealInterval:
    """Enclosure of (sqrt(5) - 1) / 2."""
    return (RealInterval(5.0).sqrt() - 1.0) * _HALF
