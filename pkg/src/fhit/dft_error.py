"""Rigorous DFT approximation-error constant C_N(rho, rho_hat).

``cn_general`` evaluates the d-dimensional constant S*1 + S*2 + T_N;
``cn_1d_even`` the simplified one-dimensional even-N form.  Both are
evaluated in interval arithmetic with enclosures of pi.

The S*1 factors as printed contain e^{+pi (rho_hat + rho) N}, which
overflows doubles long before the constant itself becomes large.  Each
such factor is therefore paired with its e^{-2 pi rho_hat N} companion and
regrouped into an algebraically identical expression whose exponents are
all negative; enclosures of the same real number result.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import BadStrip, FhitError, OddSize
from .interval import PI, TWO_PI, RealInterval

_MAX_DIMS = 8


@dataclass(frozen=True)
class StripPair:
    """Inner strip width rho and outer strip width rho_hat, 0 <= rho < rho_hat."""

    rho: float
    rho_hat: float

    def __post_init__(self):
        if not 0.0 <= self.rho < self.rho_hat:
            raise BadStrip(f"need 0 <= rho < rho_hat, got ({self.rho}, {self.rho_hat})")


@dataclass(frozen=True)
class GridSpec:
    """Grid sizes (N_1, ..., N_d)."""

    dims: tuple

    def __post_init__(self):
        if not self.dims:
            raise BadStrip("empty grid")
        if len(self.dims) > _MAX_DIMS:
            raise BadStrip(f"dimension {len(self.dims)} exceeds cap {_MAX_DIMS}")
        for n in self.dims:
            if n < 2:
                raise BadStrip(f"grid size {n} < 2")


def _mu(n: int, delta: RealInterval) -> RealInterval:
    if n % 2 == 0:
        return RealInterval(1.0)
    e = (PI * delta).exp()
    return (e * 2.0) / ((PI * delta * 2.0).exp() + 1.0)


def _nu(n: int, delta: RealInterval) -> RealInterval:
    e2 = (TWO_PI * delta).exp()
    decay = (PI * delta * (-n)).exp()
    return ((e2 + 1.0) / (e2 - 1.0)) * (RealInterval(1.0) - _mu(n, delta) * decay)


def _sigma_factor(sign: int, rho: RealInterval, rho_hat: RealInterval, n: int) -> RealInterval:
    """One per-dimension factor e^{(sigma-1) pi rho_hat N} nu_N(sigma rho_hat - rho)."""
    if sign == 1:
        return _nu(n, rho_hat - rho)
    # sign == -1: pair e^{-2 pi rho_hat N} with nu_N(-(rho_hat + rho)) so only
    # negative exponents appear.  With a = 2 pi rho_hat N, s = rho_hat + rho,
    # g = pi (rho_hat - rho) N = a - pi s N:
    #   e^{-a} nu(-s) = (1 + e^{-2 pi s})(e^{-g} - e^{-a}) / (1 - e^{-2 pi s})   (N even)
    #   e^{-a} nu(-s) = (2 e^{-pi s} e^{-g} - (1 + e^{-2 pi s}) e^{-a}) / (1 - e^{-2 pi s})   (N odd)
    s = rho_hat + rho
    e_ms = (TWO_PI * s * (-1)).exp()
    e_ma = (TWO_PI * rho_hat * (-n)).exp()
    e_mg = (PI * (rho_hat - rho) * (-n)).exp()
    if n % 2 == 0:
        num = (e_ms + 1.0) * (e_mg - e_ma)
    else:
        num = (PI * s * (-1)).exp() * e_mg * 2.0 - (e_ms + 1.0) * e_ma
    return num / (RealInterval(1.0) - e_ms)


def _nonneg(x: RealInterval) -> RealInterval:
    # the clamped quantities are >= 0 in exact arithmetic; dropping a
    # rounding-born negative lower endpoint keeps the enclosure valid
    if x.lo < 0.0:
        return RealInterval(0.0, max(0.0, x.hi))
    return x


def _one_minus_product_of_complements(xs) -> RealInterval:
    """1 - prod(1 - x_l) as sum_l x_l prod_{m<l}(1 - x_m), cancellation-free."""
    acc = RealInterval(0.0)
    lead = RealInterval(1.0)
    for x in xs:
        acc = acc + x * lead
        lead = lead * (RealInterval(1.0) - x)
    return acc


def cn_general(strip: StripPair, grid: GridSpec) -> RealInterval:
    """Enclosure of C_N(rho, rho_hat) = S*1 + S*2 + T_N for a d-dimensional grid."""
    rho = RealInterval(strip.rho)
    rho_hat = RealInterval(strip.rho_hat)
    dims = grid.dims
    d = len(dims)

    one = RealInterval(1.0)
    tails = [(TWO_PI * rho_hat * (-n)).exp() for n in dims]

    prefactor = one
    for t in tails:
        prefactor = prefactor * (one / (one - t))

    s1 = RealInterval(0.0)
    for sigma in product((-1, 1), repeat=d):
        if all(s == 1 for s in sigma):
            continue
        term = one
        for sign, n in zip(sigma, dims):
            term = term * _sigma_factor(sign, rho, rho_hat, n)
        s1 = s1 + _nonneg(term)
    s1 = _nonneg(prefactor * s1)

    s2 = prefactor * _one_minus_product_of_complements(tails)
    for n in dims:
        s2 = s2 * _nu(n, rho_hat - rho)
    s2 = _nonneg(s2)

    gap = rho_hat - rho
    e2 = (TWO_PI * gap).exp()
    ratio = (e2 + one) / (e2 - one)
    t_pref = one
    for _ in dims:
        t_pref = t_pref * ratio
    t_decays = [_mu(n, gap) * (PI * gap * (-n)).exp() for n in dims]
    t_n = _nonneg(t_pref * _one_minus_product_of_complements(t_decays))

    total = _nonneg(s1 + s2 + t_n)
    if not total.hi > 0.0:
        raise FhitError(f"non-positive error-constant enclosure {total!r}")
    return total


def cn_1d_even(strip: StripPair, n: int) -> RealInterval:
    """Enclosure of C_N for d = 1 and even N (simplified closed form)."""
    if n < 2 or n % 2 != 0:
        raise OddSize(f"even grid size >= 2 required, got {n}")
    rho = RealInterval(strip.rho)
    rho_hat = RealInterval(strip.rho_hat)
    one = RealInterval(1.0)

    s = rho_hat + rho
    gap = rho_hat - rho
    e_ms = (TWO_PI * s * (-1)).exp()          # e^{-2 pi (rho_hat + rho)}
    e_ma = (TWO_PI * rho_hat * (-n)).exp()    # e^{-2 pi rho_hat N}
    e_mg = (PI * gap * (-n)).exp()            # e^{-pi (rho_hat - rho) N}
    e2g = (TWO_PI * gap).exp()

    s1 = _nonneg(((e_ms + one) * (e_mg - e_ma)) / ((one - e_ms) * (one - e_ma)))
    ratio = (e2g + one) / (e2g - one)
    s2 = _nonneg((e_ma / (one - e_ma)) * ratio * (one - e_mg))
    t_n = _nonneg(ratio * e_mg)

    total = _nonneg(s1 + s2 + t_n)
    if not total.hi > 0.0:
        raise FhitError(f"non-positive error-constant enclosure {total!r}")
    return total


def cn_bound(rho: float, rho_hat: float, n: int) -> RealInterval:
    """C_N for the 1-d pipeline: the even-N form when applicable."""
    strip = StripPair(rho, rho_hat)
    if n % 2 == 0:
        return cn_1d_even(strip, n)
    return cn_general(strip, GridSpec((n,)))
