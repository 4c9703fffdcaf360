"""Truncated Fourier series on the 1-torus with interval coefficients.

A series carries N interval coefficients over I_N = {-N/2, ..., N/2 - 1}.
Rotation, complex shift and evaluation all reduce to per-mode multiplication
by enclosures of e^{2 pi i k phi}; the Fourier norm sum_k |c_k| e^{2 pi |k| rho}
is an upper bound for the sup norm on the closed strip of width rho.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadSize, ExponentOverflow, InsufficientDecay, NonFinite, SymmetryViolation
from .interval import (
    CI_ZERO,
    ComplexInterval,
    RealInterval,
    _up,
    exp_2pi,
    unit_phase,
)
from .rfft import GridSamples, SpectralCoeffs, check_power_of_two, fft_forward, fft_inverse


class FourierSeries:
    """Interval-coefficient trigonometric polynomial over I_N."""

    __slots__ = ("n", "coeffs", "real_analytic")

    def __init__(self, n: int, coeffs, real_analytic: bool = False):
        check_power_of_two(n)
        coeffs = tuple(coeffs)
        if len(coeffs) != n:
            raise BadSize(f"{len(coeffs)} coefficients for grid size {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "real_analytic", real_analytic)

    def __setattr__(self, name, value):
        raise AttributeError("FourierSeries is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def constant(cls, n: int, value: ComplexInterval, real_analytic: bool = False) -> "FourierSeries":
        coeffs = [CI_ZERO] * n
        coeffs[n // 2] = value
        return cls(n, coeffs, real_analytic)

    @classmethod
    def from_coeff_map(cls, n: int, entries: dict, real_analytic: bool = False) -> "FourierSeries":
        coeffs = [CI_ZERO] * n
        half = n // 2
        for k, v in entries.items():
            if not -half <= k < n - half:
                raise BadSize(f"index {k} outside I_{n}")
            coeffs[k + half] = v
        return cls(n, coeffs, real_analytic)

    # -- access -----------------------------------------------------------

    def coeff(self, k: int) -> ComplexInterval:
        i = k + self.n // 2
        if not 0 <= i < self.n:
            raise IndexError(f"index {k} outside I_{self.n}")
        return self.coeffs[i]

    def indices(self) -> range:
        return range(-(self.n // 2), self.n - self.n // 2)

    def spectral(self) -> SpectralCoeffs:
        return SpectralCoeffs(self.n, self.coeffs)

    def grid_values(self) -> GridSamples:
        """Enclosures of the series at the grid points theta_j = j/n."""
        return fft_inverse(self.spectral())

    def __sub__(self, other: "FourierSeries") -> "FourierSeries":
        if self.n != other.n:
            raise BadSize(f"size mismatch {self.n} != {other.n}")
        return FourierSeries(
            self.n,
            [a - b for a, b in zip(self.coeffs, other.coeffs)],
            self.real_analytic and other.real_analytic,
        )

    def __add__(self, other: "FourierSeries") -> "FourierSeries":
        if self.n != other.n:
            raise BadSize(f"size mismatch {self.n} != {other.n}")
        return FourierSeries(
            self.n,
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
            self.real_analytic and other.real_analytic,
        )

    # -- mode-wise transforms ----------------------------------------------

    def rotate(self, omega: RealInterval) -> "FourierSeries":
        """The series of theta |-> s(theta + omega) for real omega."""
        out = []
        for k in self.indices():
            c = self.coeff(k)
            if k == 0:
                out.append(c)
            else:
                out.append(c * unit_phase(omega * k))
        return FourierSeries(self.n, out, self.real_analytic)

    def shift_complex(self, phi: ComplexInterval) -> "FourierSeries":
        """The series of theta |-> s(theta + phi) for a complex box phi.

        Mode k picks up e^{2 pi i k phi} = e^{-2 pi k Im phi} e^{2 pi i k Re phi}.
        The result is real-analytic no more.
        """
        out = []
        for k in self.indices():
            c = self.coeff(k)
            if k == 0 or c == CI_ZERO:
                out.append(c)
            else:
                out.append(c * _mode_phase(k, phi))
        return FourierSeries(self.n, out, False)

    def evaluate(self, theta: ComplexInterval) -> ComplexInterval:
        """Enclosure of sum_k c_k e^{2 pi i k theta} over the input box."""
        acc = CI_ZERO
        for k in self.indices():
            c = self.coeff(k)
            if c == CI_ZERO:
                continue
            if k == 0:
                acc = acc + c
            else:
                acc = acc + c * _mode_phase(k, theta)
        return acc

    # -- norms and reshaping ------------------------------------------------

    def fourier_norm(self, rho: float) -> float:
        """Upper bound of sum_k |c_k| e^{2 pi |k| rho}; dominates the rho-strip sup norm."""
        if rho < 0.0:
            raise ValueError(f"rho must be >= 0, got {rho}")
        acc = 0.0
        for k in self.indices():
            mag = self.coeff(k).abs_upper()
            if mag == 0.0:
                continue
            if k == 0:
                acc = _up(acc + mag)
            else:
                growth = _exp_2pi_checked(RealInterval(rho) * abs(k)).hi
                acc = _up(acc + _up(mag * growth))
        if math.isinf(acc):
            raise ExponentOverflow("Fourier norm overflowed")
        return acc

    def pad(self, new_n: int) -> "FourierSeries":
        """Embed into a larger index set, filling with exact zeros."""
        check_power_of_two(new_n)
        if new_n < self.n:
            raise BadSize(f"cannot pad {self.n} down to {new_n}")
        if new_n == self.n:
            return self
        coeffs = [CI_ZERO] * new_n
        off = new_n // 2 - self.n // 2
        for i, c in enumerate(self.coeffs):
            coeffs[off + i] = c
        nyq = self.coeffs[0]
        keep_flag = self.real_analytic and nyq == CI_ZERO
        return FourierSeries(new_n, coeffs, keep_flag)

    def truncate_noise(self, floor: float) -> "FourierSeries":
        """Zero every mode beyond the last |k| whose magnitude bound reaches ``floor``."""
        if floor <= 0.0:
            return self
        k_keep = 0
        for k in self.indices():
            if k != 0 and self.coeff(k).abs_upper() >= floor:
                k_keep = max(k_keep, abs(k))
        out = [
            c if abs(k) <= k_keep else CI_ZERO
            for k, c in zip(self.indices(), self.coeffs)
        ]
        return FourierSeries(self.n, out, self.real_analytic)

    def max_coeff_width(self) -> float:
        return max(c.width() for c in self.coeffs)

    def __repr__(self):
        return f"FourierSeries(n={self.n}, real_analytic={self.real_analytic})"


def _mode_phase(k: int, phi: ComplexInterval) -> ComplexInterval:
    """Enclosure of e^{2 pi i k phi}."""
    factor = unit_phase(phi.re * k)
    if phi.im.lo == 0.0 and phi.im.hi == 0.0:
        return factor
    return factor.scale(_exp_2pi_checked(phi.im * (-k)))


def _exp_2pi_checked(arg: RealInterval) -> RealInterval:
    try:
        return exp_2pi(arg)
    except NonFinite as exc:
        raise ExponentOverflow(str(exc)) from exc


def build_series(
    samples: GridSamples,
    zero_nyquist: bool = True,
    enforce_real: bool = False,
) -> FourierSeries:
    """FFT the samples into a series; optionally clear the Nyquist mode and
    check the conjugate symmetry c_{-k} ~ conj(c_k) of real-analytic data."""
    spec = fft_forward(samples)
    coeffs = list(spec.values)
    if zero_nyquist and samples.n > 1:
        coeffs[0] = CI_ZERO
    series = FourierSeries(samples.n, coeffs, False)
    if enforce_real:
        _check_symmetry(series)
        series = FourierSeries(samples.n, coeffs, True)
    return series


def _check_symmetry(s: FourierSeries) -> None:
    half = s.n // 2
    for k in range(0, half):
        a = s.coeff(-k)
        b = s.coeff(k).conj()
        if not a.intersects(b):
            raise SymmetryViolation(
                f"coefficients at -{k}/{k} do not overlap conjugate symmetry"
            )


@dataclass(frozen=True)
class RhoFit:
    """Exponential-decay fit |c_k| ~ e^{a - 2 pi rho* |k|} (non-rigorous)."""

    rho_star: float
    intercept: float
    fit_range: tuple

    def __post_init__(self):
        if not self.rho_star > 0.0:
            raise InsufficientDecay(f"fitted rate {self.rho_star} is not positive")


def detect_noise_floor(s: FourierSeries) -> float:
    """8x the median magnitude of the top-quartile |k| coefficients.

    Midpoint magnitudes; this feeds only the non-certified fit and manual
    truncation choices, never the certificate.
    """
    half = s.n // 2
    cut = max(1, (3 * half) // 4)
    mags = sorted(abs(s.coeff(k).mid) for k in s.indices() if abs(k) >= cut)
    if not mags:
        return 0.0
    mid = len(mags) // 2
    if len(mags) % 2:
        med = mags[mid]
    else:
        med = 0.5 * (mags[mid - 1] + mags[mid])
    return 8.0 * med


def fit_rho(s: FourierSeries, min_modes: int = 8) -> RhoFit:
    """Least-squares decay rate of log|c_k| against |k| above the noise floor."""
    import numpy as np

    floor = detect_noise_floor(s)
    ks = []
    logs = []
    k_last = 0
    for k in s.indices():
        if k == 0:
            continue
        m = abs(s.coeff(k).mid)
        if m > floor and m > 0.0:
            k_last = max(k_last, abs(k))
    for k in s.indices():
        if k == 0 or abs(k) > k_last:
            continue
        m = abs(s.coeff(k).mid)
        if m > 0.0:
            ks.append(abs(k))
            logs.append(math.log(m))
    if len(ks) < min_modes:
        raise InsufficientDecay(f"only {len(ks)} usable modes above noise floor {floor:g}")
    slope, intercept = np.polyfit(np.asarray(ks, dtype=float), np.asarray(logs, dtype=float), 1)
    rho_star = -slope / (2.0 * math.pi)
    if rho_star <= 0.0:
        raise InsufficientDecay(f"coefficients do not decay (slope {slope:g})")
    return RhoFit(float(rho_star), float(intercept), (1, k_last))
