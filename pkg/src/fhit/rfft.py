"""Radix-2 decimation-in-time FFT over complex-interval vectors.

Convention: forward transform maps grid samples u_j at theta_j = j/N to
coefficients u~_k = (1/N) * sum_j u_j e^{-2 pi i k j / N}, re-indexed from
[0, N) to the symmetric index set I_N = {-N/2, ..., N/2 - 1} (u~_k is
N-periodic in k, so this is a relabeling).  The inverse transform evaluates
sum_{k in I_N} c_k e^{2 pi i k j / N} on the grid.

``dft_naive`` implements the same contract by direct summation with
integer-reduced angles; it serves as an independent cross-check oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, SizeNotPowerOfTwo
from .interval import CI_ZERO, ComplexInterval, RealInterval, unit_phase


def check_power_of_two(n: int) -> None:
    if n < 1 or (n & (n - 1)) != 0:
        raise SizeNotPowerOfTwo(f"grid size {n} is not a power of two")


def index_set(n: int) -> range:
    """The symmetric Fourier index set I_N."""
    return range(-(n // 2), (n + 1) // 2)


@dataclass(frozen=True)
class GridSamples:
    """Values on the regular grid; entry j belongs to theta_j = j/n."""

    n: int
    values: tuple

    def __post_init__(self):
        check_power_of_two(self.n)
        if len(self.values) != self.n:
            raise DimensionMismatch(f"{len(self.values)} values for grid size {self.n}")

    @classmethod
    def from_list(cls, values) -> "GridSamples":
        return cls(len(values), tuple(values))


@dataclass(frozen=True)
class SpectralCoeffs:
    """Coefficients over I_N, stored in ascending-k order."""

    n: int
    values: tuple

    def __post_init__(self):
        check_power_of_two(self.n)
        if len(self.values) != self.n:
            raise DimensionMismatch(f"{len(self.values)} coefficients for grid size {self.n}")

    def __getitem__(self, k: int) -> ComplexInterval:
        i = k + self.n // 2
        if not 0 <= i < self.n:
            raise IndexError(f"index {k} outside I_{self.n}")
        return self.values[i]

    def indices(self) -> range:
        return index_set(self.n)


_twiddle_cache: dict = {}


def _twiddles(n: int) -> list:
    """Enclosures of e^{+2 pi i j / n} for j = 0 .. n/2 - 1."""
    cached = _twiddle_cache.get(n)
    if cached is None:
        cached = [unit_phase(RealInterval(j / n)) for j in range(max(1, n // 2))]
        _twiddle_cache[n] = cached
    return cached


def _bit_reverse_permute(values: list) -> list:
    n = len(values)
    out = list(values)
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            out[i], out[j] = out[j], out[i]
    return out


def _fft_in_place(values: list, conjugate: bool) -> list:
    """Compute sum_j v_j e^{s 2 pi i jk/n}, s = -1 if conjugate else +1."""
    n = len(values)
    if n == 1:
        return list(values)
    data = _bit_reverse_permute(values)
    tw = _twiddles(n)
    size = 2
    while size <= n:
        half = size // 2
        stride = n // size
        for start in range(0, n, size):
            for m in range(half):
                w = tw[m * stride]
                if conjugate:
                    w = w.conj()
                a = data[start + m]
                t = w * data[start + m + half]
                data[start + m] = a + t
                data[start + m + half] = a - t
        size *= 2
    return data


def fft_forward(samples: GridSamples) -> SpectralCoeffs:
    """Interval DFT with the 1/N normalization, indexed over I_N."""
    n = samples.n
    scale = RealInterval(1.0 / n)
    raw = _fft_in_place(list(samples.values), conjugate=True)
    half = n // 2
    ordered = [raw[(k + n) % n].scale(scale) for k in range(-half, n - half)]
    return SpectralCoeffs(n, tuple(ordered))


def fft_inverse(coeffs: SpectralCoeffs) -> GridSamples:
    """Evaluate the truncated series on the grid (no normalization)."""
    n = coeffs.n
    half = n // 2
    standard = [coeffs.values[(m + half) % n] for m in range(n)]
    return GridSamples(n, tuple(_fft_in_place(standard, conjugate=False)))


def dft_naive(samples: GridSamples) -> SpectralCoeffs:
    """O(N^2) direct-sum DFT; same contract as fft_forward."""
    n = samples.n
    scale = RealInterval(1.0 / n)
    out = []
    for k in index_set(n):
        acc = CI_ZERO
        for j, v in enumerate(samples.values):
            r = (-k * j) % n
            acc = acc + v * unit_phase(RealInterval(r / n))
        out.append(acc.scale(scale))
    return SpectralCoeffs(n, tuple(out))
