"""The boxes method: rigorous sup norms on complex strips.

The strip of width rho is covered by N boxes centered on grid points,
box_j = theta_j + [-1/2N, 1/2N] x i[-rho, rho].  A truncated series is
enclosed over all boxes at once by one complex shift plus one inverse FFT;
sup norms are the max of the per-box modulus bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadSize, DimensionMismatch
from .interval import ComplexInterval, RealInterval, _down, _up
from .series import FourierSeries
from .rfft import fft_inverse


@dataclass(frozen=True)
class BoxGrid:
    """Cover of the rho-strip by n grid-centered boxes."""

    n: int
    rho: float
    boxes: tuple

    def contains_point(self, theta: complex) -> bool:
        """Strip membership up to the torus period."""
        for shift in (0.0, -1.0, 1.0):
            z = complex(theta.real + shift, theta.imag)
            if any(b.contains(z) for b in self.boxes):
                return True
        return False


def make_boxes(n: int, rho: float) -> BoxGrid:
    if n < 2:
        raise BadSize(f"need at least 2 boxes, got {n}")
    if rho < 0.0:
        raise BadSize(f"negative strip width {rho}")
    half = 0.5 / n
    im = RealInterval(-rho, rho)
    boxes = []
    for j in range(n):
        center = j / n
        re = RealInterval(_down(center - half), _up(center + half))
        boxes.append(ComplexInterval(re, im))
    for j in range(n - 1):
        # constructive cover check: adjacent boxes must touch or overlap
        assert boxes[j].re.hi >= boxes[j + 1].re.lo
    return BoxGrid(n, rho, tuple(boxes))


def box_shift(grid: BoxGrid) -> ComplexInterval:
    """The offset box phi with box_j = theta_j + phi."""
    half = 0.5 / grid.n
    return ComplexInterval(
        RealInterval(_down(-half), _up(half)),
        RealInterval(-grid.rho, grid.rho),
    )


def enclose_series_on_boxes(s: FourierSeries, grid: BoxGrid) -> list:
    """Per-box enclosures of the series image: shift by the offset box, IFFT."""
    if s.n != grid.n:
        raise DimensionMismatch(f"series size {s.n} != grid size {grid.n}")
    shifted = s.shift_complex(box_shift(grid))
    return list(fft_inverse(shifted.spectral()).values)


def sup_norm_on_strip(values) -> float:
    """Max modulus bound over boxes; vector entries take the max component."""
    best = 0.0
    for v in values:
        if isinstance(v, ComplexInterval):
            best = max(best, v.abs_upper())
        else:
            for comp in v:
                best = max(best, comp.abs_upper())
    return best


def thicken_fiber(values, radius: float) -> list:
    """Inflate per-box fiber enclosures by the sup-norm ball of the given radius."""
    if radius < 0.0:
        raise BadSize(f"negative radius {radius}")
    if radius == 0.0:
        return [tuple(v) for v in values]
    pad = RealInterval(-radius, radius)
    out = []
    for v in values:
        out.append(tuple(ComplexInterval(c.re + pad, c.im + pad) for c in v))
    return out
