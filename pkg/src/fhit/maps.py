"""Analytic skew-product map models over interval inputs.

A model exposes rigorous fiber-map evaluation, the fiber Jacobian, and an
upper bound on the second fiber derivative (as a bilinear map, per
component), all over complex-interval boxes.  Models also provide float
grid evaluation for the non-rigorous solver.  The forced standard map is
the one registered model.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .interval import TWO_PI, CI_ONE, CI_ZERO, ComplexInterval, RealInterval


@dataclass(frozen=True)
class SkewMapParams:
    """kappa, forcing amplitude eps_map, and an enclosure of the rotation omega."""

    kappa: float
    eps_map: float
    omega: RealInterval


@dataclass(frozen=True)
class FiberPoint:
    """Fiber coordinates z (n complex boxes) over a base angle box theta."""

    z: tuple
    theta: ComplexInterval


def sin_complex(z: ComplexInterval) -> ComplexInterval:
    """sin(a + bi) = sin a cosh b + i cos a sinh b."""
    a = z.re
    b = z.im
    return ComplexInterval(a.sin() * b.cosh(), a.cos() * b.sinh())


def cos_complex(z: ComplexInterval) -> ComplexInterval:
    """cos(a + bi) = cos a cosh b - i sin a sinh b."""
    a = z.re
    b = z.im
    return ComplexInterval(a.cos() * b.cosh(), -(a.sin() * b.sinh()))


class ForcedStandardMap:
    """Standard map with quasi-periodic forcing in both components:

        F1(x, y, theta) = x + y - (kappa / 2 pi) sin(2 pi x) - eps sin(2 pi theta)
        F2(x, y, theta) = y     - (kappa / 2 pi) sin(2 pi x) - eps sin(2 pi theta)

    The fiber map is entire, so the domain never constrains validation.
    """

    name = "standard-forced"
    fiber_dim = 2

    # -- rigorous interval evaluation ---------------------------------------

    def evaluate(self, params: SkewMapParams, pt: FiberPoint) -> tuple:
        x, y = self._unpack(pt)
        kick = self._kick(params, x, pt.theta)
        f2 = y - kick
        return (x + f2, f2)

    def jacobian(self, params: SkewMapParams, pt: FiberPoint) -> tuple:
        x, _ = self._unpack(pt)
        kc = cos_complex(x.scale(TWO_PI)).scale(RealInterval(params.kappa))
        return (
            (CI_ONE - kc, CI_ONE),
            (-kc, CI_ONE),
        )

    def hessian_bound(self, params: SkewMapParams, pt: FiberPoint) -> float:
        # the only nonzero second fiber derivative is
        # d^2 F^i / dx^2 = 2 pi kappa sin(2 pi x), identical for both components
        x, _ = self._unpack(pt)
        s = sin_complex(x.scale(TWO_PI))
        return s.scale(TWO_PI * params.kappa).abs_upper()

    def in_domain(self, params: SkewMapParams, pt: FiberPoint) -> bool:
        return True

    def _unpack(self, pt: FiberPoint):
        if len(pt.z) != self.fiber_dim:
            raise DimensionMismatch(f"expected {self.fiber_dim} fiber coordinates, got {len(pt.z)}")
        return pt.z[0], pt.z[1]

    def _kick(self, params: SkewMapParams, x: ComplexInterval, theta: ComplexInterval) -> ComplexInterval:
        k_over = RealInterval(params.kappa) / TWO_PI
        kick = sin_complex(x.scale(TWO_PI)).scale(k_over)
        if params.eps_map != 0.0:
            kick = kick + sin_complex(theta.scale(TWO_PI)).scale(RealInterval(params.eps_map))
        return kick

    # -- float grid evaluation for the solver --------------------------------

    def grid_eval(self, kappa: float, eps: float, x, y, theta):
        kick = kappa / (2.0 * np.pi) * np.sin(2.0 * np.pi * x) + eps * np.sin(2.0 * np.pi * theta)
        f2 = y - kick
        return x + f2, f2

    def grid_jacobian(self, kappa: float, x):
        """Entries of D_z F at fiber points x: [[1 - kc, 1], [-kc, 1]]."""
        kc = kappa * np.cos(2.0 * np.pi * x)
        one = np.ones_like(kc)
        return np.array([[1.0 - kc, one], [-kc, one]])

    def fixed_fiber_point(self, kappa: float):
        """Hyperbolic fixed point of the unforced fiber map and its multipliers."""
        x0, y0 = 0.5, 0.0
        tr = 2.0 + kappa
        disc = np.sqrt(tr * tr - 4.0)
        lam_u = 0.5 * (tr + disc)
        lam_s = 0.5 * (tr - disc)
        return (x0, y0), (lam_s, lam_u)


_REGISTRY = {ForcedStandardMap.name: ForcedStandardMap()}


def get_map(name: str):
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown map model {name!r}; known: {sorted(_REGISTRY)}") from None
