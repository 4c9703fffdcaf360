"""Non-rigorous generator of validation candidates.

Double-precision Newton iteration for the invariant torus of a forced
skew-product, with simultaneous reduction of the transfer cocycle to a
constant diagonal frame.  Corrections are solved mode-wise in Fourier
space through the adapted frame; continuation in the forcing amplitude
re-seeds each solve from the previous one.  Nothing here is certified;
the output is exported as exact point-interval data for the validator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, ResidualTooLarge, SizeNotPowerOfTwo, SmallDivisor
from .interval import ComplexInterval
from .fmatrix import FourierMatrix
from .maps import ForcedStandardMap
from .series import FourierSeries, detect_noise_floor
from .validator import CandidateData

_SMALL_DIVISOR = 1e-12
_RESONANCE_GUARD = 0.02


@dataclass(frozen=True)
class SolverState:
    """Grid-space torus and frame data at one parameter value."""

    kappa: float
    eps_map: float
    omega: float
    n: int
    k: np.ndarray      # (2, N) fiber values on the grid
    p1: np.ndarray     # (2, 2, N) frame
    p2: np.ndarray     # (2, 2, N) approximate inverse frame
    lam: np.ndarray    # (2,) constant diagonal multipliers
    residuals: dict

    @property
    def lambda_s(self) -> float:
        return float(self.lam[0])

    @property
    def lambda_u(self) -> float:
        return float(self.lam[1])


def _rotate_grid(arr: np.ndarray, n: int, omega: float) -> np.ndarray:
    """Grid values of f(theta + omega) from grid values of f."""
    ks = np.fft.fftfreq(n, 1.0 / n)
    phase = np.exp(2j * np.pi * ks * omega)
    return np.fft.ifft(np.fft.fft(arr, axis=-1) * phase, axis=-1)


def _pad_grid(arr: np.ndarray, n: int, new_n: int) -> np.ndarray:
    """Re-sample grid values on a finer grid (zero-fill spectrum, drop Nyquist)."""
    coeffs = np.fft.fft(arr, axis=-1) / n
    shape = arr.shape[:-1] + (new_n,)
    out = np.zeros(shape, dtype=complex)
    half = n // 2
    out[..., :half] = coeffs[..., :half]
    if half > 1:
        out[..., new_n - (half - 1):] = coeffs[..., half + 1:]
    return np.fft.ifft(out * new_n, axis=-1)


def _point_inverse_2x2(p: np.ndarray) -> np.ndarray:
    det = p[0, 0] * p[1, 1] - p[0, 1] * p[1, 0]
    if np.any(np.abs(det) < 1e-14):
        raise SmallDivisor("frame matrix nearly singular on the grid")
    inv = np.empty_like(p)
    inv[0, 0] = p[1, 1] / det
    inv[0, 1] = -p[0, 1] / det
    inv[1, 0] = -p[1, 0] / det
    inv[1, 1] = p[0, 0] / det
    return inv


def initial_state(kappa: float, omega: float, n: int) -> SolverState:
    """Exact solution at zero forcing: constant torus and eigenframe."""
    fsm = ForcedStandardMap()
    (x0, y0), (lam_s, lam_u) = fsm.fixed_fiber_point(kappa)
    k = np.zeros((2, n), dtype=complex)
    k[0] += x0
    k[1] += y0

    def unit_col(lam):
        v = np.array([1.0, lam - 1.0 - kappa])
        return v / np.linalg.norm(v)

    cols = np.stack([unit_col(lam_s), unit_col(lam_u)], axis=1)
    p1 = np.repeat(cols[:, :, None], n, axis=2).astype(complex)
    p2 = _point_inverse_2x2(p1)
    lam = np.array([lam_s, lam_u])
    zero = {"invariance": 0.0, "reducibility": 0.0, "invertibility": 0.0}
    return SolverState(kappa, 0.0, omega, n, k, p1, p2, lam, zero)


def _residuals(state_k, p1, p2, lam, kappa, eps, omega, n):
    fsm = ForcedStandardMap()
    theta = np.arange(n) / n
    f1, f2 = fsm.grid_eval(kappa, eps, state_k[0], state_k[1], theta)
    e = np.stack([f1, f2]) - _rotate_grid(state_k, n, omega)
    m = fsm.grid_jacobian(kappa, state_k[0])
    p1rot = _rotate_grid(p1, n, omega)
    e_red = np.einsum("ijn,jkn->ikn", m, p1) - p1rot * lam[None, :, None]
    e_inv = np.einsum("ijn,jkn->ikn", p2, p1)
    e_inv[0, 0] -= 1.0
    e_inv[1, 1] -= 1.0
    return e, e_red, e_inv


def _torus_step(k, p1, p2, lam, e, omega, n):
    """Solve (Lambda - e^{2 pi i k omega}) xi_k = eta_k in the adapted frame."""
    ks = np.fft.fftfreq(n, 1.0 / n)
    phase = np.exp(2j * np.pi * ks * omega)
    p2rot = _rotate_grid(p2, n, omega)
    eta = -np.einsum("ijn,jn->in", p2rot, e)
    eta_hat = np.fft.fft(eta, axis=-1) / n
    denom = lam[:, None] - phase[None, :]
    if np.min(np.abs(denom)) < _SMALL_DIVISOR:
        raise SmallDivisor("torus cohomological denominator below threshold")
    xi = np.fft.ifft(eta_hat / denom * n, axis=-1)
    return k + np.einsum("ijn,jn->in", p1, xi)


def _tail_band(n: int) -> int:
    """Highest retained |k|; the band above is unresolvable junk territory."""
    return n // 2 - max(1, n // 128)


def _clip_tail(arr: np.ndarray, n: int) -> np.ndarray:
    """Zero spectral content with |k| above the retained band.

    Grid-space frame updates alias into the extreme modes where the true
    coefficients are far below roundoff; left in place that junk pumps the
    reducibility residual floor near the critical forcing."""
    keep = _tail_band(n)
    ks = np.abs(np.fft.fftfreq(n, 1.0 / n).astype(int))
    coeffs = np.fft.fft(arr, axis=-1)
    coeffs[..., ks > keep] = 0.0
    return np.fft.ifft(coeffs, axis=-1)


def _frame_residual(m, p1, lam, omega, n):
    e_p = np.einsum("ijn,jkn->ikn", m, p1) - _rotate_grid(p1, n, omega) * lam[None, :, None]
    return float(np.max(np.abs(e_p))), e_p


def _frame_step(e_p, p1, p2, lam, omega, n):
    """One multiplicative reducibility update P1 <- P1 (Id + W), Lambda <- Lambda + dLambda."""
    ks = np.fft.fftfreq(n, 1.0 / n)
    phase = np.exp(2j * np.pi * ks * omega)
    p2rot = _rotate_grid(p2, n, omega)
    s = np.einsum("ijn,jkn->ikn", p2rot, e_p)
    s_hat = np.fft.fft(s, axis=-1) / n
    d_lam = np.array([s_hat[0, 0, 0], s_hat[1, 1, 0]])
    rhs = -s_hat
    rhs[0, 0, 0] += d_lam[0]
    rhs[1, 1, 0] += d_lam[1]
    denom_w = lam[:, None, None] - phase[None, None, :] * lam[None, :, None]
    denom_w[0, 0, 0] = 1.0
    denom_w[1, 1, 0] = 1.0
    if np.min(np.abs(denom_w)) < _SMALL_DIVISOR:
        raise SmallDivisor("frame cohomological denominator below threshold")
    rhs_w = rhs / denom_w
    # High near-resonant modes (golden-mean denominators at Fibonacci indices
    # beyond the signal range) only fit roundoff noise; their residual
    # footprint is |denom| * |W|, so zeroing the correction there costs
    # nothing and stops noise from accumulating 1/|denom|-amplified spikes
    # in the frame spectrum.
    abs_ks = np.abs(ks.astype(int))
    resonant = (np.abs(denom_w) < _RESONANCE_GUARD) & (abs_ks[None, None, :] > n // 4)
    rhs_w[resonant] = 0.0
    rhs_w[..., abs_ks > _tail_band(n)] = 0.0
    w = np.fft.ifft(rhs_w * n, axis=-1)
    w[0, 0] += 1.0
    w[1, 1] += 1.0
    p1 = np.einsum("ijn,jkn->ikn", p1, w)
    lam = lam + d_lam.real
    p2 = _point_inverse_2x2(p1)
    return p1, p2, lam


def _newton_step(k, p1, p2, lam, e, kappa, omega, n, tol):
    k = _torus_step(k, p1, p2, lam, e, omega, n)
    # tighten the frame so the next torus correction is a true Newton step;
    # a pass that fails to improve is reverted (grid-space products alias at
    # the spectral tail, which would otherwise pump the residual floor)
    fsm = ForcedStandardMap()
    m = fsm.grid_jacobian(kappa, k[0])
    res, e_p = _frame_residual(m, p1, lam, omega, n)
    for _ in range(4):
        if res < 1e-15:
            break
        p1c, p2c, lamc = _frame_step(e_p, p1, p2, lam, omega, n)
        res_new, e_p_new = _frame_residual(m, p1c, lamc, omega, n)
        if res_new >= res:
            break
        p1, p2, lam = p1c, p2c, lamc
        res, e_p = res_new, e_p_new
        if res < 0.1 * tol:
            break
    return k, p1, p2, lam


def _normalize_columns(k, p1, p2, lam):
    """Rescale frame columns to mean unit length (a constant diagonal gauge,
    which commutes with the constant diagonal Lambda)."""
    for j in range(2):
        scale = math.sqrt(float(np.mean(np.abs(p1[0, j]) ** 2 + np.abs(p1[1, j]) ** 2)))
        if scale > 0.0:
            p1[:, j, :] /= scale
            p2[j, :, :] *= scale
    return k, p1, p2, lam


def solve_at(
    kappa: float,
    eps_map: float,
    omega: float,
    n: int,
    tol: float = 1e-10,
    guess: SolverState | None = None,
    max_iter: int = 40,
) -> SolverState:
    """Newton-solve the invariance + reducibility + inversion equations."""
    if n < 2 or (n & (n - 1)) != 0:
        raise SizeNotPowerOfTwo(f"grid size {n}")
    if guess is None:
        guess = initial_state(kappa, omega, n)
    k = guess.k.copy()
    p1 = guess.p1.copy()
    p2 = guess.p2.copy()
    lam = guess.lam.copy()
    if guess.n != n:
        if n < guess.n:
            raise SizeNotPowerOfTwo(f"cannot shrink grid {guess.n} -> {n}")
        k = _pad_grid(k, guess.n, n)
        p1 = _pad_grid(p1, guess.n, n)
        p2 = _pad_grid(p2, guess.n, n)
    p1 = _clip_tail(p1, n)
    p2 = _point_inverse_2x2(p1)

    best = math.inf
    stall = 0
    for _ in range(max_iter):
        e, e_red, e_inv = _residuals(k, p1, p2, lam, kappa, eps_map, omega, n)
        res = {
            "invariance": float(np.max(np.abs(e))),
            "reducibility": float(np.max(np.abs(e_red))),
            "invertibility": float(np.max(np.abs(e_inv))),
        }
        worst = max(res.values())
        if not math.isfinite(worst):
            raise NoConvergence(f"diverged at eps={eps_map}")
        if worst < tol:
            k, p1, p2, lam = _normalize_columns(k, p1, p2, lam)
            if abs(lam[0]) >= 1.0 or abs(lam[1]) <= 1.0:
                raise NoConvergence(
                    f"multipliers {lam} are no longer hyperbolic at eps={eps_map}"
                )
            return SolverState(kappa, eps_map, omega, n, k, p1, p2, lam, res)
        if worst < best * 0.7:
            stall = 0
        else:
            stall += 1
            if stall >= 8 or worst > 1e3 * max(best, tol):
                raise NoConvergence(f"residual stalled at {worst:g} for eps={eps_map}")
        best = min(best, worst)
        k, p1, p2, lam = _newton_step(k, p1, p2, lam, e, kappa, omega, n, tol)
    raise NoConvergence(f"no convergence after {max_iter} iterations at eps={eps_map}")


def continue_to(
    kappa: float,
    eps_end: float,
    steps: int,
    n_schedule,
    omega: float,
    tol: float = 1e-10,
    max_substeps: int = 6,
) -> SolverState:
    """Path-follow from zero forcing to eps_end with linearly spaced steps.

    The grid size grows along ``n_schedule`` (one contiguous segment of the
    path per schedule entry).  A failing step is bisected up to
    ``max_substeps`` times; exhausted bisection propagates the solver error
    tagged with the first failing amplitude.
    """
    n_schedule = list(n_schedule)
    if not n_schedule:
        raise ValueError("empty grid schedule")
    state = initial_state(kappa, omega, n_schedule[0])
    if eps_end == 0.0:
        return state
    targets = [eps_end * (i + 1) / steps for i in range(steps)]
    for i, eps in enumerate(targets):
        slot = min(i * len(n_schedule) // steps, len(n_schedule) - 1)
        n = n_schedule[slot]
        state = _advance(state, kappa, eps, omega, n, tol, max_substeps)
    return state


def _advance(state, kappa, eps, omega, n, tol, max_substeps):
    try:
        return solve_at(kappa, eps, omega, n, tol, guess=state)
    except (NoConvergence, SmallDivisor) as exc:
        if max_substeps <= 0:
            failure = type(exc)(f"continuation failed at eps={eps}: {exc}")
            failure.eps_failed = eps
            raise failure from exc
        middle = 0.5 * (state.eps_map + eps)
        state = _advance(state, kappa, middle, omega, n, tol, max_substeps - 1)
        return _advance(state, kappa, eps, omega, n, tol, max_substeps - 1)


def _symmetrized_coeffs(values: np.ndarray, n: int) -> list:
    """Point-interval coefficients over I_N with exact conjugate symmetry
    and a zero Nyquist mode."""
    c = np.fft.fft(values) / n
    half = n // 2
    out = [None] * n
    out[0] = ComplexInterval(0.0, 0.0)
    out[half] = ComplexInterval(float(c[0].real), 0.0)
    for k in range(1, half):
        avg = 0.5 * (c[k] + np.conj(c[-k % n]))
        out[half + k] = ComplexInterval(float(avg.real), float(avg.imag))
        out[half - k] = ComplexInterval(float(avg.real), -float(avg.imag))
    return out


def export_candidate(
    state: SolverState,
    residual_cap: float = 1e-8,
    clean: bool = True,
) -> CandidateData:
    """Freeze the solver state into exact interval data for the validator.

    With ``clean`` each series is truncated at its own detected noise floor;
    near the critical forcing the frame carries high-mode junk at the Newton
    floor which strip-weighted Fourier norms would otherwise amplify into
    useless bounds.  The truncated series is the candidate being validated,
    so no rigor is lost."""
    worst = max(state.residuals.values())
    if worst > residual_cap:
        raise ResidualTooLarge(f"residual {worst:g} exceeds export cap {residual_cap:g}")
    n = state.n

    def to_series(values):
        s = FourierSeries(n, _symmetrized_coeffs(values, n), True)
        if clean:
            s = s.truncate_noise(detect_noise_floor(s))
        return s

    k0 = FourierMatrix([[to_series(state.k[0])], [to_series(state.k[1])]])
    p1 = FourierMatrix([[to_series(state.p1[i, j]) for j in range(2)] for i in range(2)])
    p2 = FourierMatrix([[to_series(state.p2[i, j]) for j in range(2)] for i in range(2)])
    lam = (
        ComplexInterval(state.lambda_s, 0.0),
        ComplexInterval(state.lambda_u, 0.0),
    )
    return CandidateData(k0, p1, p2, lam, 1)


def golden_mean_float() -> float:
    return (math.sqrt(5.0) - 1.0) / 2.0
