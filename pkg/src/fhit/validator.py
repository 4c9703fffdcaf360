"""Newton-Kantorovich validation of candidate invariant tori.

Assembles rigorous bounds for the invariance, reducibility and invertibility
errors, the hyperbolicity gap, the second-derivative bound b(R), and the
existence/uniqueness radii, then renders a verdict.  Every bound is an
upward-rounded upper bound computed in interval arithmetic; failures are
encoded in the certificate, never silently absorbed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .boxes import enclose_series_on_boxes, make_boxes, sup_norm_on_strip, thicken_fiber
from .dft_error import StripPair, cn_bound
from .errors import (
    DimensionMismatch,
    DomainEscape,
    FhitError,
    GapClosed,
    NotContracting,
    NoValidRadius,
)
from .fmatrix import FourierMatrix, interval_matrix_norm, mat_norm, matrix_from_grid, matmul_point
from .interval import ComplexInterval, RealInterval, _down, _up
from .maps import FiberPoint, SkewMapParams
from .rfft import GridSamples, fft_forward
from .series import FourierSeries


@dataclass(frozen=True)
class CandidateData:
    """Validation inputs: torus K0 (n x 1), frames P1/P2 (n x n), constant
    diagonal Lambda split into a stable and an unstable block."""

    k0: FourierMatrix
    p1: FourierMatrix
    p2: FourierMatrix
    lambda_diag: tuple
    n_stable: int

    def __post_init__(self):
        n_fiber = self.k0.rows
        if self.k0.cols != 1:
            raise DimensionMismatch("torus must be a column matrix")
        if self.p1.rows != n_fiber or self.p1.cols != n_fiber:
            raise DimensionMismatch("P1 shape mismatch")
        if self.p2.rows != n_fiber or self.p2.cols != n_fiber:
            raise DimensionMismatch("P2 shape mismatch")
        if len(self.lambda_diag) != n_fiber:
            raise DimensionMismatch("Lambda diagonal length mismatch")
        if not 0 < self.n_stable < n_fiber:
            raise DimensionMismatch(f"stable block size {self.n_stable} out of range")
        if not (self.k0.n == self.p1.n == self.p2.n):
            raise DimensionMismatch("K0/P1/P2 grid sizes differ")

    @property
    def n(self) -> int:
        return self.k0.n

    @property
    def fiber_dim(self) -> int:
        return self.k0.rows

    def lambda_matrix(self) -> list:
        d = self.fiber_dim
        zero = ComplexInterval(0.0, 0.0)
        return [
            [self.lambda_diag[i] if i == j else zero for j in range(d)]
            for i in range(d)
        ]

    def preprocess(self, params: "ValidationParams") -> "CandidateData":
        k0, p1, p2 = self.k0, self.p1, self.p2
        if params.noise_floor is not None and params.noise_floor > 0.0:
            k0 = k0.truncate_noise(params.noise_floor)
            p1 = p1.truncate_noise(params.noise_floor)
            p2 = p2.truncate_noise(params.noise_floor)
        if params.pad_to is not None and params.pad_to != k0.n:
            k0 = k0.pad(params.pad_to)
            p1 = p1.pad(params.pad_to)
            p2 = p2.pad(params.pad_to)
        return CandidateData(k0, p1, p2, self.lambda_diag, self.n_stable)


@dataclass(frozen=True)
class ValidationParams:
    """Strip widths, fiber radius, and optional preprocessing knobs."""

    rho: float
    rho_hat: float
    radius: float
    pad_to: int | None = None
    noise_floor: float | None = None

    def strip(self) -> StripPair:
        return StripPair(self.rho, self.rho_hat)


@dataclass
class Certificate:
    """All validated bounds plus the verdict."""

    verdict: str = "failed:Incomplete"
    cn: RealInterval | None = None
    eps_inv_err: float | None = None
    eps_red: float | None = None
    eps_invert: float | None = None
    lambda_s: float | None = None
    lambda_u: float | None = None
    lam: float | None = None
    sigma: float | None = None
    b_of_r: float | None = None
    r_minus: float | None = None
    r_plus: float | None = None
    norms: dict = field(default_factory=dict)
    detail: str = ""

    @property
    def validated(self) -> bool:
        return self.verdict == "validated"


def _torus_grid_points(data: CandidateData) -> list:
    """Per-grid-point fiber enclosures of K0 (list of n-tuples)."""
    comps = [list(data.k0.entry(i, 0).grid_values().values) for i in range(data.fiber_dim)]
    return [tuple(c[t] for c in comps) for t in range(data.n)]


def _torus_box_points(data: CandidateData, rho: float):
    grid = make_boxes(data.n, rho)
    comps = [enclose_series_on_boxes(data.k0.entry(i, 0), grid) for i in range(data.fiber_dim)]
    pts = [tuple(c[t] for c in comps) for t in range(data.n)]
    return grid, pts


def _require_domain(map_model, params_map, pts, boxes) -> None:
    for z, theta in zip(pts, boxes):
        if not map_model.in_domain(params_map, FiberPoint(z, theta)):
            raise DomainEscape("image enclosure leaves the map domain")


def invariance_error(data: CandidateData, params: ValidationParams, map_model, map_params: SkewMapParams):
    """Upper bound of the invariance residual norm on the rho-strip.

    C_N(rho, rho_hat) ||F(K0, .)||_rho_hat  (boxes at rho_hat)
      + || interp(F o K0) - K0(. + omega) ||_{F, rho}.
    Returns (eps, ||F o K0||_rho_hat).
    """
    n = data.n
    d = data.fiber_dim
    cn = cn_bound(params.rho, params.rho_hat, n)

    # grid term: interpolate F(K0(theta_j), theta_j) and compare with the rotation
    grid_pts = _torus_grid_points(data)
    thetas = [ComplexInterval(RealInterval(t / n), RealInterval(0.0)) for t in range(n)]
    images = [
        map_model.evaluate(map_params, FiberPoint(grid_pts[t], thetas[t]))
        for t in range(n)
    ]
    term2 = 0.0
    for i in range(d):
        samples = GridSamples(n, tuple(img[i] for img in images))
        interp = FourierSeries(n, fft_forward(samples).values, False)
        rotated = data.k0.entry(i, 0).rotate(map_params.omega)
        term2 = max(term2, (interp - rotated).fourier_norm(params.rho))

    # strip term: boxes at rho_hat
    boxgrid, box_pts = _torus_box_points(data, params.rho_hat)
    _require_domain(map_model, map_params, box_pts, boxgrid.boxes)
    box_images = [
        map_model.evaluate(map_params, FiberPoint(box_pts[t], boxgrid.boxes[t]))
        for t in range(n)
    ]
    norm_fk0 = sup_norm_on_strip(box_images)

    eps = (cn * RealInterval(norm_fk0) + RealInterval(term2)).hi
    return eps, norm_fk0


def _m0_strip_norm(data: CandidateData, rho_hat: float, map_model, map_params) -> float:
    """Boxes bound of ||D_z F(K0(.), .)||_rho_hat (the transfer matrix is not truncated)."""
    boxgrid, box_pts = _torus_box_points(data, rho_hat)
    best = 0.0
    for t in range(data.n):
        jac = map_model.jacobian(map_params, FiberPoint(box_pts[t], boxgrid.boxes[t]))
        best = max(best, interval_matrix_norm(jac))
    return best


def reducibility_error(data: CandidateData, params: ValidationParams, map_model, map_params: SkewMapParams):
    """Upper bound of ||P2(. + omega) M0(.) P1(.) - Lambda||_rho.

    Returns (eps_1, norms) with norms holding the rho_hat factors.
    """
    n = data.n
    cn = cn_bound(params.rho, params.rho_hat, n)

    p2rot = data.p2.rotate(map_params.omega)
    gp2 = p2rot.grid_values()
    gp1 = data.p1.grid_values()
    grid_pts = _torus_grid_points(data)
    thetas = [ComplexInterval(RealInterval(t / n), RealInterval(0.0)) for t in range(n)]
    prods = []
    for t in range(n):
        m0 = map_model.jacobian(map_params, FiberPoint(grid_pts[t], thetas[t]))
        prods.append(matmul_point(matmul_point(gp2[t], [list(r) for r in m0]), gp1[t]))
    product = matrix_from_grid(prods, data.fiber_dim, data.fiber_dim, n)
    diff = product.subtract_constant(data.lambda_matrix())
    term2 = mat_norm(diff, params.rho, "fourier")

    p1_hat = mat_norm(data.p1, params.rho_hat, "fourier")
    p2_hat = mat_norm(data.p2, params.rho_hat, "fourier")
    m0_hat = _m0_strip_norm(data, params.rho_hat, map_model, map_params)
    eps1 = (
        cn * RealInterval(p2_hat) * RealInterval(m0_hat) * RealInterval(p1_hat)
        + RealInterval(term2)
    ).hi
    norms = {"p1_rho_hat": p1_hat, "p2_rho_hat": p2_hat, "m0_rho_hat": m0_hat}
    return eps1, norms


def invertibility_error(data: CandidateData, params: ValidationParams) -> float:
    """Upper bound of ||P2 P1 - Id||_rho via the grid product."""
    n = data.n
    cn = cn_bound(params.rho, params.rho_hat, n)
    gp2 = data.p2.grid_values()
    gp1 = data.p1.grid_values()
    prods = [matmul_point(gp2[t], gp1[t]) for t in range(n)]
    product = matrix_from_grid(prods, data.fiber_dim, data.fiber_dim, n)
    d = data.fiber_dim
    one = ComplexInterval(1.0, 0.0)
    zero = ComplexInterval(0.0, 0.0)
    ident = [[one if i == j else zero for j in range(d)] for i in range(d)]
    term2 = mat_norm(product.subtract_constant(ident), params.rho, "fourier")
    p1_hat = mat_norm(data.p1, params.rho_hat, "fourier")
    p2_hat = mat_norm(data.p2, params.rho_hat, "fourier")
    return (cn * RealInterval(p2_hat) * RealInterval(p1_hat) + RealInterval(term2)).hi


def lambda_bound(data: CandidateData):
    """(lambda_s, lambda_u, lambda) for the constant diagonal normal form.

    lambda_s bounds ||Lambda_s||, lambda_u bounds ||Lambda_u^{-1}||; the gap
    quantity is max(lambda_s, 2 - 1/lambda_u).
    """
    stable = data.lambda_diag[: data.n_stable]
    unstable = data.lambda_diag[data.n_stable :]
    lam_s = max(e.abs_upper() for e in stable)
    lam_u = 0.0
    for e in unstable:
        low = e.abs_lower()
        if low <= 0.0:
            raise NotContracting("unstable multiplier enclosure touches 0")
        lam_u = max(lam_u, (RealInterval(1.0) / RealInterval(low)).hi)
    if lam_s >= 1.0 or lam_u >= 1.0:
        raise NotContracting(f"lambda_s={lam_s}, lambda_u={lam_u}; need both < 1")
    two_minus = (RealInterval(2.0) - RealInterval(1.0) / RealInterval(lam_u)).hi
    return lam_s, lam_u, max(lam_s, two_minus)


def lambda_u_general(lambda_u: FourierMatrix, params: ValidationParams) -> float:
    """||Lambda_u^{-1}||_rho bound for a non-constant unstable block."""
    from .fmatrix import mat_inverse_grid

    enclosure = mat_inverse_grid(lambda_u, params.rho, params.rho_hat)
    return enclosure.inv_norm


def sigma_bound(p1_norm: float, p2_norm: float, lam: float, eps1: float, eps2: float) -> float:
    """||(M - I)^{-1}|| <= ||P1|| (1 - (lambda + eps1 + eps2))^{-1} ||P2||."""
    gap = RealInterval(1.0) - (RealInterval(lam) + RealInterval(eps1) + RealInterval(eps2))
    if gap.lo <= 0.0:
        raise GapClosed(f"lambda + eps1 + eps2 >= 1 (gap enclosure {gap!r})")
    return (RealInterval(p1_norm) * (RealInterval(1.0) / gap) * RealInterval(p2_norm)).hi


def b_bound(data: CandidateData, params: ValidationParams, map_model, map_params: SkewMapParams) -> float:
    """sup of the per-component bilinear second-derivative norm over the
    rho-strip torus neighborhood thickened by R in the fiber.

    The Lipschitz condition of the validation theorem quantifies over the
    rho-strip (the space the invariance operator acts on), so boxes at rho
    suffice; b only grows with the strip, so this is the sharp admissible
    choice."""
    boxgrid, box_pts = _torus_box_points(data, params.rho)
    thick = thicken_fiber(box_pts, params.radius)
    _require_domain(map_model, map_params, thick, boxgrid.boxes)
    best = 0.0
    for t in range(data.n):
        best = max(best, map_model.hessian_bound(map_params, FiberPoint(thick[t], boxgrid.boxes[t])))
    return best


def _nk_conditions_hold(sigma: float, b: float, eps: float, r: float) -> bool:
    """Rigorous check of (1/2) s b r^2 - r + s e <= 0 and s b r < 1."""
    s = RealInterval(sigma)
    bi = RealInterval(b)
    ri = RealInterval(r)
    q = s * bi * ri.sq() * 0.5 - ri + s * RealInterval(eps)
    if q.hi > 0.0:
        return False
    return (s * bi * ri).hi < 1.0


def radii(sigma: float, eps: float, b: float, radius: float):
    """Existence radius r_minus and uniqueness radius r_plus, both re-verified
    in interval arithmetic against the two Newton-Kantorovich inequalities."""
    s = RealInterval(sigma)
    bi = RealInterval(b)
    ei = RealInterval(eps)
    disc = RealInterval(1.0) - s * s * bi * ei * 2.0
    if disc.lo <= 0.0:
        raise NoValidRadius(f"discriminant enclosure {disc!r} not certainly positive")
    sqrt_disc = disc.sqrt()
    # stable form of the smaller root (1 - sqrt(1 - 2 s^2 b e)) / (s b)
    r_minus = (s * ei * 2.0 / (RealInterval(1.0) + sqrt_disc)).hi
    for _ in range(64):
        if _nk_conditions_hold(sigma, b, eps, r_minus):
            break
        r_minus = _up(r_minus * (1.0 + 2.0 ** -40))
    else:
        raise NoValidRadius("existence radius failed interval re-verification")
    if r_minus >= radius:
        raise NoValidRadius(f"existence radius {r_minus} >= R = {radius}")

    larger_root = ((RealInterval(1.0) + sqrt_disc) / (s * bi)).lo
    cap = (RealInterval(1.0) / (s * bi)).lo
    r_plus = _down(min(larger_root, cap, radius) * (1.0 - 2.0 ** -16))
    for _ in range(64):
        if r_plus > r_minus and _nk_conditions_hold(sigma, b, eps, r_plus):
            break
        r_plus = _down(r_plus * (1.0 - 2.0 ** -16))
    else:
        raise NoValidRadius("uniqueness radius failed interval re-verification")
    return r_minus, r_plus


def validate(data: CandidateData, params: ValidationParams, map_model, map_params: SkewMapParams) -> Certificate:
    """Run the full pipeline; failures land in the verdict, not exceptions."""
    cert = Certificate()
    try:
        strip = params.strip()
        work = data.preprocess(params)
        cert.cn = cn_bound(strip.rho, strip.rho_hat, work.n)

        cert.norms["p1_rho"] = mat_norm(work.p1, params.rho, "fourier")
        cert.norms["p2_rho"] = mat_norm(work.p2, params.rho, "fourier")

        eps, norm_fk0 = invariance_error(work, params, map_model, map_params)
        cert.eps_inv_err = eps
        cert.norms["fk0_rho_hat"] = norm_fk0

        eps1, red_norms = reducibility_error(work, params, map_model, map_params)
        cert.eps_red = eps1
        cert.norms.update(red_norms)

        cert.eps_invert = invertibility_error(work, params)

        cert.lambda_s, cert.lambda_u, cert.lam = lambda_bound(work)
        cert.sigma = sigma_bound(
            cert.norms["p1_rho"], cert.norms["p2_rho"], cert.lam, cert.eps_red, cert.eps_invert
        )
        cert.b_of_r = b_bound(work, params, map_model, map_params)
        cert.r_minus, cert.r_plus = radii(cert.sigma, cert.eps_inv_err, cert.b_of_r, params.radius)
    except FhitError as exc:
        cert.verdict = f"failed:{type(exc).__name__}"
        cert.detail = str(exc)
        return cert
    cert.verdict = "validated"
    return cert
