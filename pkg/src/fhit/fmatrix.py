"""Matrices of Fourier series: norms, grid products, certified inverses.

Products and inverses are computed on the sampling grid and re-interpolated
by FFT; the interpolation error is controlled by C_N(rho, rho_hat) times
Fourier norms at rho_hat, following the product/inverse corollaries for
truncated series.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boxes import enclose_series_on_boxes, make_boxes
from .dft_error import cn_bound
from .errors import DimensionMismatch, GammaNotContracting, SingularGridPoint
from .interval import CI_ONE, CI_ZERO, ComplexInterval, RealInterval, _up
from .rfft import GridSamples, fft_forward
from .series import FourierSeries


class FourierMatrix:
    """m1 x m2 grid of Fourier series sharing one grid size."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = tuple(tuple(row) for row in entries)
        if not entries or not entries[0]:
            raise DimensionMismatch("empty matrix")
        cols = len(entries[0])
        n = entries[0][0].n
        for row in entries:
            if len(row) != cols:
                raise DimensionMismatch("ragged rows")
            for e in row:
                if e.n != n:
                    raise DimensionMismatch(f"mixed grid sizes {e.n} != {n}")
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("FourierMatrix is immutable")

    @property
    def n(self) -> int:
        return self.entries[0][0].n

    def entry(self, i: int, j: int) -> FourierSeries:
        return self.entries[i][j]

    @classmethod
    def constant(cls, values, n: int) -> "FourierMatrix":
        """Matrix of constant series from a grid of ComplexInterval values."""
        return cls([[FourierSeries.constant(n, v, True) for v in row] for row in values])

    @classmethod
    def identity(cls, m: int, n: int) -> "FourierMatrix":
        return cls.constant(
            [[CI_ONE if i == j else CI_ZERO for j in range(m)] for i in range(m)], n
        )

    def map_entries(self, fn) -> "FourierMatrix":
        return FourierMatrix([[fn(e) for e in row] for row in self.entries])

    def rotate(self, omega: RealInterval) -> "FourierMatrix":
        return self.map_entries(lambda e: e.rotate(omega))

    def pad(self, new_n: int) -> "FourierMatrix":
        return self.map_entries(lambda e: e.pad(new_n))

    def truncate_noise(self, floor: float) -> "FourierMatrix":
        return self.map_entries(lambda e: e.truncate_noise(floor))

    def subtract_constant(self, const) -> "FourierMatrix":
        """Subtract a constant interval matrix, exactly on the k = 0 mode."""
        if len(const) != self.rows or len(const[0]) != self.cols:
            raise DimensionMismatch("constant matrix shape mismatch")
        out = []
        for i, row in enumerate(self.entries):
            new_row = []
            for j, e in enumerate(row):
                coeffs = list(e.coeffs)
                coeffs[e.n // 2] = coeffs[e.n // 2] - const[i][j]
                new_row.append(FourierSeries(e.n, coeffs, False))
            out.append(new_row)
        return FourierMatrix(out)

    def grid_values(self) -> list:
        """Per-grid-point interval matrices [t][i][j]."""
        per_entry = [[list(e.grid_values().values) for e in row] for row in self.entries]
        return [
            [[per_entry[i][j][t] for j in range(self.cols)] for i in range(self.rows)]
            for t in range(self.n)
        ]


@dataclass(frozen=True)
class InverseEnclosure:
    """Certified inverse data per the grid-inverse corollary."""

    x_tilde: FourierMatrix
    gamma_norm: float
    inv_norm: float
    diff_norm: float


def interval_matrix_norm(rows) -> float:
    """max_i sum_j of modulus upper bounds, rounded up."""
    best = 0.0
    for row in rows:
        acc = 0.0
        for e in row:
            acc = _up(acc + e.abs_upper())
        best = max(best, acc)
    return best


def mat_norm(m: FourierMatrix, rho: float, mode: str = "fourier") -> float:
    """Upper bound of max_i sum_j ||entry_ij||_rho.

    Fourier mode sums per-entry Fourier norms; boxes mode takes the sup of
    per-box matrix norms over the rho-strip cover (tighter for wide strips).
    """
    if mode == "fourier":
        best = 0.0
        for row in m.entries:
            acc = 0.0
            for e in row:
                acc = _up(acc + e.fourier_norm(rho))
            best = max(best, acc)
        return best
    if mode == "boxes":
        grid = make_boxes(m.n, rho)
        per_entry = [[enclose_series_on_boxes(e, grid) for e in row] for row in m.entries]
        best = 0.0
        for t in range(m.n):
            best = max(
                best,
                interval_matrix_norm(
                    [[per_entry[i][j][t] for j in range(m.cols)] for i in range(m.rows)]
                ),
            )
        return best
    raise ValueError(f"unknown norm mode {mode!r}")


def matmul_point(a, b):
    rows = len(a)
    inner = len(b)
    cols = len(b[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = CI_ZERO
            for k in range(inner):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def matrix_from_grid(point_matrices, rows: int, cols: int, n: int) -> FourierMatrix:
    """Interpolate per-grid-point interval matrices into a series matrix."""
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            samples = GridSamples(n, tuple(point_matrices[t][i][j] for t in range(n)))
            row.append(FourierSeries(n, fft_forward(samples).values, False))
        out.append(row)
    return FourierMatrix(out)


def mat_product_grid(a: FourierMatrix, b: FourierMatrix, rho: float, rho_hat: float):
    """Grid product interpolation plus its rigorous truncation bound."""
    if a.cols != b.rows or a.n != b.n:
        raise DimensionMismatch(f"{a.rows}x{a.cols} @ {b.rows}x{b.cols}, n {a.n}/{b.n}")
    ga = a.grid_values()
    gb = b.grid_values()
    prods = [matmul_point(ga[t], gb[t]) for t in range(a.n)]
    product = matrix_from_grid(prods, a.rows, b.cols, a.n)
    cn = cn_bound(rho, rho_hat, a.n)
    bound = (cn * RealInterval(mat_norm(a, rho_hat)) * RealInterval(mat_norm(b, rho_hat))).hi
    return product, bound


def _gauss_jordan_inverse(m):
    """Interval Gauss-Jordan with partial pivoting on midpoint magnitude."""
    size = len(m)
    aug = [list(row) + [CI_ONE if i == j else CI_ZERO for j in range(size)]
           for i, row in enumerate(m)]
    for col in range(size):
        pivot_row = max(range(col, size), key=lambda r: abs(aug[r][col].mid))
        pivot = aug[pivot_row][col]
        if pivot.abs_lower() == 0.0:
            raise SingularGridPoint(f"pivot {pivot!r} in column {col} may contain 0")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv_terms = [aug[col][j] / pivot for j in range(2 * size)]
        aug[col] = inv_terms
        for r in range(size):
            if r == col:
                continue
            factor = aug[r][col]
            if factor == CI_ZERO:
                continue
            aug[r] = [aug[r][j] - factor * aug[col][j] for j in range(2 * size)]
    return [row[size:] for row in aug]


def mat_inverse_grid(a: FourierMatrix, rho: float, rho_hat: float) -> InverseEnclosure:
    """Certified inverse enclosure via grid inversion and a Neumann bound."""
    if a.rows != a.cols:
        raise DimensionMismatch(f"matrix {a.rows}x{a.cols} is not square")
    ga = a.grid_values()
    invs = [_gauss_jordan_inverse(ga[t]) for t in range(a.n)]
    x_tilde = matrix_from_grid(invs, a.rows, a.cols, a.n)
    cn = cn_bound(rho, rho_hat, a.n)
    norm_a = mat_norm(a, rho_hat)
    norm_x = mat_norm(x_tilde, rho_hat)
    gamma = (cn * RealInterval(norm_a) * RealInterval(norm_x)).hi
    if gamma >= 1.0:
        raise GammaNotContracting(f"gamma bound {gamma} >= 1")
    one_minus = RealInterval(1.0) - RealInterval(gamma)
    diff = (RealInterval(norm_x) * RealInterval(gamma) / one_minus).hi
    inv = (RealInterval(norm_x) / one_minus).hi
    return InverseEnclosure(x_tilde, gamma, inv, diff)
