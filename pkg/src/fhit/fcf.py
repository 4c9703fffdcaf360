"""Fourier coefficient files and certificate reports.

An FCF file stores one Fourier object (a torus column or a matrix of
series) as plain text: '#'-prefixed header fields, then one body line per
coefficient, `component_index k re im` with 17 significant digits so
doubles round-trip bit-exactly.  A validation candidate is a bundle of
four files sharing a stem: the torus plus .p1/.p2/.lam siblings.

Certificate reports are `key = value` lines, one bound per line, verdict
last; the timestamp comment is the only non-deterministic line.
"""

from __future__ import annotations

import datetime
import math
from dataclasses import dataclass

from .errors import ParseError, SizeMismatch, SymmetryViolation
from .interval import CI_ZERO, ComplexInterval, RealInterval, golden_mean
from .series import FourierSeries, _check_symmetry
from .fmatrix import FourierMatrix
from .validator import CandidateData, Certificate, ValidationParams

FORMAT_TAG = "fhit-fcf v1"


@dataclass(frozen=True)
class FcfHeader:
    n: int
    components: int
    kind: str              # "torus" or "matrix"
    rows: int
    cols: int
    omega: str             # "golden" or a decimal literal
    kappa: float
    eps_map: float


def parse_omega(text: str) -> RealInterval:
    """Expand the stored rotation number into an interval enclosure."""
    if text == "golden":
        return golden_mean()
    try:
        return RealInterval(float(text))
    except ValueError as exc:
        raise ParseError(f"bad omega value {text!r}") from exc


def omega_float(text: str) -> float:
    if text == "golden":
        return (math.sqrt(5.0) - 1.0) / 2.0
    return float(text)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def save_fcf(path, series_list, kind: str, rows: int, cols: int,
             omega: str, kappa: float, eps_map: float) -> None:
    """Write one Fourier object; series are stored by their coefficient midpoints.

    Candidate data is exact point intervals, so midpoints lose nothing.
    """
    n = series_list[0].n
    if kind == "torus":
        kind_line = "# kind torus"
    else:
        kind_line = f"# kind matrix {rows} {cols}"
    lines = [
        f"# {FORMAT_TAG}",
        f"# n {n}",
        f"# components {len(series_list)}",
        kind_line,
        f"# omega {omega}",
        f"# kappa {_fmt(kappa)}",
        f"# eps_map {_fmt(eps_map)}",
    ]
    for ci, s in enumerate(series_list):
        if s.n != n:
            raise SizeMismatch(f"component {ci} has n={s.n}, expected {n}")
        for k in s.indices():
            c = s.coeff(k).mid
            lines.append(f"{ci} {k} {_fmt(c.real)} {_fmt(c.imag)}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_fcf(path):
    """Read one Fourier object back as point-interval series."""
    header = {}
    kind = None
    rows = cols = 1
    body = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                fields = line[1:].split()
                if not fields:
                    continue
                if fields[0] == "fhit-fcf":
                    if " ".join(fields) != FORMAT_TAG:
                        raise ParseError(f"unsupported format tag {line!r}", lineno)
                    header["tag"] = True
                elif fields[0] == "kind":
                    kind = fields[1]
                    if kind == "matrix":
                        if len(fields) != 4:
                            raise ParseError("matrix kind needs rows and cols", lineno)
                        rows, cols = int(fields[2]), int(fields[3])
                    elif kind != "torus":
                        raise ParseError(f"unknown kind {kind!r}", lineno)
                elif len(fields) >= 2:
                    header[fields[0]] = fields[1]
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ParseError(f"expected 'component k re im', got {line!r}", lineno)
            try:
                body.append((int(parts[0]), int(parts[1]), float(parts[2]), float(parts[3]), lineno))
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from exc
    if "tag" not in header:
        raise ParseError("missing format tag")
    for field in ("n", "components", "omega", "kappa", "eps_map"):
        if field not in header:
            raise ParseError(f"missing header field {field}")
    if kind is None:
        raise ParseError("missing kind header")
    n = int(header["n"])
    components = int(header["components"])
    if len(body) != components * n:
        raise ParseError(f"expected {components * n} body lines, found {len(body)}")
    half = n // 2
    coeff_maps = [dict() for _ in range(components)]
    for ci, k, re, im, lineno in body:
        if not 0 <= ci < components:
            raise SizeMismatch(f"line {lineno}: component {ci} out of range")
        if not -half <= k < n - half:
            raise SizeMismatch(f"line {lineno}: index {k} outside I_{n}")
        if k in coeff_maps[ci]:
            raise ParseError(f"duplicate coefficient ({ci}, {k})", lineno)
        coeff_maps[ci][k] = ComplexInterval(re, im)
    series = [FourierSeries.from_coeff_map(n, m) for m in coeff_maps]
    hdr = FcfHeader(
        n=n,
        components=components,
        kind=kind,
        rows=rows,
        cols=cols,
        omega=header["omega"],
        kappa=float(header["kappa"]),
        eps_map=float(header["eps_map"]),
    )
    return hdr, series


def candidate_paths(path) -> dict:
    base = str(path)
    if base.endswith(".fcf"):
        base = base[: -len(".fcf")]
    return {
        "k0": base + ".fcf",
        "p1": base + ".p1.fcf",
        "p2": base + ".p2.fcf",
        "lam": base + ".lam.fcf",
    }


def save_candidate(data: CandidateData, path, omega: str, kappa: float, eps_map: float) -> None:
    """Write the four-file candidate bundle (torus, frames, multipliers)."""
    paths = candidate_paths(path)
    d = data.fiber_dim
    save_fcf(paths["k0"], [data.k0.entry(i, 0) for i in range(d)],
             "torus", d, 1, omega, kappa, eps_map)
    for name, mat in (("p1", data.p1), ("p2", data.p2)):
        save_fcf(paths[name], [mat.entry(i, j) for i in range(d) for j in range(d)],
                 "matrix", d, d, omega, kappa, eps_map)
    lam_series = [
        FourierSeries.constant(data.n, data.lambda_diag[i] if i == j else CI_ZERO)
        for i in range(d) for j in range(d)
    ]
    save_fcf(paths["lam"], lam_series, "matrix", d, d, omega, kappa, eps_map)


def load_candidate(path):
    """Read a candidate bundle; checks grid sizes, Nyquist zeros and symmetry."""
    paths = candidate_paths(path)
    hdr_k0, k0_series = load_fcf(paths["k0"])
    if hdr_k0.kind != "torus":
        raise ParseError(f"{paths['k0']} is not a torus file")
    d = len(k0_series)
    mats = {}
    for name in ("p1", "p2", "lam"):
        hdr, series = load_fcf(paths[name])
        if hdr.kind != "matrix" or hdr.rows != d or hdr.cols != d:
            raise SizeMismatch(f"{paths[name]} is not a {d}x{d} matrix file")
        if hdr.n != hdr_k0.n:
            raise SizeMismatch(f"{paths[name]} grid size {hdr.n} != {hdr_k0.n}")
        mats[name] = [series[i * d : (i + 1) * d] for i in range(d)]
    for s in k0_series + [e for name in ("p1", "p2") for row in mats[name] for e in row]:
        if s.coeffs[0] != CI_ZERO:
            raise SymmetryViolation("nonzero Nyquist coefficient in candidate data")
        _check_symmetry(s)
    lam_diag = tuple(mats["lam"][i][i].coeff(0) for i in range(d))
    data = CandidateData(
        k0=FourierMatrix([[s] for s in k0_series]),
        p1=FourierMatrix(mats["p1"]),
        p2=FourierMatrix(mats["p2"]),
        lambda_diag=lam_diag,
        n_stable=d // 2,
    )
    return data, hdr_k0


_REPORT_FIELDS = (
    ("eps_inv_err", "eps_inv_err"),
    ("eps_red", "eps_red"),
    ("eps_invert", "eps_invert"),
    ("lambda_s", "lambda_s"),
    ("lambda_u", "lambda_u"),
    ("lambda", "lam"),
    ("sigma", "sigma"),
    ("b_of_r", "b_of_r"),
    ("r_minus", "r_minus"),
    ("r_plus", "r_plus"),
)


def report_lines(cert: Certificate, params: ValidationParams, map_name: str,
                 omega: str, kappa: float, eps_map: float, n: int,
                 timestamp: bool = True) -> list:
    lines = ["# fhit certificate v1"]
    if timestamp:
        lines.append(f"# timestamp = {datetime.datetime.now().isoformat()}")
    lines.append(f"map = {map_name}")
    lines.append(f"kappa = {_fmt(kappa)}")
    lines.append(f"eps_map = {_fmt(eps_map)}")
    lines.append(f"omega = {omega}")
    lines.append(f"n = {n}")
    lines.append(f"rho = {_fmt(params.rho)}")
    lines.append(f"rho_hat = {_fmt(params.rho_hat)}")
    lines.append(f"radius = {_fmt(params.radius)}")
    if params.pad_to is not None:
        lines.append(f"pad_to = {params.pad_to}")
    if params.noise_floor is not None:
        lines.append(f"noise_floor = {_fmt(params.noise_floor)}")
    if cert.cn is not None:
        lines.append(f"cn = [{_fmt(cert.cn.lo)}, {_fmt(cert.cn.hi)}]")
    for key in sorted(cert.norms):
        lines.append(f"norm_{key} = {_fmt(cert.norms[key])}")
    for label, attr in _REPORT_FIELDS:
        value = getattr(cert, attr)
        if value is not None:
            lines.append(f"{label} = {_fmt(value)}")
    if cert.detail:
        lines.append(f"detail = {cert.detail}")
    lines.append(f"verdict = {cert.verdict}")
    return lines


def write_report(path, cert: Certificate, params: ValidationParams, map_name: str,
                 omega: str, kappa: float, eps_map: float, n: int) -> None:
    with open(path, "w") as fh:
        fh.write("\n".join(report_lines(cert, params, map_name, omega, kappa, eps_map, n)) + "\n")


def parse_report(text: str) -> dict:
    """Key/value view of a report (used by tests and downstream tooling)."""
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out
