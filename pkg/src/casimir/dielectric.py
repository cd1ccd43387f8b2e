"""Dielectric response epsilon(i*zeta) on the imaginary frequency axis.

Metals are described by the Drude form, by a table of epsilon(i*zeta)
samples (for example produced from measured absorption data through the
Kramers-Kronig transform), or by the limiting models used in oracle tests
(vacuum, ideal metal).  On the imaginary axis the permittivity of any
passive medium is real, at least 1, and non-increasing in frequency.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad

from .quantities import CODATA

__all__ = [
    "DrudeParams",
    "MaterialDatabase",
    "UnknownMaterialError",
    "BlochGruneisenParams",
    "PermittivityTable",
    "DielectricModel",
    "DrudeModel",
    "TabulatedModel",
    "Vacuum",
    "IdealMetal",
    "drude_epsilon",
    "plasma_wavelength_nm",
    "bloch_gruneisen_nu",
    "kramers_kronig_transform",
    "epsilon_at",
    "read_optical_csv",
]


@dataclass(frozen=True)
class DrudeParams:
    """Plasma frequency and relaxation frequency, both in eV.

    A vanishing relaxation frequency is rejected at construction: real
    samples keep nu > 0 down to T=0 through impurity scattering, and the
    analytic treatment of the static TE mode relies on that.
    """

    omega_p_eV: float
    nu_eV: float
    label: str = ""

    def __post_init__(self) -> None:
        if not self.omega_p_eV > 0:
            raise ValueError(f"plasma frequency must be positive, got {self.omega_p_eV}")
        if not self.nu_eV > 0:
            raise ValueError(f"relaxation frequency must be positive, got {self.nu_eV}")


def drude_epsilon(params: DrudeParams, zeta_eV):
    """Drude permittivity 1 + omega_p^2/(zeta*(zeta+nu)) for zeta > 0 (eV).

    Strictly decreasing in zeta.  The zeta=0 limit diverges for a metal and
    is never evaluated numerically; the static Matsubara mode has its own
    analytic path.
    """
    z = np.asarray(zeta_eV, dtype=float)
    if np.any(z <= 0):
        raise ValueError("zeta must be positive; the static mode is handled analytically")
    out = 1.0 + params.omega_p_eV**2 / (z * (z + params.nu_eV))
    return float(out) if out.ndim == 0 else out


def plasma_wavelength_nm(params: DrudeParams) -> float:
    """Plasma wavelength 2*pi*hbar*c/omega_p in nm."""
    return 2.0 * math.pi * CODATA.hbar_c_eV_nm / params.omega_p_eV


_BUILTIN_MATERIALS = (
    DrudeParams(omega_p_eV=9.03, nu_eV=34.5e-3, label="Au"),
    DrudeParams(omega_p_eV=8.97, nu_eV=29.5e-3, label="Cu"),
    DrudeParams(omega_p_eV=11.5, nu_eV=50.6e-3, label="Al"),
)


class UnknownMaterialError(KeyError):
    """Material label not present in the database."""


class MaterialDatabase:
    """Immutable, case-insensitive label -> DrudeParams lookup."""

    def __init__(self, entries: Iterable[DrudeParams]):
        table = {}
        for p in entries:
            if not p.label:
                raise ValueError("database entries need a nonempty label")
            table[p.label.lower()] = p
        self._entries = MappingProxyType(table)

    @classmethod
    def builtin(cls) -> "MaterialDatabase":
        return cls(_BUILTIN_MATERIALS)

    @classmethod
    def from_json(cls, path) -> "MaterialDatabase":
        """Load a JSON array of {label, omega_p_eV, nu_eV}, merged over the
        built-in entries (file entries win on label collision)."""
        with open(path) as fh:
            raw = json.load(fh)
        if not isinstance(raw, list):
            raise ValueError(f"{path}: expected a JSON array of material objects")
        entries = {p.label.lower(): p for p in _BUILTIN_MATERIALS}
        for item in raw:
            try:
                p = DrudeParams(
                    omega_p_eV=float(item["omega_p_eV"]),
                    nu_eV=float(item["nu_eV"]),
                    label=str(item["label"]),
                )
            except (KeyError, TypeError) as exc:
                raise ValueError(f"{path}: malformed material entry {item!r}") from exc
            entries[p.label.lower()] = p
        return cls(entries.values())

    def get(self, label: str) -> DrudeParams:
        try:
            return self._entries[label.lower()]
        except KeyError:
            known = ", ".join(sorted(p.label for p in self._entries.values()))
            raise UnknownMaterialError(f"unknown material {label!r} (known: {known})") from None

    def labels(self) -> tuple[str, ...]:
        return tuple(sorted(p.label for p in self._entries.values()))


@dataclass(frozen=True)
class BlochGruneisenParams:
    """Phonon-scattering model constants; theta defaults to gold's 175 K."""

    theta_K: float = 175.0
    prefactor_eV: float = 0.0847

    def __post_init__(self) -> None:
        if not self.theta_K > 0:
            raise ValueError(f"theta must be positive, got {self.theta_K}")
        if not self.prefactor_eV > 0:
            raise ValueError(f"prefactor must be positive, got {self.prefactor_eV}")


def _bg_integrand(x: float) -> float:
    # x^5 e^x/(e^x-1)^2 == x^5/(4 sinh^2(x/2)); behaves as x^3 near 0
    if x <= 0.0:
        return 0.0
    return x**5 / (4.0 * math.sinh(0.5 * x) ** 2)


def bloch_gruneisen_nu(params: BlochGruneisenParams, T_K: float) -> float:
    """Temperature-dependent relaxation frequency in eV.

    nu(T) = prefactor * (T/theta)^5 * int_0^{theta/T} x^5 e^x/(e^x-1)^2 dx,
    evaluated by adaptive quadrature of the sinh form.  nu -> 0 as T -> 0
    (as T^5); a physical sample additionally keeps a finite impurity floor,
    which this model deliberately ignores.
    """
    if T_K <= 0:
        raise ValueError(f"temperature must be positive, got {T_K}")
    upper = params.theta_K / T_K
    # beyond x ~ 200 the integrand is < 1e-70; capping also avoids sinh overflow
    cut = min(upper, 200.0)
    val, _ = quad(_bg_integrand, 0.0, cut, epsabs=0.0, epsrel=1e-12, limit=200)
    return params.prefactor_eV * (T_K / params.theta_K) ** 5 * val


@dataclass(frozen=True)
class PermittivityTable:
    """Samples of epsilon(i*zeta) with zeta strictly increasing (internally eV).

    Interpolation is log-log linear in (zeta, eps-1): the permittivity of a
    metal spans many decades and is power-law-like on the imaginary axis.
    """

    zeta_eV: np.ndarray
    eps: np.ndarray

    def __post_init__(self) -> None:
        z = np.atleast_1d(np.asarray(self.zeta_eV, dtype=float))
        e = np.atleast_1d(np.asarray(self.eps, dtype=float))
        if z.size < 2 or e.shape != z.shape:
            raise ValueError("need at least two (zeta, eps) samples of equal length")
        if np.any(z <= 0) or np.any(np.diff(z) <= 0):
            raise ValueError("zeta samples must be positive and strictly increasing")
        if np.any(e < 1.0):
            raise ValueError("epsilon(i*zeta) must be >= 1 everywhere")
        if np.any(np.diff(e) > 1e-9 * e[:-1]):
            raise ValueError("epsilon(i*zeta) must be non-increasing in zeta")
        object.__setattr__(self, "zeta_eV", z)
        object.__setattr__(self, "eps", e)

    @property
    def zeta_min_eV(self) -> float:
        return float(self.zeta_eV[0])

    @property
    def zeta_max_eV(self) -> float:
        return float(self.zeta_eV[-1])

    def interpolate(self, zeta_eV):
        """Log-log interpolation of eps-1; valid inside the sampled window."""
        z = np.asarray(zeta_eV, dtype=float)
        log_eps = np.log(np.maximum(self.eps - 1.0, 1e-300))
        out = 1.0 + np.exp(np.interp(np.log(z), np.log(self.zeta_eV), log_eps))
        return float(out) if out.ndim == 0 else out

    @classmethod
    def from_csv(cls, path) -> "PermittivityTable":
        """Read the CSV format ``zeta_rad_s,eps_izeta`` (frequencies rad/s)."""
        zeta_rad_s, eps = _read_two_column_csv(path, ("zeta_rad_s", "eps_izeta"))
        return cls(zeta_eV=zeta_rad_s / CODATA.eV_to_rad_per_s, eps=eps)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["zeta_rad_s", "eps_izeta"])
            for z, e in zip(self.zeta_eV * CODATA.eV_to_rad_per_s, self.eps):
                writer.writerow([f"{z:.12g}", f"{e:.12g}"])


class DielectricModel:
    """Evaluable permittivity on the imaginary frequency axis.

    ``is_vacuum`` marks the one model whose static mode vanishes entirely;
    every metallic model diverges as zeta -> 0, so its static TM reflection
    saturates to the ideal-metal value.
    """

    is_vacuum = False

    def epsilon(self, zeta_eV):
        raise NotImplementedError


class DrudeModel(DielectricModel):
    def __init__(self, params: DrudeParams):
        self.params = params

    def epsilon(self, zeta_eV):
        return drude_epsilon(self.params, zeta_eV)

    def __repr__(self) -> str:
        p = self.params
        return f"DrudeModel({p.label or '?'}: omega_p={p.omega_p_eV} eV, nu={p.nu_eV} eV)"


class TabulatedModel(DielectricModel):
    """Tabulated permittivity with mandatory Drude continuation below the table.

    Measured data never reach the static limit, so below the lowest sample
    the Drude form takes over.  Above the highest sample a free-electron
    (zeta_top/zeta)^2 falloff of eps-1 is assumed; whether an evaluation
    ever needed that extrapolation can be checked against ``zeta_max_eV``.
    """

    def __init__(self, table: PermittivityTable, low_freq: DrudeParams):
        self.table = table
        self.low_freq = low_freq

    @property
    def zeta_max_eV(self) -> float:
        return self.table.zeta_max_eV

    def epsilon(self, zeta_eV):
        z = np.atleast_1d(np.asarray(zeta_eV, dtype=float))
        if np.any(z <= 0):
            raise ValueError("zeta must be positive")
        out = self.table.interpolate(np.clip(z, self.table.zeta_min_eV, self.table.zeta_max_eV))
        out = np.atleast_1d(np.asarray(out, dtype=float))
        below = z < self.table.zeta_min_eV
        if below.any():
            out[below] = drude_epsilon(self.low_freq, z[below])
        above = z > self.table.zeta_max_eV
        if above.any():
            top = self.table.zeta_max_eV
            eps_top = float(self.table.eps[-1])
            out[above] = 1.0 + (eps_top - 1.0) * (top / z[above]) ** 2
        return float(out[0]) if np.ndim(zeta_eV) == 0 else out

    def __repr__(self) -> str:
        t = self.table
        return (f"TabulatedModel({t.zeta_eV.size} samples, "
                f"{t.zeta_min_eV:.3g}..{t.zeta_max_eV:.3g} eV, "
                f"tail={self.low_freq.label or '?'})")


class Vacuum(DielectricModel):
    """eps == 1 identically; both reflection coefficients vanish."""

    is_vacuum = True

    def epsilon(self, zeta_eV):
        out = np.ones_like(np.asarray(zeta_eV, dtype=float))
        return float(out) if out.ndim == 0 else out


class IdealMetal(DielectricModel):
    """Perfect reflector: unit reflection for every mode (oracle model)."""

    def epsilon(self, zeta_eV):
        out = np.full_like(np.asarray(zeta_eV, dtype=float), np.inf)
        return float(out) if out.ndim == 0 else out


def epsilon_at(model: DielectricModel, zeta_eV):
    """Evaluate a dielectric model at zeta > 0 (eV), dispatching on variant."""
    z = np.asarray(zeta_eV, dtype=float)
    if np.any(z <= 0):
        raise ValueError("zeta must be positive")
    return model.epsilon(zeta_eV)


def _read_two_column_csv(path, expected_header: tuple[str, str]) -> tuple[np.ndarray, np.ndarray]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        if header != list(expected_header):
            raise ValueError(
                f"{path}: expected header {','.join(expected_header)!r}, got {','.join(header)!r}")
        col0, col1 = [], []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            try:
                col0.append(float(row[0]))
                col1.append(float(row[1]))
            except (ValueError, IndexError):
                raise ValueError(f"{path}:{lineno}: malformed row {row!r}") from None
    if not col0:
        raise ValueError(f"{path}: no data rows")
    return np.asarray(col0), np.asarray(col1)


def read_optical_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Read raw absorption data ``omega_rad_s,eps_imag`` for the KK transform."""
    return _read_two_column_csv(path, ("omega_rad_s", "eps_imag"))


_GL_NODES, _GL_WEIGHTS = leggauss(8)


def kramers_kronig_transform(
    omega_rad_s: Sequence[float],
    eps_imag: Sequence[float],
    zeta_rad_s: float,
) -> float:
    """epsilon(i*zeta) from absorption data:

        eps(i*zeta) = 1 + (2/pi) * int_0^inf w*eps''(w)/(w^2 + zeta^2) dw.

    On the imaginary axis the integrand is regular (no principal value).
    The data cover [w_0, w_N]; below w_0 the free-carrier form eps'' ~ A/w
    (matched at w_0) integrates in closed form, above w_N an w^-3 falloff
    (matched at w_N) does too.  Inside the window eps'' is interpolated
    between samples (log-log when strictly positive) and integrated with
    Gauss-Legendre nodes in log-frequency, splitting at w = zeta so the
    rational factor is well resolved.
    """
    w = np.asarray(omega_rad_s, dtype=float)
    e2 = np.asarray(eps_imag, dtype=float)
    if w.size == 0:
        raise ValueError("empty sample list")
    if w.size < 2 or e2.shape != w.shape:
        raise ValueError("need at least two (omega, eps'') samples of equal length")
    if np.any(w <= 0) or np.any(np.diff(w) <= 0):
        raise ValueError("omega samples must be positive and strictly increasing")
    if np.any(e2 < 0):
        raise ValueError("eps'' must be nonnegative")
    z = float(zeta_rad_s)
    if z <= 0:
        raise ValueError("zeta must be positive")

    t = np.log(w)
    if np.all(e2 > 0):
        log_e2 = np.log(e2)

        def e2_of(tq):
            return np.exp(np.interp(tq, t, log_e2))
    else:

        def e2_of(tq):
            return np.interp(np.exp(tq), w, e2)

    bounds = t
    if w[0] < z < w[-1]:
        bounds = np.sort(np.append(t, math.log(z)))
    t0, t1 = bounds[:-1], bounds[1:]
    tq = 0.5 * (t0 + t1)[:, None] + 0.5 * (t1 - t0)[:, None] * _GL_NODES
    wq = np.exp(tq)
    vals = wq * wq * e2_of(tq) / (wq * wq + z * z)  # includes dw = w dt
    interior = float(((0.5 * (t1 - t0))[:, None] * vals * _GL_WEIGHTS).sum())

    low_amp = w[0] * e2[0]  # eps'' ~ A/w below the window
    low = (low_amp / z) * math.atan(w[0] / z)

    high_amp = w[-1] ** 3 * e2[-1]  # eps'' ~ B/w^3 above the window
    u = z / w[-1]
    if u < 0.1:
        high = (high_amp / w[-1] ** 3) * (1.0 / 3.0 - u * u / 5.0 + u**4 / 7.0 - u**6 / 9.0)
    else:
        high = (high_amp / z**2) * (1.0 / w[-1] - math.atan(u) / z)

    return 1.0 + (2.0 / math.pi) * (low + interior + high)
