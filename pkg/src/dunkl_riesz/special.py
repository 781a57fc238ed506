"""Normalized Bessel functions j_nu and i_nu.

    j_nu(z) = Gamma(nu + 1) (2/z)^nu J_nu(z),   j_nu(0) = 1
    i_nu(z) = j_nu(iz) = Gamma(nu + 1) (2/z)^nu I_nu(z)

Both are even entire functions of z. Near the origin a power series is
summed directly (no 0/0); elsewhere scipy's ``jv``/``ive`` are rescaled.
"""

from __future__ import annotations

import numpy as np
from scipy import special as sp

from .errors import UnsupportedOrder

_SERIES_RADIUS = 1.0
_SERIES_TERMS = 18
# above this, scipy's ive loses accuracy (and returns nan near 1e10); the Hankel series is exact to rounding
_ASYMPTOTIC_RADIUS = 1e3


def _check_order(nu: float) -> None:
    if nu < -0.5:
        raise UnsupportedOrder(f"normalized Bessel order must be >= -1/2, got {nu}")


def _series(nu: float, z: np.ndarray, sign: float) -> np.ndarray:
    # sum_m (sign z^2/4)^m Gamma(nu+1) / (m! Gamma(nu+m+1))
    q = sign * 0.25 * z * z
    term = np.ones_like(z)
    total = np.ones_like(z)
    for m in range(_SERIES_TERMS):
        term = term * q / ((m + 1.0) * (nu + m + 1.0))
        total = total + term
    return total


def bessel_j_normalized(nu: float, z) -> np.ndarray:
    """j_nu(z) for real z (vectorised)."""
    _check_order(nu)
    z = np.abs(np.asarray(z, dtype=float))
    out = np.empty_like(z)
    small = z <= _SERIES_RADIUS
    out[small] = _series(nu, z[small], -1.0)
    big = ~small
    if np.any(big):
        zb = z[big]
        if nu == -0.5:
            out[big] = np.cos(zb)
        elif nu == 0.5:
            out[big] = np.sin(zb) / zb
        else:
            out[big] = np.exp(sp.gammaln(nu + 1.0) + nu * np.log(2.0 / zb)) * sp.jv(nu, zb)
    return out


def bessel_i_normalized(nu: float, z, scaled: bool = False) -> np.ndarray:
    """i_nu(z) = j_nu(iz); with ``scaled`` returns exp(-|z|) i_nu(z)."""
    _check_order(nu)
    z = np.abs(np.asarray(z, dtype=float))
    out = np.empty_like(z)
    small = z <= _SERIES_RADIUS
    zs = z[small]
    out[small] = _series(nu, zs, 1.0) * (np.exp(-zs) if scaled else 1.0)
    big = ~small
    if np.any(big):
        zb = z[big]
        pref = np.exp(sp.gammaln(nu + 1.0) + nu * np.log(2.0 / zb))
        if scaled:
            out[big] = pref * _ive(nu, zb)
        else:
            out[big] = pref * sp.iv(nu, zb)
    return out


def _ive(nu: float, z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    far = z > _ASYMPTOTIC_RADIUS
    out[~far] = sp.ive(nu, z[~far])
    if np.any(far):
        zf = z[far]
        mu = 4.0 * nu * nu
        term = np.ones_like(zf)
        total = np.ones_like(zf)
        for j in range(1, 12):
            term = -term * (mu - (2 * j - 1) ** 2) / (j * 8.0 * zf)
            total = total + term
        out[far] = total / np.sqrt(2.0 * np.pi * zf)
    return out
