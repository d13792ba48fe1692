"""Radial kernels: non-singular general solutions and the multiquadric pair.

Two kernel families live here. The general solutions (Bessel J0 in 2-d,
sin(r)/r in 3-d) are annihilated by the Helmholtz operator away from the
origin and stay finite at r = 0; they span the homogeneous part of a
solution. The multiquadric pair supplies the particular-solution machinery:
``phi_hat`` is the chosen approximate particular solution and ``phi`` is its
image under the 2-d Helmholtz operator, so that a ``phi``-interpolant of the
forcing lifts to a ``phi_hat`` expansion of a particular solution.

Bessel functions are evaluated self-contained in 80-bit extended precision:
a power series on r <= 9, Miller's downward recurrence on 9 < r <= 50, and
the large-argument expansion beyond. Worst-case relative error on [0, 20]
is a few 1e-16.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_LD = np.longdouble
_SERIES_CUTOFF = 9.0
_ASYMPTOTIC_CUTOFF = 50.0


# ---------------------------------------------------------------------------
# Bessel J0 / J1
# ---------------------------------------------------------------------------

def _series_j0(x):
    """Power-series J0 for an extended-precision array, |x| <= ~12."""
    q = x * x / 4
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, 90):
        term = term * (-q) / _LD(k * k)
        total = total + term
        if np.max(np.abs(term)) < _LD(1e-28):
            break
    return total


def _series_j1(x):
    q = x * x / 4
    term = x / 2
    total = term.copy()
    for k in range(1, 90):
        term = term * (-q) / _LD(k * (k + 1))
        total = total + term
        if np.max(np.abs(term)) < _LD(1e-28):
            break
    return total


def _miller_j0_j1(x):
    """Simultaneous J0(x), J1(x) by downward recurrence, x > 0 scalar."""
    x = _LD(x)
    m = int(float(x)) + 30 + int(2.0 * np.sqrt(float(x)))
    if m % 2:
        m += 1
    jp = _LD(0.0)      # surrogate for J_{k+1}
    jc = _LD(1e-35)    # surrogate for J_k
    even_sum = _LD(0.0)
    j1s = _LD(0.0)
    big = _LD(1e300)
    for k in range(m, 0, -1):
        jm = (2 * _LD(k) / x) * jc - jp
        jp, jc = jc, jm
        order = k - 1
        if order == 1:
            j1s = jc
        if order % 2 == 0 and order > 0:
            even_sum = even_sum + jc
        if abs(jc) > big:
            jp /= big
            jc /= big
            even_sum /= big
            j1s /= big
    scale = jc + 2 * even_sum   # downward-normalisation identity
    return jc / scale, j1s / scale


def _asymptotic_j(nu, x):
    """Large-argument expansion of J_nu(x), reliable for x >= ~40."""
    x = _LD(x)
    mu = _LD(4 * nu * nu)
    term = _LD(1.0)
    p = _LD(1.0)
    q = _LD(0.0)
    prev = np.inf
    for m in range(1, 40):
        term = term * (mu - _LD((2 * m - 1) ** 2)) / (8 * x * _LD(m))
        if abs(term) >= prev:
            break
        prev = abs(term)
        if m % 2:
            q += term if (m // 2) % 2 == 0 else -term
        else:
            p += term if (m // 2) % 2 == 0 else -term
        if abs(term) < _LD(1e-24):
            break
    omega = x - (2 * nu + 1) * _LD(np.pi) / 4
    envelope = np.sqrt(2 / (_LD(np.pi) * x))
    return envelope * (p * np.cos(omega) - q * np.sin(omega))


def _validated_radius(r):
    arr = np.asarray(r, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("radius must be finite")
    if np.any(arr < 0):
        raise ValueError("radius must be non-negative")
    return arr


def _bessel(order, r):
    arr = _validated_radius(r)
    scalar = arr.ndim == 0
    flat = arr.reshape(-1).astype(_LD)
    out = np.empty(flat.shape, dtype=_LD)

    small = flat <= _LD(_SERIES_CUTOFF)
    if np.any(small):
        series = _series_j0 if order == 0 else _series_j1
        out[small] = series(flat[small])
    for i in np.nonzero(~small)[0]:
        x = flat[i]
        if x <= _ASYMPTOTIC_CUTOFF:
            j0v, j1v = _miller_j0_j1(x)
            out[i] = j0v if order == 0 else j1v
        else:
            out[i] = _asymptotic_j(order, x)

    result = out.astype(float)
    if scalar:
        return float(result[0])
    return result.reshape(arr.shape)


def bessel_j0(r):
    """Bessel function of the first kind, order zero.

    Accepts a scalar or array of radii r >= 0; relative accuracy is a few
    1e-16 (absolute near the zeros of J0).
    """
    return _bessel(0, r)


def bessel_j1(r):
    """Bessel function of the first kind, order one (J1(0) = 0)."""
    return _bessel(1, r)


# ---------------------------------------------------------------------------
# General solutions of the Helmholtz operator
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneralSolution:
    """Radial solution of (laplacian + 1) v = 0, finite at the origin.

    ``value(r)`` evaluates the solution, ``normal_derivative(r, projection)``
    its directional derivative given dr/dn (see
    :func:`bkm.geometry.normal_projection`).
    """

    dimension: int

    def value(self, r):
        r = _validated_radius(r)
        if self.dimension == 2:
            return bessel_j0(r)
        return _sinc(r)

    def normal_derivative(self, r, projection):
        r = _validated_radius(r)
        p = np.asarray(projection, dtype=float)
        if self.dimension == 2:
            return -bessel_j1(r) * p
        return _sinc_derivative(r) * p


def _sinc(r):
    """sin(r)/r with a Taylor branch near the origin."""
    arr = np.asarray(r, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    tiny = arr < 1e-4
    t = arr[tiny]
    out[tiny] = 1.0 - t * t / 6.0 + t**4 / 120.0
    big = arr[~tiny]
    out[~tiny] = np.sin(big) / big
    return float(out[0]) if scalar else out.reshape(np.shape(r))


def _sinc_derivative(r):
    """d/dr of sin(r)/r, i.e. (r cos r - sin r) / r^2, zero at the origin."""
    arr = np.asarray(r, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    tiny = arr < 1e-4
    t = arr[tiny]
    out[tiny] = -t / 3.0 + t**3 / 30.0
    big = arr[~tiny]
    out[~tiny] = (big * np.cos(big) - np.sin(big)) / big**2
    return float(out[0]) if scalar else out.reshape(np.shape(r))


def helmholtz_general_solution(dim: int) -> GeneralSolution:
    """Non-singular general solution of the Helmholtz operator in 2-d or 3-d.

    2-d: J0(r), with radial derivative -J1(r). 3-d: sin(r)/r, value 1 and
    derivative 0 at the origin.
    """
    if dim not in (2, 3):
        raise ValueError(f"dimension must be 2 or 3, got {dim}")
    return GeneralSolution(dimension=int(dim))


# ---------------------------------------------------------------------------
# Multiquadric particular-solution pair
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelPair:
    """Approximate particular solution and its 2-d Helmholtz image.

    With s = sqrt(r^2 + c^2):

    * ``phi_hat(r) = s^3`` is the particular-solution basis,
    * ``phi(r) = 6 s + 3 r^2 / s + s^3`` equals
      ``phi_hat'' + phi_hat'/r + phi_hat`` (radial 2-d laplacian plus
      identity applied to phi_hat),
    * ``phi_hat_normal(r, p) = 3 r s p`` is the directional derivative of
      phi_hat given p = dr/dn.

    The first term of ``phi`` carries the square root: applying the operator
    to s^3 directly forces 6 s, and the operator-consistency tests pin this
    form as a permanent regression check.
    """

    shape: float

    def __post_init__(self):
        c = float(self.shape)
        if not (np.isfinite(c) and c > 0.0):
            raise ValueError(f"shape parameter must be positive, got {self.shape}")
        object.__setattr__(self, "shape", c)

    @staticmethod
    def _float_like(r):
        # floating dtypes pass through so callers may evaluate in extended
        # precision; everything else becomes float64
        arr = np.asarray(r)
        return arr if arr.dtype.kind == "f" else arr.astype(float)

    def _s(self, r):
        r = self._float_like(r)
        return np.sqrt(r * r + self.shape * self.shape)

    def phi_hat(self, r):
        return self._s(r) ** 3

    def phi(self, r):
        r = self._float_like(r)
        s = self._s(r)
        return 6.0 * s + 3.0 * r * r / s + s**3

    def phi_hat_normal(self, r, projection):
        r = self._float_like(r)
        p = self._float_like(projection)
        return 3.0 * r * self._s(r) * p


def mq_pair(c: float) -> KernelPair:
    """Multiquadric kernel pair with shape parameter c > 0."""
    return KernelPair(shape=c)
