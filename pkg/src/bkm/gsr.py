"""Operator-adapted RBF constructors and constrained interpolation.

Given the general solution g of an operator, radial basis functions can be
manufactured that bake in both the operator and the problem data: interior
kernels absorb the forcing, boundary kernels the Dirichlet or Neumann data,
and a smoothing factor r^{2m} keeps everything differentiable at the source.
Substituting sqrt(r^2 + c^2) for the radius inside g turns any of them into
a pre-wavelet variant; time-dependent problems get kernels whose distance
treats t as one more coordinate.

This module only constructs kernels and interpolates with them; no
collocation solver is built on top.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ._linalg import solve_checked

KINDS = ("interior", "dirichlet", "neumann", "simple", "wave",
         "extended_helmholtz", "transient")

#: Kinds eligible for the pre-wavelet radius substitution.
_PREWAVELET_KINDS = ("interior", "dirichlet", "neumann", "simple")


@dataclass(frozen=True)
class GsrKernel:
    """An evaluable operator-adapted radial kernel.

    Call with ``kernel(r, source)`` where ``source`` is the source-node
    coordinate vector (with time as the last coordinate for the
    time-dependent kinds); kinds without data functions ignore it.
    """

    kind: str
    g: Callable
    m: int = 1
    forcing: Optional[Callable] = None           # f(x) or f(x, t) via node vector
    dirichlet: Optional[Callable] = None
    neumann: Optional[Callable] = None
    rho_of_g: Optional[Callable] = None          # remaining operator applied to g
    g_dr: Optional[Callable] = None              # dg/dr, needed by kind="dirichlet"
    g_tt: Optional[Callable] = None              # second time derivative of g
    prewavelet_c: float = 0.0
    wave_speed: Optional[float] = None
    keep_rho: bool = True
    keep_smoothing: bool = True

    def _radius(self, r):
        if self.prewavelet_c > 0.0:
            return np.sqrt(np.asarray(r, dtype=float) ** 2 + self.prewavelet_c**2)
        return np.asarray(r, dtype=float)

    def _power(self, r):
        if not self.keep_smoothing:
            return 1.0
        return np.asarray(r, dtype=float) ** (2 * self.m)

    def __call__(self, r, source=None):
        r = np.asarray(r, dtype=float)
        s = self._radius(r)
        kind = self.kind
        if kind == "simple":
            return self._power(r) * self.g(s)
        if kind == "interior":
            data = self.forcing(source) if self.forcing is not None else 0.0
            if self.keep_rho and self.rho_of_g is not None:
                data = data + self.rho_of_g(s)
            return data * self._power(r) * self.g(s)
        if kind == "dirichlet":
            return self.dirichlet(source) * self._power(r) * self.g_dr(s)
        if kind == "neumann":
            return self.neumann(source) * self._power(r) * self.g(s)
        if kind == "wave":
            return self._power(r) * self.g(r) * self.forcing(source)
        if kind == "extended_helmholtz":
            h = self.g(r)
            bracket = self.forcing(source) + h + \
                (1.0 + 1.0 / self.wave_speed**2) * self.g_tt(r)
            return h * bracket
        if kind == "transient":
            t = np.asarray(source, dtype=float)[-1]
            return t ** (2 * self.m) * self.g(r, t) * self.forcing(source)
        raise AssertionError(f"unreachable kind {kind!r}")


def make_gsr(kind: str, g: Callable, *, m: int = 1, forcing=None, dirichlet=None,
             neumann=None, rho_of_g=None, g_dr=None, g_tt=None,
             prewavelet_c: float = 0.0, wave_speed=None,
             keep_rho: bool = True, keep_smoothing: bool = True) -> GsrKernel:
    """Construct an operator-adapted kernel of the given kind.

    Parameters
    ----------
    kind : one of ``KINDS``
        ``interior`` multiplies [f(x) + rho(g(r))] onto the smoothed general
        solution; ``dirichlet``/``neumann`` weight the data functions onto
        the radial derivative / value; ``simple`` is the bare r^{2m} g(r)
        (thin plate spline for g = log, m = 1); ``wave``, ``extended_helmholtz``
        and ``transient`` are the time-dependent forms.
    g : callable
        The operator's general solution; for ``transient`` it takes (r, t).
    m : non-negative int
        Smoothness exponent of the r^{2m} factor.
    prewavelet_c : float >= 0
        If positive, evaluates g at sqrt(r^2 + c^2) instead of r. Available
        for the four space kinds; c = 0 recovers the plain kernel.
    keep_rho, keep_smoothing : bool
        Drop the rho(g(r)) term / the r^{2m} factor (distinct source and
        response sets make the latter unnecessary).
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    m = int(m)
    if m < 0:
        raise ValueError(f"smoothness exponent m must be non-negative, got {m}")
    c = float(prewavelet_c)
    if c < 0.0:
        raise ValueError("prewavelet_c must be non-negative")
    if c > 0.0 and kind not in _PREWAVELET_KINDS:
        raise ValueError(f"the pre-wavelet substitution applies to kinds "
                         f"{_PREWAVELET_KINDS}, not {kind!r}")
    if kind == "dirichlet":
        if dirichlet is None or g_dr is None:
            raise ValueError("kind='dirichlet' needs dirichlet data and g_dr")
    if kind == "neumann" and neumann is None:
        raise ValueError("kind='neumann' needs neumann data")
    if kind in ("wave", "extended_helmholtz", "transient") and forcing is None:
        raise ValueError(f"kind={kind!r} needs a forcing function")
    if kind == "extended_helmholtz":
        if g_tt is None or wave_speed is None:
            raise ValueError("kind='extended_helmholtz' needs g_tt and wave_speed")
        if wave_speed == 0:
            raise ValueError("wave_speed must be nonzero")
    return GsrKernel(kind=kind, g=g, m=m, forcing=forcing, dirichlet=dirichlet,
                     neumann=neumann, rho_of_g=rho_of_g, g_dr=g_dr, g_tt=g_tt,
                     prewavelet_c=c, wave_speed=wave_speed,
                     keep_rho=keep_rho, keep_smoothing=keep_smoothing)


def timespace_distance(p, q) -> float:
    """Euclidean distance over concatenated space-time coordinates."""
    a = np.atleast_1d(np.asarray(p, dtype=float))
    b = np.atleast_1d(np.asarray(q, dtype=float))
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("coordinates must be finite")
    return float(np.linalg.norm(a - b))


@dataclass(frozen=True)
class ConstrainedFit:
    """Interpolation coefficients with the orthogonality side condition.

    ``beta[:-1]`` weights the kernel centred at each node, ``beta[-1]`` the
    constraint function psi; the side condition sum(beta_k psi(x_k)) = 0
    makes the kernel part orthogonal to psi.
    """

    beta: np.ndarray
    psi: Callable
    nodes: np.ndarray
    kernel: GsrKernel

    @property
    def side_condition(self) -> float:
        psi_vals = np.array([self.psi(x) for x in self.nodes])
        return float(self.beta[:-1] @ psi_vals)


def constrained_interpolate(nodes, kernel: GsrKernel, psi: Callable,
                            values) -> ConstrainedFit:
    """Fit values at nodes with kernel terms plus a psi term, constrained.

    Solves the bordered system [[A, psi], [psi^T, 0]] [beta; beta_{N+1}] =
    [values; 0] where A[i, k] = kernel(|x_i - x_k|, x_k). Raises
    :class:`IllConditionedError` when the bordered matrix is singular.
    """
    pts = np.atleast_2d(np.asarray(nodes, dtype=float))
    vals = np.asarray(values, dtype=float)
    n = pts.shape[0]
    if n < 1:
        raise ValueError("at least one node is required")
    if vals.shape != (n,):
        raise ValueError(f"values must have length {n}")

    a = np.empty((n, n))
    for k in range(n):
        r = np.linalg.norm(pts - pts[k], axis=1)
        a[:, k] = kernel(r, pts[k])
    psi_vals = np.array([psi(x) for x in pts], dtype=float)

    bordered = np.zeros((n + 1, n + 1))
    bordered[:n, :n] = a
    bordered[:n, n] = psi_vals
    bordered[n, :n] = psi_vals
    rhs = np.concatenate([vals, [0.0]])
    beta, _ = solve_checked(bordered, rhs, label="bordered interpolation")
    return ConstrainedFit(beta=beta, psi=psi, nodes=pts, kernel=kernel)


def evaluate_constrained(fit: ConstrainedFit, x) -> float:
    """Evaluate the constrained representation at a point."""
    p = np.atleast_1d(np.asarray(x, dtype=float))
    r = np.linalg.norm(fit.nodes - p, axis=1)
    terms = np.array([fit.kernel(r[k], fit.nodes[k]) for k in range(len(fit.nodes))])
    return float(terms @ fit.beta[:-1] + fit.beta[-1] * fit.psi(p))
