"""Boundary knot collocation: assemble and solve the two-step scheme.

A solve runs in two stages. First the inhomogeneous term is absorbed into a
dual-reciprocity particular solution (one factorisation of the
interpolation matrix). Second, the homogeneous remainder is collocated in
the non-singular general solution basis at the boundary knots (one more
factorisation), enforcing the particular-solution-corrected boundary data.

Nonlinear equations whose nonlinearity can be evaluated from Dirichlet data
alone collapse to the same two linear solves: with boundary knots only, the
unknown never appears inside the remaining operator, so no iteration is
needed. Each solution records one :class:`SolveRecord` per factorisation,
which is how tests assert the single-solve property.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from ._linalg import FactoredMatrix, SolveRecord, solve_checked
from .drm import (DrmFit, build_interpolation_matrix, evaluate_particular,
                  evaluate_particular_normal, _points_array,
                  _pairwise_distances)
from .geometry import COINCIDENT_TOL, Ellipse, KnotSet
from .kernels import GeneralSolution, KernelPair, helmholtz_general_solution


# ---------------------------------------------------------------------------
# Remaining-operator descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RhoZero:
    """No remaining operator: the equation is exactly Helmholtz."""


@dataclass(frozen=True)
class RhoLinear:
    """Linear remaining operator given through its action on the basis.

    ``basis_images(knots, kernel)`` must return the (N+L, N+L) matrix whose
    entry [i, j] is the operator applied to the particular-solution basis
    centred at knot j, evaluated at knot i.
    """

    basis_images: Callable[[KnotSet, KernelPair], np.ndarray]


@dataclass(frozen=True)
class RhoBoundaryNonlinear:
    """Nonlinearity evaluable from boundary data: rho{u} = g(u, x).

    ``apply(u_values, points)`` evaluates g at known u values; with boundary
    knots only, u on the boundary is the Dirichlet data, so the right-hand
    side is computable without iteration.
    """

    apply: Callable[[np.ndarray, np.ndarray], np.ndarray]


RhoDescriptor = Union[RhoZero, RhoLinear, RhoBoundaryNonlinear]


@dataclass(frozen=True)
class ProblemSpec:
    """Operator split, data functions and geometry for one boundary problem.

    All data callables are vectorised: they take an (m, d) array of points
    and return an array of m values.
    """

    forcing: Callable[[np.ndarray], np.ndarray]
    dirichlet: Optional[Callable[[np.ndarray], np.ndarray]] = None
    neumann: Optional[Callable[[np.ndarray], np.ndarray]] = None
    rho: RhoDescriptor = field(default_factory=RhoZero)
    geometry: Optional[Ellipse] = None
    dimension: int = 2
    exact: Optional[Callable[[np.ndarray], np.ndarray]] = None


@dataclass
class BkmSolution:
    """Fitted collocation solution u = v + u_p.

    ``lam`` weights the general-solution basis centred at the boundary
    knots; ``drm_fit`` carries the particular-solution expansion.
    ``diagnostics`` holds one record per dense factorisation performed.
    """

    lam: np.ndarray
    drm_fit: DrmFit
    general_solution: GeneralSolution
    knots: KnotSet
    interior_u: Optional[np.ndarray] = None
    diagnostics: tuple[SolveRecord, ...] = ()


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------

def assemble_homogeneous_rows(knots: KnotSet, gs: GeneralSolution) -> np.ndarray:
    """Collocation rows of the general-solution expansion.

    Columns are indexed by the N boundary source knots. Dirichlet rows hold
    basis values, Neumann rows the normal derivative, and interior rows
    (appended after the boundary block) basis values again. Row order
    follows the knot ordering.
    """
    sources = knots.boundary_positions
    responses = knots.all_positions
    r = _pairwise_distances(responses, sources)
    rows = gs.value(r)

    nd = knots.dirichlet_count
    nb = knots.n_boundary
    if nd < nb:
        neu_idx = np.arange(nd, nb)
        diff = responses[neu_idx][:, None, :] - sources[None, :, :]
        rn = r[neu_idx]
        proj = np.zeros_like(rn)
        ok = rn > COINCIDENT_TOL
        normals = knots.boundary_normals[neu_idx]
        proj[ok] = np.einsum("ijk,ik->ij", diff, normals)[ok] / rn[ok]
        rows[neu_idx] = gs.normal_derivative(rn, proj)
    return rows


def _boundary_rhs(problem: ProblemSpec, knots: KnotSet, fit: DrmFit) -> np.ndarray:
    """Boundary data corrected by the particular solution, per knot type."""
    nb = knots.n_boundary
    nd = knots.dirichlet_count
    rhs = np.empty(nb)
    if nd > 0:
        if problem.dirichlet is None:
            raise ValueError("knots carry Dirichlet rows but no Dirichlet data was given")
        pts = knots.boundary_positions[:nd]
        up = evaluate_particular(fit, pts)
        rhs[:nd] = np.asarray(problem.dirichlet(pts), dtype=float) - up
    if nd < nb:
        if problem.neumann is None:
            raise ValueError("knots carry Neumann rows but no Neumann data was given")
        pts = knots.boundary_positions[nd:]
        normals = knots.boundary_normals[nd:]
        data = np.asarray(problem.neumann(pts), dtype=float)
        up_n = np.array([evaluate_particular_normal(fit, p, n)
                         for p, n in zip(pts, normals)])
        rhs[nd:] = data - up_n
    return rhs


def _finish_two_step(problem, knots, kernel, rhs_drm, gs):
    """Shared tail: particular fit, homogeneous solve, interior evaluation."""
    matrix = build_interpolation_matrix(knots, kernel)
    alpha = matrix.solve(np.asarray(rhs_drm, dtype=float))
    fit = DrmFit(alpha=alpha, kernel=kernel, knots=knots, condition=matrix.condition)
    records = [matrix.factor().record()]

    h = assemble_homogeneous_rows(knots, gs)[:knots.n_boundary]
    rhs_h = _boundary_rhs(problem, knots, fit)
    lam, rec = solve_checked(h, rhs_h, label="collocation")
    records.append(rec)

    solution = BkmSolution(lam=lam, drm_fit=fit, general_solution=gs,
                           knots=knots, diagnostics=tuple(records))
    if knots.n_interior > 0:
        solution.interior_u = evaluate(solution, knots.interior)
    return solution


def solve_linear(problem: ProblemSpec, knots: KnotSet, kernel: KernelPair) -> BkmSolution:
    """Solve a linear problem: Helmholtz left side plus optional linear rest.

    With no remaining operator the scheme is the plain two-step solve, and
    interior knots (if any) only enrich the particular-solution fit. A
    linear remaining operator couples nodal u-values into the right-hand
    side: with interior knots this produces one combined (N+L)-unknown
    system; boundary u-values must then be Dirichlet data.
    """
    if knots.n_boundary < 1:
        raise ValueError("at least one boundary knot is required")
    gs = helmholtz_general_solution(problem.dimension)
    all_pts = knots.all_positions
    f = np.asarray(problem.forcing(all_pts), dtype=float)
    if f.shape != (knots.size,):
        raise ValueError("forcing must return one value per knot")

    if isinstance(problem.rho, RhoBoundaryNonlinear):
        raise ValueError("nonlinear remaining operators take the "
                         "solve_nonlinear_boundary_only path")

    if isinstance(problem.rho, RhoZero):
        return _finish_two_step(problem, knots, kernel, f, gs)

    # linear remaining operator: nodal u-values feed back into the fit
    if knots.dirichlet_count != knots.n_boundary:
        raise ValueError("the coupled linear path requires Dirichlet data on "
                         "the whole boundary: u is otherwise unknown at "
                         "boundary knots")
    if problem.dirichlet is None:
        raise ValueError("Dirichlet data is required")
    images = np.asarray(problem.rho.basis_images(knots, kernel), dtype=float)
    matrix = build_interpolation_matrix(knots, kernel)
    pts = knots.all_positions
    # u is quasi-interpolated in the particular-solution basis, so the
    # operator images pair with the phi_hat interpolation matrix
    b_hat = kernel.phi_hat(_pairwise_distances(pts, pts))
    b_factored = FactoredMatrix(b_hat, label="u-interpolation")
    coupling = b_factored.solve(images.T).T
    d_boundary = np.asarray(problem.dirichlet(knots.boundary_positions), dtype=float)

    if knots.n_interior == 0:
        rhs_drm = f + coupling @ d_boundary
        solution = _finish_two_step(problem, knots, kernel, rhs_drm, gs)
        solution.diagnostics = (solution.diagnostics[0], b_factored.record(),
                                solution.diagnostics[1])
        return solution

    return _solve_coupled(problem, knots, kernel, gs, f, matrix, b_factored,
                          b_hat, coupling, d_boundary)


def _solve_coupled(problem, knots, kernel, gs, f, matrix, b_factored, b_hat,
                   coupling, d_boundary):
    """Combined solve for [lambda; interior u] under a linear remaining operator."""
    nb, ni = knots.n_boundary, knots.n_interior
    # particular-solution values at knots as a linear map of the fitted rhs
    lift = matrix.solve(b_hat).T          # phi_hat-matrix times A^{-1}
    records = [matrix.factor().record(), b_factored.record()]

    g = lift @ coupling                   # nodal u -> u_p contribution at knots
    up_f = lift @ f                       # forcing contribution to u_p at knots

    h = assemble_homogeneous_rows(knots, gs)
    system = np.zeros((nb + ni, nb + ni))
    system[:, :nb] = h
    system[:, nb:] = g[:, nb:]
    system[nb:, nb:] -= np.eye(ni)
    rhs = -up_f - g[:, :nb] @ d_boundary
    rhs[:nb] += d_boundary

    z, rec = solve_checked(system, rhs, label="collocation")
    records.append(rec)
    lam, interior_u = z[:nb], z[nb:]

    u_nodes = np.concatenate([d_boundary, interior_u])
    alpha = matrix.solve(f + coupling @ u_nodes)
    fit = DrmFit(alpha=alpha, kernel=kernel, knots=knots, condition=matrix.condition)
    return BkmSolution(lam=lam, drm_fit=fit, general_solution=gs, knots=knots,
                       interior_u=interior_u, diagnostics=tuple(records))


def solve_nonlinear_boundary_only(problem: ProblemSpec, knots: KnotSet,
                                  kernel: KernelPair) -> BkmSolution:
    """Single linear solve of a nonlinear equation with linear boundary data.

    Requires boundary knots only and Dirichlet data everywhere: the
    remaining operator is evaluated by substituting the known boundary
    values, so the pipeline stays identical to the linear case and performs
    exactly one factorisation pair (particular fit plus collocation).
    """
    if knots.n_boundary < 1:
        raise ValueError("at least one boundary knot is required")
    if knots.n_interior > 0:
        raise ValueError("the linear formulation of nonlinear problems holds "
                         "for boundary knots only; u at interior knots would "
                         "be unknown inside the remaining operator")
    if knots.dirichlet_count != knots.n_boundary or problem.dirichlet is None:
        raise ValueError("Dirichlet data on the whole boundary is required: "
                         "the nonlinearity is evaluated from known u values")
    if not isinstance(problem.rho, RhoBoundaryNonlinear):
        raise ValueError("problem.rho must be RhoBoundaryNonlinear for this path")

    gs = helmholtz_general_solution(problem.dimension)
    pts = knots.boundary_positions
    u_b = np.asarray(problem.dirichlet(pts), dtype=float)
    rhs_drm = np.asarray(problem.forcing(pts), dtype=float) + \
        np.asarray(problem.rho.apply(u_b, pts), dtype=float)
    return _finish_two_step(problem, knots, kernel, rhs_drm, gs)


def evaluate(solution: BkmSolution, x):
    """Field value u = v + u_p at a point or an (m, d) array of points."""
    pts, scalar = _points_array(x, solution.knots.dimension)
    r = _pairwise_distances(pts, solution.knots.boundary_positions)
    v = solution.general_solution.value(r) @ solution.lam
    u = v + evaluate_particular(solution.drm_fit, pts)
    return float(u[0]) if scalar else u


def evaluate_homogeneous(solution: BkmSolution, x):
    """The general-solution component v alone (diagnostics and testing)."""
    pts, scalar = _points_array(x, solution.knots.dimension)
    r = _pairwise_distances(pts, solution.knots.boundary_positions)
    v = solution.general_solution.value(r) @ solution.lam
    return float(v[0]) if scalar else v
