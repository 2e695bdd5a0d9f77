"""Bifurcation invariants along a one-parameter path of linearizations.

Shifting the linearization by a parameter alpha moves the block eigenvalue
of frequency j over mu through zero at the critical value

    alpha(j, mu) = mu + j^2 / m^2,

so the critical set of the trivial branch is the grid of these values over
the spectrum of A.  At each critical value alpha0 the local invariant is
the Burnside-ring jump of the degree across alpha0,

    omega(alpha0) = deg(alpha0 - eps) - deg(alpha0 + eps)
                  = prefix * ((G) - block(alpha0)),

where prefix multiplies the degrees of all blocks crossed strictly below
alpha0 and block(alpha0) collects the blocks crossing at alpha0 itself.
The prefix runs over every earlier critical value, not just those inside
a reporting window, so each omega depends only on data at and before its
own critical point.  A nonzero omega forces a branch of nontrivial
solutions bifurcating from (alpha0, 0), with symmetries at least the
classes carrying nonzero coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .burnside import BurnsideElement
from .degrees import degree_for_character
from .errors import ValidationError
from .spectral import (EigenvalueEntry, ProblemConfig, SpectralTable,
                       SymmetryContext, build_symmetry_context,
                       eigenspace_character, matrix_spectrum)


@dataclass(frozen=True)
class CriticalPoint:
    """One merged critical value with everything crossing there."""

    alpha: float
    contributions: tuple[tuple[int, float], ...]   # (j, mu), sigma ordering
    crossing_multiplicities: tuple[tuple[str, int], ...]
    simple: bool                                   # one (j, mu), simple mu
    alpha_exact: Fraction | None = None


@dataclass
class BifurcationInvariant:
    point: CriticalPoint
    omega: BurnsideElement
    nonzero: bool
    odd_crossing: bool
    branch_types: list[tuple[str, int]]


@dataclass
class BifurcationReport:
    window: tuple[float, float]
    invariants: list[BifurcationInvariant]


def default_window(table: SpectralTable) -> tuple[float, float]:
    lo = min(e.mu for e in table.eigenvalues) - 1.0
    return (lo, 0.0)


def critical_values(ctx: SymmetryContext, table: SpectralTable,
                    window: tuple[float, float] | None = None,
                    tol: float | None = None) -> list[CriticalPoint]:
    """All alpha(j, mu) in the half-open window, coincidences merged."""
    if window is None:
        window = default_window(table)
    lo, hi = window
    if not lo < hi:
        raise ValidationError("empty parameter window")
    if tol is None:
        tol = ctx.config.tolerance
    m = ctx.m
    raw: list[tuple[float, int, EigenvalueEntry, Fraction | None]] = []
    for e in table.eigenvalues:
        j = 0
        while e.mu + j * j / (m * m) < hi:
            alpha = e.mu + j * j / (m * m)
            if alpha >= lo:
                exact = (e.mu_exact + Fraction(j * j, m * m)
                         if e.mu_exact is not None else None)
                raw.append((alpha, j, e, exact))
            j += 1
    raw.sort(key=lambda t: (t[0], t[1]))
    points: list[CriticalPoint] = []
    group: list[tuple[float, int, EigenvalueEntry, Fraction | None]] = []
    for item in raw:
        if group and item[0] - group[0][0] > tol:
            points.append(_merge(ctx, group))
            group = []
        group.append(item)
    if group:
        points.append(_merge(ctx, group))
    return points


def _merge(ctx: SymmetryContext,
           group: list[tuple[float, int, EigenvalueEntry, Fraction | None]]
           ) -> CriticalPoint:
    from .reps import fold_frequency
    group = sorted(group, key=lambda t: (t[2].mu, t[1]))
    mults: dict[str, int] = {}
    for _alpha, j, entry, _ex in group:
        for l, gmult in enumerate(entry.gamma_mults):
            if gmult == 0:
                continue
            for i in fold_frequency(j, ctx.m):
                label = ctx.minus(i, l).label
                mults[label] = mults.get(label, 0) + gmult
    simple = len(group) == 1 and group[0][2].mult == 1
    exacts = [ex for *_xs, ex in group]
    exact = exacts[0] if len(group) == 1 else None
    return CriticalPoint(
        alpha=float(np.mean([a for a, *_rest in group])),
        contributions=tuple((j, entry.mu) for _a, j, entry, _e in group),
        crossing_multiplicities=tuple(sorted(mults.items())),
        simple=simple,
        alpha_exact=exact)


def _prefix_character(ctx: SymmetryContext, table: SpectralTable,
                      alpha0: float, tol: float) -> np.ndarray:
    """Sum of block characters crossed strictly below alpha0."""
    m = ctx.m
    total = np.zeros(ctx.group.order)
    for e in table.eigenvalues:
        j = 0
        while e.mu + j * j / (m * m) < alpha0 - tol:
            total += eigenspace_character(ctx, j, e)
            j += 1
    return total


def local_invariant(ctx: SymmetryContext, table: SpectralTable,
                    point: CriticalPoint, tol: float | None = None,
                    strict: bool = False) -> BifurcationInvariant:
    if strict and len(point.contributions) > 1:
        raise ValidationError("ambiguous crossing: several (j, mu) pairs "
                              f"coincide at alpha={point.alpha!r}")
    if tol is None:
        tol = ctx.config.tolerance
    prefix = degree_for_character(
        ctx.poset, _prefix_character(ctx, table, point.alpha, tol))
    block_char = np.zeros(ctx.group.order)
    for j, mu in point.contributions:
        block_char += eigenspace_character(ctx, j, table.entry(mu))
    block = degree_for_character(ctx.poset, block_char)
    omega = prefix * (BurnsideElement.unit(ctx.poset) - block)
    odd = point.simple and all(v % 2 == 1
                               for _k, v in point.crossing_multiplicities)
    return BifurcationInvariant(point=point, omega=omega,
                                nonzero=bool(omega.support()),
                                odd_crossing=odd,
                                branch_types=omega.to_pairs())


def bifurcation_report(config: ProblemConfig,
                       ctx: SymmetryContext | None = None,
                       window: tuple[float, float] | None = None
                       ) -> BifurcationReport:
    """Critical values in the window with their local invariants.

    The odd-crossing shortcut marks points where a simple eigenvalue
    crosses with every irrep multiplicity odd; such a point must carry a
    nonzero invariant, which the computed omega confirms independently.
    """
    if ctx is None:
        ctx = build_symmetry_context(config)
    table = matrix_spectrum(config, ctx)
    if window is None:
        window = default_window(table)
    points = critical_values(ctx, table, window)
    invs = [local_invariant(ctx, table, p) for p in points]
    for inv in invs:
        if inv.odd_crossing and not inv.nonzero:
            raise ValidationError("odd-crossing shortcut contradicts a zero "
                                  f"invariant at alpha={inv.point.alpha!r}")
    return BifurcationReport(window=window, invariants=invs)
