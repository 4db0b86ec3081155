"""Quadrature for the arcsine probability measure and its singular relatives.

The base measure is mu(dt) = dt / (pi * sqrt(t(1-t))) on [0,1].  The two
weighted companions nu1 = t^{-1} mu and nu2 = (1-t)^{-1} mu are never
materialised as separate rules: callers fold the densities 1/t and 1/(1-t)
into the integrands.  Under t = (1+x)/2 the measure mu becomes the
Chebyshev weight on [-1,1], so Gauss-Chebyshev nodes of the first kind
integrate polynomials of degree <= 2N-1 against mu exactly and absorb the
endpoint singularities of the weight.

Exact closed forms for interval masses (mu CDF and nu1/nu2 tails) are
provided for the corner estimates that quadrature cannot resolve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ArcsineRule",
    "Grid2D",
    "arcsine_rule",
    "integrate_mu",
    "integrate_2d",
    "mu_cdf",
    "nu1_mass",
    "nu2_mass",
    "arcsine_moment",
]


@dataclass(frozen=True)
class ArcsineRule:
    """Nodes and weights integrating against mu(dt) = dt/(pi sqrt(t(1-t)))."""

    n_nodes: int
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if self.n_nodes < 1:
            raise ValueError("rule needs at least one node")
        if self.nodes.shape != (self.n_nodes,) or self.weights.shape != (self.n_nodes,):
            raise ValueError("nodes/weights shape mismatch")
        if not (np.all(self.nodes > 0.0) and np.all(self.nodes < 1.0)):
            raise ValueError("nodes must lie strictly inside (0,1)")
        if abs(self.weights.sum() - 1.0) > 1e-14:
            raise ValueError("weights must sum to 1 (probability measure)")


@dataclass(frozen=True)
class Grid2D:
    """Product rule for mu x mu on [0,1]^2."""

    rule_t: ArcsineRule
    rule_s: ArcsineRule

    def __post_init__(self):
        total = self.rule_t.weights.sum() * self.rule_s.weights.sum()
        if abs(total - 1.0) > 1e-13:
            raise ValueError("product weights must sum to 1")

    def meshes(self):
        """Meshgrids (T, S) of nodes and the matching weight matrix W."""
        t = self.rule_t.nodes
        s = self.rule_s.nodes
        T, S = np.meshgrid(t, s, indexing="ij")
        W = np.outer(self.rule_t.weights, self.rule_s.weights)
        return T, S, W


def arcsine_rule(n_nodes: int) -> ArcsineRule:
    """Gauss-Chebyshev (first kind) rule mapped onto [0,1].

    Nodes t_j = (1 + cos((2j-1) pi / (2N))) / 2 with uniform weights 1/N.
    The node set is symmetric under t -> 1-t.
    """
    if n_nodes < 1:
        raise ValueError("n_nodes must be >= 1")
    j = np.arange(1, n_nodes + 1)
    nodes = 0.5 * (1.0 + np.cos((2 * j - 1) * np.pi / (2 * n_nodes)))
    weights = np.full(n_nodes, 1.0 / n_nodes)
    return ArcsineRule(n_nodes, nodes, weights)


def _values_at_nodes(f, nodes: np.ndarray) -> np.ndarray:
    vals = f(nodes) if callable(f) else np.asarray(f)
    vals = np.asarray(vals, dtype=float)
    if vals.shape != nodes.shape:
        raise ValueError(f"integrand values have shape {vals.shape}, expected {nodes.shape}")
    return vals


def integrate_mu(f, rule: ArcsineRule) -> float:
    """Integrate f against mu.  f is a vectorised callable or a node array.

    Singular densities (1/t, 1/(1-t), ...) are the caller's responsibility:
    compose them into f.  Summation is numpy's pairwise reduction, so the
    result is deterministic at fixed N.
    """
    vals = _values_at_nodes(f, rule.nodes)
    if not np.all(np.isfinite(vals)):
        bad = rule.nodes[~np.isfinite(vals)][0]
        raise ValueError(f"integrand is not finite at node t={bad!r}")
    return float(np.sum(vals * rule.weights))


def integrate_2d(f, grid: Grid2D) -> float:
    """Integrate f(t,s) against mu x mu.  f is callable on meshgrids or an array."""
    T, S, W = grid.meshes()
    vals = f(T, S) if callable(f) else np.asarray(f, dtype=float)
    if vals.shape != T.shape:
        raise ValueError(f"2-D integrand has shape {vals.shape}, expected {T.shape}")
    if not np.all(np.isfinite(vals)):
        i, j = np.argwhere(~np.isfinite(vals))[0]
        raise ValueError(f"integrand is not finite at node (t,s)=({T[i, j]!r}, {S[i, j]!r})")
    return float(np.sum(vals * W))


def mu_cdf(t: float) -> float:
    """Exact CDF of mu: F(t) = (2/pi) * arcsin(sqrt(t))."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t={t} outside [0,1]")
    return 2.0 / math.pi * math.asin(math.sqrt(t))


def nu1_mass(a: float, b: float) -> float:
    """Exact nu1-mass of [a,b]: integral of 1/t dmu, with nu1([a,1]) = (2/pi) sqrt((1-a)/a)."""
    if not 0.0 <= a <= b <= 1.0:
        raise ValueError("need 0 <= a <= b <= 1")
    if a == 0.0:
        return math.inf

    def tail(x):
        return 0.0 if x == 1.0 else math.sqrt((1.0 - x) / x)

    return 2.0 / math.pi * (tail(a) - tail(b))


def nu2_mass(a: float, b: float) -> float:
    """Exact nu2-mass of [a,b]: integral of 1/(1-t) dmu (mirror image of nu1)."""
    return nu1_mass(1.0 - b, 1.0 - a)


def arcsine_moment(k: int) -> float:
    """Exact k-th moment of mu: central binomial C(2k,k) / 4^k."""
    if k < 0:
        raise ValueError("moment order must be >= 0")
    return math.comb(2 * k, k) / 4.0**k
