"""Matrix-tuple norms for the operator Hilbert space and its quotient model.

For a tuple x = (x_1, ..., x_n) of m x m matrices the norm of the associated
map is

    ||x||_oh = || sum_k conj(x_k) (x) x_k ||^{1/2}

with the operator norm taken on the m^2 x m^2 Kronecker sum (the direct
spectral oracle), and equivalently

    ||x||_oh^2 = sup { sum_k tr(A x_k^* B x_k) : A, B >= 0, ||A||_2, ||B||_2 <= 1 }.

The supremum is computed by alternating maximisation: for fixed B the
objective is the Hilbert-Schmidt pairing of A with  M = sum_k x_k^* B x_k,
a PSD matrix, so the optimal A is M / ||M||_2 and the half-step value is
||M||_2; symmetrically for B.  Each half-step is an exact maximisation, so
the objective is monotone nondecreasing, and every iterate is feasible.

``fn_scalar_norm`` computes the first-level norm of a coefficient vector
against the canonical basis of the two-density quotient: representatives
(sqrt(t) a, (1 - sqrt(t)) a) with the constraint that scalar profiles sum to
one, reduced by projection onto span(a) and solved with the convex ratio
search from :mod:`ohlab.kfunc`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .kfunc import WeightedGrid, l2sum1_norm
from .quad import ArcsineRule

__all__ = [
    "OHTuple",
    "BallPoint",
    "VariationalResult",
    "oh_norm_direct",
    "oh_norm_variational",
    "fn_scalar_norm",
]


@dataclass(frozen=True)
class OHTuple:
    """Ordered tuple of n complex m x m matrices, stored as an (n, m, m) array."""

    matrices: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.matrices, dtype=complex)
        if a.ndim != 3 or a.shape[1] != a.shape[2] or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"expected shape (n, m, m), got {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("tuple entries must be finite")
        object.__setattr__(self, "matrices", a)

    @property
    def n(self) -> int:
        return self.matrices.shape[0]

    @property
    def m(self) -> int:
        return self.matrices.shape[1]


@dataclass(frozen=True)
class BallPoint:
    """PSD pair (A, B) in the Schatten-2 unit ball."""

    a_pos: np.ndarray
    b_pos: np.ndarray

    def __post_init__(self):
        for name, mat in (("a_pos", self.a_pos), ("b_pos", self.b_pos)):
            if np.linalg.norm(mat, "fro") > 1.0 + 1e-12:
                raise ValueError(f"{name} lies outside the Schatten-2 unit ball")
            if np.min(np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))) < -1e-10:
                raise ValueError(f"{name} is not PSD")


@dataclass(frozen=True)
class VariationalResult:
    value: float
    argmax: BallPoint
    converged: bool
    iterations: int
    restart_values: tuple
    objective_trace: np.ndarray = field(repr=False)
    min_eig_a: float = 0.0
    min_eig_b: float = 0.0


def _tuple_array(x) -> np.ndarray:
    if isinstance(x, OHTuple):
        return x.matrices
    return OHTuple(np.asarray(x, dtype=complex)).matrices


def oh_norm_direct(x) -> float:
    """Largest singular value of sum_k conj(x_k) (x) x_k, square-rooted."""
    xs = _tuple_array(x)
    n, m, _ = xs.shape
    big = np.zeros((m * m, m * m), dtype=complex)
    for k in range(n):
        big += np.kron(np.conj(xs[k]), xs[k])
    return float(np.sqrt(np.linalg.norm(big, 2)))


def _phi(xs: np.ndarray, b: np.ndarray) -> np.ndarray:
    """sum_k x_k^* B x_k (completely positive, so PSD output for PSD B)."""
    return np.einsum("kji,jl,klm->im", xs.conj(), b, xs)


def _phi_adj(xs: np.ndarray, a: np.ndarray) -> np.ndarray:
    """sum_k x_k A x_k^*."""
    return np.einsum("kij,jl,kml->im", xs, a, xs.conj())


def oh_norm_variational(
    x,
    restarts: int = 8,
    tol: float = 1e-10,
    max_iter: int = 500,
    seed: int = 0,
) -> VariationalResult:
    """Alternating maximisation over the PSD Schatten-2 ball.

    Restart 0 starts from B = I/sqrt(m); the remaining restarts use random
    Wishart matrices normalised in Schatten-2, with generators drawn from a
    seeded stream.  The best restart wins, ties broken by lowest index.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    if tol <= 0.0:
        raise ValueError("tol must be > 0")
    xs = _tuple_array(x)
    n, m, _ = xs.shape
    # per-restart derived seeds keep results independent of execution order
    seeds = np.random.SeedSequence(seed).spawn(restarts)

    best_val = -1.0
    best = None
    restart_values = []
    for r in range(restarts):
        if r == 0:
            b = np.eye(m, dtype=complex) / np.sqrt(m)
        else:
            rng = np.random.default_rng(seeds[r])
            g = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
            b = g @ g.conj().T
            b /= np.linalg.norm(b, "fro")
        a = np.eye(m, dtype=complex) / np.sqrt(m)
        trace = []
        value = 0.0
        converged = False
        it = 0
        for it in range(1, max_iter + 1):
            mten = _phi(xs, b)
            nm = np.linalg.norm(mten, "fro")
            if nm == 0.0:
                value = 0.0
                converged = True
                break
            a = mten / nm
            trace.append(nm)
            nten = _phi_adj(xs, a)
            nn = np.linalg.norm(nten, "fro")
            b = nten / nn
            trace.append(nn)
            if nn - value < tol * max(nn, 1e-300) and it >= 2:
                value = nn
                converged = True
                break
            value = nn
        restart_values.append(float(np.sqrt(max(value, 0.0))))
        if value > best_val:
            best_val = value
            best = (a, b, converged, it, np.asarray(trace))

    a, b, converged, iterations, trace = best
    a = 0.5 * (a + a.conj().T)
    b = 0.5 * (b + b.conj().T)
    return VariationalResult(
        value=float(np.sqrt(max(best_val, 0.0))),
        argmax=BallPoint(a_pos=a, b_pos=b),
        converged=converged,
        iterations=iterations,
        restart_values=tuple(restart_values),
        objective_trace=trace,
        min_eig_a=float(np.min(np.linalg.eigvalsh(a))) if a.size else 0.0,
        min_eig_b=float(np.min(np.linalg.eigvalsh(b))) if b.size else 0.0,
    )


def fn_scalar_norm(a, rule: ArcsineRule, outer_tol: float = 1e-8) -> float:
    """First-level quotient norm of a coefficient vector against the f-basis.

    Decompositions f(t) + g(t) = a reduce by projection onto span(a) to
    scalar profiles phi + psi = 1, giving

        ||a||_2 * inf_{phi+psi=1} [ (int |phi|^2/t dmu)^{1/2}
                                    + (int |psi|^2/(1-t) dmu)^{1/2} ],

    the +_1 sum norm of the constant function 1 with densities 1/t, 1/(1-t).
    """
    v = np.asarray(a, dtype=complex).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise ValueError("coefficients must be finite")
    scale = float(np.linalg.norm(v))
    if scale == 0.0:
        return 0.0
    t = rule.nodes
    grid = WeightedGrid(base_weights=rule.weights, g=1.0 / t, h=1.0 / (1.0 - t))
    return scale * l2sum1_norm(np.ones_like(t), grid, outer_tol=outer_tol)
