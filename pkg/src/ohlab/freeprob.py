"""Random-matrix and Fock-space models for sums of free mean-zero variables.

Two models of free independence are used side by side:

* an exact one -- creation operators on a truncated full Fock space, where
  the standard semicircular element s = l + l* has Catalan even moments and
  the off-diagonal compression identity (1-P_i) pi_i(a) (1-P_i) = 0 holds as
  an exact matrix identity;

* an asymptotic one -- independent Haar conjugations of trace-centred base
  matrices, which are free only in the large-dimension limit, so the
  inequalities are asserted with a small finite-dimension slack.

The scalar expectation is the normalised trace throughout.  Voiculescu's
inequality for a family (a_i) reads

    || sum_i a_i ||  <=  max_i ||a_i||
                         + (sum_i tau(a_i^* a_i))^{1/2}
                         + (sum_i tau(a_i a_i^*))^{1/2},

and its trace-norm converse gives  || sum_i a_i ||_1 <= sum_i ||a_i||_1  and
|| sum_i a_i ||_1 <= (sum_i tau(a_i^* a_i))^{1/2}  (plus the adjoint twin).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "haar_unitary",
    "gue",
    "semicircle_diag",
    "operator_norm",
    "trace_norm",
    "FreeFamily",
    "free_family",
    "VoiculescuResult",
    "voiculescu_check",
    "ConverseMargins",
    "voiculescu_converse_check",
    "TruncatedFock",
    "fock_semicircular_moments",
    "catalan_numbers",
    "CLTResult",
    "free_clt_check",
]


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Ginibre matrix with the
    R-diagonal phase correction."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def gue(dim: int, rng: np.random.Generator) -> np.ndarray:
    """GUE matrix normalised so tau(a^2) ~ 1."""
    g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0 * dim)
    return (g + g.conj().T) / np.sqrt(2.0)


def _semicircle_cdf(x: float) -> float:
    return 0.5 + (x * math.sqrt(4.0 - x * x) + 4.0 * math.asin(x / 2.0)) / (4.0 * math.pi)


def semicircle_diag(dim: int) -> np.ndarray:
    """Diagonal matrix of semicircle-law quantiles (variance 1, norm <= 2)."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    qs = (np.arange(1, dim + 1) - 0.5) / dim
    xs = np.array([brentq(lambda x, q=q: _semicircle_cdf(x) - q, -2.0, 2.0, xtol=1e-14) for q in qs])
    return np.diag(xs).astype(complex)


def normalized_trace(a: np.ndarray) -> complex:
    return complex(np.trace(a) / a.shape[0])


def _is_hermitian(a: np.ndarray) -> bool:
    scale = np.max(np.abs(a)) if a.size else 0.0
    return scale == 0.0 or np.max(np.abs(a - a.conj().T)) <= 1e-12 * scale


def _singular_values(a: np.ndarray) -> np.ndarray:
    # Hermitian members dominate the workload; eigvalsh is much cheaper
    if _is_hermitian(a):
        return np.abs(np.linalg.eigvalsh(a))
    return np.linalg.svd(a, compute_uv=False)


def operator_norm(a: np.ndarray) -> float:
    return float(np.max(_singular_values(a)))


def trace_norm(a: np.ndarray) -> float:
    """Normalised trace norm tau(|a|)."""
    return float(np.sum(_singular_values(a)) / a.shape[0])


@dataclass(frozen=True)
class FreeFamily:
    """Trace-centred, independently Haar-rotated family (approximately free)."""

    members: tuple

    def __post_init__(self):
        if len(self.members) == 0:
            raise ValueError("family must be nonempty")
        dim = self.members[0].shape[0]
        for a in self.members:
            if a.shape != (dim, dim):
                raise ValueError("all members must share one dimension")
            if abs(normalized_trace(a)) > 1e-12 * max(np.max(np.abs(a)), 1.0):
                raise ValueError("members must be trace-centred")
        object.__setattr__(self, "_member_sv", None)
        object.__setattr__(self, "_sum_sv", None)

    @property
    def dim(self) -> int:
        return self.members[0].shape[0]

    def sum(self) -> np.ndarray:
        return np.sum(self.members, axis=0)

    def member_singular_values(self) -> tuple:
        if self._member_sv is None:
            object.__setattr__(self, "_member_sv", tuple(_singular_values(a) for a in self.members))
        return self._member_sv

    def sum_singular_values(self) -> np.ndarray:
        if self._sum_sv is None:
            object.__setattr__(self, "_sum_sv", _singular_values(self.sum()))
        return self._sum_sv


def free_family(bases, dim: int, seed=0) -> FreeFamily:
    """Centre each base matrix and conjugate by an independent Haar unitary."""
    rng = np.random.default_rng(seed)
    members = []
    eye = np.eye(dim)
    for base in bases:
        a = np.asarray(base, dtype=complex)
        if a.shape != (dim, dim):
            raise ValueError(f"base has shape {a.shape}, expected ({dim}, {dim})")
        a = a - normalized_trace(a) * eye
        u = haar_unitary(dim, rng)
        diag = np.diagonal(a)
        if np.count_nonzero(a - np.diag(diag)) == 0:
            members.append((u * diag) @ u.conj().T)
        else:
            members.append(u @ a @ u.conj().T)
    return FreeFamily(members=tuple(members))


@dataclass(frozen=True)
class VoiculescuResult:
    lhs: float
    rhs: float
    margin: float
    max_member_norm: float
    col_term: float
    row_term: float


def voiculescu_check(fam: FreeFamily) -> VoiculescuResult:
    """Norm inequality for the family sum; margin = rhs - lhs."""
    dim = fam.dim
    lhs = float(np.max(fam.sum_singular_values()))
    max_norm = max(float(np.max(sv)) for sv in fam.member_singular_values())
    col = math.sqrt(sum(float(np.vdot(a, a).real) / dim for a in fam.members))
    row = math.sqrt(sum(float(np.vdot(a.conj().T, a.conj().T).real) / dim for a in fam.members))
    rhs = max_norm + col + row
    return VoiculescuResult(
        lhs=lhs, rhs=rhs, margin=rhs - lhs, max_member_norm=max_norm, col_term=col, row_term=row
    )


@dataclass(frozen=True)
class ConverseMargins:
    """Margins of the three trace-norm inequalities (nonnegative when free)."""

    triangle: float      # sum_i ||a_i||_1        - ||sum a_i||_1
    column: float        # (sum tau(a_i^* a_i))^{1/2} - ||sum a_i||_1
    row: float           # (sum tau(a_i a_i^*))^{1/2} - ||sum a_i||_1
    triangle_rhs: float
    column_rhs: float
    row_rhs: float


def voiculescu_converse_check(fam: FreeFamily) -> ConverseMargins:
    dim = fam.dim
    l1 = float(np.sum(fam.sum_singular_values())) / dim
    tri = sum(float(np.sum(sv)) / dim for sv in fam.member_singular_values())
    col = math.sqrt(sum(float(np.vdot(a, a).real) / dim for a in fam.members))
    row = math.sqrt(sum(float(np.vdot(a.conj().T, a.conj().T).real) / dim for a in fam.members))
    return ConverseMargins(
        triangle=tri - l1,
        column=col - l1,
        row=row - l1,
        triangle_rhs=tri,
        column_rhs=col,
        row_rhs=row,
    )


class TruncatedFock:
    """Full Fock space over C^letter_dim truncated at tensor length ``cutoff``.

    Basis vectors are words over the letters; the creation operator l(i)
    prepends letter i and annihilates top-level words (the tracked truncation
    defect), so l(i)* l(j) = delta_ij (1 - top-level projection).
    """

    def __init__(self, letter_dim: int, cutoff: int):
        if letter_dim < 1 or cutoff < 0:
            raise ValueError("need letter_dim >= 1 and cutoff >= 0")
        self.letter_dim = letter_dim
        self.cutoff = cutoff
        words = [()]
        for length in range(1, cutoff + 1):
            words.extend(product(range(letter_dim), repeat=length))
        self.words = words
        self.index = {w: i for i, w in enumerate(words)}
        self.dim = len(words)

    def vacuum(self) -> np.ndarray:
        v = np.zeros(self.dim)
        v[0] = 1.0
        return v

    def creation(self, letter: int) -> np.ndarray:
        if not 0 <= letter < self.letter_dim:
            raise ValueError("letter out of range")
        m = np.zeros((self.dim, self.dim))
        for w, i in self.index.items():
            if len(w) < self.cutoff:
                m[self.index[(letter,) + w], i] = 1.0
        return m

    def top_level_projection(self) -> np.ndarray:
        d = np.array([1.0 if len(w) == self.cutoff else 0.0 for w in self.words])
        return np.diag(d)

    def letter_start_projection(self, letter: int) -> np.ndarray:
        """Projection onto words whose first letter is ``letter``."""
        d = np.array([1.0 if w and w[0] == letter else 0.0 for w in self.words])
        return np.diag(d)

    def semicircular(self, letter: int = 0) -> np.ndarray:
        l = self.creation(letter)
        return l + l.T


def catalan_numbers(k_max: int):
    """C_1..C_{k_max} through the convolution recurrence (independent of any
    binomial formula): C_0 = 1, C_{k+1} = sum_i C_i C_{k-i}."""
    cs = [1]
    for k in range(k_max):
        cs.append(sum(cs[i] * cs[k - i] for i in range(k + 1)))
    return cs[1:]


def fock_semicircular_moments(cutoff: int, k_max: int):
    """Vacuum moments <Omega, (l+l*)^{2k} Omega> for k = 1..k_max.

    Walks of length 2k starting and ending at the vacuum reach height at
    most k, so any cutoff >= k_max reproduces the untruncated (Catalan)
    values exactly.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if cutoff < k_max:
        raise ValueError(f"cutoff {cutoff} too small for k_max {k_max}; need cutoff >= k_max")
    fock = TruncatedFock(letter_dim=1, cutoff=cutoff)
    s = fock.semicircular()
    omega = fock.vacuum()
    moments = []
    vec = omega.copy()
    for k in range(1, k_max + 1):
        vec = s @ (s @ vec)
        moments.append(float(omega @ vec))
    return moments


@dataclass(frozen=True)
class CLTResult:
    moments: tuple           # tau(S^k) for k = 1..4, trial-averaged
    targets: tuple           # semicircle moments (0, 1, 0, 2)
    deviations: tuple        # moments - targets


def free_clt_check(
    n: int,
    dim: int,
    trials: int = 20,
    seed: int = 0,
    base: np.ndarray | None = None,
) -> CLTResult:
    """Moments of S = n^{-1/2} sum a_i for rotated, centred, variance-one a_i.

    ``base`` defaults to the semicircle quantile diagonal; any Hermitian base
    is centred and variance-normalised before rotation.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if base is None:
        base = semicircle_diag(dim)
    base = np.asarray(base, dtype=complex)
    base = base - normalized_trace(base) * np.eye(dim)
    var = float(np.vdot(base, base).real) / dim
    base = base / math.sqrt(var)
    seeds = np.random.SeedSequence(seed).spawn(trials)
    acc = np.zeros(4)
    for t in range(trials):
        fam = free_family([base] * n, dim, seed=seeds[t])
        s = fam.sum() / math.sqrt(n)
        power = np.eye(dim, dtype=complex)
        for k in range(4):
            power = power @ s
            acc[k] += np.trace(power).real / dim
    moments = tuple(acc / trials)
    targets = (0.0, 1.0, 0.0, 2.0)
    devs = tuple(m - t for m, t in zip(moments, targets))
    return CLTResult(moments=moments, targets=targets, deviations=devs)
