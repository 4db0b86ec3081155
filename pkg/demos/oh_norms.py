"""Two computations of the matrix-tuple norm, and the scalar quotient basis.

The direct route takes the largest singular value of the Kronecker sum
sum_k conj(x_k) (x) x_k.  The variational route runs alternating
maximisation over PSD pairs in the Schatten-2 ball and must land on the same
value.  The scalar quotient norm of a coefficient vector sits inside the
sqrt(2)-isomorphism window around the Euclidean norm.
"""

import numpy as np

from ohlab.ohspace import fn_scalar_norm, oh_norm_direct, oh_norm_variational
from ohlab.quad import arcsine_rule


def main():
    rng = np.random.default_rng(7)

    print("direct vs variational on random tuples:")
    print(f"{'n':>3} {'m':>3} {'direct':>12} {'variational':>12} {'rel diff':>10} {'iters':>6}")
    for n, m in [(1, 4), (3, 3), (5, 2), (6, 6)]:
        xs = rng.standard_normal((n, m, m)) + 1j * rng.standard_normal((n, m, m))
        direct = oh_norm_direct(xs)
        res = oh_norm_variational(xs)
        print(
            f"{n:>3} {m:>3} {direct:>12.8f} {res.value:>12.8f} "
            f"{abs(res.value - direct) / direct:>10.1e} {res.iterations:>6}"
        )

    print("\nobjective trace of one run is monotone per half-step:")
    xs = rng.standard_normal((4, 5, 5)) + 1j * rng.standard_normal((4, 5, 5))
    res = oh_norm_variational(xs, restarts=1)
    trace = res.objective_trace
    print(f"  first/last of {trace.size} half-steps: {trace[0]:.8f} -> {trace[-1]:.8f}, "
          f"min increment {np.min(np.diff(trace)):.1e}")

    print("\nscalar quotient norm over the Euclidean norm (window [1/sqrt2, sqrt2]):")
    rule = arcsine_rule(4096)
    for n in (1, 4, 16):
        a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        ratio = fn_scalar_norm(a, rule) / np.linalg.norm(a)
        print(f"  n={n:<3} ratio = {ratio:.9f}")


if __name__ == "__main__":
    main()
