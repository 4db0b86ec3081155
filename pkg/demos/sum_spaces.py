"""Sum-space norms on a weighted grid: +_2 closed form, +_1 ratio search,
and the three-term functional swept over its scale parameter.

The +_1 norm always sits between the Hilbertian +_2 norm and sqrt(2) times
it.  The three-term value grows with t, never exceeds the two-term K-norm,
and the residual gap to the K-norm is reported (it is an observation, not an
assertion).
"""

import numpy as np

from ohlab.kfunc import (
    ThreeTermSpec,
    WeightedGrid,
    ik_t_norm,
    k_d1d2_norm,
    l2sum1_norm,
    l2sum2_norm,
    two_term_k_norm,
)
from ohlab.ohspace import fn_scalar_norm
from ohlab.quad import arcsine_rule


def main():
    rng = np.random.default_rng(3)
    n = 12
    base = rng.uniform(0.1, 1.0, n)
    base /= base.sum()
    w = WeightedGrid(base_weights=base, g=rng.uniform(0.2, 5.0, n), h=rng.uniform(0.2, 5.0, n))
    k = rng.standard_normal(n)

    two = l2sum2_norm(k, w)
    one = l2sum1_norm(k, w)
    print(f"+_2 norm  = {two:.10f}")
    print(f"+_1 norm  = {one:.10f}   (sandwich: {two:.6f} <= {one:.6f} <= {np.sqrt(2) * two:.6f})")

    print("\nthree-term functional sweep (d and weights fixed, t varies):")
    d = rng.uniform(0.2, 5.0, n)
    print(f"{'t':>10} {'three-term':>14} {'two-term K':>14} {'gap':>12}")
    for t in (1e-4, 1e-2, 1.0, 1e2, 1e4):
        spec = ThreeTermSpec(t_param=t, d=d, base_weights=base)
        val = ik_t_norm(k, spec)
        kn = two_term_k_norm(k, spec)
        print(f"{t:>10.0e} {val:>14.10f} {kn:>14.10f} {kn - val:>12.2e}")

    print("\ntwo-density quotient norm agrees with the scalar basis norm:")
    rule = arcsine_rule(2048)
    t = rule.nodes
    via_kd = k_d1d2_norm(np.ones_like(t), t, 1 - t, rule.weights)
    via_fn = fn_scalar_norm([1.0], rule)
    print(f"  k_d1d2(1; t, 1-t) = {via_kd:.12f}")
    print(f"  fn_scalar_norm(e1) = {via_fn:.12f}")


if __name__ == "__main__":
    main()
