"""The two payoff ODEs and their closed-form solutions.

Requiring the weighted payoff V(X(t))e^{rt} to be drift-free under the
additive dynamics forces r*V + r*V' + (sigma^2/2)*V'' = 0 (full form).
Dropping the V' term is delta hedging as an equation choice and leaves
r*V + D*V'' = 0 (hedged form) with D = sigma^2/2, whose solutions oscillate.
"""

import numpy as np

from bachelier_lab import (
    OdeForm,
    OdeProblem,
    characteristic_roots_full,
    characteristic_roots_hedged,
    delta_gamma,
    general_solution,
    quantized_rate,
    residual,
    sine_solution,
)

print("== full form: three root regimes in the (r, sigma) plane ==")
for r in (0.02, 0.08, 0.18, -0.02):
    roots = characteristic_roots_full(r, sigma=0.2)
    print(f"r={r:+.2f}: {roots.case.value:18s} roots {roots.root1:.4f}, {roots.root2:.4f}")
print("boundaries: repeated at r=0 and r=2*sigma^2; oscillation in between")

print()
print("== hedged form: purely imaginary roots, oscillatory solutions ==")
r1 = quantized_rate(1, 0.2, 1.0)
print("roots at r=0.02:", characteristic_roots_hedged(0.02, 0.2).root1)
print(f"roots at r={r1:.7f} (first ladder rate): "
      f"{characteristic_roots_hedged(r1, 0.2).root1} = i*pi")

print()
print("== a conjugate coefficient pair collapses the exponentials to a sine ==")
ge = general_solution(characteristic_roots_hedged(r1, 0.2), complex(0, -0.5), complex(0, 0.5))
sine = sine_solution(1.0, r1, 0.2)
xs = np.linspace(0.0, 1.0, 11)
print("sup |exponential pair - sine| =", np.max(np.abs(ge(xs) - sine(xs))))

print()
print("== residual audits: exact solutions vanish at O(h^2) ==")
problem = OdeProblem(r=r1, sigma=0.2, form=OdeForm.HEDGED)
print(f"{'h':>8} {'|residual| at x=0.3':>22}")
for h in (4e-2, 2e-2, 1e-2, 5e-3):
    print(f"{h:8.0e} {abs(residual(sine, problem, 0.3, h)):22.3e}")
print("each halving of h divides the residual by ~4")

print()
print("== delta and gamma by central differences ==")
dg = delta_gamma(sine, 0.25, 1e-3)
a = sine.wavenumber
print(f"delta at 0.25: {dg.delta:.6f}  (analytic pi*cos(pi/4) = {a * np.cos(a * 0.25):.6f})")
print(f"gamma at 0.25: {dg.gamma:.6f}  (analytic -pi^2*sin(pi/4) = {-a**2 * np.sin(a * 0.25):.6f})")
