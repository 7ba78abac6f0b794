# %% [markdown]
# # Series integrals
#
# With 0 < q < p < 1 and r = q/p, the antiderivative of f that vanishes at 1
# is the series
#
#     H(x) = sum_j (x**(r**j) - x**(r**(j+1))) * f(x**(r**j / p))
#
# whose weights telescope. Definite integrals over [a, b] are differences of
# such series, or of their mirror images summed toward 0.

# %%
import math

import numpy as np

from pqcalc import PqParams, RealFunction, Interval, definite_integral, derivative_function, weight

params = PqParams.integration(0.8, 0.4)
r = params.ratio

# %% [markdown]
# For a constant integrand only the weights matter, and they telescope to
# the length of the interval.

# %%
for a, b in [(1, 4), (3, 4), (1 / 3, 1), (0, 0.5), (0.25, 0.5)]:
    res = definite_integral(a, b, lambda x: 5.0, params)
    print(f"int_{a:.3g}^{b:.3g} 5 = {res.value:.12f}  ({res.status.value}, {res.terms_used} terms)")

# %% [markdown]
# The weights at x = 4 shrink geometrically, which is why a few dozen terms
# suffice.

# %%
w = np.array([weight(4.0, j, params) for j in range(12)])
print(np.array2string(w, precision=3))
print("ratios:", np.array2string(w[1:] / w[:-1], precision=3))

# %% [markdown]
# Partial sums of the series applied to D F telescope exactly:
#
#     sum_{j<=N} weight * DF(node) = F(x) - F(x**(r**(N+1)))

# %%
F = lambda x: x ** 3
dF = derivative_function(F, params)
x = 2.0
for n in (0, 3, 10, 30):
    partial = math.fsum(weight(x, j, params) * dF(x ** (r ** j / params.p)) for j in range(n + 1))
    print(f"N={n:2d}: {partial:.15f} vs {F(x) - F(x ** (r ** (n + 1))):.15f}")

# %% [markdown]
# ## A logarithmic integrand
#
# For f = ln(x)/(x**p - x**q) the denominator at each node equals that
# node's weight, so the series reduces to sum_j ln(node). Evaluated at the
# nodes x**(r**j/p) this gives ln 3 / (p - q). If instead the logarithm is
# taken at x**(r**j), the sum is ln 3 / (1 - r) = p ln 3 / (p - q).

# %%
positive = Interval(0.0, math.inf, False, False)
f = RealFunction(lambda x: math.log(x) / (x ** 0.8 - x ** 0.4), positive, "ln-quotient")
res = definite_integral(1.0, 3.0, f, params)
print("series      :", res.value)
print("ln3/(p-q)   :", math.log(3) / 0.4)
print("p ln3/(p-q) :", 0.8 * math.log(3) / 0.4)

# %% [markdown]
# ## When the series fails
#
# For f = 1/(x**p - x**q) every term equals 1. The summation stops after a
# short probe window and reports divergence instead of returning a number.

# %%
g = RealFunction(lambda x: 1.0 / (x ** 0.8 - x ** 0.4), positive)
bad = definite_integral(1.0, 3.0, g, params)
print(bad.status.value, "after", bad.terms_used, "terms;", bad.detail)
