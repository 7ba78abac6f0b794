# %% [markdown]
# # pq-derivatives
#
# The pq-derivative replaces the classical difference quotient by a quotient
# over the two power-deformed points x**p and x**q:
#
#     D f(x) = (f(x**p) - f(x**q)) / (x**p - x**q)
#
# Run with `python3 demos/01_derivatives.py`.

# %%
import math

import numpy as np

from pqcalc import PqParams, pq_derivative, pq_derivative_n

params = PqParams.derivative(2.0, 3.0)
print("D x^2 at x=2 with (p, q) = (2, 3):", pq_derivative(lambda x: x * x, 2.0, params))

# %% [markdown]
# Powers and the logarithm have closed forms. We tabulate the quotient next
# to them on a few points.

# %%
def power_rule(n, x, p, q):
    return (x ** ((p - 1) * n) - x ** ((q - 1) * n)) / (x ** (p - 1) - x ** (q - 1)) * x ** (n - 1)


xs = np.array([0.5, 2.0, 5.0])
for n in (1, 2, 3):
    got = np.array([pq_derivative(lambda t: t ** n, x, params) for x in xs])
    want = np.array([power_rule(n, x, 2.0, 3.0) for x in xs])
    print(f"n={n}: max rel diff {np.max(np.abs(got / want - 1)):.1e}")

logs = np.array([pq_derivative(math.log, x, params) for x in xs])
print("D ln x:", logs, "closed form:", (2.0 - 3.0) * np.log(xs) / (xs ** 2 - xs ** 3))

# %% [markdown]
# At x = 1 both deformed points collapse onto 1, so the quotient is 0/0.
# The value there is a limit, extrapolated from both sides.

# %%
print("D x^2 at 1:", pq_derivative(lambda x: x * x, 1.0, params))
print("D exp at 1:", pq_derivative(math.exp, 1.0, params), "(e =", math.e, ")")

# %% [markdown]
# As p and q both approach 1 the operator approaches the ordinary
# derivative. With p = 1 - eps and q = 1 - 2 eps the error shrinks roughly
# in proportion to eps.

# %%
for eps in (1e-1, 1e-2, 1e-3, 1e-4):
    near = PqParams.derivative(1 - eps, 1 - 2 * eps)
    err = abs(pq_derivative(math.exp, 2.0, near) - math.exp(2.0))
    print(f"eps={eps:.0e}  |D exp(2) - exp(2)| = {err:.3e}")

# %% [markdown]
# Iterating the operator: with (p, q) = (2, 3), D x^2 = x^2 + x^3, so the
# second iterate is D x^2 + D x^3.

# %%
print("D^2 x^2 at 2:", pq_derivative_n(lambda x: x * x, 2.0, 2, params),
      "expected:", power_rule(2, 2.0, 2.0, 3.0) + power_rule(3, 2.0, 2.0, 3.0))
