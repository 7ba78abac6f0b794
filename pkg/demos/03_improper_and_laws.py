# %% [markdown]
# # Improper integrals and structural laws
#
# Improper integrals sum over both directions of an orbit: toward 1 and
# away from it (toward 0 or infinity). Each direction is judged on its own.

# %%
import math

import numpy as np

from pqcalc import (
    INFINITY,
    IntegralRequest,
    Interval,
    PqParams,
    RealFunction,
    check_improper_hypothesis,
    check_theorem1_hypothesis,
    derivative_function,
    improper_integral,
    verify_fundamental_theorem,
    verify_integration_by_parts,
    verify_inverse_lemmas,
    verify_product_rules,
    verify_quotient_rules,
)

params = PqParams.integration(0.8, 0.4)
positive = Interval(0.0, math.inf, False, False)

# %% [markdown]
# For F = -1/x, the integral of D F from a to infinity is 0 - F(a).

# %%
F = RealFunction(lambda x: -1.0 / x, positive, "-1/x")
dF = derivative_function(F, params)
for a in (0.5, 1.0, 2.0, 10.0):
    res = improper_integral(IntegralRequest(a, INFINITY), dF, params)
    print(f"[{a}, inf): {res.value:.12f}  expected {1 / a:.12f}  ({res.terms_used} terms)")

G = lambda x: -math.exp(-x)
print("[0, inf) of D(-exp(-x)):", improper_integral(IntegralRequest(0.0, INFINITY), derivative_function(G, params), params).value)

# %% [markdown]
# ## Laws
#
# Each check evaluates both sides independently and reports the largest
# residual. The sample below is drawn with a fixed seed.

# %%
rng = np.random.default_rng(7)
xs = np.concatenate([rng.uniform(0.1, 0.9, 4), rng.uniform(1.1, 3.0, 4)])
pairs = [tuple(sorted(rng.uniform(0.1, 3.0, 2))) for _ in range(4)]
f, g = math.exp, (lambda x: 2.0 + math.cos(x))

for report in (
    verify_product_rules(f, g, xs, params),
    verify_quotient_rules(f, g, xs, params),
    verify_inverse_lemmas(f, xs, params),
    verify_fundamental_theorem(lambda x: x ** 3, pairs, params),
    verify_integration_by_parts(f, g, pairs, params),
):
    print(report)

# %% [markdown]
# ## Sampled hypotheses
#
# Convergence is guaranteed when |f(x) x**alpha| stays bounded. The checker
# samples that quantity; it is advisory, not a proof.

# %%
print(check_theorem1_hypothesis(RealFunction(lambda x: x ** -0.5, positive), 0.5, 4.0, params))
print(check_theorem1_hypothesis(RealFunction(lambda x: 1 / (x ** 0.8 - x ** 0.4), positive), 0.5, 4.0, params))
print(check_improper_hypothesis(lambda x: 0.5 * math.exp(-x), 0.5, -0.5, 1.0, params))
