# %% [markdown]
# # How often is the evidence misleading?
#
# Fix the true parameter point, draw samples from it, and count how often a
# false hypothesis ends up favored by at least `k` to 1.  Small problems can
# be enumerated exactly; larger ones are estimated by seeded Monte Carlo.

# %%
from likelihood_evidence import (
    BirnbaumConfig,
    ComparisonSpec,
    birnbaum_model,
    exact_misleading_probability,
    monte_carlo_misleading,
)

model = birnbaum_model()
true = model.space.point(mu=0, sigma=100)

# %% [markdown]
# Comparing whole parameter points, one observation always favors some
# `(x, 0)` by 100 to 1, so the false `sigma = 0` wins every time.  Judged
# through the distinct-count statistic it never wins.

# %%
for style in ("vector-argmax", "interest-marginal", "interest-derived"):
    report = exact_misleading_probability(model, true, ComparisonSpec(style, 100), 1)
    print(f"{style:18s} P(misleading) = {report.probability}")

# %% [markdown]
# With two observations the full-vector comparison misleads only when both
# draws coincide, and then by 10,000 to 1.

# %%
small = birnbaum_model(BirnbaumConfig(mu_values=range(-300, 301)))
true = small.space.point(mu=0, sigma=100)
spec = ComparisonSpec("vector-argmax", 100)
exact = exact_misleading_probability(small, true, spec, 2)
print("exact:", exact.probability, "smallest misleading ratio:", exact.min_misleading_ratio)
mc = monte_carlo_misleading(small, true, spec, 2, trials=200_000, seed=2026)
print(f"monte carlo: {mc.probability} +- {mc.standard_error:.2g}")

# %% [markdown]
# The estimate depends only on the seed, not on how many threads ran it.

# %%
again = monte_carlo_misleading(small, true, spec, 2, trials=200_000, seed=2026, threads=1)
print(again == mc)
