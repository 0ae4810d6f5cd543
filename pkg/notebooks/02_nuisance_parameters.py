# %% [markdown]
# # Nuisance parameters
#
# Birnbaum's model has a mean `mu` that can be any integer in a huge range and
# a spread `sigma` that is either 0 (the observation equals `mu`) or 100 (a
# triangular spread of width 199 around `mu`).  Only `sigma` is of interest.

# %%
from likelihood_evidence import (
    NuisanceSpec,
    birnbaum_model,
    derived_statistic_model,
    distinct_count_statistic,
    likelihood,
    likelihood_ratio,
    marginalize,
    profile,
    urn2_model,
)

model = birnbaum_model()
L = likelihood(model, 17)
print("points with nonzero likelihood:", len(L))
print("(17, 0) against (17, 100):", likelihood_ratio(L, (17, 0), (17, 100)).ratio)

# %% [markdown]
# Maximizing over `mu` (profiling) picks a different `mu` for each `sigma` and
# reports 100 to 1 for `sigma = 0`.  Summing over `mu` with equal weights
# (marginalizing) shows that one observation cannot separate the two values.

# %%
sigma0, sigma100 = {"sigma": 0}, {"sigma": 100}
print("profile:", likelihood_ratio(profile(L, ["mu"]), sigma0, sigma100).ratio)
print("marginal:", likelihood_ratio(marginalize(L, ["mu"]), sigma0, sigma100).ratio)

# %% [markdown]
# ## A statistic that ignores the nuisance
#
# The number of distinct values in a sample has the same distribution for
# every `mu`.  Modelling that count directly removes `mu` altogether.

# %%
stat = distinct_count_statistic()
for n in (1, 2):
    derived = derived_statistic_model(model, stat, n, NuisanceSpec.over(model.space, ["mu"]))
    for point, probs in derived.rows():
        print(f"n={n} {point}: " + ", ".join(f"P({o})={p:.6g}" for o, p in zip(derived.outcomes, probs)))

# %% [markdown]
# The second urn experiment behaves the same way: which color is the common
# one is a nuisance, and the distinct count is free of it.

# %%
urn = urn2_model()
derived = derived_statistic_model(urn, stat, 2, ["mu"])
print({str(p): dict(zip(derived.outcomes, probs)) for p, probs in derived.rows()})
