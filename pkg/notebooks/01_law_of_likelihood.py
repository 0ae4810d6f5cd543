# %% [markdown]
# # Comparing hypotheses with likelihood ratios
#
# A weather forecaster's probabilities of rain for each day of the week form
# a small discrete model.  Once rain is observed, each day's probability of
# rain becomes that day's likelihood, and the ratio of two likelihoods says
# how strongly the observation favors one day over the other.

# %%
from likelihood_evidence import likelihood, likelihood_ratio, max_likelihood_points, rain_model, urn1_model

rain = rain_model()
L = likelihood(rain, "rain")
for point, value in L.items():
    print(f"{point}: {value}")

# %%
print("Wednesday vs Thursday:", likelihood_ratio(L, {"day": "Wednesday"}, {"day": "Thursday"}).ratio)
print("Thursday vs Saturday: ", likelihood_ratio(L, {"day": "Thursday"}, {"day": "Saturday"}).ratio)
print("best supported:", sorted(str(p) for p in max_likelihood_points(L)))

# %% [markdown]
# Only ratios carry meaning.  Multiplying the whole function by a constant
# leaves every ratio, and the best-supported day, untouched.

# %%
scaled = L.scaled(1234.5)
print(likelihood_ratio(scaled, {"day": "Wednesday"}, {"day": "Thursday"}).ratio)
print(max_likelihood_points(scaled) == max_likelihood_points(L))

# %% [markdown]
# ## A red ball
#
# One urn holds only red balls; the other holds 201 colors with 1% red.  A red
# draw favors the single-color urn 100 to 1, and any other color rules it out.

# %%
urn = urn1_model()
red = likelihood_ratio(likelihood(urn, "red"), {"nu_c": 1}, {"nu_c": 201})
other = likelihood_ratio(likelihood(urn, "non-red"), {"nu_c": 1}, {"nu_c": 201})
print(red.ratio, red.classification.value)
print(other.ratio, other.classification.value)
