# %% [markdown]
# # Likelihood curves for two observations
#
# With observations 17 and 132 no point with `sigma = 0` survives, and the
# `sigma = 100` curve is a tent centred between them.  With two equal
# observations the single `sigma = 0` point towers over the best
# `sigma = 100` point.  This script writes the curves as CSV for plotting.

# %%
import csv
import sys

import numpy as np

from likelihood_evidence import BirnbaumConfig, birnbaum_model
from likelihood_evidence.misleading import likelihood_lines, two_observation_likelihood_profile

model = birnbaum_model(BirnbaumConfig(mu_values=range(-300, 301)))
mu = np.arange(-150, 301)

# %%
different = likelihood_lines(two_observation_likelihood_profile(model, 17, 132), mu)
same = likelihood_lines(two_observation_likelihood_profile(model, 17, 17), mu)
print("max sigma=0 height, different draws:", different[0].max())
print("ratio of peaks, equal draws:", same[0].max() / same[100].max())

# %%
writer = csv.writer(sys.stdout)
writer.writerow(["mu", "different_sigma0", "different_sigma100", "same_sigma0", "same_sigma100"])
for row in zip(mu[::50], different[0][::50], different[100][::50], same[0][::50], same[100][::50]):
    writer.writerow(row)
