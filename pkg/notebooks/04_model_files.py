# %% [markdown]
# # Writing models as text
#
# Small models can live in `.lmod` files.  `check` reports every problem with
# its line and column instead of stopping at the first.

# %%
from pathlib import Path

from likelihood_evidence import check, likelihood, likelihood_ratio, load, parse, serialize

models = Path(__file__).resolve().parent.parent / "models"
urn = load(models / "urn1_rational.lmod")
print(likelihood_ratio(likelihood(urn, "red"), {"nu_c": 1}, {"nu_c": 201}).ratio)

# %%
broken = """model coin
param p : fair biased biased
outcome : H T
row fair : 0.5 0.5
row biased : 0.9 0.2
"""
doc, diagnostics = check(broken)
for d in diagnostics:
    print(d)

# %% [markdown]
# Serializing produces a canonical layout, and parsing it back gives the same
# document.

# %%
text = (models / "rain.lmod").read_text()
doc = parse(text)
print(serialize(doc))
print(parse(serialize(doc)) == doc)
