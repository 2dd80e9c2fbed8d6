"""
Running the verification suite
==============================
"""

from collections import Counter

from gbr3.verify import cross_model_tally, random_pairs, run_verification

results = run_verification(samples=200, seed=1)
print(Counter(r.status for r in results))
print(Counter(r.check.split("/")[0] for r in results))

tally = cross_model_tally(random_pairs(200, seed=7))
print(tally)
