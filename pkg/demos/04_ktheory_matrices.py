"""
Integer matrices on Grothendieck groups
=======================================
"""

import numpy as np

from gbr3 import ktheory as kt
from gbr3.braid import parse

for m in kt.MODULES.values():
    print(m.name, "rank", m.rank, "det", kt.unimodularity_certificate(m))

t1 = kt.evaluate_word(parse("t[111,1]")).matrix
t2 = kt.evaluate_word(parse("t[111,2]")).matrix
print(t1)
print("braid relation:", np.array_equal(t1 @ t2 @ t1, t2 @ t1 @ t2))
print("involution:", np.array_equal(t1 @ t1, np.eye(6, dtype=int)))

# merges read as right adjoints
loop = kt.evaluate_word(parse("f[3>12] ; f[12>111] ; g[111>12] ; g[12>3]"), merges_as_adjoints=True)
print(loop.tolist())
