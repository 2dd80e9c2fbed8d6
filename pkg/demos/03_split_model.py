"""
The split model
===============

Forks followed by merges reduce to sums of shifted identities.
"""

from gbr3 import split
from gbr3.braid import P12, parse

print(split.reduce_word("f[3>12] ; f[12>111] ; g[111>12] ; g[12>3]"))
print(split.reduce_word("f[12>111] ; g[111>12]"))

ff = split.flop_flop_word(P12)
print(ff, "vs", split.ptwist_class(P12))
print(split.split_equal(ff, split.ptwist_class(P12)).value)

print(split.split_equal(parse("t[111,1]"), parse("id[111]")).value)
