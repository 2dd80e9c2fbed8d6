"""
Deciding equality by rewriting
==============================
"""

from gbr3.braid import parse, render
from gbr3.rewrite import Budget, equal, normalize, relation_closure, replay

rels = relation_closure()
print(len(rels), "relations after closing under reflections")
for r in rels[:4]:
    print(f"  {r.name:22} {render(r.lhs)}  =  {render(r.rhs)}")

lhs = parse("t[111,1] ; t[111,2] ; t[111,1] ; d[111,2]")
rhs = parse("t[111,2] ; t[111,1]")
v = equal(lhs, rhs, Budget(20_000, 8))
print(v.status.value, "after", v.states_explored, "states")
for move in v.witness:
    print("  ", move.as_tuple())
assert replay(lhs, v.witness) == rhs

# the crossing and its inverse are never identified: absent a proof the search reports Unknown
print(equal(parse("t[12>21]"), parse("d[12>21]"), Budget(2_000, 6)).status.value)

print(render(normalize(parse("f[3>21] ; f[21>111] ; t[111,1]"))))
