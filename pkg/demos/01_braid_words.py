"""
Braid words on partitions of 3
==============================

Parsing, composing and reflecting words between the four objects.
"""

from gbr3.braid import Axis, parse, reflect, render

# a fork from the triple strand, then a crossing of the single strands
w = parse("f[3>12] ; f[12>111] ; t[111,1]")
print(render(w), "  :", w.source, "->", w.target)

# the empty word at an object
print(render(parse("id[12]")), len(parse("id[12]").normalized()))

for axis in Axis:
    print(axis.name, render(reflect(w, axis)))

# reflections are involutions
assert all(reflect(reflect(w, a), a) == w for a in Axis)
