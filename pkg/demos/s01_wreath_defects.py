"""
Regular classes of a cyclic wreath product
==========================================

In Z_ell wr S_w an element is regular when none of its cycle products is
trivial.  The defect of every irreducible character then depends only on its
degree, and the trivial character has the largest one.
"""

from collections import Counter
from math import factorial

from ellblocks import (WreathModel, cyclic_base, block_partition, validate_closed,
                       regular_classes, reg_defect_formula, congruence_value)

ell, w = 3, 3
G = WreathModel(cyclic_base(ell), w)
print(G, "order", G.order, "=", ell ** w * factorial(w))

C = validate_closed(G, regular_classes(G), require_identity=False)
report = block_partition(G, C)

rows = []
for i, label in enumerate(G.labels):
    rows.append((str(label), G.degree(i), report.defects[i], reg_defect_formula(ell, w, label)))
for row in rows[:8]:
    print("%-14s degree %3d  defect %3d  formula %3d" % row)
print("all agree:", all(r[2] == r[3] for r in rows))
print("defect histogram:", dict(Counter(report.defects)))

# the normalised inner product with the trivial character is -1 mod ell for odd w
print(sorted({congruence_value(G, ell, i) % ell for i in range(G.nchars)}))

# Z_ell alone (w = 1) is handled row by row for large ell
from ellblocks.wreath import cyclic_regular_report
big = cyclic_regular_report(4999)
print("Z_4999: one block:", len(big.blocks) == 1, "defect", big.defects[0])
