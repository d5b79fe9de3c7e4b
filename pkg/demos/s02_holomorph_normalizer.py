"""
The holomorph of a cyclic group and its wreath products
=======================================================

Hol(Z_ell) = Z_ell x| U(ell).  Removing the class of a generator of Z_ell leaves
a closed set whose principal block has exactly ell characters.  Wreathing with
S_w and multiplying by S_r gives a group whose maximal-defect characters can
be counted against those of S_(ell w + r).
"""

from ellblocks import build_holomorph, holomorph_blocks, block_partition
from ellblocks.normalizer import normalizer_model
from ellblocks.verification import mckay_counts, per_defect_counts

for ell in range(2, 8):
    hol = build_holomorph(ell)
    rep = holomorph_blocks(ell)
    print(f"ell={ell}: order {hol.model.order}, block sizes {[len(b) for b in rep.blocks]}")

for key in [(3, 1, 2), (3, 2, 1), (5, 2, 0), (4, 2, 1)]:
    rep = mckay_counts(*key)
    print(key, "max defect", rep.data["max_defect"],
          "counts", rep.data["count_sn"], rep.data["count_normalizer"])

# for ell = 4 and w = 2 the normalizer has a second non-singleton block,
# and the per-defect histograms stop matching
nm = normalizer_model(4, 2, 0)
rep = block_partition(nm.model, nm.class_set)
principal = rep.block_of(nm.model.trivial)
for b in rep.blocks:
    if len(b) > 1 and b != principal:
        print([nm.model.characters[i] for i in b], "defect", rep.defects[b[0]])
print(per_defect_counts(4, 2, 0).witnesses)
