"""
Blocks of the symmetric group for a non-prime modulus
=====================================================

Contributions are summed over the ell-regular classes only.  Characters are
linked when a contribution is nonzero, and the resulting blocks line up with
the ell-cores of the labelling partitions.
"""

from ellblocks import sn_model, validate_closed, block_partition, ell_decompose
from ellblocks.symmetric import ell_regular_classes
from ellblocks.verification import hook_defect_formula

n, ell = 6, 4
model = sn_model(n)
C = validate_closed(model, ell_regular_classes(n, ell))
report = block_partition(model, C)

# each block, with the core of its members
for block in report.blocks:
    names = [model.characters[i] for i in block]
    cores = {str(ell_decompose(name.split(","), ell).core) for name in names}
    print(f"{names}  core {cores}")

# defects from denominators, next to the hook product
for name, d in zip(model.characters, report.defects):
    print(f"{name:>12}  defect {d:>3}  hooks {hook_defect_formula(name.split(','), ell):>3}")

# a few exact contributions
print(report.contribution(0, 0), report.contribution(0, model.nchars - 1))
