"""Generalized blocks and defects of symmetric groups and wreath products, in exact arithmetic."""

from .arith import BigRational, CycloValue, NonRationalValue, cyclo_as_rational, pi_part
from .blocks import (BlockReport, ClassInfo, ClosedClassSet, GroupModel, ModelError,
                     NotClosedError, TheoremViolation, block_partition, contribution,
                     contribution_numerators, defect, defect_one_diagnostics, direct_product,
                     validate_closed)
from .normalizer import (build_holomorph, holomorph_blocks, normalizer_defects,
                         normalizer_model)
from .partitions import (MultiPartition, Partition, abacus, boost_weight, ell_core,
                         ell_decompose, ell_weight, enumerate_multipartitions,
                         enumerate_partitions, hook_lengths, hooks, recombine)
from .symmetric import character_table, degree_hlf, ell_regular_classes, mn_value, sn_model
from .wreath import (WreathModel, congruence_value, cyclic_base, reg_defect_formula,
                     regular_classes, wreath_classes, wreath_mn_value)

__version__ = "0.1.0"
