"""Congruence lattices of diagram and transformation monoids.

Finite monoids (partition, partial Brauer, Brauer, full transformation,
symmetric inverse) are enumerated outright and their congruence lattices
brute-forced by pair saturation; the parametric classification of those
lattices is built independently and cross-checked against the brute force.
For infinite ground sets the same congruences are handled symbolically:
descriptors over a cardinal calculus, with containment, meets/joins,
enumeration at a fixed |X|, principal congruences and generating ranks.
"""

from .cardinals import (ALEPH_0, Cardinal, CardinalContext, FIN_0, FIN_1,
                        OrdIndex, cofinality, compare, format_cardinal,
                        interval, parse_cardinal, successor)
from .congruences import (CongruenceLattice, EqRel, all_congruences, analyze,
                          closure, crank_bruteforce, is_congruence,
                          lattice_ops, principal_congruences)
from .descriptors import (CongruenceDescriptor, Reversal, crank, delta,
                          enumerate_all, format_descriptor, is_star, join,
                          leq, meet, membership, nabla, parse_descriptor,
                          principal_descriptor, validate)
from .finitary import (FinitaryPartition, PairProfile, compose_fin, fin_stats,
                       make_finitary, pair_profile, synth_profile)
from .finite_classification import (FiniteCongruenceSpec, build,
                                    enumerate_parametric, verify)
from .monoids import (FiniteMonoid, MonoidFamily, build_table,
                      enumerate_monoid, generators, structure)
from .partitions import (Partition, PartitionStats, basic_relation_member,
                         compose, drank, green, hat, make_partition,
                         parse_partition, phi_cycle_type, refine_lattice,
                         star, stats, sym_diff_counts)
from .symgroups import NormalSubgroup, normal_subgroups

__version__ = "0.1.0"
