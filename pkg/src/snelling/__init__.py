"""Graded posets, S_n EL-labelings (snellings), 0-Hecke actions on maximal
chains, flag quasisymmetric functions and supersolvability."""

from .poset import (
    GradingCertificate,
    LatticeTable,
    Poset,
    grade,
    is_bowtie_free,
    is_distributive,
    lattice_ops,
    maximal_chains,
    order_ideal_lattice,
    poset_from_covers,
    sublattice_closure,
)
from .labeling import chain_word, find_snelling, verify_el, verify_snelling
from .hecke import (
    ChainAction,
    action_from_snelling,
    find_sink_chain,
    omega_of_chain,
    reconstruct_labeling,
    restless_word,
    verify_good,
    verify_hecke,
)
from .qsym import QSymL, ch_of_action, evaluate, f_p, f_p_multichain, flag_f, flag_h, omega_involution
from .supersolvable import (
    closure_Q_m,
    is_supersolvable_direct,
    is_supersolvable_via_snelling,
    poset_p_omega,
    verify_qm_isomorphism,
    verify_sublattice_equality,
)
from .verdict import Verdict
