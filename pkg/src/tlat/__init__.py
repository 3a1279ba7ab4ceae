"""Order-theoretic toolkit for lattices generated by consistent pairs of t-structures."""

from ._kernels import BACKEND
from .chains import (ChainPair, Staircase, UNormalForm, VProduct, decomposable, embed,
                     enumerate_lattice, join, meet, perversity_view, r_term, s_term,
                     staircase_to_u, u_sum_normal_form, u_to_staircase, u_to_v, v_to_u)
from .congruence import Congruence, generate_congruence, order_lifting_failure, quotient
from .consistency import (ConsistencyStructure, Derivation, check_axioms,
                          derive_ordered_commute, full_labeling, plan_expression, saturate)
from .dsl import parse_dsl
from .errors import *  # noqa: F401,F403
from .euler import QuiverRepDims, admissibility_contradiction, chi_line, homfp_euler
from .poset import (Chain, FiniteLattice, Poset, birkhoff_decompose, build_poset, check_laws,
                    is_lattice, join_irreducibles, sublattice_closure)
from .terms import (Bottom, CanonicalDNF, Gen, Join, LatticeTerm, Meet, Top, dnf_leq,
                    enumerate_D, eval_valuation, parse_term, terms_equal, to_dnf)
from .universal import StagedUniversal, build_U_staged, psi

__version__ = "0.1.0"
