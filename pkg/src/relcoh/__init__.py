"""Exact local cohomology for graded modules over QQ[x] and QQ[t][x].

The kernel computes H^i at the ideal of the x variables through the
inverse-monomial module E = H^n(R) (every graded slice is finite exact
linear algebra over the base ring), cross-checks it against the colimit of
Ext(R/I^s, -), verifies the degreewise duality between H^i and the
continuous dual of Ext^(n-i)(-, R), finds generic-freeness witnesses in
QQ[t], and checks base-change commutation under specializations t -> c.
"""

from .basechange import (BaseChangeReport, Witness, base_change_check,
                         find_witness, specialize_module, specialize_scalar)
from .duality import (DualExactReport, DualityReport, ShortExactSequence,
                      dual_exactness_check, duality_check, relative_dual)
from .elements import Element, poly_mul
from .groebner import (TermOrder, buchberger, is_groebner, normal_form,
                       syzygy_basis)
from .homology import (GradedAModuleData, complex_cohomology_degreewise,
                       ext_data, ext_module, graded_piece, module_data,
                       piece_invariants)
from .inversemod import InverseElement, e_act, e_piece_rank, phi_pairing
from .linalg import ScalarMatrix, base_invariants, smith_normal_form
from .localcoh import local_cohomology, local_cohomology_extlim
from .modules import (ChainComplex, ModulePresentation, dualize_complex,
                      free_resolution, subquotient_presentation)
from .rings import QQ, QQT, KernelError, Ring
from .runner import RunOptions, RunResult, run_session
from .scalars import Scalar
from .session import ParseError, Session, parse_session

__version__ = "0.1.0"
