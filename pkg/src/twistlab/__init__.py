"""Exact computations with twisted universal enveloping algebras.

Elements of U(g)^{(x)k}[[xi]] are truncated xi-series with rational
coefficients in the PBW basis.  The package builds jordanian and
extended twists, their coproducts, antipodes and R-matrices, checks the
twist equation and Hopf axioms exactly, and extracts classical
r-matrices and dual Lie structures.
"""

from ._kernel import BACKEND
from .errors import *  # noqa: F401,F403
from .expr import emit_expression, evaluate, parse_expression
from .fixtures import FixtureTable, compare_fixture, load_fixture, parse_fixture
from .lie import (LieAlgebra, Morphism, adjoint_flow, check_morphism, define_lie_algebra,
                  frobenius_form, make_borel2, make_carrier_L, make_gl)
from .pbw import (TensorElement, XiSeries, counit, generator, multiply, normal_order,
                  primitive_coproduct, series_exp, series_inverse, series_log, series_pow,
                  tensor, unit)
from .semiclassical import (DualLieTable, check_bialgebra_cocycle, check_cojacobi, check_cybe,
                            check_jacobi, check_mutual_cocycle, classical_r, cobracket,
                            cobracket_map, make_dual_dj, r_dj_flow_check, wedge)
from .twist import (CoproductTable, Twist, abelian_twist, check_factorized, check_hopf_axioms,
                    check_qybe, check_triangularity, check_twist_equation, compose_twists,
                    coproduct_table, equivalence_substitution, extension_factor,
                    heisenberg_table, jordanian_twist, twist_antipode, twist_coproduct,
                    universal_R)

__version__ = "0.1.0"
