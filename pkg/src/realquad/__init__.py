"""realquad: values of modular functions at real quadratic irrationals.

Exact minus-continued-fraction arithmetic, Pell units, certified q-expansions
and two independent cycle-integral evaluators, plus the bound laboratory and
class-number/trace scans built on top of them.
"""

__version__ = "0.1.0"

from .quadfield import (Mobius, NotQuadraticError, QForm, QuadIrr,
                        apply_mobius, format_quad, galois_conjugate,
                        parse_quad, roots_of_form)
from .minuscf import (MinusCF, OrbitTable, expand, from_period,
                      hyperbolic_word, nu_digit_bound, nu_estimate,
                      orbit_table)
from .pell import PellSolution, automorph, geodesic_length, pell_fundamental
from .modfun import (FourierSeries, constant_series, constant_term,
                     eval_series, from_coeffs, j_series)
from .quadrature import QuadratureError, integrate
from .cyclevalue import (CycleValue, Kernel, arc_sin_integral,
                         kernel_symmetry_check, limit_scan, value_at,
                         value_direct, value_kernel)
from .boundslab import (F, G, bound_constants, comparison_check, envelope,
                        s_split, verify_theorem_S)
from .traces import (ClassList, class_list, class_number_bruteforce,
                     class_number_one_scan, fundamental_discriminants,
                     ratio_scan, trace)

__all__ = [name for name in dir() if not name.startswith("_")]
