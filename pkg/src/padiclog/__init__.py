"""Finite-precision p-adic power-series toolkit.

Modules:
  padic   -- fixed-point p-adic numbers with precision tracking and small
             quadratic extensions
  cycser  -- the ring O[[pi]] with Frobenius, its trace-type left inverse,
             the Gamma-action, and the finite-level Mellin transform
  iwadist -- Iwasawa-algebra truncations: omega/Phi/delta families, twists,
             Pollack half-logarithms, evaluation and up-to-unit comparison
  logmat  -- logarithmic matrices from a_p = 0 Frobenius data, block forms
  split   -- signed splitting through a logarithmic matrix, antisymmetric
             factorization, log-divisibility test
  regdiv  -- divisibility checking in truncated multivariate series rings
  galimg  -- finite matrix-group enumeration, product criteria, tau search
  qexp    -- theta series, p-depletion, Eisenstein layers, Euler products
  checks  -- the named invariant suites behind `padiclog check`
"""

from padiclog.padic import PadicElt, PrimeCtx, inv, sqrt, teichmuller, val
from padiclog.cycser import (FiniteGroupRingElt, PiSeries, frobenius,
                             gamma_act, mellin, mellin_inverse, psi)
from padiclog.iwadist import (CharPoint, IwaSeries, delta, divide_exact,
                              equal_up_to_unit_mod, eval_at, halflog, is_unit,
                              log_tw, omega, omega_tw, phi_cyc, phi_tw, twist)
from padiclog.logmat import (CrystalParams, LogMatrix, log_matrix_ap0,
                             q_fg_block, q_matrix, q_matrix_inv, qinv_times,
                             semi_ordinary_block, wach_matrices_ap0)
from padiclog.split import (AlphaBetaPair, SignedPair, antisym_factor,
                            forward, logdiv_check, signed_split)
from padiclog.regdiv import MSeries, SpecFamily, chevalley_check, divides_trunc, specialize
from padiclog.galimg import (DihedralData, MatGroupGen, closure, dihedral_rep,
                             find_tau, goursat_product_check)
from padiclog.qexp import (ImagQuadCtx, QExpansion, deplete,
                           dirichlet_from_euler, eisenstein_depleted,
                           nebentype_value, theta_series)

__all__ = [
    "PadicElt", "PrimeCtx", "inv", "sqrt", "teichmuller", "val",
    "FiniteGroupRingElt", "PiSeries", "frobenius", "gamma_act", "mellin",
    "mellin_inverse", "psi",
    "CharPoint", "IwaSeries", "delta", "divide_exact", "equal_up_to_unit_mod",
    "eval_at", "halflog", "is_unit", "log_tw", "omega", "omega_tw", "phi_cyc",
    "phi_tw", "twist",
    "CrystalParams", "LogMatrix", "log_matrix_ap0", "q_fg_block", "q_matrix",
    "q_matrix_inv", "qinv_times", "semi_ordinary_block", "wach_matrices_ap0",
    "AlphaBetaPair", "SignedPair", "antisym_factor", "forward", "logdiv_check",
    "signed_split",
    "MSeries", "SpecFamily", "chevalley_check", "divides_trunc", "specialize",
    "DihedralData", "MatGroupGen", "closure", "dihedral_rep", "find_tau",
    "goursat_product_check",
    "ImagQuadCtx", "QExpansion", "deplete", "dirichlet_from_euler",
    "eisenstein_depleted", "nebentype_value", "theta_series",
]
