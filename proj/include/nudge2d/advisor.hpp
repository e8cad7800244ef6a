#pragma once

namespace nudge2d {

/// Inputs to the sufficient parameter relations for convergence from local
/// observations.  C, C_Omega and c0 have no closed-form values; supply fitted
/// ones (see fit_spectral_constant / verify_approx_inequality) or chosen ones.
struct AdvisorInputs {
  double nu = 1e-4;
  double grashof = 1e6;
  double c = 1.0;        ///< generic constant C of the energy estimate
  double c_omega = 1.0;  ///< spectral-inequality constant C_Omega
  double n_modes = 0.0;  ///< spectral index N
  double epsilon = 1.0;  ///< target tolerance (validated, not used by the relations)
  double c0 = 1.0;       ///< interpolant approximation constant
  double lambda1 = 1.0;
};

struct Advice {
  double mu = 0.0;          ///< 2 C nu lambda1 G^2 C_Omega exp(C_Omega sqrt(N))
  double h_star = 0.0;      ///< sqrt(nu / (4 C mu c0))
  double sigma_star = 0.0;  ///< analyticity radius scale, C_Omega <~ sigma
  double exponent = 0.0;    ///< C_Omega sqrt(N)
};

/// Throws ContractError for non-positive inputs (N may be 0) and
/// NumericalError naming the exponent when exp(C_Omega sqrt(N)) overflows.
Advice advise_parameters(const AdvisorInputs& in);

}  // namespace nudge2d
