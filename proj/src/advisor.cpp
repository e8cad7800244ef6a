#include "nudge2d/advisor.hpp"

#include <cmath>
#include <sstream>

#include "nudge2d/errors.hpp"

namespace nudge2d {

Advice advise_parameters(const AdvisorInputs& in) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw ContractError(std::string("advisor input ") + name + " must be > 0");
  };
  positive(in.nu, "nu");
  positive(in.grashof, "G");
  positive(in.c, "C");
  positive(in.c_omega, "C_Omega");
  positive(in.epsilon, "epsilon");
  positive(in.c0, "c0");
  positive(in.lambda1, "lambda1");
  if (!(in.n_modes >= 0.0)) throw ContractError("advisor input N must be >= 0");

  Advice out;
  out.exponent = in.c_omega * std::sqrt(in.n_modes);
  const double growth = std::exp(out.exponent);
  out.mu = 2.0 * in.c * in.nu * in.lambda1 * in.grashof * in.grashof * in.c_omega * growth;
  if (!std::isfinite(out.mu)) {
    std::ostringstream msg;
    msg << "relaxation parameter overflows: exponent C_Omega*sqrt(N) = " << out.exponent;
    throw NumericalError(msg.str());
  }
  out.h_star = std::sqrt(in.nu / (4.0 * in.c * out.mu * in.c0));
  out.sigma_star = in.c_omega;
  return out;
}

}  // namespace nudge2d
