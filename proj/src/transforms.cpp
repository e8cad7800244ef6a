#include "nudge2d/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "nudge2d/errors.hpp"

namespace nudge2d {
namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// Plans are created once per size under a lock (the FFTW planner is not
// reentrant) and then executed through the thread-safe new-array interface.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair get(int n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;

    const std::size_t nodes = static_cast<std::size_t>(n) * n;
    const std::size_t modes = static_cast<std::size_t>(n) * (n / 2 + 1);
    double* real = fftw_alloc_real(nodes);
    fftw_complex* spec = fftw_alloc_complex(modes);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair pair;
    pair.r2c = fftw_plan_dft_r2c_2d(n, n, real, spec, flags);
    pair.c2r = fftw_plan_dft_c2r_2d(n, n, spec, real, flags);
    fftw_free(real);
    fftw_free(spec);
    plans_.emplace(n, pair);
    return pair;
  }

  ~PlanCache() {
    for (auto& [n, pair] : plans_) {
      fftw_destroy_plan(pair.r2c);
      fftw_destroy_plan(pair.c2r);
    }
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

void check_hermitian(const SpectralField& field) {
  const int n = field.n();
  const double scale = field.max_abs();
  if (scale == 0.0) return;
  const double tol = 1e-12 * scale;
  for (int ix : {0, n / 2}) {
    for (int iy = 0; iy <= n / 2; ++iy) {
      const int mirror = (n - iy) % n;
      const Complex a = field.stored(iy, ix);
      const Complex b = field.stored(mirror, ix);
      if (std::abs(a - std::conj(b)) > tol) {
        throw ContractError("spectrum violates Hermitian symmetry at kx=" +
                            std::to_string(ix == 0 ? 0 : n / 2) +
                            ", ky=" + std::to_string(field.grid().wavenumber(iy)));
      }
    }
  }
}

}  // namespace

void forward_into(const PhysicalField& field, SpectralField& out) {
  if (!(field.grid() == out.grid())) throw ContractError("grid mismatch in forward transform");
  const int n = field.n();
  const PlanPair plans = PlanCache::instance().get(n);
  // r2c leaves its input intact, but the interface takes a non-const pointer.
  auto* in = const_cast<double*>(field.values().data());
  auto* spec = reinterpret_cast<fftw_complex*>(out.data().data());
  fftw_execute_dft_r2c(plans.r2c, in, spec);
  const double norm = 1.0 / (static_cast<double>(n) * n);
  for (Complex& c : out.data()) c *= norm;
}

void inverse_into(const SpectralField& field, PhysicalField& out) {
  if (!(field.grid() == out.grid())) throw ContractError("grid mismatch in inverse transform");
  const PlanPair plans = PlanCache::instance().get(field.n());
  // c2r destroys its input.
  thread_local std::vector<Complex> scratch;
  scratch.assign(field.data().begin(), field.data().end());
  fftw_execute_dft_c2r(plans.c2r, reinterpret_cast<fftw_complex*>(scratch.data()),
                       out.values().data());
}

SpectralField forward(const PhysicalField& field) {
  if (!field.all_finite()) throw ContractError("forward transform of non-finite field");
  SpectralField out(field.grid());
  forward_into(field, out);
  return out;
}

PhysicalField inverse(const SpectralField& field) {
  check_hermitian(field);
  PhysicalField out(field.grid());
  inverse_into(field, out);
  return out;
}

}  // namespace nudge2d
