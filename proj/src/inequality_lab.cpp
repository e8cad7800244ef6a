#include "nudge2d/inequality_lab.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

#include "nudge2d/errors.hpp"
#include "nudge2d/observation.hpp"
#include "nudge2d/seeding.hpp"
#include "nudge2d/spectral_ops.hpp"
#include "nudge2d/transforms.hpp"

namespace nudge2d {
namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_band(int K, Grid grid) {
  if (K < 1 || 2 * K >= grid.n()) {
    throw ContractError("band K=" + std::to_string(K) + " must satisfy 1 <= K < n/2 (n=" +
                        std::to_string(grid.n()) + ")");
  }
}

struct LineFit {
  double slope = 0.0, intercept = 0.0, r_squared = 0.0;
};

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  LineFit fit;
  if (xs.empty()) return fit;
  const double count = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  if (syy > 0.0 && sxx > 0.0) {
    fit.r_squared = std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  } else {
    fit.r_squared = xs.size() >= 2 ? 1.0 : 0.0;
  }
  return fit;
}

}  // namespace

SpectralField sample_bandlimited(int K, std::uint64_t seed, Grid grid) {
  check_band(K, grid);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  SpectralField f(grid);
  for (int ky = -K; ky <= K; ++ky) {
    for (int kx = 0; kx <= K; ++kx) {
      if (kx == 0 && ky <= 0) continue;  // mean and conjugate partners
      const double re = normal(rng);
      const double im = normal(rng);
      f.set(kx, ky, Complex(re, im));
    }
  }
  const double norm = l2_norm(f);
  f *= 1.0 / norm;
  return f;
}

double thickness_ratio(const SpectralField& f, const Mask& mask) {
  if (!(f.grid() == mask.grid())) throw ContractError("thickness_ratio grid mismatch");
  if (mask.empty()) throw DegenerateError("thickness ratio on an empty mask");
  const PhysicalField phys = inverse(f);
  const double masked = masked_l2_norm(phys, mask);
  if (masked == 0.0) throw DegenerateError("field vanishes on the mask");
  const double global = l2_norm(phys);
  return (global * global) / (masked * masked);
}

double extremal_thickness_ratio(const Mask& mask, int K) {
  const Grid grid = mask.grid();
  check_band(K, grid);
  if (mask.empty()) throw DegenerateError("thickness ratio on an empty mask");
  PhysicalField indicator(grid);
  for (int iy = 0; iy < grid.n(); ++iy) {
    for (int ix = 0; ix < grid.n(); ++ix) indicator.at(ix, iy) = mask.at(ix, iy) ? 1.0 : 0.0;
  }
  const SpectralField chi = forward(indicator);

  std::vector<std::pair<int, int>> modes;
  for (int ky = -K; ky <= K; ++ky) {
    for (int kx = -K; kx <= K; ++kx) {
      if (kx != 0 || ky != 0) modes.emplace_back(kx, ky);
    }
  }
  const auto m = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXcd gram(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      gram(a, b) = chi.coeff(modes[a].first - modes[b].first, modes[a].second - modes[b].second);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("restriction eigenproblem failed");
  const double lambda_min = solver.eigenvalues()(0);
  if (!(lambda_min > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / lambda_min;
}

std::string to_string(RatioEstimator estimator) {
  return estimator == RatioEstimator::kExtremal ? "extremal" : "sampled";
}

RatioEstimator parse_ratio_estimator(std::string_view name) {
  if (name == "sampled") return RatioEstimator::kSampled;
  if (name == "extremal") return RatioEstimator::kExtremal;
  throw ConfigError("unknown ratio estimator '" + std::string(name) + "'");
}

FitResult fit_spectral_constant(const Mask& mask, const std::vector<int>& K_list,
                                int samples_per_K, std::uint64_t seed,
                                RatioEstimator estimator) {
  if (K_list.empty()) throw ContractError("K_list is empty");
  for (std::size_t i = 0; i < K_list.size(); ++i) {
    check_band(K_list[i], mask.grid());
    if (i > 0 && K_list[i] <= K_list[i - 1]) throw ContractError("K_list must be increasing");
  }
  if (estimator == RatioEstimator::kSampled && samples_per_K < 1) {
    throw ContractError("samples_per_K must be >= 1");
  }

  FitResult result;
  result.estimator = estimator;
  std::vector<double> xs, ys;
  for (int K : K_list) {
    FitPoint point;
    point.K = K;
    if (estimator == RatioEstimator::kExtremal) {
      point.max_ratio = extremal_thickness_ratio(mask, K);
    } else {
      for (int s = 0; s < samples_per_K; ++s) {
        const auto sample_seed = derive_seed(
            seed, {static_cast<std::uint64_t>(K), static_cast<std::uint64_t>(s)});
        const double r = thickness_ratio(sample_bandlimited(K, sample_seed, mask.grid()), mask);
        point.max_ratio = std::max(point.max_ratio, r);
      }
    }
    point.saturated = !(point.max_ratio <= kSaturatedRatio);
    if (!point.saturated) {
      xs.push_back(K);
      ys.push_back(std::log(point.max_ratio));
      result.max_ratio_observed = std::max(result.max_ratio_observed, point.max_ratio);
    }
    result.points.push_back(point);
  }
  const LineFit line = least_squares(xs, ys);
  result.slope = line.slope;
  result.intercept = line.intercept;
  result.r_squared = line.r_squared;
  result.samples = xs.size();
  return result;
}

void write_fit_csv(std::ostream& os, const FitResult& fit) {
  os << "K,max_ratio,log_max_ratio\n";
  for (const auto& p : fit.points) {
    os << p.K << ',' << format_double(p.max_ratio) << ',' << format_double(std::log(p.max_ratio))
       << '\n';
  }
}

void write_fit_summary(std::ostream& os, const FitResult& fit) {
  std::size_t saturated = 0;
  for (const auto& p : fit.points) saturated += p.saturated ? 1 : 0;
  os << "{\"estimator\": \"" << to_string(fit.estimator) << "\", \"slope\": "
     << format_double(fit.slope) << ", \"intercept\": " << format_double(fit.intercept)
     << ", \"r_squared\": " << format_double(fit.r_squared)
     << ", \"max_ratio_observed\": " << format_double(fit.max_ratio_observed)
     << ", \"samples\": " << fit.samples << ", \"saturated\": " << saturated << ", \"note\": \""
     << (fit.estimator == RatioEstimator::kSampled
             ? "max over random samples underestimates the constant"
             : "exact supremum over the band")
     << "\"}\n";
}

double sobolev_norm(const SpectralField& f, int s) {
  if (s < 0) throw ContractError("Sobolev order must be >= 0");
  const double power = weighted_power(f, [s](int kx, int ky) {
    return std::pow(1.0 + static_cast<double>(kx) * kx + static_cast<double>(ky) * ky, s);
  });
  return f.grid().length() * std::sqrt(power);
}

std::string to_string(ApproxKind kind) { return kind == ApproxKind::kNodal ? "nodal" : "volume"; }

ApproxKind parse_approx_kind(std::string_view name) {
  if (name == "volume") return ApproxKind::kVolume;
  if (name == "nodal") return ApproxKind::kNodal;
  throw ConfigError("unknown approximation kind '" + std::string(name) + "'");
}

double approximation_ratio(ApproxKind kind, const SpectralField& f, int p, const Mask& mask) {
  if (!(f.grid() == mask.grid())) throw ContractError("approximation_ratio grid mismatch");
  const PhysicalField phys = inverse(f);
  const PhysicalField approx = kind == ApproxKind::kVolume
                                   ? volume_average_interpolant(phys, p, mask)
                                   : nodal_interpolant(phys, p, mask);
  const double err = masked_l2_norm(approx - phys, mask);
  if (err == 0.0) return 0.0;
  const double h = f.grid().dx() * static_cast<double>(1 << p);
  const double den = kind == ApproxKind::kVolume ? h * sobolev_norm(f, 1)
                                                 : h * h * sobolev_norm(f, 2);
  if (den == 0.0) throw DegenerateError("Sobolev norm vanishes for a nonzero error");
  return err / den;
}

double ApproxTable::spread() const {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& r : rows) {
    lo = std::min(lo, r.max_ratio);
    hi = std::max(hi, r.max_ratio);
  }
  if (rows.empty()) return 1.0;
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

ApproxTable verify_approx_inequality(ApproxKind kind, const std::vector<int>& p_list,
                                     const Mask& mask, std::uint64_t seed, int ensemble,
                                     int band) {
  if (ensemble < 1) throw ContractError("ensemble size must be >= 1");
  if (p_list.empty()) throw ContractError("p_list is empty");
  ObservationConfig probe;
  for (int p : p_list) {
    probe.stride_p = p;
    probe.validate(mask.grid());
  }
  std::vector<SpectralField> fields;
  fields.reserve(static_cast<std::size_t>(ensemble));
  for (int i = 0; i < ensemble; ++i) {
    fields.push_back(sample_bandlimited(
        band, derive_seed(seed, {static_cast<std::uint64_t>(i)}), mask.grid()));
  }

  ApproxTable table;
  table.kind = kind;
  table.band = band;
  table.ensemble = ensemble;
  for (int p : p_list) {
    ApproxRow row;
    row.p = p;
    row.h = mask.grid().dx() * static_cast<double>(1 << p);
    double sum = 0.0;
    for (const auto& f : fields) {
      const double r = approximation_ratio(kind, f, p, mask);
      row.max_ratio = std::max(row.max_ratio, r);
      sum += r;
    }
    row.mean_ratio = sum / ensemble;
    table.c0 = std::max(table.c0, row.max_ratio);
    table.rows.push_back(row);
  }
  return table;
}

void write_approx_csv(std::ostream& os, const ApproxTable& table) {
  os << "p,h,max_ratio,mean_ratio\n";
  for (const auto& r : table.rows) {
    os << r.p << ',' << format_double(r.h) << ',' << format_double(r.max_ratio) << ','
       << format_double(r.mean_ratio) << '\n';
  }
}

}  // namespace nudge2d
