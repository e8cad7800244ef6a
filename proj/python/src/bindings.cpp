#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <cstring>
#include <string>
#include <vector>

#include "nudge2d/advisor.hpp"
#include "nudge2d/assimilation.hpp"
#include "nudge2d/checkpoint.hpp"
#include "nudge2d/config.hpp"
#include "nudge2d/errors.hpp"
#include "nudge2d/field_io.hpp"
#include "nudge2d/forcing.hpp"
#include "nudge2d/inequality_lab.hpp"
#include "nudge2d/observation.hpp"
#include "nudge2d/solver.hpp"
#include "nudge2d/subdomain.hpp"
#include "nudge2d/transforms.hpp"

namespace py = pybind11;
using namespace nudge2d;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::array_t<double> to_numpy(const PhysicalField& field) {
  const auto n = static_cast<py::ssize_t>(field.n());
  py::array_t<double> out({n, n});
  std::copy(field.values().begin(), field.values().end(), out.mutable_data());
  return out;
}

PhysicalField from_numpy(const DoubleArray& array) {
  if (array.ndim() != 2 || array.shape(0) != array.shape(1)) {
    throw ContractError("expected a square 2-D array");
  }
  const Grid grid(static_cast<int>(array.shape(0)));
  std::vector<double> values(array.data(), array.data() + array.size());
  return PhysicalField(grid, std::move(values));
}

py::array_t<bool> mask_to_numpy(const Mask& mask) {
  const auto n = static_cast<py::ssize_t>(mask.n());
  py::array_t<bool> out({n, n});
  bool* dst = out.mutable_data();
  for (std::size_t i = 0; i < mask.bits().size(); ++i) dst[i] = mask.bits()[i] != 0;
  return out;
}

py::array_t<std::complex<double>> spectrum_to_numpy(const SpectralField& field) {
  const Grid& g = field.grid();
  py::array_t<std::complex<double>> out(
      {static_cast<py::ssize_t>(g.n()), static_cast<py::ssize_t>(g.columns())});
  std::copy(field.data().begin(), field.data().end(), out.mutable_data());
  return out;
}

SolverConfig make_solver_config(int n, double nu, double dt, double grashof,
                                std::uint64_t forcing_seed, int band_lo, int band_hi,
                                const std::string& startup, double gevrey_sigma) {
  SolverConfig c;
  c.grid = Grid(n);
  c.nu = nu;
  c.dt = dt;
  c.forcing.nu = nu;
  c.forcing.grashof = grashof;
  c.forcing.seed = forcing_seed;
  c.forcing.band_lo = band_lo;
  c.forcing.band_hi = band_hi;
  c.gevrey_sigma = gevrey_sigma;
  if (startup == "euler_ab2") {
    c.startup = Startup::kEulerAb2;
  } else if (startup == "rk4") {
    c.startup = Startup::kRungeKutta4;
  } else {
    throw ConfigError("unknown startup '" + startup + "' (expected euler_ab2 or rk4)");
  }
  c.validate();
  return c;
}

py::dict series_to_dict(const ErrorSeries& s, std::size_t regions) {
  const auto rows = static_cast<py::ssize_t>(s.rows.size());
  py::array_t<double> t(rows), l2(rows), linf(rows);
  py::array_t<double> reg({rows, static_cast<py::ssize_t>(regions)});
  for (py::ssize_t i = 0; i < rows; ++i) {
    const ErrorRow& r = s.rows[static_cast<std::size_t>(i)];
    t.mutable_at(i) = r.t;
    l2.mutable_at(i) = r.rel_l2;
    linf.mutable_at(i) = r.rel_linf;
    for (std::size_t j = 0; j < regions; ++j) {
      reg.mutable_at(i, static_cast<py::ssize_t>(j)) = r.rel_l2_regions.at(j);
    }
  }
  py::dict d;
  d["t"] = t;
  d["rel_l2"] = l2;
  d["rel_linf"] = linf;
  d["rel_l2_regions"] = reg;
  return d;
}

ErrorSeries series_from_arrays(const DoubleArray& t, const DoubleArray& rel_l2) {
  if (t.ndim() != 1 || rel_l2.ndim() != 1 || t.size() != rel_l2.size()) {
    throw ContractError("t and rel_l2 must be 1-D arrays of equal length");
  }
  ErrorSeries s;
  for (py::ssize_t i = 0; i < t.size(); ++i) s.rows.push_back({t.at(i), rel_l2.at(i), 0.0, {}});
  return s;
}

}  // namespace

PYBIND11_MODULE(_nudge2d, m) {
  m.doc() = "Pseudospectral 2D Navier-Stokes solver with nudging data assimilation";
  m.attr("__version__") = NUDGE2D_VERSION;

  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<BlowUpError>(m, "BlowUpError", numerical.ptr());
  py::register_exception<DegenerateError>(m, "DegenerateError", numerical.ptr());
  py::register_exception<FormatError>(m, "FormatError", PyExc_IOError);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init(&make_solver_config), py::arg("n") = 128, py::arg("nu") = 1e-3,
           py::arg("dt") = 0.01, py::arg("grashof") = 5e4, py::arg("forcing_seed") = 0,
           py::arg("band_lo") = 10, py::arg("band_hi") = 12, py::arg("startup") = "euler_ab2",
           py::arg("gevrey_sigma") = 0.0)
      .def_property_readonly("n", [](const SolverConfig& c) { return c.grid.n(); })
      .def_readonly("nu", &SolverConfig::nu)
      .def_readonly("dt", &SolverConfig::dt)
      .def_property_readonly("grashof", [](const SolverConfig& c) { return c.forcing.grashof; })
      .def_property_readonly("forcing_seed", [](const SolverConfig& c) { return c.forcing.seed; })
      .def_readonly("gevrey_sigma", &SolverConfig::gevrey_sigma)
      .def("__repr__", [](const SolverConfig& c) {
        return "SolverConfig(n=" + std::to_string(c.grid.n()) + ", nu=" + std::to_string(c.nu) +
               ", dt=" + std::to_string(c.dt) + ", grashof=" + std::to_string(c.forcing.grashof) +
               ")";
      });

  m.def(
      "load_solver_config",
      [](const std::string& text) { return solver_config(Config::parse(text)); }, py::arg("text"),
      "SolverConfig from experiment config text (section.key = value lines).");

  py::class_<SolverState>(m, "State")
      .def(py::init([](const DoubleArray& vorticity) {
             SpectralField w = forward(from_numpy(vorticity));
             project_state(w);
             return SolverState(w);
           }),
           py::arg("vorticity"))
      .def_readonly("time", &SolverState::time)
      .def_readonly("step", &SolverState::step_count)
      .def_property_readonly("n", [](const SolverState& s) { return s.grid().n(); })
      .def("vorticity", [](const SolverState& s) { return to_numpy(inverse(s.omega)); },
           "Vorticity on the grid nodes, indexed [iy, ix].")
      .def("spectrum", [](const SolverState& s) { return spectrum_to_numpy(s.omega); },
           "Half-plane spectrum, rows ky in FFT order, columns kx = 0..n/2.");

  m.def(
      "spinup",
      [](const SolverConfig& c, double duration) {
        py::gil_scoped_release release;
        return spinup(c, duration);
      },
      py::arg("config"), py::arg("duration"), "Integrate from zero vorticity for the duration.");
  m.def(
      "resume",
      [](const SolverConfig& c, SolverState s, double end_time) {
        py::gil_scoped_release release;
        return resume(c, std::move(s), end_time);
      },
      py::arg("config"), py::arg("state"), py::arg("end_time"));
  m.def(
      "advance",
      [](const SolverConfig& c, SolverState s, int steps) {
        if (steps < 0) throw ContractError("steps must be non-negative");
        py::gil_scoped_release release;
        Integrator integ(c);
        for (int i = 0; i < steps; ++i) integ.step(s);
        return s;
      },
      py::arg("config"), py::arg("state"), py::arg("steps") = 1);
  m.def(
      "diagnostics",
      [](const SolverState& s, double sigma) {
        const Diagnostics d = diagnostics(s, sigma);
        py::dict out;
        out["energy"] = d.energy;
        out["enstrophy"] = d.enstrophy;
        out["palinstrophy"] = d.palinstrophy;
        out["gevrey"] = d.gevrey_norm;
        return out;
      },
      py::arg("state"), py::arg("sigma") = 0.0);
  m.def(
      "forcing", [](const SolverConfig& c) { return to_numpy(inverse(build_forcing(c.forcing, c.grid))); },
      py::arg("config"), "Forcing field on the grid nodes.");

  py::class_<SubdomainSpec>(m, "Subdomain")
      .def_static("named", [](const std::string& name) { return named_subdomain(name); },
                  py::arg("name"))
      .def_static("full", &SubdomainSpec::full)
      .def_static("square", &SubdomainSpec::square, py::arg("side_fraction"))
      .def_static("disk", &SubdomainSpec::disk, py::arg("radius"))
      .def_static("mobile_quarter", &SubdomainSpec::mobile_quarter, py::arg("period") = 1.0)
      .def_static("mobile_sixteenth", &SubdomainSpec::mobile_sixteenth, py::arg("period") = 1.0)
      .def_property_readonly("kind", [](const SubdomainSpec& s) { return to_string(s.kind); })
      .def_readonly("side_fraction", &SubdomainSpec::side_fraction)
      .def_readonly("radius", &SubdomainSpec::radius)
      .def_readonly("period", &SubdomainSpec::period)
      .def("mask", [](const SubdomainSpec& s, int n, double t) { return mask_to_numpy(mask_at(s, Grid(n), t)); },
           py::arg("n"), py::arg("t") = 0.0, "Boolean node mask indexed [iy, ix].");

  m.def(
      "subsample",
      [](const DoubleArray& field, int p) {
        const CoarseLattice c = subsample(from_numpy(field), p);
        py::array_t<double> out({static_cast<py::ssize_t>(c.m), static_cast<py::ssize_t>(c.m)});
        std::copy(c.values.begin(), c.values.end(), out.mutable_data());
        return out;
      },
      py::arg("field"), py::arg("p"));
  m.def(
      "smoother",
      [](const DoubleArray& coarse, int p) {
        if (coarse.ndim() != 2 || coarse.shape(0) != coarse.shape(1)) {
          throw ContractError("expected a square 2-D coarse lattice");
        }
        CoarseLattice c;
        c.m = static_cast<int>(coarse.shape(0));
        c.stride = 1 << p;
        c.values.assign(coarse.data(), coarse.data() + coarse.size());
        return to_numpy(smoother_kp(c, p));
      },
      py::arg("coarse"), py::arg("p"), "Refine a coarse lattice by p smoother steps.");

  m.def(
      "twin",
      [](const SolverConfig& c, const SolverState& reference, double mu, const SubdomainSpec& sub,
         int stride_p, double horizon, double sample_interval, const std::string& interpolant,
         const std::vector<SubdomainSpec>& regions) {
        TwinExperiment exp;
        exp.config = c;
        exp.reference = reference;
        exp.nudging.mu = mu;
        exp.nudging.observation.subdomain = sub;
        exp.nudging.observation.stride_p = stride_p;
        exp.nudging.observation.interpolant = parse_interpolant_kind(interpolant);
        exp.horizon = horizon;
        exp.sample_interval = sample_interval;
        exp.regions = regions;
        ErrorSeries s;
        {
          py::gil_scoped_release release;
          s = run_twin(exp);
        }
        return series_to_dict(s, regions.size());
      },
      py::arg("config"), py::arg("reference"), py::arg("mu") = 50.0,
      py::arg("subdomain") = SubdomainSpec::full(), py::arg("stride_p") = 0, py::arg("horizon"),
      py::arg("sample_interval") = 1.0, py::arg("interpolant") = "nodal_smooth",
      py::arg("regions") = std::vector<SubdomainSpec>{},
      "Twin experiment from zero assimilated data; returns the error series.");
  m.def(
      "fit_rate",
      [](const DoubleArray& t, const DoubleArray& rel_l2, double t0, double t1) {
        const RateFit f = fit_rate(series_from_arrays(t, rel_l2), t0, t1);
        py::dict d;
        d["lambda"] = f.lambda;
        d["r_squared"] = f.r_squared;
        d["samples"] = f.samples;
        return d;
      },
      py::arg("t"), py::arg("rel_l2"), py::arg("t0"), py::arg("t1"));
  m.def(
      "time_to_threshold",
      [](const DoubleArray& t, const DoubleArray& rel_l2, double threshold) {
        return time_to_threshold(series_from_arrays(t, rel_l2), threshold);
      },
      py::arg("t"), py::arg("rel_l2"), py::arg("threshold"));

  m.def(
      "advise",
      [](double nu, double grashof, double n_modes, double c, double c_omega, double c0,
         double epsilon, double lambda1) {
        AdvisorInputs in{nu, grashof, c, c_omega, n_modes, epsilon, c0, lambda1};
        const Advice a = advise_parameters(in);
        py::dict d;
        d["mu"] = a.mu;
        d["h_star"] = a.h_star;
        d["sigma_star"] = a.sigma_star;
        d["exponent"] = a.exponent;
        return d;
      },
      py::arg("nu"), py::arg("grashof"), py::arg("n_modes") = 0.0, py::arg("c") = 1.0,
      py::arg("c_omega") = 1.0, py::arg("c0") = 1.0, py::arg("epsilon") = 1.0,
      py::arg("lambda1") = 1.0);

  m.def(
      "fit_spectral_constant",
      [](const SubdomainSpec& sub, int n, const std::vector<int>& K_list, int samples_per_K,
         std::uint64_t seed, const std::string& estimator) {
        FitResult f;
        {
          const Mask mask = mask_at(sub, Grid(n), 0.0);
          const RatioEstimator e = parse_ratio_estimator(estimator);
          py::gil_scoped_release release;
          f = fit_spectral_constant(mask, K_list, samples_per_K, seed, e);
        }
        std::vector<int> ks;
        std::vector<double> ratios;
        std::vector<bool> saturated;
        for (const auto& p : f.points) {
          ks.push_back(p.K);
          ratios.push_back(p.max_ratio);
          saturated.push_back(p.saturated);
        }
        py::dict d;
        d["slope"] = f.slope;
        d["intercept"] = f.intercept;
        d["r_squared"] = f.r_squared;
        d["max_ratio_observed"] = f.max_ratio_observed;
        d["samples"] = f.samples;
        d["K"] = ks;
        d["max_ratio"] = ratios;
        d["saturated"] = saturated;
        return d;
      },
      py::arg("subdomain"), py::arg("n"), py::arg("K_list"), py::arg("samples_per_K") = 20,
      py::arg("seed") = 0, py::arg("estimator") = "sampled");
  m.def(
      "approximation_table",
      [](const std::string& kind, const SubdomainSpec& sub, int n, const std::vector<int>& p_list,
         std::uint64_t seed, int ensemble, int band) {
        const Mask mask = mask_at(sub, Grid(n), 0.0);
        const ApproxTable t =
            verify_approx_inequality(parse_approx_kind(kind), p_list, mask, seed, ensemble, band);
        std::vector<int> ps;
        std::vector<double> hs, maxes, means;
        for (const auto& r : t.rows) {
          ps.push_back(r.p);
          hs.push_back(r.h);
          maxes.push_back(r.max_ratio);
          means.push_back(r.mean_ratio);
        }
        py::dict d;
        d["p"] = ps;
        d["h"] = hs;
        d["max_ratio"] = maxes;
        d["mean_ratio"] = means;
        d["c0"] = t.c0;
        d["spread"] = t.spread();
        return d;
      },
      py::arg("kind"), py::arg("subdomain"), py::arg("n"), py::arg("p_list"), py::arg("seed") = 0,
      py::arg("ensemble") = 20, py::arg("band") = 8);

  m.def("read_field", [](const std::filesystem::path& p) { return to_numpy(read_nfld(p)); },
        py::arg("path"), "Read an NFLD snapshot as an [iy, ix] array.");
  m.def(
      "write_field",
      [](const std::filesystem::path& p, const DoubleArray& a) { write_nfld(p, from_numpy(a)); },
      py::arg("path"), py::arg("field"));
  m.def(
      "read_checkpoint",
      [](const std::filesystem::path& p) {
        Checkpoint ck = read_checkpoint(p);
        py::dict header;
        header["n"] = ck.header.n;
        header["step"] = ck.header.step;
        header["time"] = ck.header.time;
        header["nu"] = ck.header.nu;
        header["dt"] = ck.header.dt;
        header["seed"] = ck.header.seed;
        return py::make_tuple(std::move(ck.state), header);
      },
      py::arg("path"), "Returns (State, header dict).");
  m.def(
      "write_checkpoint",
      [](const std::filesystem::path& p, const SolverState& s, const SolverConfig& c) {
        write_checkpoint(p, s, c);
      },
      py::arg("path"), py::arg("state"), py::arg("config"));
}
