#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>

#include "kpwave/analytic.hpp"
#include "kpwave/config.hpp"
#include "kpwave/material.hpp"
#include "kpwave/snapshot_io.hpp"
#include "kpwave/solver.hpp"
#include "kpwave/transforms.hpp"

namespace py = pybind11;
using namespace kpwave;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array field_array(const Field2D& f) {
  Array a({f.geometry.ny, f.geometry.nx});
  std::copy(f.values.begin(), f.values.end(), a.mutable_data());
  return a;
}

py::dict snapshot_dict(const Snapshot& s) {
  const auto& g = s.field.geometry;
  py::dict d;
  d["field"] = field_array(s.field);
  d["time"] = s.sim_time;
  d["equation"] = s.equation;
  d["digest"] = s.digest;
  d["domain"] = py::make_tuple(g.domain.x_min, g.domain.x_max, g.domain.y_min, g.domain.y_max);
  Array x(g.nx), y(g.ny);
  for (std::size_t i = 0; i < g.nx; ++i) x.mutable_at(i) = g.x(i);
  for (std::size_t j = 0; j < g.ny; ++j) y.mutable_at(j) = g.y(j);
  d["x"] = x;
  d["y"] = y;
  return d;
}

py::dict diagnostics_dict(const std::vector<Diagnostics>& series) {
  const std::size_t n = series.size();
  Array time(n), mean(n), l2(n), mn(n), mx(n);
  for (std::size_t i = 0; i < n; ++i) {
    time.mutable_at(i) = series[i].time;
    mean.mutable_at(i) = series[i].mean;
    l2.mutable_at(i) = series[i].l2_norm;
    mn.mutable_at(i) = series[i].min;
    mx.mutable_at(i) = series[i].max;
  }
  py::dict d;
  d["time"] = time;
  d["mean"] = mean;
  d["l2_norm"] = l2;
  d["min"] = mn;
  d["max"] = mx;
  return d;
}

std::vector<double> as_vector(const Array& a) {
  return std::vector<double>(a.data(), a.data() + a.size());
}

}  // namespace

PYBIND11_MODULE(_kpwave, m) {
  m.doc() = "Spectral solver for the quadratic and cubic KP equations";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<std::array<py::object, 4>> exc;
  exc.call_once_and_store_result([&]() {
    py::object base = py::exception<Error>(m, "KpwaveError", PyExc_ValueError);
    return std::array<py::object, 4>{
        base, py::exception<ConfigParseError>(m, "ConfigParseError", base.ptr()),
        py::exception<FormatError>(m, "FormatError", base.ptr()),
        py::exception<InstabilityError>(m, "InstabilityError", base.ptr())};
  });
  py::register_exception_translator([](std::exception_ptr p) {
    const auto& types = exc.get_stored();
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigParseError& e) {
      std::string msg = e.what();
      for (const auto& i : e.issues()) msg += "\n  line " + std::to_string(i.line) + ": " + i.message;
      py::set_error(types[1], msg.c_str());
    } catch (const FormatError& e) {
      py::set_error(types[2], e.what());
    } catch (const InstabilityError& e) {
      py::set_error(types[3], e.what());
    } catch (const Error& e) {
      py::set_error(types[0], e.what());
    }
  });

  py::enum_<EquationKind>(m, "EquationKind")
      .value("quadratic", EquationKind::quadratic)
      .value("cubic", EquationKind::cubic);
  py::enum_<SignBranch>(m, "SignBranch").value("plus", SignBranch::plus).value("minus", SignBranch::minus);

  m.def(
      "compressible_parameters",
      [](double lambda, double mu, double rho0, double alpha1, double alpha2, double gamma0,
         double gamma1, double gamma2, double nu0) {
        const MaterialCompressible mat(lambda, mu, rho0, {alpha1, alpha2, gamma0, gamma1, gamma2}, nu0);
        const auto w = wave_speeds(mat);
        const double beta = beta_quadratic(mat);
        const auto spec = equation_spec(EquationKind::quadratic, beta, nu0);
        const auto s = scale_factors(spec);
        py::dict d;
        d["c_ell"] = w.c_ell;
        d["c_t"] = w.c_t;
        d["identity_residual"] = w.identity_residual;
        d["beta"] = beta;
        d["branch"] = spec.branch;
        d["scales"] = py::make_tuple(s.s_t, s.s_x, s.s_y);
        return d;
      },
      py::arg("lambda_"), py::arg("mu"), py::arg("rho0"), py::arg("alpha1"), py::arg("alpha2"),
      py::arg("gamma0"), py::arg("gamma1"), py::arg("gamma2"), py::arg("nu0") = 1.0,
      "Wave speeds, beta, sign branch and canonical scale factors of a compressible solid.");

  m.def(
      "incompressible_parameters",
      [](double mu, double rho0, double a, double dd, double nu0) {
        const MaterialIncompressible mat(mu, rho0, a, dd, nu0);
        const double beta3 = beta3_landau(mat);
        const auto spec = equation_spec(EquationKind::cubic, beta3, nu0);
        const auto s = scale_factors(spec);
        py::dict d;
        d["c_t"] = shear_speed(mat);
        d["beta3"] = beta3;
        d["branch"] = spec.branch;
        d["scales"] = py::make_tuple(s.s_t, s.s_x, s.s_y);
        return d;
      },
      py::arg("mu"), py::arg("rho0"), py::arg("A"), py::arg("D"), py::arg("nu0") = 1.0,
      "Shear speed, beta3, sign branch and canonical scale factors of an incompressible solid.");

  m.def("soliton_speed", &soliton_speed, py::arg("kind"), py::arg("kappa"), py::arg("theta") = 0.0);

  m.def(
      "line_soliton",
      [](EquationKind kind, double kappa, double theta, double x0, SignBranch branch, double t,
         const Array& x, double y) {
        const SolitonParams p(kind, kappa, theta, x0, branch);
        Array out(x.request().shape);
        for (py::ssize_t i = 0; i < x.size(); ++i) out.mutable_data()[i] = line_soliton(p, t, x.data()[i], y);
        return out;
      },
      py::arg("kind"), py::arg("kappa"), py::arg("theta"), py::arg("x0"), py::arg("branch"),
      py::arg("t"), py::arg("x"), py::arg("y") = 0.0);

  m.def(
      "shock_distance",
      [](const Array& profile, double period, EquationKind kind, double coeff) {
        return shock_distance(as_vector(profile), period, kind, coeff);
      },
      py::arg("profile"), py::arg("period"), py::arg("kind"), py::arg("coeff"),
      "Shock-formation distance of the dispersionless reduction, or None.");

  m.def(
      "boussinesq_residual",
      [](const Array& profile, double period, double speed, EquationKind kind, SignBranch branch) {
        return boussinesq_residual(as_vector(profile), period, speed, kind, branch);
      },
      py::arg("profile"), py::arg("period"), py::arg("speed"), py::arg("kind"), py::arg("branch"));

  m.def(
      "simulate",
      [](const std::string& config_text) {
        const auto cfg = parse_config(config_text);
        const auto sc = to_solver_config(cfg);
        const Field2D initial = sample_initial(cfg, sc.grid);
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run(sc, initial);
        }
        py::list snaps;
        for (const auto& s : r.snapshots) snaps.append(snapshot_dict(s));
        py::dict d;
        d["snapshots"] = snaps;
        d["diagnostics"] = diagnostics_dict(r.series);
        d["steps"] = r.steps;
        d["digest"] = cfg.digest;
        return d;
      },
      py::arg("config_text"),
      "Runs a configuration given as text and returns snapshots and diagnostics in memory.");

  m.def(
      "read_snapshot", [](const std::string& path) { return snapshot_dict(read_snapshot(path)); },
      py::arg("path"), "Reads a snapshot file (binary or csv) into a dict with a (ny, nx) array.");

  m.def(
      "write_snapshot",
      [](const std::string& path, const Array& field, py::sequence domain, double time,
         const std::string& equation, const std::string& digest, const std::string& format) {
        if (field.ndim() != 2) throw InputError("field must be a 2D array of shape (ny, nx)");
        if (py::len(domain) != 4) throw InputError("domain must be (xmin, xmax, ymin, ymax)");
        Snapshot s;
        s.field.geometry = Geometry{static_cast<std::size_t>(field.shape(1)),
                                    static_cast<std::size_t>(field.shape(0)),
                                    Domain{domain[0].cast<double>(), domain[1].cast<double>(),
                                           domain[2].cast<double>(), domain[3].cast<double>()}};
        s.field.values = as_vector(field);
        s.sim_time = time;
        s.equation = equation;
        s.digest = digest;
        write_snapshot(s, path, parse_snapshot_format(format));
      },
      py::arg("path"), py::arg("field"), py::arg("domain"), py::arg("time"), py::arg("equation"),
      py::arg("digest") = "none", py::arg("format") = "f64le");
}
