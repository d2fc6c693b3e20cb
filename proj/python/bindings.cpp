// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <span>

#include "gridwave/apps.hpp"
#include "gridwave/audio_io.hpp"
#include "gridwave/coef_io.hpp"
#include "gridwave/errors.hpp"
#include "gridwave/frame.hpp"
#include "gridwave/search.hpp"
#include "gridwave/xform.hpp"

namespace py = pybind11;
using namespace gridwave;

namespace {

using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ComplexArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

SignalDomain parse_domain(const std::string& s) {
  if (s == "real") return SignalDomain::Real;
  if (s == "complex") return SignalDomain::Complex;
  throw InvalidArgument("domain must be 'real' or 'complex'");
}

py::dict bounds_dict(const FrameDiagnostics& fb) {
  py::dict d;
  d["A"] = fb.A;
  d["B"] = fb.B;
  d["R_FB"] = fb.R_FB;
  d["invertible"] = fb.invertible;
  d["argmin_bin"] = fb.argmin_bin;
  d["argmax_bin"] = fb.argmax_bin;
  return d;
}

template <class T>
py::array_t<T> to_numpy(std::vector<T> v) {
  return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

}  // namespace

PYBIND11_MODULE(_gridwave, m) {
  m.doc() = "Invertible wavelet filter banks with uniform decimation";

  static py::exception<NonInvertibleError> non_invertible(m, "NonInvertibleError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NonInvertibleError& e) {
      py::set_error(non_invertible, e.what());
    } catch (const IoError& e) {
      py::set_error(PyExc_OSError, e.what());
    }
  });

  m.def("golden_alpha", &golden_alpha);
  m.def(
      "make_delays",
      [](const std::string& kind, std::size_t n, double alpha) {
        return to_numpy(make_delays(parse_delay_kind(kind), n, alpha).elements);
      },
      py::arg("kind"), py::arg("n"), py::arg("alpha") = 0.0);
  m.def(
      "check_elementary_intervals",
      [](const std::string& kind, std::size_t n, int level) {
        return check_elementary_intervals(make_delays(parse_delay_kind(kind), n), level);
      },
      py::arg("kind"), py::arg("n"), py::arg("m"));

  m.def("wavelet_hat", [](const std::string& w, double xi) { return wavelet_hat(WaveletSpec::parse(w), xi); },
        py::arg("wavelet"), py::arg("xi"));
  m.def("peak_frequency", [](const std::string& w) { return peak_frequency(WaveletSpec::parse(w)); });
  m.def("q_factor", [](const std::string& w) { return q_factor(WaveletSpec::parse(w)); });
  m.def("choose_decimation", &choose_decimation, py::arg("M"), py::arg("oversampling"));

  py::class_<FilterBankDesign>(m, "Design")
      .def_property_readonly("L", &FilterBankDesign::L)
      .def_property_readonly("d", &FilterBankDesign::d)
      .def_property_readonly("N", &FilterBankDesign::N)
      .def_property_readonly("M", [](const FilterBankDesign& D) { return D.params.M; })
      .def_property_readonly("M_C", [](const FilterBankDesign& D) { return D.params.M_C; })
      .def_property_readonly("channels", &FilterBankDesign::channels)
      .def_property_readonly("wavelet", [](const FilterBankDesign& D) { return D.wavelet.to_string(); })
      .def_property_readonly("center_freqs", [](const FilterBankDesign& D) { return to_numpy(D.center_freqs); })
      .def_property_readonly("oversampling", [](const FilterBankDesign& D) { return D.params.oversampling(); })
      .def_property_readonly("design_id", [](const FilterBankDesign& D) { return D.design_id; })
      .def_property_readonly("is_dual", [](const FilterBankDesign& D) { return D.is_dual; })
      .def_property_readonly("responses", [](const FilterBankDesign& D) { return D.responses; })
      .def("__repr__", [](const FilterBankDesign& D) {
        return "<Design " + D.wavelet.to_string() + " M=" + std::to_string(D.params.M) +
               " M_C=" + std::to_string(D.params.M_C) + " d=" + std::to_string(D.d()) +
               " L=" + std::to_string(D.L()) + (D.is_dual ? " dual>" : ">");
      });

  m.def(
      "build_design",
      [](const std::string& wavelet, std::size_t M, std::size_t M_C, std::size_t d, std::size_t L,
         const std::string& delays, double alpha, double sample_rate) {
        return build_design(WaveletSpec::parse(wavelet), M, M_C, d, L, make_delays(parse_delay_kind(delays), M + 1, alpha),
                            sample_rate);
      },
      py::arg("wavelet"), py::arg("M"), py::arg("M_C"), py::arg("d"), py::arg("L"), py::arg("delays") = "kronecker",
      py::arg("alpha") = 0.0, py::arg("sample_rate") = 2.0);
  m.def("geometric_design", [](const std::string& w, std::size_t channels, double f_min, double f_max, std::size_t d,
                               std::size_t L, double fs) { return geometric_design(WaveletSpec::parse(w), channels, f_min, f_max, d, L, fs); },
        py::arg("wavelet"), py::arg("channels"), py::arg("f_min"), py::arg("f_max"), py::arg("d"), py::arg("L"),
        py::arg("sample_rate") = 2.0);
  m.def("custom_design", [](const ResponseMatrix& G, std::size_t d) { return custom_design(G, d); }, py::arg("responses"),
        py::arg("d"));
  m.def("frequency_response_diag", [](const FilterBankDesign& D) { return to_numpy(frequency_response_diag(D)); });

  m.def("frame_bounds", [](const FilterBankDesign& D, const std::string& dom) { return bounds_dict(frame_bounds(D, parse_domain(dom))); },
        py::arg("design"), py::arg("domain") = "real");
  m.def(
      "brute_force_bounds",
      [](const FilterBankDesign& D, const std::string& dom) { return brute_force_bounds(D, parse_domain(dom)); },
      py::arg("design"), py::arg("domain") = "real");
  m.def("dual_design", [](const FilterBankDesign& D, const std::string& dom) { return dual_design(D, parse_domain(dom)); },
        py::arg("design"), py::arg("domain") = "real");
  m.def("real_extend", &real_extend);

  py::class_<CoefMatrix>(m, "Coefficients")
      .def_property(
          "data", [](const CoefMatrix& c) { return c.data; }, [](CoefMatrix& c, const CoefData& v) { c.data = v; })
      .def_readonly("d", &CoefMatrix::d)
      .def_readonly("design_id", &CoefMatrix::design_id)
      .def_readonly("real_mode", &CoefMatrix::real_mode)
      .def_property_readonly("channels", &CoefMatrix::channels)
      .def_property_readonly("frames", &CoefMatrix::frames)
      .def("with_data", [](const CoefMatrix& c, const CoefData& v) {
        CoefMatrix out = c;
        out.data = v;
        return out;
      });

  m.def(
      "analyze",
      [](const FilterBankDesign& D, py::array signal) {
        if (py::isinstance<py::array_t<std::complex<double>>>(signal) ||
            py::isinstance<py::array_t<std::complex<float>>>(signal)) {
          auto a = ComplexArray::ensure(signal);
          return analyze(D, std::span<const std::complex<double>>(a.data(), static_cast<std::size_t>(a.size())));
        }
        auto a = RealArray::ensure(signal);
        if (!a) throw InvalidArgument("signal must be a numeric array");
        return analyze(D, std::span<const double>(a.data(), static_cast<std::size_t>(a.size())));
      },
      py::arg("design"), py::arg("signal"));
  m.def(
      "synthesize",
      [](const FilterBankDesign& dual, const CoefMatrix& c) -> py::object {
        if (c.real_mode) return to_numpy(synthesize_real(dual, c));
        return to_numpy(synthesize(dual, c));
      },
      py::arg("dual"), py::arg("coefs"));

  m.def("evaluate_ratio", [](const std::string& w, std::size_t M, std::size_t M_C, std::size_t d, const std::string& delays,
                             std::size_t frames) {
    SearchOptions o;
    o.delays = parse_delay_kind(delays);
    o.frames = frames;
    return evaluate_ratio(WaveletSpec::parse(w), M, M_C, d, o);
  }, py::arg("wavelet"), py::arg("M"), py::arg("M_C"), py::arg("d"), py::arg("delays") = "kronecker", py::arg("frames") = 16);
  m.def("optimize_mc", [](const std::string& w, double rate, std::size_t frames) {
    SearchOptions o;
    o.frames = frames;
    return optimize_mc(WaveletSpec::parse(w), rate, o);
  }, py::arg("wavelet"), py::arg("oversampling"), py::arg("frames") = 16);

  m.def("spectral_flux", [](const CoefMatrix& c, std::size_t M_C) { return to_numpy(spectral_flux(c, M_C)); });
  m.def(
      "pick_onsets",
      [](RealArray flux, double lambda, std::size_t window, std::size_t gap, double period, double floor) {
        auto r = pick_onsets(std::span<const double>(flux.data(), static_cast<std::size_t>(flux.size())), lambda, window,
                             gap, period, floor);
        py::dict d;
        d["onsets"] = to_numpy(r.onsets);
        d["frames"] = r.onset_frames;
        d["threshold"] = to_numpy(r.threshold);
        d["frame_period"] = r.frame_period;
        return d;
      },
      py::arg("flux"), py::arg("lambda_") = kDefaultOnsetLambda, py::arg("median_window") = kDefaultMedianWindow,
      py::arg("min_gap") = kDefaultMinGap, py::arg("frame_period") = 1.0, py::arg("floor") = kDefaultFluxFloor);
  m.def(
      "eval_onsets",
      [](const std::vector<double>& est, const std::vector<double>& ref, double tol) {
        auto s = eval_onsets(est, ref, tol);
        return py::make_tuple(s.precision, s.recall, s.f_measure);
      },
      py::arg("estimated"), py::arg("reference"), py::arg("tolerance") = 0.05);
  m.def(
      "fgla",
      [](const FilterBankDesign& D, const FilterBankDesign& dual, const RealMatrix& mag, std::size_t iters,
         std::size_t warmup, std::size_t inits, double gamma, std::uint64_t seed) {
        FglaOptions o{iters, warmup, inits, gamma, seed};
        FglaResult r;
        {
          py::gil_scoped_release release;
          r = fgla(D, dual, mag, o);
        }
        py::dict d;
        d["signal"] = to_numpy(r.signal);
        d["error_db"] = to_numpy(r.error_db);
        d["selected_candidate"] = r.selected_candidate;
        return d;
      },
      py::arg("design"), py::arg("dual"), py::arg("target_mag"), py::arg("iters") = 150, py::arg("warmup") = 20,
      py::arg("inits") = 5, py::arg("gamma") = 0.99, py::arg("seed") = 0);
  m.def("err_ms", [](const FilterBankDesign& R, const std::vector<double>& f, const std::vector<double>& fr) {
    return err_ms(R, f, fr);
  });
  m.def("reference_design", &reference_design, py::arg("L"), py::arg("sample_rate") = 2.0);
  m.def("cost_estimate", &cost_estimate, py::arg("M"), py::arg("M_C"), py::arg("L_W"));
  m.def("direct_cost", &direct_cost, py::arg("M"), py::arg("M_C"), py::arg("L_W"));

  m.def("read_wav", [](const std::string& path) {
    auto a = read_wav(path);
    return py::make_tuple(to_numpy(a.samples), a.sample_rate);
  });
  m.def("write_wav", [](const std::string& path, const std::vector<double>& samples, double rate) {
    write_wav(path, AudioBuffer{samples, rate, path});
  }, py::arg("path"), py::arg("samples"), py::arg("sample_rate"));
}
