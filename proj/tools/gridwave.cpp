// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gridwave Authors
//
// gridwave: command line front end for the uniform-decimation wavelet bank.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gridwave/apps.hpp"
#include "gridwave/audio_io.hpp"
#include "gridwave/coef_io.hpp"
#include "gridwave/design.hpp"
#include "gridwave/errors.hpp"
#include "gridwave/frame.hpp"
#include "gridwave/search.hpp"
#include "gridwave/xform.hpp"

using json = nlohmann::ordered_json;
using namespace gridwave;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNumeric = 2, kIo = 3 };

struct DesignFlags {
  std::string wavelet = "cauchy:300";
  std::size_t M = 253;
  std::size_t M_C = 5;
  std::size_t d = 0;
  double oversampling = 2.0;
  std::string delays = "kronecker";
  double alpha = 0.0;

  void add(CLI::App* app) {
    app->add_option("--wavelet", wavelet, "cauchy:ALPHA or bspline:XIFM")->capture_default_str();
    app->add_option("--M", M, "highest channel index (M+1 channels)")->capture_default_str();
    app->add_option("--MC", M_C, "number of compensation channels")->capture_default_str();
    app->add_option("--d", d, "decimation factor (default: from --oversampling)");
    app->add_option("--oversampling", oversampling, "target redundancy 2(M+1)/d")->capture_default_str();
    app->add_option("--delays", delays, "kronecker | digital | zero")->capture_default_str();
    app->add_option("--alpha", alpha, "Kronecker parameter (default 1 - 1/phi)");
  }

  WaveletSpec spec() const { return WaveletSpec::parse(wavelet); }
  DelayKind kind() const { return parse_delay_kind(delays); }
  std::size_t decimation() const { return d ? d : choose_decimation(M, oversampling); }
  DelaySequence sequence() const { return make_delays(kind(), M + 1, alpha); }

  // Validates everything that does not need the signal length.
  void validate() const {
    (void)spec();
    (void)kind();
    if (M < 1 || M_C < 1 || M_C > M) throw InvalidArgument("need 1 <= MC <= M");
    if (alpha != 0.0 && !(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("--alpha must lie in (0,1)");
    (void)decimation();
  }

  FilterBankDesign build(std::size_t L, double rate, bool materialize = true) const {
    return build_design(spec(), M, M_C, decimation(), L, sequence(), rate, materialize);
  }
};

std::size_t padded(std::size_t n, std::size_t d) { return std::max<std::size_t>(d, (n + d - 1) / d * d); }

std::vector<double> pad(const std::vector<double>& x, std::size_t L) {
  std::vector<double> out(L, 0.0);
  std::copy_n(x.begin(), std::min(x.size(), L), out.begin());
  return out;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

json bounds_json(const FrameDiagnostics& fb) {
  json j;
  j["A"] = fb.A;
  j["B"] = fb.B;
  j["R_FB"] = fb.invertible ? json(fb.R_FB) : json(nullptr);
  j["invertible"] = fb.invertible;
  j["argmin_bin"] = fb.argmin_bin;
  j["argmax_bin"] = fb.argmax_bin;
  return j;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = std::stod(item, &used);
    if (used != item.size()) throw InvalidArgument("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

void write_pgm(const std::string& path, const RealMatrix& map) {
  const double peak = map.maxCoeff();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  out << "P5\n" << map.cols() << " " << map.rows() << "\n65535\n";
  // Highest frequency on the top row.
  for (Eigen::Index r = map.rows() - 1; r >= 0; --r)
    for (Eigen::Index c = 0; c < map.cols(); ++c) {
      double v = peak > 0.0 ? map(r, c) / peak : 0.0;
      auto q = static_cast<std::uint16_t>(std::lround(std::clamp(v, 0.0, 1.0) * 65535.0));
      char be[2] = {static_cast<char>(q >> 8), static_cast<char>(q & 0xff)};
      out.write(be, 2);
    }
  if (!out) throw IoError(path, "write failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gridwave: invertible wavelet filter banks with uniform decimation"};
  app.require_subcommand(1);

  // design
  DesignFlags design_f;
  std::size_t design_len = 0;
  double design_rate = 2.0;
  auto* design_cmd = app.add_subcommand("design", "print the design descriptor as JSON");
  design_f.add(design_cmd);
  design_cmd->add_option("--length", design_len, "signal length L (default d*256)");
  design_cmd->add_option("--sample-rate", design_rate, "sampling rate in Hz")->capture_default_str();

  // bounds
  DesignFlags bounds_f;
  std::size_t bounds_frames = 64;
  std::string bounds_domain = "real";
  auto* bounds_cmd = app.add_subcommand("bounds", "frame bounds A, B and ratio as JSON");
  bounds_f.add(bounds_cmd);
  bounds_cmd->add_option("--frames", bounds_frames, "evaluate on L = d * frames")->capture_default_str();
  bounds_cmd->add_option("--domain", bounds_domain, "real | complex")->capture_default_str();

  // analyze
  DesignFlags analyze_f;
  std::string analyze_in, analyze_out;
  auto* analyze_cmd = app.add_subcommand("analyze", "WAV -> coefficient file");
  analyze_f.add(analyze_cmd);
  analyze_cmd->add_option("--in", analyze_in, "input WAV")->required();
  analyze_cmd->add_option("--out", analyze_out, "output coefficient file")->required();

  // synthesize
  std::string synth_in, synth_out;
  auto* synth_cmd = app.add_subcommand("synthesize", "coefficient file -> WAV via the real-signal dual");
  synth_cmd->add_option("--in", synth_in, "coefficient file")->required();
  synth_cmd->add_option("--out", synth_out, "output WAV")->required();

  // roundtrip
  DesignFlags rt_f;
  std::string rt_in;
  double rt_seconds = 1.0, rt_rate = 44100.0;
  std::uint64_t rt_seed = 0;
  auto* rt_cmd = app.add_subcommand("roundtrip", "analyze, synthesize with the dual, report the error");
  rt_f.add(rt_cmd);
  rt_cmd->add_option("--in", rt_in, "input WAV (default: white noise)");
  rt_cmd->add_option("--seconds", rt_seconds, "noise duration")->capture_default_str();
  rt_cmd->add_option("--sample-rate", rt_rate, "noise sampling rate")->capture_default_str();
  rt_cmd->add_option("--seed", rt_seed, "noise seed")->capture_default_str();

  // search
  std::string search_wavelet = "cauchy:300", search_delays = "kronecker", search_rates = "1.2,2,4,8",
              search_format = "table";
  SearchOptions search_opt;
  auto* search_cmd = app.add_subcommand("search", "optimize (M_C, M) for minimal frame-bound ratio");
  search_cmd->add_option("--wavelet", search_wavelet)->capture_default_str();
  search_cmd->add_option("--delays", search_delays)->capture_default_str();
  search_cmd->add_option("--alpha", search_opt.kronecker_alpha, "Kronecker parameter");
  search_cmd->add_option("--oversampling", search_rates, "comma separated list")->capture_default_str();
  search_cmd->add_option("--format", search_format, "table | json")->capture_default_str();
  search_cmd->add_option("--frames", search_opt.frames, "evaluation frames per design")->capture_default_str();
  search_cmd->add_option("--m-probe", search_opt.m_probe, "M used to scan M_C")->capture_default_str();
  std::string search_candidates;
  search_cmd->add_option("--candidates", search_candidates, "comma separated M values to scan (default 128..2048)");

  // onsets
  DesignFlags onset_f;
  onset_f.M = 350;
  onset_f.M_C = 7;
  onset_f.oversampling = 4.0;
  std::string onset_in, onset_ref;
  double onset_lambda = kDefaultOnsetLambda, onset_floor = kDefaultFluxFloor;
  std::size_t onset_window = kDefaultMedianWindow, onset_gap = kDefaultMinGap;
  auto* onset_cmd = app.add_subcommand("onsets", "spectral-flux onset detection");
  onset_f.add(onset_cmd);
  onset_cmd->add_option("--in", onset_in, "input WAV")->required();
  onset_cmd->add_option("--lambda", onset_lambda, "threshold multiple of the local median")->capture_default_str();
  onset_cmd->add_option("--median-window", onset_window, "odd window length in frames")->capture_default_str();
  onset_cmd->add_option("--min-gap", onset_gap, "minimum frames between onsets")->capture_default_str();
  onset_cmd->add_option("--floor", onset_floor, "flux below floor * max is ignored")->capture_default_str();
  onset_cmd->add_option("--reference", onset_ref, "comma separated reference onsets (s) for P/R/F");

  // fgla
  DesignFlags fgla_f;
  fgla_f.M = 256;
  fgla_f.oversampling = 10.0;
  std::string fgla_in, fgla_out;
  FglaOptions fgla_opt;
  auto* fgla_cmd = app.add_subcommand("fgla", "phaseless reconstruction from coefficient magnitudes");
  fgla_f.add(fgla_cmd);
  fgla_cmd->add_option("--in", fgla_in, "input WAV whose magnitudes are the target")->required();
  fgla_cmd->add_option("--out", fgla_out, "reconstructed WAV")->required();
  fgla_cmd->add_option("--iters", fgla_opt.total_iters, "total iterations incl. warmup")->capture_default_str();
  fgla_cmd->add_option("--warmup", fgla_opt.warmup_iters, "iterations per candidate")->capture_default_str();
  fgla_cmd->add_option("--inits", fgla_opt.n_random_inits, "random phase candidates")->capture_default_str();
  fgla_cmd->add_option("--gamma", fgla_opt.gamma, "momentum")->capture_default_str();
  fgla_cmd->add_option("--seed", fgla_opt.seed, "random phase seed")->capture_default_str();

  // coverage
  DesignFlags cov_f;
  std::string cov_out;
  std::size_t cov_frames = 32, cov_first = 8, cov_last = 24;
  double cov_gauss = 8.0;
  auto* cov_cmd = app.add_subcommand("coverage", "accumulated spectrogram as a 16-bit PGM");
  cov_f.add(cov_cmd);
  cov_cmd->add_option("--out", cov_out, "output PGM")->required();
  cov_cmd->add_option("--frames", cov_frames, "design length in frames")->capture_default_str();
  cov_cmd->add_option("--first", cov_first, "first atom frame")->capture_default_str();
  cov_cmd->add_option("--last", cov_last, "one past the last atom frame")->capture_default_str();
  cov_cmd->add_option("--gauss-dur", cov_gauss, "window standard deviation in samples")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*design_cmd) {
      design_f.validate();
      std::size_t d = design_f.decimation();
      std::size_t L = design_len ? design_len : d * 256;
      auto D = design_f.build(L, design_rate, false);
      json j;
      j["wavelet"] = D.wavelet.to_string();
      j["M"] = D.params.M;
      j["M_C"] = D.params.M_C;
      j["d"] = d;
      j["L"] = L;
      j["delay_kind"] = to_string(design_f.kind());
      j["sample_rate"] = design_rate;
      j["center_freqs"] = D.center_freqs;
      j["achieved_oversampling"] = D.params.oversampling();
      print(j);
      return kOk;
    }
    if (*bounds_cmd) {
      bounds_f.validate();
      if (bounds_domain != "real" && bounds_domain != "complex") throw InvalidArgument("--domain must be real or complex");
      if (bounds_frames < 2) throw InvalidArgument("--frames must be at least 2");
      std::size_t d = bounds_f.decimation();
      auto model = linear_model(bounds_f.spec(), bounds_f.M, bounds_f.M_C, d, d * bounds_frames, bounds_f.sequence());
      auto fb = frame_bounds(model, bounds_domain == "real" ? SignalDomain::Real : SignalDomain::Complex);
      json j = bounds_json(fb);
      j["domain"] = bounds_domain;
      j["d"] = d;
      j["L"] = d * bounds_frames;
      print(j);
      return fb.invertible ? kOk : kNumeric;
    }
    if (*analyze_cmd) {
      analyze_f.validate();
      auto audio = read_wav(analyze_in);
      std::size_t d = analyze_f.decimation();
      std::size_t L = padded(audio.samples.size(), d);
      auto D = analyze_f.build(L, audio.sample_rate, false);
      auto c = analyze(D, pad(audio.samples, L));
      CoefFile file;
      auto& in = file.info;
      in.L = L;
      in.d = d;
      in.M = analyze_f.M;
      in.M_C = analyze_f.M_C;
      in.N = L / d;
      in.delay_kind = analyze_f.kind();
      in.family = D.wavelet.family();
      in.hyperparameter = D.wavelet.parameter();
      in.real_mode = true;
      in.original_length = audio.samples.size();
      in.sample_rate = audio.sample_rate;
      in.kronecker_alpha = analyze_f.alpha;
      in.design_id = D.design_id;
      file.coefs = std::move(c);
      save_coefs(analyze_out, file);
      json j;
      j["out"] = analyze_out;
      j["L"] = L;
      j["d"] = d;
      j["channels"] = in.M + 1;
      j["frames"] = in.N;
      j["padding"] = L - audio.samples.size();
      print(j);
      return kOk;
    }
    if (*synth_cmd) {
      auto file = load_coefs(synth_in);
      const auto& in = file.info;
      WaveletSpec w = in.family == WaveletFamily::Cauchy ? WaveletSpec::cauchy(in.hyperparameter)
                                                         : WaveletSpec::bspline4(in.hyperparameter);
      auto D = build_design(w, in.M, in.M_C, in.d, in.L, make_delays(in.delay_kind, in.M + 1, in.kronecker_alpha),
                            in.sample_rate);
      if (in.has_extension && in.design_id != D.design_id)
        throw FormatError(synth_in, "header does not reproduce the analysis design");
      file.coefs.design_id = D.design_id;
      if (!file.coefs.real_mode) throw FormatError(synth_in, "only real-mode coefficient files can be written as audio");
      auto dual = dual_design(D, SignalDomain::Real);
      auto y = synthesize_real(dual, file.coefs);
      y.resize(std::min<std::size_t>(y.size(), in.original_length));
      write_wav(synth_out, AudioBuffer{y, in.sample_rate, synth_out});
      json j;
      j["out"] = synth_out;
      j["samples"] = y.size();
      print(j);
      return kOk;
    }
    if (*rt_cmd) {
      rt_f.validate();
      AudioBuffer audio;
      if (!rt_in.empty()) {
        audio = read_wav(rt_in);
      } else {
        if (!(rt_seconds > 0.0) || !(rt_rate > 0.0)) throw InvalidArgument("--seconds and --sample-rate must be positive");
        audio.sample_rate = rt_rate;
        audio.samples.resize(static_cast<std::size_t>(std::lround(rt_seconds * rt_rate)));
        std::mt19937_64 rng(rt_seed);
        std::normal_distribution<double> g(0.0, 0.1);
        for (auto& x : audio.samples) x = g(rng);
      }
      std::size_t d = rt_f.decimation();
      std::size_t L = padded(audio.samples.size(), d);
      auto D = rt_f.build(L, audio.sample_rate);
      auto fb = frame_bounds(D, SignalDomain::Real);
      if (!fb.invertible)
        throw NonInvertibleError("bank is not invertible (A/B below 1e-12)", fb.argmin_bin);
      auto dual = dual_design(D, SignalDomain::Real);
      auto x = pad(audio.samples, L);
      auto y = synthesize_real(dual, analyze(D, x));
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < L; ++i) {
        num += (y[i] - x[i]) * (y[i] - x[i]);
        den += x[i] * x[i];
      }
      json j;
      j["relative_error"] = den > 0.0 ? std::sqrt(num / den) : 0.0;
      j["bounds"] = bounds_json(fb);
      j["L"] = L;
      j["d"] = d;
      j["achieved_oversampling"] = D.params.oversampling();
      print(j);
      return kOk;
    }
    if (*search_cmd) {
      auto w = WaveletSpec::parse(search_wavelet);
      search_opt.delays = parse_delay_kind(search_delays);
      if (search_format != "table" && search_format != "json") throw InvalidArgument("--format must be table or json");
      auto rates = parse_list(search_rates);
      for (double r : rates)
        if (!(r >= 1.0)) throw InvalidArgument("oversampling values must be at least 1");
      if (!search_candidates.empty()) {
        search_opt.candidates.clear();
        for (double m : parse_list(search_candidates)) {
          if (!(m >= 2.0 && m == std::floor(m))) throw InvalidArgument("--candidates must list integers >= 2");
          search_opt.candidates.push_back(static_cast<std::size_t>(m));
        }
      }
      auto records = full_search(w, rates, search_opt);
      if (search_format == "table") {
        std::cout << format_table(records);
      } else {
        json arr = json::array();
        for (const auto& r : records) {
          json j;
          j["wavelet"] = r.wavelet.to_string();
          j["oversampling"] = r.target_oversampling;
          j["M_C"] = r.M_C;
          j["M"] = r.M;
          j["d"] = r.d;
          j["R_FB"] = r.R_FB;
          j["L_eval"] = r.L_eval;
          arr.push_back(j);
        }
        print(arr);
      }
      return kOk;
    }
    if (*onset_cmd) {
      onset_f.validate();
      auto ref = parse_list(onset_ref);
      auto audio = read_wav(onset_in);
      std::size_t d = onset_f.decimation();
      std::size_t L = padded(audio.samples.size(), d);
      auto D = onset_f.build(L, audio.sample_rate, false);
      auto flux = spectral_flux(analyze(D, pad(audio.samples, L)), onset_f.M_C);
      auto r = pick_onsets(flux, onset_lambda, onset_window, onset_gap, static_cast<double>(d) / audio.sample_rate,
                           onset_floor);
      json j;
      j["frame_period"] = r.frame_period;
      j["onsets"] = r.onsets;
      if (!onset_ref.empty()) {
        auto s = eval_onsets(r.onsets, ref);
        j["precision"] = s.precision;
        j["recall"] = s.recall;
        j["f_measure"] = s.f_measure;
      }
      print(j);
      return kOk;
    }
    if (*fgla_cmd) {
      fgla_f.validate();
      auto audio = read_wav(fgla_in);
      std::size_t d = fgla_f.decimation();
      std::size_t L = padded(audio.samples.size(), d);
      auto D = fgla_f.build(L, audio.sample_rate);
      auto dual = dual_design(D, SignalDomain::Real);
      auto x = pad(audio.samples, L);
      RealMatrix target = analyze(D, x).data.cwiseAbs();
      auto r = fgla(D, dual, target, fgla_opt);
      std::size_t L7 = padded(L, 7);
      auto ref = reference_design(L7, audio.sample_rate);
      double e = err_ms(ref, pad(x, L7), pad(r.signal, L7));
      std::vector<double> y(r.signal.begin(), r.signal.begin() + static_cast<std::ptrdiff_t>(audio.samples.size()));
      write_wav(fgla_out, AudioBuffer{y, audio.sample_rate, fgla_out});
      json j;
      j["err_ms_db"] = e;
      j["selected_candidate"] = r.selected_candidate;
      j["final_inner_error_db"] = r.error_db.empty() ? 0.0 : r.error_db.back();
      print(j);
      return kOk;
    }
    if (*cov_cmd) {
      cov_f.validate();
      std::size_t d = cov_f.decimation();
      if (!(cov_first < cov_last && cov_last <= cov_frames)) throw InvalidArgument("need first < last <= frames");
      auto D = cov_f.build(d * cov_frames, 2.0);
      SpectrogramOptions o;
      o.gauss_dur = cov_gauss;
      auto S = accumulated_spectrogram(D, cov_first, cov_last, 0, D.channels(), o);
      write_pgm(cov_out, S.map);
      json j;
      j["out"] = cov_out;
      j["width"] = S.map.cols();
      j["height"] = S.map.rows();
      j["hop"] = S.hop;
      print(j);
      return kOk;
    }
  } catch (const NonInvertibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
