// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cornerlab/errors.hpp"
#include "cornerlab/io.hpp"
#include "cornerlab/verify.hpp"

using namespace cornerlab;

namespace {

struct Global {
  std::uint64_t seed = 1;
  double bias = 0.5;
  std::size_t samples = 1000;
  std::string out;
  std::string format;
  Index max_window = Index{1} << 14;
  int threads = 0;
  std::string mode = "signs";
  bool timing = false;
};

BiasMode mode_of(const Global& g) { return g.mode == "walk" ? BiasMode::Walk : BiasMode::Signs; }

void strip_timing(Json& j) {
  if (j.is_object()) {
    j.erase("wall_seconds");
    for (auto& [k, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

void emit(const Global& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << text;
}

void emit(const Global& g, Json j) {
  if (!g.timing) strip_timing(j);
  emit(g, j.dump(2) + "\n");
}

std::string format_or(const Global& g, const char* fallback) { return g.format.empty() ? fallback : g.format; }

int unsupported(const std::string& cmd, const std::string& fmt) {
  std::cerr << cmd << ": format " << fmt << " is not available\n";
  return 2;
}

int run_sample(const Global& g, Index size, bool height_map) {
  if (size < 2) throw std::invalid_argument("--size must be at least 2");
  LatticeWindow w(WindowSpec::centered(g.seed, size / 2, g.bias, mode_of(g)));
  const std::string fmt = format_or(g, "svg");
  if (fmt == "svg") {
    emit(g, height_map ? render_height_svg(w) : render_window_svg(w));
    return 0;
  }
  auto cycles = closed_cycles(w);
  long bad = 0;
  for (auto& c : cycles) try {
      complete(w, c);
    } catch (const ViolatedBijection&) {
      ++bad;
    }
  if (fmt == "csv") {
    emit(g, cycles_csv(cycles));
  } else {
    Json j = envelope("sample", g.seed);
    j["window"] = to_json(w.spec());
    Json cs = Json::array();
    for (const auto& c : cycles) cs.push_back(to_json(c));
    j["cycles"] = cs;
    j["violations"] = {{"bijection", bad}};
    emit(g, j);
  }
  return bad ? 1 : 0;
}

int run_cycle(const Global& g) {
  OriginOptions opts;
  opts.max_size = g.max_window;
  const std::string fmt = format_or(g, "json");
  Json j = envelope("cycle", g.seed);
  j["bias"] = g.bias;
  j["max_window"] = g.max_window;
  try {
    const auto r = cycle_of_origin(g.seed, g.bias, mode_of(g), opts);
    if (fmt == "svg") {
      emit(g, render_cycle_svg(r.cycle));
      return 0;
    }
    if (fmt == "csv") {
      emit(g, cycles_csv({r.cycle}));
      return 0;
    }
    j["closed"] = true;
    j["window_size"] = r.window_size;
    j["cycle"] = to_json(r.cycle);
  } catch (const BudgetExceeded& e) {
    if (fmt != "json") {
      std::cerr << "cycle: " << e.what() << "\n";
      return 0;
    }
    j["closed"] = false;
  } catch (const ViolatedBijection& e) {
    std::cerr << "cycle: " << e.what() << "\n";
    return 1;
  }
  emit(g, j);
  return 0;
}

int run_exact(const Global& g, Index h_max, Index cutoff, Index fit_lo) {
  const auto s = L_sequence(h_max, std::min(cutoff, h_max));
  const std::string fmt = format_or(g, "json");
  if (fmt == "csv") {
    emit(g, exact_csv(s));
    return 0;
  }
  if (fmt != "json") return unsupported("exact-l", fmt);
  ExponentFit fit;
  fit.target = two_delta();
  try {
    fit = fit_exponent(s, fit_lo, h_max);
  } catch (const InsufficientData&) {
    fit.extrapolated = std::nan("");
  }
  emit(g, to_json(s, fit));
  return 0;
}

struct EstimateArgs {
  std::string name;
  Index h = 2, n = 64, h_max = 64, n_lo = 16, n_hi = 1024;
  std::size_t per_h = 300;
  std::vector<Index> values;
  std::vector<double> biases;
  std::string estimator = "finiteness";
};

int finish(const Global& g, const MCReport& r, const std::string& fmt) {
  if (fmt == "csv")
    emit(g, report_csv({r}));
  else if (fmt == "json")
    emit(g, to_json(r));
  else
    return unsupported("estimate", fmt);
  return r.violation_total() ? 1 : 0;
}

int finish(const Global& g, const FitReport& r, const std::string& fmt) {
  if (fmt == "csv")
    emit(g, fit_csv(r));
  else if (fmt == "json")
    emit(g, to_json(r));
  else
    return unsupported("estimate", fmt);
  return r.violation_total() ? 1 : 0;
}

std::vector<Index> dyadic(Index lo, Index hi, bool with_zero) {
  std::vector<Index> v;
  if (with_zero) v.push_back(0);
  for (Index x = lo; x <= hi; x *= 2) v.push_back(x);
  return v;
}

int run_estimate(const Global& g, const EstimateArgs& a) {
  const std::string fmt = format_or(g, "json");
  OriginOptions opts;
  opts.max_size = g.max_window;
  const std::string& n = a.name;
  if (n == "L-mc") return finish(g, estimate_L_mc(a.h, g.samples, g.seed), fmt);
  if (n == "T-mc") return finish(g, estimate_T_mc(a.h, g.samples, g.seed), fmt);
  if (n == "crossing") return finish(g, estimate_crossing(a.n, g.samples, g.seed, g.bias, mode_of(g)), fmt);
  if (n == "torus") return finish(g, estimate_torus(a.n, g.samples, g.seed), fmt);
  if (n == "P") {
    auto r = estimate_P(a.values.empty() ? dyadic(1, 64, true) : a.values, g.samples, g.seed, opts);
    return finish(g, r, fmt);
  }
  if (n == "diam-tail")
    return finish(g, estimate_diam_tail(a.values.empty() ? dyadic(4, 2048, false) : a.values, g.samples, g.seed, opts),
                  fmt);
  if (n == "finiteness")
    return finish(g, estimate_finiteness(sample_origin_cycles(g.samples, g.seed, g.bias, mode_of(g), opts), g.seed, g.bias),
                  fmt);
  if (n == "length-by-diameter")
    return finish(g, estimate_length_by_diameter(a.h_max, a.per_h, g.seed, static_cast<double>(a.n_lo),
                                                 static_cast<double>(a.n_hi)),
                  fmt);
  if (n == "level0")
    return finish(g, estimate_level0_total(a.values.empty() ? dyadic(64, 512, false) : a.values, g.samples, g.seed), fmt);
  if (n == "scaling") {
    const auto s = sample_origin_cycles(g.samples, g.seed, 0.5, BiasMode::Signs, opts);
    const auto P = estimate_P(dyadic(1, 64, true), s, g.seed);
    const auto l = estimate_length_by_diameter(a.h_max, a.per_h, g.seed, static_cast<double>(a.n_lo),
                                               static_cast<double>(a.n_hi));
    const auto r = scaling_relation(P, l);
    if (fmt != "json") return finish(g, r, fmt);
    Json j = to_json(r);
    j["P"] = to_json(P);
    j["length_by_diameter"] = to_json(l);
    emit(g, j);
    return P.violation_total() + l.violation_total() ? 1 : 0;
  }
  if (n == "sweep") {
    SweepParams p;
    p.samples = g.samples;
    p.seed = g.seed;
    p.mode = mode_of(g);
    p.origin = opts;
    p.crossing_n = a.n;
    const auto biases = a.biases.empty() ? std::vector<double>{0.5, 0.52, 0.55, 0.6} : a.biases;
    const auto rs =
        biased_sweep(biases, a.estimator == "crossing" ? SweepEstimator::Crossing : SweepEstimator::Finiteness, p);
    long viol = 0;
    for (const auto& r : rs) viol += r.violation_total();
    if (fmt == "csv") {
      emit(g, report_csv(rs));
    } else if (fmt == "json") {
      Json j = envelope("sweep", g.seed);
      j["estimator"] = a.estimator;
      Json arr = Json::array();
      for (const auto& r : rs) arr.push_back(to_json(r));
      j["reports"] = arr;
      emit(g, j);
    } else {
      return unsupported("estimate", fmt);
    }
    return viol ? 1 : 0;
  }
  throw std::invalid_argument("unknown estimator " + n);
}

int run_variant(const Global& g, const std::string& name, Index size, bool dump_field) {
  const VariantKind kind = variant_from_name(name);
  const auto r = estimate_variant(kind, size, g.samples, g.seed);
  const std::string fmt = format_or(g, "json");
  if (fmt == "csv") {
    std::string out = "size,count\n";
    for (const auto& [k, v] : r.size_histogram) out += std::to_string(k) + "," + std::to_string(v) + "\n";
    emit(g, out);
  } else if (fmt == "json") {
    Json j = to_json(r);
    if (dump_field && kind != VariantKind::TwoXor) {
      const auto f = gen_kxor(kind == VariantKind::Trixor ? trixor_families() : fourxor_families(), size,
                              sample_seed(g.seed, 61 + static_cast<std::uint64_t>(kind), 0));
      j["field_rle"] = rle_encode(f.state, size);
    }
    emit(g, j);
  } else {
    return unsupported("variant", fmt);
  }
  return r.constraint_violations ? 1 : 0;
}

int run_verify_cmd(const Global& g, Index half) {
  VerifyOptions o;
  o.seed = g.seed;
  o.windows = g.samples;
  o.window_half = half;
  o.pairs = 10 * g.samples;
  o.trixor_fields = g.samples / 5 + 1;
  const auto r = run_verify(o);
  Json j = envelope("verify", g.seed);
  j["violations"] = r.violations;
  j["checked"] = r.checked;
  j["wall_seconds"] = r.wall_seconds;
  j["ok"] = r.total() == 0;
  const std::string fmt = format_or(g, "json");
  if (fmt == "csv") {
    std::string out = "counter,value\n";
    for (const auto& [k, v] : r.violations) out += k + "," + std::to_string(v) + "\n";
    emit(g, out);
  } else if (fmt == "json") {
    emit(g, j);
  } else {
    return unsupported("verify", fmt);
  }
  return r.total() ? 1 : 0;
}

void set_threads(int requested) {
  if (const char* env = std::getenv("CORNERLAB_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) {
      omp_set_num_threads(t);
      return;
    }
  }
  if (requested > 0) omp_set_num_threads(requested);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cornerlab: corner percolation laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "master seed")->capture_default_str();
  app.add_option("--bias", g.bias, "P(sign = +1)")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  app.add_option("--samples", g.samples, "sample count")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "json, csv or svg")->check(CLI::IsMember({"json", "csv", "svg"}));
  app.add_option("--max-window", g.max_window, "largest window side for the origin cycle")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads; CORNERLAB_THREADS wins")->check(CLI::NonNegativeNumber);
  app.add_option("--mode", g.mode, "bias mode")->check(CLI::IsMember({"signs", "walk"}))->capture_default_str();
  app.add_flag("--timing", g.timing, "keep wall-clock fields in JSON");
  app.set_version_flag("--version", std::string(version()));

  Index size = 64;
  bool height_map = false;
  auto* sample = app.add_subcommand("sample", "render a window centred at the origin");
  sample->add_option("--size", size, "window side")->capture_default_str();
  sample->add_flag("--height-map", height_map, "colour faces by height instead");

  app.add_subcommand("cycle", "cycle through the origin");

  Index h_max = 256, cutoff = 64, fit_lo = 16;
  auto* exact = app.add_subcommand("exact-l", "L(h) sequence and exponent fit");
  exact->add_option("--hmax", h_max)->check(CLI::Range(Index{1}, Index{1} << 16))->capture_default_str();
  exact->add_option("--exact-cutoff", cutoff, "heights done in rationals")->capture_default_str();
  exact->add_option("--fit-lo", fit_lo, "smallest h of the slope fit")->capture_default_str();

  EstimateArgs ea;
  auto* est = app.add_subcommand("estimate", "Monte Carlo estimators");
  est->add_option("name", ea.name)
      ->required()
      ->check(CLI::IsMember({"P", "diam-tail", "finiteness", "L-mc", "T-mc", "length-by-diameter", "level0", "scaling",
                             "crossing", "torus", "sweep"}));
  est->add_option("--height", ea.h, "excursion height")->capture_default_str();
  est->add_option("--n", ea.n, "box side or torus half-period")->capture_default_str();
  est->add_option("--h-max", ea.h_max)->capture_default_str();
  est->add_option("--samples-per-h", ea.per_h)->capture_default_str();
  est->add_option("--n-lo", ea.n_lo)->capture_default_str();
  est->add_option("--n-hi", ea.n_hi)->capture_default_str();
  est->add_option("--values", ea.values, "thresholds or box sizes");
  est->add_option("--biases", ea.biases);
  est->add_option("--estimator", ea.estimator)->check(CLI::IsMember({"finiteness", "crossing"}))->capture_default_str();

  std::string vname;
  Index vsize = 256;
  bool dump_field = false;
  auto* var = app.add_subcommand("variant", "xor variants");
  var->add_option("name", vname)->required()->check(CLI::IsMember({"2xor", "trixor", "4xor"}));
  var->add_option("--size", vsize)->capture_default_str();
  var->add_flag("--dump-field", dump_field, "include the first field, run-length encoded");

  Index vhalf = 32;
  auto* ver = app.add_subcommand("verify", "structural property suite");
  ver->add_option("--half", vhalf, "window half-side")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  set_threads(g.threads);

  try {
    if (*sample) return run_sample(g, size, height_map);
    if (app.got_subcommand("cycle")) return run_cycle(g);
    if (*exact) return run_exact(g, h_max, cutoff, fit_lo);
    if (*est) return run_estimate(g, ea);
    if (*var) return run_variant(g, vname, vsize, dump_field);
    if (*ver) return run_verify_cmd(g, vhalf);
  } catch (const RenderRefused& e) {
    std::cerr << "render refused: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InsufficientData& e) {
    std::cerr << "insufficient data: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
