// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference against the OpenMP kernels. Usage: bench_kernels [h_max]

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "cornerlab/montecarlo.hpp"
#include "cornerlab/series.hpp"

using namespace cornerlab;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const Index h_max = argc > 1 ? std::atoll(argv[1]) : 512;
  const int threads = omp_get_max_threads();
  std::printf("threads available: %d\n", threads);

  std::vector<long double> ser, par;
  const double ts = seconds([&] { ser = L_float_serial(h_max); });
  const double tp = seconds([&] { par = L_float_parallel(h_max); });
  long double worst = 0;
  for (Index h = 1; h <= h_max; ++h)
    worst = std::max(worst, std::fabs(par[static_cast<std::size_t>(h)] / ser[static_cast<std::size_t>(h)] - 1));
  std::printf("L(h), h <= %lld\n", static_cast<long long>(h_max));
  std::printf("  serial literal sum   %9.3f s\n", ts);
  std::printf("  parallel convolution %9.3f s  (x%.1f)\n", tp, ts / tp);
  std::printf("  max relative gap     %9.3Le\n", worst);

  const std::size_t n = 400;
  double t1 = 0, tn = 0;
  std::vector<OriginSample> a, b;
  omp_set_num_threads(1);
  t1 = seconds([&] { a = sample_origin_cycles(n, 3); });
  omp_set_num_threads(threads);
  tn = seconds([&] { b = sample_origin_cycles(n, 3); });
  bool same = a.size() == b.size();
  for (std::size_t k = 0; same && k < a.size(); ++k) same = a[k].length == b[k].length && a[k].closed == b[k].closed;
  std::printf("origin cycles, %zu samples\n", n);
  std::printf("  1 thread             %9.3f s\n", t1);
  std::printf("  %2d threads           %9.3f s  (x%.1f)\n", threads, tn, t1 / tn);
  std::printf("  identical samples    %s\n", same ? "yes" : "NO");
  return same && worst < 1e-12L ? 0 : 1;
}
