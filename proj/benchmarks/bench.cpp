// Microbenchmarks for the hot paths: exact map evaluation, orbit coding,
// first-return induction, renormalization, cylinder trees, period scans,
// trace polynomials, band spectra and certified root refinement.

#include <benchmark/benchmark.h>

#include "ietlab/iet.hpp"
#include "ietlab/induce.hpp"
#include "ietlab/polynomial.hpp"
#include "ietlab/rauzy.hpp"
#include "ietlab/spectral.hpp"
#include "ietlab/symbolic.hpp"

namespace {

using namespace ietlab;

Scalar golden_alpha() { return Scalar(Rational(-1, 2), Rational(1, 2), 5); }

Iet golden() {
  Scalar a = golden_alpha();
  return Iet(Permutation({2, 1}), ExchangeLengths({Scalar(1) - a, a}));
}

void BM_golden_evaluate(benchmark::State& state) {
  Iet g = golden();
  Scalar x(Rational(1, 3));
  for (auto _ : state) {
    x = g(x);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_golden_evaluate);

void BM_orbit_symbols(benchmark::State& state) {
  Iet g = golden();
  Scalar x(Rational(1, 3));
  long n = state.range(0);
  for (auto _ : state) {
    Itinerary itin = orbit_symbols(g, x, 0, n);
    benchmark::DoNotOptimize(itin);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_orbit_symbols)->Arg(1 << 10)->Arg(1 << 13);

void BM_induce(benchmark::State& state) {
  Iet g = golden();
  HalfOpen window{Scalar(0), Scalar(Rational(1, state.range(0)))};
  for (auto _ : state) {
    InducedSystem sys = induce(g, window);
    benchmark::DoNotOptimize(sys);
  }
}
BENCHMARK(BM_induce)->Arg(8)->Arg(64)->Arg(512);

void BM_rauzy_step(benchmark::State& state) {
  Iet g = golden();
  for (auto _ : state) {
    RauzyStep st = rauzy_step(g.perm(), g.lengths());
    benchmark::DoNotOptimize(st);
  }
}
BENCHMARK(BM_rauzy_step);

void BM_build_cylinders(benchmark::State& state) {
  Iet g = golden();
  int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    CylinderTree tree = build_cylinders(g, depth);
    benchmark::DoNotOptimize(tree);
  }
}
BENCHMARK(BM_build_cylinders)->Arg(64)->Arg(256);

void BM_gordon_scan(benchmark::State& state) {
  Iet g = golden();
  long k = state.range(0);
  Itinerary itin = orbit_symbols(g, golden_alpha(), -k, 2 * k);
  for (auto _ : state) {
    GordonCertificate cert = gordon_scan(itin, k);
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(BM_gordon_scan)->Arg(500)->Arg(4000);

void BM_trace_polynomial(benchmark::State& state) {
  Potential two = Potential::standard(2);
  std::vector<int> w = fibonacci_word(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Poly p = trace_polynomial(w, two);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_trace_polynomial)->Arg(8)->Arg(11);

void BM_band_spectrum_exact(benchmark::State& state) {
  Potential two = Potential::standard(2);
  std::vector<int> w = fibonacci_word(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    SpectrumEstimate s = band_spectrum(w, two);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_band_spectrum_exact)->Arg(5)->Arg(7);

void BM_band_spectrum_float(benchmark::State& state) {
  Potential two = Potential::standard(2);
  std::vector<int> w = fibonacci_word(10);
  for (auto _ : state) {
    SpectrumEstimate s = band_spectrum_float(w, two);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_band_spectrum_float);

void BM_refine_root(benchmark::State& state) {
  ZPoly f;
  f.c = {mpz_class(-2), mpz_class(0), mpz_class(1)};  // x^2 - 2
  std::vector<RootInterval> roots = isolate_real_roots(f);
  Rational width(mpz_class(1), mpz_class(mpz_class(1) << state.range(0)));
  for (auto _ : state) {
    RootInterval iv = refine_root(f, roots[1], width);
    benchmark::DoNotOptimize(iv);
  }
}
BENCHMARK(BM_refine_root)->Arg(64)->Arg(256);

void BM_finite_box_eigenvalues(benchmark::State& state) {
  Potential two = Potential::standard(2);
  std::vector<int> w = fibonacci_word(12);  // 233 symbols
  for (auto _ : state) {
    std::vector<double> ev = finite_box_eigenvalues(w, two, 200);
    benchmark::DoNotOptimize(ev);
  }
}
BENCHMARK(BM_finite_box_eigenvalues);

}  // namespace

BENCHMARK_MAIN();
