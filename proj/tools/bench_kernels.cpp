// Times the serial reference kernels against their OpenMP counterparts on
// production-sized inputs. Usage: bench_kernels [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

#include "kinklab/compute.hpp"
#include "kinklab/dense.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_of(const std::function<void()>& fn, int repeats) {
  fn();  // warm up
  const auto t0 = Clock::now();
  for (int r = 0; r < repeats; ++r) fn();
  const auto t1 = Clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / repeats;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-22s %10.3f ms %10.3f ms %8.2fx\n", name, serial * 1e3,
              parallel * 1e3, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 5;
  namespace c = kinklab::compute;
  std::printf("threads: %d, repeats: %d\n", c::max_threads(), repeats);
  std::printf("%-22s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  {
    // Shift convolution at sweep size: N = 4001, 40 taps, stride 100.
    const std::size_t n = 4001;
    std::vector<double> x(n), out(n), taps(41);
    for (auto& v : x) v = dist(rng);
    for (std::size_t k = 0; k < taps.size(); ++k)
      taps[k] = std::pow(0.5, static_cast<double>(k));
    const int inner = 200;
    report("shift_convolve",
           time_of([&] {
             for (int i = 0; i < inner; ++i)
               c::shift_convolve_serial(x, 0.0, 1.0, taps, 100, out);
           }, repeats),
           time_of([&] {
             for (int i = 0; i < inner; ++i)
               c::shift_convolve_parallel(x, 0.0, 1.0, taps, 100, out);
           }, repeats));
  }

  {
    const std::size_t n = 1 << 20;
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = dist(rng);
    for (auto& v : y) v = dist(rng);
    volatile double sink = 0.0;
    report("dot",
           time_of([&] { sink = c::dot_serial(x, y); }, repeats),
           time_of([&] { sink = c::dot_parallel(x, y); }, repeats));
    (void)sink;
  }

  {
    const std::size_t n = 3000;
    kinklab::Matrix a(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i <= j; ++i) {
        const double v = dist(rng);
        a(i, j) = v;
        a(j, i) = v;
      }
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = dist(rng);
    report("symmetric_matvec",
           time_of([&] { c::symmetric_matvec_serial(a.data(), n, x, y); },
                   repeats),
           time_of([&] { c::symmetric_matvec_parallel(a.data(), n, x, y); },
                   repeats));
  }

  {
    // Chain force at simulation size.
    const std::size_t n = 4096;
    std::vector<double> u(n), acc(n);
    for (auto& v : u) v = 0.5 + 0.4 * dist(rng);
    const std::vector<double> taps = {-2.0, 1.0};
    const std::function<double(double)> f = [](double v) {
      const double w = 2.0 * v - 1.0;
      return w - w * w * w;
    };
    const int inner = 100;
    report("lattice_accel",
           time_of([&] {
             for (int i = 0; i < inner; ++i)
               c::lattice_accel_serial(u, 0.0, 1.0, taps, 0.05, f, acc);
           }, repeats),
           time_of([&] {
             for (int i = 0; i < inner; ++i)
               c::lattice_accel_parallel(u, 0.0, 1.0, taps, 0.05, f, acc);
           }, repeats));
  }

  return 0;
}
