#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "kinklab/compute.hpp"

using namespace kinklab;

namespace {

std::vector<double> random_vec(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// Naive reference for the shifted convolution, written independently of the
// library kernel.
std::vector<double> convolve_reference(const std::vector<double>& x, double l,
                                       double r, const std::vector<double>& taps,
                                       int stride) {
  const auto ext = [&](long long i) {
    if (i < 0) return l;
    if (i >= static_cast<long long>(x.size())) return r;
    return x[static_cast<std::size_t>(i)];
  };
  std::vector<double> out(x.size(), 0.0);
  const int kmax = static_cast<int>(taps.size()) - 1;
  for (long long i = 0; i < static_cast<long long>(x.size()); ++i) {
    double s = 0.0;
    for (int k = -kmax; k <= kmax; ++k)
      s += taps[static_cast<std::size_t>(std::abs(k))] *
           ext(i - static_cast<long long>(k) * stride);
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

}  // namespace

TEST_CASE("shift_convolve matches the reference and its parallel twin") {
  const auto x = random_vec(913, 1);
  const std::vector<double> taps = {-2.0, 0.75, 0.25, -0.1};
  const int stride = 7;
  std::vector<double> serial(x.size()), parallel(x.size());
  compute::shift_convolve_serial(x, 0.3, -1.2, taps, stride, serial);
  compute::shift_convolve_parallel(x, 0.3, -1.2, taps, stride, parallel);
  const auto ref = convolve_reference(x, 0.3, -1.2, taps, stride);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(serial[i] == doctest::Approx(ref[i]).epsilon(1e-14));
    CHECK(parallel[i] == serial[i]);  // identical per-element loops
  }
}

TEST_CASE("dot flavors agree to rounding and the parallel one is blocked-stable") {
  const auto x = random_vec(100000, 2);
  const auto y = random_vec(100000, 3);
  const double s = compute::dot_serial(x, y);
  const double p = compute::dot_parallel(x, y);
  CHECK(std::abs(s - p) <= 1e-12 * std::abs(s));

  // The blocked reduction must not depend on the thread count.
  compute::set_threads(1);
  const double p1 = compute::dot_parallel(x, y);
  compute::set_threads(3);
  const double p3 = compute::dot_parallel(x, y);
  CHECK(p1 == p);
  CHECK(p3 == p);
}

TEST_CASE("symmetric_matvec agrees with a dense reference") {
  const std::size_t n = 117;
  auto a = random_vec(n * n, 4);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) a[i + j * n] = a[j + i * n];
  const auto x = random_vec(n, 5);
  std::vector<double> ys(n), yp(n);
  compute::symmetric_matvec_serial(a.data(), n, x, ys);
  compute::symmetric_matvec_parallel(a.data(), n, x, yp);
  for (std::size_t i = 0; i < n; ++i) {
    double ref = 0.0;
    for (std::size_t j = 0; j < n; ++j) ref += a[i + j * n] * x[j];
    CHECK(ys[i] == doctest::Approx(ref).epsilon(1e-12));
    CHECK(yp[i] == ys[i]);
  }
}

TEST_CASE("lattice_accel flavors are identical and match the formula") {
  const auto u = random_vec(257, 6);
  const std::vector<double> taps = {-2.0, 1.0};
  const std::function<double(double)> f = [](double v) { return std::sin(v); };
  std::vector<double> as(u.size()), ap(u.size());
  compute::lattice_accel_serial(u, 0.0, 1.0, taps, 0.07, f, as);
  compute::lattice_accel_parallel(u, 0.0, 1.0, taps, 0.07, f, ap);
  const auto conv = convolve_reference(u, 0.0, 1.0, taps, 1);
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(as[i] == doctest::Approx(0.07 * conv[i] - std::sin(u[i])).epsilon(1e-13));
    CHECK(ap[i] == as[i]);
  }
}

TEST_CASE("execution mode dispatch") {
  const auto old = compute::default_exec();
  compute::set_default_exec(compute::Exec::Serial);
  CHECK(compute::default_exec() == compute::Exec::Serial);
  compute::set_default_exec(compute::Exec::Parallel);
  CHECK(compute::default_exec() == compute::Exec::Parallel);
  compute::set_default_exec(old);
}
