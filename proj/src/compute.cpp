#include "kinklab/compute.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kinklab::compute {

namespace {

std::atomic<Exec> g_exec{
#ifdef _OPENMP
    Exec::Parallel
#else
    Exec::Serial
#endif
};

constexpr std::size_t kDotBlock = 4096;

inline double extended(std::span<const double> x, double left, double right,
                       std::int64_t i) {
  if (i < 0) return left;
  if (i >= static_cast<std::int64_t>(x.size())) return right;
  return x[static_cast<std::size_t>(i)];
}

// Shared per-element body; |k| <= K taps, symmetric.
inline double convolve_at(std::span<const double> x, double left, double right,
                          std::span<const double> taps, int stride,
                          std::int64_t i) {
  const int kmax = static_cast<int>(taps.size()) - 1;
  double acc = taps[0] * x[static_cast<std::size_t>(i)];
  for (int k = 1; k <= kmax; ++k) {
    const std::int64_t off = static_cast<std::int64_t>(k) * stride;
    acc += taps[static_cast<std::size_t>(k)] *
           (extended(x, left, right, i - off) + extended(x, left, right, i + off));
  }
  return acc;
}

inline double block_dot(std::span<const double> x, std::span<const double> y,
                        std::size_t b) {
  const std::size_t lo = b * kDotBlock;
  const std::size_t hi = std::min(lo + kDotBlock, x.size());
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

Exec default_exec() { return g_exec.load(); }

void set_default_exec(Exec mode) { g_exec.store(mode); }

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

void shift_convolve_serial(std::span<const double> x, double left, double right,
                           std::span<const double> taps, int stride,
                           std::span<double> out) {
  assert(out.size() == x.size());
  const std::int64_t n = static_cast<std::int64_t>(x.size());
  for (std::int64_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = convolve_at(x, left, right, taps, stride, i);
}

void shift_convolve_parallel(std::span<const double> x, double left, double right,
                             std::span<const double> taps, int stride,
                             std::span<double> out) {
  assert(out.size() == x.size());
  const std::int64_t n = static_cast<std::int64_t>(x.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = convolve_at(x, left, right, taps, stride, i);
}

void shift_convolve(std::span<const double> x, double left, double right,
                    std::span<const double> taps, int stride,
                    std::span<double> out) {
  if (default_exec() == Exec::Parallel)
    shift_convolve_parallel(x, left, right, taps, stride, out);
  else
    shift_convolve_serial(x, left, right, taps, stride, out);
}

double dot_serial(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double dot_parallel(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  const std::size_t nblocks = (x.size() + kDotBlock - 1) / kDotBlock;
  if (nblocks <= 1) return dot_serial(x, y);
  std::vector<double> partial(nblocks, 0.0);
  const std::int64_t nb = static_cast<std::int64_t>(nblocks);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t b = 0; b < nb; ++b)
    partial[static_cast<std::size_t>(b)] = block_dot(x, y, static_cast<std::size_t>(b));
  double s = 0.0;
  for (double p : partial) s += p;  // fixed order, thread-count independent
  return s;
}

double dot(std::span<const double> x, std::span<const double> y) {
  return default_exec() == Exec::Parallel ? dot_parallel(x, y) : dot_serial(x, y);
}

void symmetric_matvec_serial(const double* a, std::size_t n,
                             std::span<const double> x, std::span<double> y) {
  assert(x.size() == n && y.size() == n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* col = a + i * n;  // column i equals row i by symmetry
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += col[j] * x[j];
    y[i] = s;
  }
}

void symmetric_matvec_parallel(const double* a, std::size_t n,
                               std::span<const double> x, std::span<double> y) {
  assert(x.size() == n && y.size() == n);
  const std::int64_t ni = static_cast<std::int64_t>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < ni; ++i) {
    const double* col = a + static_cast<std::size_t>(i) * n;
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += col[j] * x[j];
    y[static_cast<std::size_t>(i)] = s;
  }
}

void symmetric_matvec(const double* a, std::size_t n,
                      std::span<const double> x, std::span<double> y) {
  if (default_exec() == Exec::Parallel)
    symmetric_matvec_parallel(a, n, x, y);
  else
    symmetric_matvec_serial(a, n, x, y);
}

void lattice_accel_serial(std::span<const double> u, double left, double right,
                          std::span<const double> taps, double coupling,
                          const std::function<double(double)>& f,
                          std::span<double> acc) {
  assert(acc.size() == u.size());
  const std::int64_t n = static_cast<std::int64_t>(u.size());
  for (std::int64_t i = 0; i < n; ++i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    acc[ui] = coupling * convolve_at(u, left, right, taps, 1, i) - f(u[ui]);
  }
}

void lattice_accel_parallel(std::span<const double> u, double left, double right,
                            std::span<const double> taps, double coupling,
                            const std::function<double(double)>& f,
                            std::span<double> acc) {
  assert(acc.size() == u.size());
  const std::int64_t n = static_cast<std::int64_t>(u.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    acc[ui] = coupling * convolve_at(u, left, right, taps, 1, i) - f(u[ui]);
  }
}

void lattice_accel(std::span<const double> u, double left, double right,
                   std::span<const double> taps, double coupling,
                   const std::function<double(double)>& f,
                   std::span<double> acc) {
  if (default_exec() == Exec::Parallel)
    lattice_accel_parallel(u, left, right, taps, coupling, f, acc);
  else
    lattice_accel_serial(u, left, right, taps, coupling, f, acc);
}

}  // namespace kinklab::compute
