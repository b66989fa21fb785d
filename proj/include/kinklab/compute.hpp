#pragma once

#include <cstddef>
#include <functional>
#include <span>

// Low-level array kernels behind the grid calculus, the nonlocal operator
// and the lattice force evaluation. Every kernel comes in two flavors:
//
//   *_serial    plain reference loop, kept as the correctness baseline
//   *_parallel  OpenMP version; output is independent of the thread count
//               (reductions use a fixed block decomposition)
//
// The unsuffixed entry points dispatch on the process-wide execution mode.
// tools/bench_kernels.cpp times the two flavors against each other.

namespace kinklab::compute {

enum class Exec { Serial, Parallel };

Exec default_exec();
void set_default_exec(Exec mode);

/// Number of OpenMP threads the parallel flavor will use (1 without OpenMP).
int max_threads();
/// Pin the OpenMP thread count; n <= 0 restores the runtime default.
void set_threads(int n);

// out[i] = sum_{k=-K..K} taps[|k|] * x_ext(i - k*stride), where x_ext
// continues x with `left` below index 0 and `right` above index n-1.
// taps holds {a_0, a_1, ..., a_K}; symmetric taps are implied.
void shift_convolve_serial(std::span<const double> x, double left, double right,
                           std::span<const double> taps, int stride,
                           std::span<double> out);
void shift_convolve_parallel(std::span<const double> x, double left, double right,
                             std::span<const double> taps, int stride,
                             std::span<double> out);
void shift_convolve(std::span<const double> x, double left, double right,
                    std::span<const double> taps, int stride,
                    std::span<double> out);

// sum_i x[i]*y[i]. The parallel flavor accumulates fixed 4096-element blocks
// and combines the partials in index order, so its result is bitwise
// reproducible for any thread count (but differs from the serial flavor in
// the last bits).
double dot_serial(std::span<const double> x, std::span<const double> y);
double dot_parallel(std::span<const double> x, std::span<const double> y);
double dot(std::span<const double> x, std::span<const double> y);

// y = A x for a symmetric n-by-n matrix stored column-major. Symmetry lets
// each output element read one contiguous column.
void symmetric_matvec_serial(const double* a, std::size_t n,
                             std::span<const double> x, std::span<double> y);
void symmetric_matvec_parallel(const double* a, std::size_t n,
                               std::span<const double> x, std::span<double> y);
void symmetric_matvec(const double* a, std::size_t n,
                      std::span<const double> x, std::span<double> y);

// acc[i] = coupling * sum_k taps[|k|] * u_ext(i-k) - f(u[i]); the site force
// of a coupled oscillator chain with clamped ends.
void lattice_accel_serial(std::span<const double> u, double left, double right,
                          std::span<const double> taps, double coupling,
                          const std::function<double(double)>& f,
                          std::span<double> acc);
void lattice_accel_parallel(std::span<const double> u, double left, double right,
                            std::span<const double> taps, double coupling,
                            const std::function<double(double)>& f,
                            std::span<double> acc);
void lattice_accel(std::span<const double> u, double left, double right,
                   std::span<const double> taps, double coupling,
                   const std::function<double(double)>& f,
                   std::span<double> acc);

}  // namespace kinklab::compute
