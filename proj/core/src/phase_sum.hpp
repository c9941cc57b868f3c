#pragma once

#include <complex>
#include <span>
#include <vector>

namespace selberg::detail {

/// Terms w_j e^{-i t f_j} summed on a uniform t-grid.
struct PhaseTerms {
  std::vector<double> weight;
  std::vector<long double> freq;
};

/// Exact reduction of t * f modulo 2 pi, in extended precision.
double reduced_phase(long double t, long double f);

/// out[i] = sum_j weight_j exp(-i (t0 + i step) freq_j). Phases advance by a
/// complex rotation per node and are recomputed exactly every few hundred
/// nodes to stop drift.
void phase_sum_grid(const PhaseTerms& terms, long double t0, long double step, std::span<std::complex<double>> out);

}  // namespace selberg::detail
