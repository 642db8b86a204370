// Reconstructs a bandlimited signal from a handful of samples: when only K
// spectral bins can be occupied, K time samples pin the whole signal down
// through a K x K reduced solve.
//
// Build target: fill_missing_samples (no arguments).

#include <algorithm>
#include <cstdio>
#include <vector>

#include "lps/matrix.hpp"
#include "lps/partition.hpp"
#include "lps/structured.hpp"

int main() {
  const std::size_t n = 16;

  // A three-bin spectrum: DC plus one conjugate pair, so the time signal is
  // real. Bins are indices into the unnormalized n-point transform.
  const std::vector<std::size_t> band{0, 2, 14};
  lps::Vector spectrum(n);
  spectrum[0] = 8.0;
  spectrum[2] = lps::Complex{4.0, -4.0};
  spectrum[14] = lps::Complex{4.0, 4.0};

  // Synthesize the full signal, then keep only three samples of it.
  const lps::Matrix w = lps::build_dft_matrix(n);
  lps::Vector signal(n);
  {
    // x = (1/n) conj(W) spectrum, the inverse of the unnormalized transform.
    const lps::Vector back = lps::conjugate(w) * spectrum;
    for (std::size_t t = 0; t < n; ++t) {
      signal[t] = back[t] / static_cast<double>(n);
    }
  }
  const std::vector<std::size_t> keep{1, 6, 11};
  lps::Vector samples(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) samples[i] = signal[keep[i]];

  std::printf("signal of length %zu occupying %zu spectral bins, "
              "reconstructed from %zu samples\n\n",
              n, band.size(), keep.size());

  const lps::Vector rebuilt =
      lps::bandlimited_reconstruct(samples, keep, band, n);

  std::printf("  t   original   rebuilt    kept\n");
  double worst = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double err = std::abs(rebuilt[t] - signal[t]);
    worst = std::max(worst, err);
    const bool kept =
        std::find(keep.begin(), keep.end(), t) != keep.end();
    std::printf("%3zu   %8.4f   %8.4f    %s\n", t, signal[t].real(),
                rebuilt[t].real(), kept ? "*" : "");
  }
  std::printf("\nlargest reconstruction error: %.2e\n", worst);
  return 0;
}
