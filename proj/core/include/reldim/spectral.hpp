#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace reldim {

struct EigenOptions {
  std::uint64_t seed = 0x6669656472ULL;
  std::size_t max_iterations = 100000;
  // Converged when ||Bx - mu x|| <= tolerance * shift.
  double tolerance = 1e-10;
};

struct FiedlerResult {
  std::vector<double> vector;  // unit norm, orthogonal to the all-ones vector
  double eigenvalue = 0.0;     // of the Laplacian
  std::size_t iterations = 0;
  bool converged = false;
};

// Unnormalized Laplacian D - W of a symmetric non-negative weight matrix
// (row-major n x n). The diagonal of W is ignored.
std::vector<double> laplacian(std::span<const double> weights, std::size_t n);

// Eigenvector of the second-smallest Laplacian eigenvalue, by power iteration
// on (shift*I - L) restricted to the complement of the constant vector. The
// start vector is drawn from options.seed, so output is deterministic.
FiedlerResult fiedler_vector(std::span<const double> laplacian, std::size_t n,
                             const EigenOptions& options = {});

// Indices with positive Fiedler entries go to one side, negative to the
// other; entries within zero_band of zero fill whichever side is smaller.
// The side holding index 0 is returned first.
struct Bisection {
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
};

Bisection sign_split(std::span<const double> fiedler, double zero_band = 1e-9);

Bisection spectral_bisection(std::span<const double> weights, std::size_t n,
                             const EigenOptions& options = {});

}  // namespace reldim
