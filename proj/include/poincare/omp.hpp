#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "poincare/dictionary.hpp"
#include "poincare/patch.hpp"

namespace poincare {

struct SparseCode {
  std::vector<std::size_t> support;   // in selection order
  std::vector<double> coefficients;   // aligned with support
  double residual_energy = 0.0;
  std::vector<double> residual_history;  // after each selection
};

// Orthogonal matching pursuit against a fixed dictionary. The Gram matrix is
// computed once; each solve keeps a Cholesky factor of the support's Gram
// block, so coefficients are the exact least-squares fit on the support.
class OmpSolver {
 public:
  explicit OmpSolver(const Dictionary& dict);
  ~OmpSolver();
  OmpSolver(OmpSolver&&) noexcept;
  OmpSolver& operator=(OmpSolver&&) noexcept;

  std::size_t usable_atoms() const noexcept;
  std::size_t dimension() const noexcept;

  // Greedy selection of the atom with largest |<atom, residual>| (lowest index
  // on ties), stopping after k atoms or once the residual energy drops below
  // 1e-12. Requires 1 <= k <= usable_atoms().
  SparseCode solve(std::span<const double> signal, std::size_t k) const;

  // Same as solve() with D^T x supplied by the caller.
  SparseCode solve_with_correlations(std::span<const double> signal, std::span<const double> correlations,
                                     std::size_t k) const;

  // Atom-major copy of the dictionary, for batched correlation products.
  std::span<const double> atom_matrix() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SparseCode omp(const Dictionary& dict, std::span<const double> signal, std::size_t k);

struct ReconstructionReport {
  double psnr_db = 0.0;
  std::string dictionary_id;
  std::size_t sparsity = 0;
  std::size_t stride = 1;
  std::size_t patches = 0;
  double seconds = 0.0;
};

struct Reconstruction {
  Image image;
  ReconstructionReport report;
};

// Approximates every stride-spaced patch (the last row and column of patches
// are always included) and averages overlapping estimates per pixel. No mean
// is removed; the dictionary carries brightness itself. threads = 0 picks the
// hardware concurrency. The result does not depend on the thread count.
Reconstruction reconstruct(const Image& image, const Dictionary& dict, std::size_t k, std::size_t stride = 1,
                           unsigned threads = 0);

}  // namespace poincare
