#include "poincare/omp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "poincare/error.hpp"

namespace poincare {

namespace {

constexpr double kResidualFloor = 1e-12;
constexpr double kUsableEnergy = 1e-12;
// Relative pivot below which a candidate is linearly dependent on the support.
constexpr double kDependentPivot = 1e-10;

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<std::size_t> positions(std::size_t extent, std::size_t size, std::size_t stride) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p + size <= extent; p += stride) out.push_back(p);
  if (out.back() + size < extent) out.push_back(extent - size);
  return out;
}

}  // namespace

struct OmpSolver::Impl {
  std::size_t dim = 0;
  RowMatrix atoms;  // n_atoms x dim
  Eigen::MatrixXd gram;
  std::vector<char> usable;
  std::size_t usable_count = 0;
};

OmpSolver::OmpSolver(const Dictionary& dict) : impl_(std::make_unique<Impl>()) {
  require(dict.size() > 0, "dictionary is empty");
  auto& s = *impl_;
  s.dim = dict.dimension();
  s.atoms.resize(static_cast<Eigen::Index>(dict.size()), static_cast<Eigen::Index>(s.dim));
  s.usable.assign(dict.size(), 0);
  for (std::size_t a = 0; a < dict.size(); ++a) {
    require(dict.atoms[a].values.size() == s.dim, "atom " + std::to_string(a) + " has the wrong size");
    double energy = 0.0;
    for (std::size_t t = 0; t < s.dim; ++t) {
      const double v = dict.atoms[a].values[t];
      s.atoms(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(t)) = v;
      energy += v * v;
    }
    if (!dict.atoms[a].zero_energy && energy > kUsableEnergy) {
      s.usable[a] = 1;
      ++s.usable_count;
    }
  }
  if (s.usable_count == 0) fail(ErrorKind::InvalidArgument, "dictionary has no usable (nonzero-energy) atoms");
  s.gram = s.atoms * s.atoms.transpose();
}

OmpSolver::~OmpSolver() = default;
OmpSolver::OmpSolver(OmpSolver&&) noexcept = default;
OmpSolver& OmpSolver::operator=(OmpSolver&&) noexcept = default;

std::size_t OmpSolver::usable_atoms() const noexcept { return impl_->usable_count; }
std::size_t OmpSolver::dimension() const noexcept { return impl_->dim; }

std::span<const double> OmpSolver::atom_matrix() const noexcept {
  return {impl_->atoms.data(), static_cast<std::size_t>(impl_->atoms.size())};
}

SparseCode OmpSolver::solve(std::span<const double> signal, std::size_t k) const {
  require(signal.size() == impl_->dim, "signal length " + std::to_string(signal.size()) + " does not match atom dimension " +
                                           std::to_string(impl_->dim));
  const Eigen::Map<const Eigen::VectorXd> x(signal.data(), static_cast<Eigen::Index>(signal.size()));
  const Eigen::VectorXd corr = impl_->atoms * x;
  return solve_with_correlations(signal, {corr.data(), static_cast<std::size_t>(corr.size())}, k);
}

SparseCode OmpSolver::solve_with_correlations(std::span<const double> signal, std::span<const double> correlations,
                                              std::size_t k) const {
  const auto& s = *impl_;
  require(k >= 1 && k <= s.usable_count, "sparsity k = " + std::to_string(k) + " must lie in [1, " +
                                             std::to_string(s.usable_count) + "]");
  const auto n = static_cast<Eigen::Index>(s.atoms.rows());
  const Eigen::Map<const Eigen::VectorXd> x(signal.data(), static_cast<Eigen::Index>(signal.size()));
  const Eigen::Map<const Eigen::VectorXd> corr0(correlations.data(), n);

  SparseCode code;
  Eigen::VectorXd alpha = corr0;
  std::vector<char> blocked(s.usable.size(), 0);
  Eigen::MatrixXd chol = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  Eigen::VectorXd gamma;
  code.residual_energy = x.squaredNorm();
  if (code.residual_energy < kResidualFloor) return code;

  while (code.support.size() < k) {
    Eigen::Index pick = -1;
    double best = 0.0;
    for (Eigen::Index a = 0; a < n; ++a) {
      if (!s.usable[static_cast<std::size_t>(a)] || blocked[static_cast<std::size_t>(a)]) continue;
      const double c = std::abs(alpha(a));
      if (pick < 0 || c > best) {
        pick = a;
        best = c;
      }
    }
    if (pick < 0) break;

    // Extend the Cholesky factor of the support Gram block.
    const auto m = static_cast<Eigen::Index>(code.support.size());
    const double g = s.gram(pick, pick);
    double diag = g;
    Eigen::VectorXd w;
    if (m > 0) {
      Eigen::VectorXd col(m);
      for (Eigen::Index t = 0; t < m; ++t) col(t) = s.gram(static_cast<Eigen::Index>(code.support[static_cast<std::size_t>(t)]), pick);
      w = chol.topLeftCorner(m, m).triangularView<Eigen::Lower>().solve(col);
      diag = g - w.squaredNorm();
    }
    blocked[static_cast<std::size_t>(pick)] = 1;
    if (diag <= kDependentPivot * g) continue;
    if (m > 0) chol.block(m, 0, 1, m) = w.transpose();
    chol(m, m) = std::sqrt(diag);
    code.support.push_back(static_cast<std::size_t>(pick));

    const Eigen::Index sz = m + 1;
    Eigen::VectorXd rhs(sz);
    for (Eigen::Index t = 0; t < sz; ++t) rhs(t) = corr0(static_cast<Eigen::Index>(code.support[static_cast<std::size_t>(t)]));
    const auto L = chol.topLeftCorner(sz, sz).triangularView<Eigen::Lower>();
    gamma = L.transpose().solve(L.solve(rhs));

    // alpha = D^T r = D^T x - G[:, S] gamma; residual energy from r itself.
    alpha = corr0;
    Eigen::VectorXd approx = Eigen::VectorXd::Zero(x.size());
    for (Eigen::Index t = 0; t < sz; ++t) {
      const auto idx = static_cast<Eigen::Index>(code.support[static_cast<std::size_t>(t)]);
      alpha.noalias() -= gamma(t) * s.gram.col(idx);
      approx.noalias() += gamma(t) * s.atoms.row(idx).transpose();
    }
    code.residual_energy = (x - approx).squaredNorm();
    code.residual_history.push_back(code.residual_energy);
    if (code.residual_energy < kResidualFloor) break;
  }
  code.coefficients.assign(gamma.data(), gamma.data() + gamma.size());
  return code;
}

SparseCode omp(const Dictionary& dict, std::span<const double> signal, std::size_t k) {
  return OmpSolver(dict).solve(signal, k);
}

Reconstruction reconstruct(const Image& image, const Dictionary& dict, std::size_t k, std::size_t stride,
                           unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = dict.atom_size;
  require(stride >= 1, "stride must be at least 1");
  require(n >= 1 && n <= image.rows() && n <= image.cols(), "atom size " + std::to_string(n) + " exceeds image " +
                                                                std::to_string(image.rows()) + "x" +
                                                                std::to_string(image.cols()));
  const OmpSolver solver(dict);
  require(k >= 1 && k <= solver.usable_atoms(), "sparsity k = " + std::to_string(k) + " must lie in [1, " +
                                                    std::to_string(solver.usable_atoms()) + "]");

  const auto row_pos = positions(image.rows(), n, stride);
  const auto col_pos = positions(image.cols(), n, stride);
  const std::size_t dim = n * n, W = image.cols();
  const auto n_atoms = static_cast<Eigen::Index>(dict.size());
  const Eigen::Map<const RowMatrix> atoms(solver.atom_matrix().data(), n_atoms, static_cast<Eigen::Index>(dim));

  // Each patch row accumulates into its own n-row band; bands are merged in
  // row order afterwards, so the sum order is fixed.
  struct Band {
    std::vector<double> sum;
  };
  std::vector<Band> bands(row_pos.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    RowMatrix X(static_cast<Eigen::Index>(col_pos.size()), static_cast<Eigen::Index>(dim));
    try {
      for (std::size_t r; (r = next.fetch_add(1)) < row_pos.size();) {
        const std::size_t top = row_pos[r];
        for (std::size_t c = 0; c < col_pos.size(); ++c) {
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) X(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(i * n + j)) = image(top + i, col_pos[c] + j);
          }
        }
        const RowMatrix corr = X * atoms.transpose();
        Band& band = bands[r];
        band.sum.assign(n * W, 0.0);
        std::vector<double> est(dim);
        for (std::size_t c = 0; c < col_pos.size(); ++c) {
          const auto ci = static_cast<Eigen::Index>(c);
          const SparseCode code = solver.solve_with_correlations({X.row(ci).data(), dim},
                                                                 {corr.row(ci).data(), dict.size()}, k);
          std::fill(est.begin(), est.end(), 0.0);
          for (std::size_t t = 0; t < code.support.size(); ++t) {
            const auto& a = dict.atoms[code.support[t]].values;
            for (std::size_t q = 0; q < dim; ++q) est[q] += code.coefficients[t] * a[q];
          }
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) band.sum[i * W + col_pos[c] + j] += est[i * n + j];
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = row_pos.size();
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, row_pos.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  std::vector<double> sum(image.size(), 0.0), weight(image.size(), 0.0);
  std::vector<double> col_cover(W, 0.0);
  for (std::size_t c : col_pos) {
    for (std::size_t j = 0; j < n; ++j) col_cover[c + j] += 1.0;
  }
  for (std::size_t r = 0; r < row_pos.size(); ++r) {
    const std::size_t top = row_pos[r];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < W; ++j) {
        sum[(top + i) * W + j] += bands[r].sum[i * W + j];
        weight[(top + i) * W + j] += col_cover[j];
      }
    }
  }
  std::vector<double> out(image.size());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = sum[p] / weight[p];

  Reconstruction rec{Image(image.rows(), image.cols(), std::move(out), image.levels()), {}};
  rec.report.psnr_db = psnr(image, rec.image);
  rec.report.dictionary_id = dict.source;
  rec.report.sparsity = k;
  rec.report.stride = stride;
  rec.report.patches = row_pos.size() * col_pos.size();
  rec.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace poincare
