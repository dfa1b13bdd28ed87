#include "netemd/denoise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "netemd/errors.hpp"
#include "netemd/rng.hpp"

namespace netemd {

namespace {

Eigen::MatrixXd active_columns(const StandardizedGDM& s) {
  Eigen::MatrixXd x(s.values.rows(), static_cast<Eigen::Index>(s.active.size()));
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    x.col(j) = s.values.col(s.active[static_cast<std::size_t>(j)]);
  return x;
}

// Scatters the reconstructed active block back and undoes the z-score.
Eigen::MatrixXd destandardize(const StandardizedGDM& s,
                              const Eigen::MatrixXd& active_hat) {
  const Eigen::Index n = s.values.rows(), m = s.mean.size();
  Eigen::MatrixXd out(n, m);
  for (Eigen::Index j = 0; j < m; ++j)
    out.col(j).setConstant(s.mean(j));
  for (Eigen::Index j = 0; j < active_hat.cols(); ++j) {
    const Eigen::Index col = s.active[static_cast<std::size_t>(j)];
    out.col(col) += active_hat.col(j) * s.stddev(col);
  }
  return out;
}

// Eigendecomposition of the sample covariance of standardized active
// columns, eigenpairs descending. Covariance (not the bare cross-product)
// keeps eigenvalues O(1), so the non-negativity floor stays meaningful.
struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

EigenPairs covariance_eigs(const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd cov =
      (x.transpose() * x) / static_cast<double>(x.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success)
    throw DomainError("eigendecomposition failed");
  const Eigen::Index k = cov.rows();
  EigenPairs out;
  out.values.resize(k);
  out.vectors.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    out.values(i) = solver.eigenvalues()(k - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(k - 1 - i);
  }
  return out;
}

int numeric_rank(const Eigen::VectorXd& descending) {
  if (descending.size() == 0) return 0;
  const double floor = std::max(descending(0), 0.0) * 1e-12 + 1e-12;
  int rank = 0;
  while (rank < descending.size() && descending(rank) > floor) ++rank;
  return rank;
}

}  // namespace

StandardizedGDM standardize(const Eigen::MatrixXd& values) {
  if (!values.allFinite())
    throw DomainError("matrix has non-finite entries");
  if (values.rows() < 2)
    throw DomainError("standardization needs at least 2 rows");
  const Eigen::Index n = values.rows(), m = values.cols();
  StandardizedGDM out;
  out.values.resize(n, m);
  out.mean.resize(m);
  out.stddev.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double mu = values.col(j).mean();
    const Eigen::ArrayXd centered = values.col(j).array() - mu;
    const double var = centered.square().sum() / static_cast<double>(n);
    out.mean(j) = mu;
    if (var > 0.0) {
      const double sigma = std::sqrt(var);
      out.stddev(j) = sigma;
      out.values.col(j) = centered / sigma;
      out.active.push_back(static_cast<int>(j));
    } else {
      out.stddev(j) = 0.0;
      out.values.col(j).setZero();
    }
  }
  return out;
}

std::string DenoiseProvenance::summary() const {
  char buf[128];
  if (variance_ratio >= 0.0)
    std::snprintf(buf, sizeof buf, "denoise=%s components=%d variance_ratio=%g",
                  method.c_str(), components, variance_ratio);
  else if (method == "ica")
    std::snprintf(buf, sizeof buf,
                  "denoise=ica components=%d converged=%d iterations=%d",
                  components, converged ? 1 : 0, iterations);
  else
    std::snprintf(buf, sizeof buf, "denoise=%s components=%d", method.c_str(),
                  components);
  return buf;
}

PcaSelector PcaSelector::explained_variance(double r) {
  if (!(r > 0.0 && r <= 1.0))
    throw DomainError("explained-variance ratio must be in (0, 1]");
  PcaSelector s;
  s.r = r;
  return s;
}

PcaSelector PcaSelector::fixed(int L) {
  if (L < 1) throw DomainError("component count must be at least 1");
  PcaSelector s;
  s.L = L;
  return s;
}

PcaModel pca_fit(const Eigen::MatrixXd& values) {
  PcaModel model;
  model.standardized = standardize(values);
  const Eigen::MatrixXd x = active_columns(model.standardized);
  if (x.cols() == 0) return model;
  auto eigs = covariance_eigs(x);
  model.eigenvalues = std::move(eigs.values);
  model.components = std::move(eigs.vectors);
  model.rank = numeric_rank(model.eigenvalues);
  return model;
}

ReconstructedGDM pca_reconstruct(const GraphletDegreeMatrix& gdm,
                                 const PcaSelector& selector) {
  const Eigen::MatrixXd input = gdm.counts().cast<double>();
  const PcaModel model = pca_fit(input);
  const Eigen::Index active = model.eigenvalues.size();

  int L = 0;
  if (selector.r >= 0.0) {
    const double total = std::max(model.eigenvalues.sum(), 0.0);
    if (active > 0) {
      double cum = 0.0;
      L = static_cast<int>(active);
      for (Eigen::Index i = 0; i < active; ++i) {
        cum += model.eigenvalues(i);
        if (total <= 0.0 || cum / total >= selector.r) {
          L = static_cast<int>(i) + 1;
          break;
        }
      }
    }
  } else {
    if (selector.L > gdm.orbit_count())
      throw DomainError("component count exceeds the column count");
    L = std::min<int>(selector.L, static_cast<int>(active));
  }

  ReconstructedGDM out;
  if (L == 0) {
    out.values = destandardize(model.standardized,
                               Eigen::MatrixXd(input.rows(), 0));
  } else {
    const Eigen::MatrixXd x = active_columns(model.standardized);
    const auto w = model.components.leftCols(L);
    out.values = destandardize(model.standardized, x * w * w.transpose());
  }
  out.key = gdm.key();
  out.orbit_ids.resize(static_cast<std::size_t>(gdm.orbit_count()));
  for (std::size_t i = 0; i < out.orbit_ids.size(); ++i)
    out.orbit_ids[i] = static_cast<int>(i);
  out.fit_orbit_ids = out.orbit_ids;
  out.provenance.method = "pca";
  out.provenance.components = L;
  out.provenance.variance_ratio = selector.r;
  return out;
}

IcaModel ica_fit(const Eigen::MatrixXd& values, int c, std::uint64_t seed,
                 int max_iter, double tol) {
  if (c < 1) throw DomainError("component count must be at least 1");
  if (c > values.cols())
    throw DomainError("component count exceeds the column count");
  if (values.rows() <= c)
    throw DomainError("need more rows than components");

  IcaModel model;
  model.standardized = standardize(values);
  const Eigen::MatrixXd x = active_columns(model.standardized);
  const auto eigs = x.cols() > 0
                        ? covariance_eigs(x)
                        : EigenPairs{Eigen::VectorXd(), Eigen::MatrixXd()};
  const int rank = numeric_rank(eigs.values);
  if (c > rank) {
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "requested %d components but the data has rank %d", c, rank);
    throw DomainError(buf);
  }

  const double n = static_cast<double>(x.rows());
  // whitening: z-rows have identity sample covariance
  const Eigen::MatrixXd k_white =
      eigs.vectors.leftCols(c) *
      eigs.values.head(c).cwiseSqrt().cwiseInverse().asDiagonal();
  const Eigen::MatrixXd z = x * k_white;  // n x c

  Rng rng(derive_seed(seed, {0x1caf17u}));
  Eigen::MatrixXd w(c, c);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < c; ++j) w(i, j) = rng.normal();

  auto decorrelate = [c](Eigen::MatrixXd& m) {
    // m <- m / sqrt(||m m^T||), then Newton steps toward orthonormal rows
    const Eigen::MatrixXd mmt = m * m.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mmt);
    const double spectral = es.eigenvalues().cwiseAbs().maxCoeff();
    if (spectral > 0.0) m /= std::sqrt(spectral);
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(c, c);
    for (int it = 0; it < 200; ++it) {
      const Eigen::MatrixXd gram = m * m.transpose();
      if ((gram - eye).cwiseAbs().maxCoeff() < 1e-12) break;
      m = 1.5 * m - 0.5 * gram * m;
    }
  };
  decorrelate(w);

  model.converged = false;
  model.iterations = max_iter;
  for (int iter = 1; iter <= max_iter; ++iter) {
    const Eigen::MatrixXd u = z * w.transpose();  // n x c source estimates
    const Eigen::ArrayXXd g = u.array().tanh();
    const Eigen::VectorXd gprime_mean =
        (1.0 - g.square()).colwise().mean().matrix().transpose();
    Eigen::MatrixXd w_next =
        (g.matrix().transpose() * z) / n - gprime_mean.asDiagonal() * w;
    decorrelate(w_next);
    const double delta =
        (w_next * w.transpose() - Eigen::MatrixXd::Identity(c, c))
            .cwiseAbs()
            .maxCoeff();
    w = std::move(w_next);
    if (delta < tol) {
      model.converged = true;
      model.iterations = iter;
      break;
    }
  }

  model.unmixing = w;
  model.projection = k_white * w.transpose();  // active x c
  model.sources = x * model.projection;
  return model;
}

ReconstructedGDM ica_reconstruct(const GraphletDegreeMatrix& gdm, int c,
                                 std::uint64_t seed, int max_iter, double tol) {
  const Eigen::MatrixXd input = gdm.counts().cast<double>();
  const IcaModel model = ica_fit(input, c, seed, max_iter, tol);
  // least-squares inverse of the projection recovers the standardized data
  const Eigen::MatrixXd pinv =
      model.projection.completeOrthogonalDecomposition().pseudoInverse();
  ReconstructedGDM out;
  out.values = destandardize(model.standardized, model.sources * pinv);
  out.key = gdm.key();
  out.orbit_ids.resize(static_cast<std::size_t>(gdm.orbit_count()));
  for (std::size_t i = 0; i < out.orbit_ids.size(); ++i)
    out.orbit_ids[i] = static_cast<int>(i);
  out.fit_orbit_ids = out.orbit_ids;
  out.provenance.method = "ica";
  out.provenance.components = c;
  out.provenance.converged = model.converged;
  out.provenance.iterations = model.iterations;
  return out;
}

ReconstructedGDM truncate_reconstruction(
    const ReconstructedGDM& recon, const std::vector<int>& target_orbit_ids) {
  if (target_orbit_ids.empty())
    throw DomainError("truncation target is empty");
  ReconstructedGDM out;
  out.values.resize(recon.values.rows(),
                    static_cast<Eigen::Index>(target_orbit_ids.size()));
  for (std::size_t i = 0; i < target_orbit_ids.size(); ++i) {
    const auto it = std::find(recon.orbit_ids.begin(), recon.orbit_ids.end(),
                              target_orbit_ids[i]);
    if (it == recon.orbit_ids.end()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "orbit %d is not in the reconstruction",
                    target_orbit_ids[i]);
      throw DomainError(buf);
    }
    out.values.col(static_cast<Eigen::Index>(i)) =
        recon.values.col(it - recon.orbit_ids.begin());
  }
  out.key = recon.key;
  out.orbit_ids = target_orbit_ids;
  out.fit_orbit_ids = recon.fit_orbit_ids;
  out.provenance = recon.provenance;
  return out;
}

}  // namespace netemd
