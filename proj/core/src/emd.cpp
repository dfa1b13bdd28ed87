#include "netemd/emd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "netemd/errors.hpp"

namespace netemd {

namespace {

// CDF-area sweep over the merged breakpoints of p shifted by c and q.
double cdf_area(const EmpiricalDistribution& p,
                const EmpiricalDistribution& q, double c) {
  const auto& sp = p.support();
  const auto& wp = p.weights();
  const auto& sq = q.support();
  const auto& wq = q.weights();
  const std::size_t np = sp.size(), nq = sq.size();

  double area = 0.0, fp = 0.0, fq = 0.0;
  double x_prev = 0.0;
  bool first = true;
  std::size_t i = 0, j = 0;
  while (i < np || j < nq) {
    const double xp = i < np ? sp[i] + c : 0.0;
    const double xq = j < nq ? sq[j] : 0.0;
    double x;
    if (i < np && (j >= nq || xp <= xq))
      x = xp;
    else
      x = xq;
    if (!first) area += std::abs(fp - fq) * (x - x_prev);
    first = false;
    while (i < np && sp[i] + c == x) fp += wp[i++];
    while (j < nq && sq[j] == x) fq += wq[j++];
    x_prev = x;
  }
  return area;
}

struct QuantilePiece {
  double width;
  double diff;  // Qp(t) - Qq(t) on the piece
};

// Pieces of the quantile difference over t in [0,1].
void quantile_pieces(const EmpiricalDistribution& p,
                     const EmpiricalDistribution& q,
                     std::vector<QuantilePiece>& pieces) {
  const auto& sp = p.support();
  const auto& wp = p.weights();
  const auto& sq = q.support();
  const auto& wq = q.weights();
  const std::size_t np = sp.size(), nq = sq.size();

  pieces.clear();
  double cp = wp[0], cq = wq[0], t_prev = 0.0;
  std::size_t i = 0, j = 0;
  while (i + 1 < np || j + 1 < nq) {
    const double tp = i + 1 < np ? cp : 2.0;
    const double tq = j + 1 < nq ? cq : 2.0;
    const double t = std::min(tp, tq);
    if (t > t_prev) pieces.push_back({t - t_prev, sp[i] - sq[j]});
    if (tp <= t) cp += wp[++i];
    if (tq <= t) cq += wq[++j];
    t_prev = t;
  }
  if (1.0 > t_prev) pieces.push_back({1.0 - t_prev, sp[np - 1] - sq[nq - 1]});
}

// min_c sum w_i |d_i + c| is attained at c = -(weighted median of d).
double min_shifted_l1(std::vector<QuantilePiece>& pieces) {
  std::sort(pieces.begin(), pieces.end(),
            [](const QuantilePiece& a, const QuantilePiece& b) {
              return a.diff < b.diff;
            });
  double total = 0.0;
  for (const auto& pc : pieces) total += pc.width;
  const double half = total / 2.0;
  double cum = 0.0, median = pieces.back().diff;
  for (const auto& pc : pieces) {
    cum += pc.width;
    if (cum >= half) {
      median = pc.diff;
      break;
    }
  }
  double value = 0.0;
  for (const auto& pc : pieces) value += pc.width * std::abs(pc.diff - median);
  return value;
}

}  // namespace

double emd(const EmpiricalDistribution& p, const EmpiricalDistribution& q) {
  return cdf_area(p, q, 0.0);
}

double emd_shifted(const EmpiricalDistribution& p,
                   const EmpiricalDistribution& q, double c) {
  return cdf_area(p, q, c);
}

EmpiricalDistribution scale_to_unit_variance(const EmpiricalDistribution& p) {
  if (p.degenerate()) return p;
  const double inv_sigma = 1.0 / std::sqrt(p.variance());
  // Scaling can round near-identical support points onto the same double;
  // merge their weights instead of emitting a non-increasing support.
  std::vector<double> support, weights;
  support.reserve(p.size());
  weights.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double x = p.support()[i] * inv_sigma;
    if (!support.empty() && x == support.back())
      weights.back() += p.weights()[i];
    else {
      support.push_back(x);
      weights.push_back(p.weights()[i]);
    }
  }
  return EmpiricalDistribution(std::move(support), std::move(weights));
}

double emd_star_prescaled(const EmpiricalDistribution& p,
                          const EmpiricalDistribution& q) {
  if (p.degenerate() && q.degenerate()) return 0.0;
  if (p == q) return 0.0;
  thread_local std::vector<QuantilePiece> pieces;
  quantile_pieces(p, q, pieces);
  return min_shifted_l1(pieces);
}

double emd_star(const EmpiricalDistribution& p,
                const EmpiricalDistribution& q) {
  if (p.degenerate() && q.degenerate()) return 0.0;
  if (p == q) return 0.0;
  return emd_star_prescaled(scale_to_unit_variance(p),
                            scale_to_unit_variance(q));
}

double emd_star_golden(const EmpiricalDistribution& p,
                       const EmpiricalDistribution& q) {
  if (p.degenerate() && q.degenerate()) return 0.0;
  if (p == q) return 0.0;
  const EmpiricalDistribution ps = scale_to_unit_variance(p);
  const EmpiricalDistribution qs = scale_to_unit_variance(q);

  double a = qs.min() - ps.max();
  double b = qs.max() - ps.min();
  // The objective is 1-Lipschitz in c, so an interval of width 1e-9 pins
  // the minimum value to within 1e-9.
  constexpr double kGolden = 0.6180339887498949;
  constexpr double kTol = 1e-9;
  constexpr int kMaxIter = 200;

  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = cdf_area(ps, qs, x1);
  double f2 = cdf_area(ps, qs, x2);
  for (int iter = 0; iter < kMaxIter && (b - a) > kTol; ++iter) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = cdf_area(ps, qs, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = cdf_area(ps, qs, x2);
    }
  }
  return cdf_area(ps, qs, (a + b) / 2.0);
}

}  // namespace netemd
