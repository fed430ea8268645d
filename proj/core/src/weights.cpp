#include "esv/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace esv {

namespace {

double plogp(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

constexpr double kMaxEntropySlack = 1e-12;

}  // namespace

double system_entropy(std::span<const double> probs) {
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0)
      throw Error(ErrorCode::NotNormalized, "probabilities must be finite and nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    std::ostringstream os;
    os.precision(17);
    os << "probabilities sum to " << sum;
    throw Error(ErrorCode::NotNormalized, os.str());
  }
  double s = 0.0;
  for (double p : probs) s -= plogp(p);
  return s;
}

EvaluationMatrix column_shares(const EvaluationMatrix& r) {
  EvaluationMatrix p = r;
  for (std::size_t k = 0; k < r.cols(); ++k) {
    double total = 0.0;
    for (std::size_t i = 0; i < r.rows(); ++i) total += r(i, k);
    if (!(total > 0.0))
      throw Error(ErrorCode::AllZeroColumn, "AllZeroColumn(" + std::to_string(k) + ")");
    for (std::size_t i = 0; i < r.rows(); ++i) p(i, k) = r(i, k) / total;
  }
  return p;
}

std::vector<double> index_entropies(const EvaluationMatrix& p) {
  const std::size_t m = p.rows();
  if (m < 2) throw Error(ErrorCode::SingleRow, "entropy normalization 1/ln M is undefined for M = 1");
  const double g = 1.0 / std::log(static_cast<double>(m));
  std::vector<double> s(p.cols());
  for (std::size_t k = 0; k < p.cols(); ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += plogp(p(i, k));
    s[k] = std::clamp(-g * acc, 0.0, 1.0);
  }
  return s;
}

WeightVector entropy_weights(std::span<const double> s, EntropyWeightOptions opts) {
  if (s.empty()) throw Error(ErrorCode::InvalidArgument, "no index entropies");
  std::vector<double> d(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!(s[k] >= 0.0 && s[k] <= 1.0))
      throw Error(ErrorCode::InvalidArgument, "index entropy " + std::to_string(k) + " outside [0,1]");
    d[k] = 1.0 - s[k];
  }
  const double total = std::accumulate(d.begin(), d.end(), 0.0);
  // rounding leaves ~1e-16 residue on columns that are uniform in exact arithmetic
  if (!(total > kMaxEntropySlack * static_cast<double>(s.size()))) {
    if (opts.uniform_fallback) return WeightVector::uniform(s.size());
    throw Error(ErrorCode::AllMaxEntropy,
                "every indicator has maximal entropy; weights are undefined "
                "(enable the uniform fallback to use equal weights)");
  }
  for (double& v : d) v /= total;
  return WeightVector::from_normalized(std::move(d));
}

WeightVector combine_with_prior(const WeightVector& w, std::span<const double> gamma) {
  if (gamma.size() != w.size())
    throw Error(ErrorCode::DimensionMismatch, "prior has " + std::to_string(gamma.size()) +
                                                  " entries, weights have " + std::to_string(w.size()));
  std::vector<double> out(w.size());
  bool any = false;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (!std::isfinite(gamma[k]) || gamma[k] < 0.0)
      throw Error(ErrorCode::InvalidArgument, "prior weight " + std::to_string(k) + " is negative");
    any = any || gamma[k] > 0.0;
    out[k] = gamma[k] * w[k];
  }
  if (!any) throw Error(ErrorCode::InvalidArgument, "prior weights are all zero");
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  if (!(total > 0.0))
    throw Error(ErrorCode::ZeroOverlap, "prior and entropy weights have no common support");
  for (double& v : out) v /= total;
  return WeightVector::from_normalized(std::move(out));
}

EntropyReport entropy_report(const EvaluationMatrix& r, std::optional<std::vector<double>> gamma,
                             EntropyWeightOptions opts) {
  EntropyReport rep{column_shares(r), {}, {}, std::nullopt};
  rep.s = index_entropies(rep.p);
  rep.w = entropy_weights(rep.s, opts);
  if (gamma) rep.combined = combine_with_prior(rep.w, *gamma);
  return rep;
}

}  // namespace esv
