#pragma once

// Entropy weight method. Indicators whose scores are spread unevenly across
// the evaluated items (low entropy) receive larger weight.

#include <optional>
#include <span>
#include <vector>

#include "esv/model.hpp"

namespace esv {

/// -sum p_i ln p_i with 0 ln 0 = 0. Throws NotNormalized if the probabilities
/// do not sum to 1 within 1e-6.
double system_entropy(std::span<const double> probs);

/// p_ik = r_ik / sum_i r_ik. Throws AllZeroColumn(col).
EvaluationMatrix column_shares(const EvaluationMatrix& r);

/// s_k = -(1/ln M) sum_i p_ik ln p_ik, clamped to [0, 1] against rounding.
/// Throws SingleRow when M = 1.
std::vector<double> index_entropies(const EvaluationMatrix& p);

struct EntropyWeightOptions {
  /// Return uniform weights instead of throwing AllMaxEntropy.
  bool uniform_fallback = false;
};

/// w_k = (1 - s_k) / sum (1 - s_k).
WeightVector entropy_weights(std::span<const double> s, EntropyWeightOptions opts = {});

/// Combines entropy weights with expert priors gamma_k:
/// d_k = gamma_k w_k / sum_k gamma_k w_k (sum over indicators).
WeightVector combine_with_prior(const WeightVector& w, std::span<const double> gamma);

struct EntropyReport {
  EvaluationMatrix p;
  std::vector<double> s;
  WeightVector w;
  std::optional<WeightVector> combined;

  /// combined if present, else w.
  const WeightVector& effective() const { return combined ? *combined : w; }

  bool operator==(const EntropyReport&) const = default;
};

EntropyReport entropy_report(const EvaluationMatrix& r,
                             std::optional<std::vector<double>> gamma = std::nullopt,
                             EntropyWeightOptions opts = {});

}  // namespace esv
