#pragma once

// Independent reference computations used as test oracles. Nothing here calls
// into the library paths it is used to check.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace esv::oracle {

/// Straight-line entropy weight chain on a row-major M x N matrix:
/// column shares, index entropies with 1/ln M, normalized 1 - s_k.
inline std::vector<double> entropy_weights(const std::vector<std::vector<double>>& r) {
  const std::size_t m = r.size();
  const std::size_t n = r[0].size();
  std::vector<double> d(n);
  double dsum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double col = 0.0;
    for (std::size_t i = 0; i < m; ++i) col += r[i][k];
    double h = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double p = r[i][k] / col;
      if (p > 0) h += p * std::log(p);
    }
    const double s = -h / std::log(static_cast<double>(m));
    d[k] = 1.0 - s;
    dsum += d[k];
  }
  for (double& v : d) v /= dsum;
  return d;
}

/// Central finite difference of f at x along each coordinate.
inline std::vector<double> central_difference(const std::function<double(const std::vector<double>&)>& f,
                                              std::vector<double> x, double step) {
  std::vector<double> g(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double saved = x[k];
    x[k] = saved + step;
    const double up = f(x);
    x[k] = saved - step;
    const double down = f(x);
    x[k] = saved;
    g[k] = (up - down) / (2.0 * step);
  }
  return g;
}

inline double relative_error(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-8});
  return std::abs(a - b) / scale;
}

/// Uniform doubles in [lo, hi) from a seeded engine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace esv::oracle
