#pragma once

// Dynamic re-evaluation of a valuation time series with a single-layer LSTM
// and a linear output head, trained by backpropagation through time over
// sliding windows with plain gradient descent on mean squared error.
//
// Gate equations (logistic = 1 / (1 + e^-x)):
//   f  = logistic(Wf x + Uf h + bf)      forget gate
//   i  = logistic(Wi x + Ui h + bi)      input gate
//   o  = logistic(Wo x + Uo h + bo)      output gate
//   c~ = tanh(Wc x + Uc h + bc)          candidate
//   c' = f * c + i * c~
//   h' = o * tanh(c')

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "esv/error.hpp"

namespace esv {

/// Gate blocks are stacked in the order forget, input, output, candidate;
/// each block has hidden_size rows.
struct LstmCell {
  std::size_t input_size = 0;
  std::size_t hidden_size = 0;
  std::vector<double> w_x;  // (4H x D) row-major
  std::vector<double> w_h;  // (4H x H) row-major
  std::vector<double> b;    // 4H

  static LstmCell zeros(std::size_t input_size, std::size_t hidden_size);
  /// Weights uniform in [-scale, scale]; biases zero apart from forget_bias.
  static LstmCell random(std::size_t input_size, std::size_t hidden_size, std::uint64_t seed,
                         double scale, double forget_bias = 1.0);

  /// Throws ShapeMismatch / InvalidArgument.
  void validate() const;

  bool operator==(const LstmCell&) const = default;
};

struct LstmState {
  std::vector<double> h;
  std::vector<double> c;

  static LstmState zeros(std::size_t hidden_size) {
    return {std::vector<double>(hidden_size, 0.0), std::vector<double>(hidden_size, 0.0)};
  }

  bool operator==(const LstmState&) const = default;
};

struct GateActivations {
  std::vector<double> f, i, o, candidate;
};

/// One recurrent step. Throws ShapeMismatch. When `gates` is non-null the
/// activations are written there.
LstmState lstm_step(std::span<const double> x, const LstmState& state, const LstmCell& cell,
                    GateActivations* gates = nullptr);

/// LSTM over a scalar series plus a linear read-out of the final hidden state.
struct LstmModel {
  LstmCell cell;
  std::vector<double> w_out;  // H
  double b_out = 0.0;

  static LstmModel random(std::size_t hidden_size, std::uint64_t seed, double scale);

  std::size_t parameter_count() const;
  std::vector<double> flatten() const;
  void assign(std::span<const double> params);

  bool operator==(const LstmModel&) const = default;
};

/// Runs the window through the cell from a zero state and returns the read-out.
double predict(const LstmModel& model, std::span<const double> window);

/// Squared error (predict(window) - target)^2. When `grad` is non-null it
/// receives dLoss/dparams in flatten() order.
double window_loss(const LstmModel& model, std::span<const double> window, double target,
                   std::vector<double>* grad = nullptr);

struct SeriesPoint {
  int year;
  double value;

  bool operator==(const SeriesPoint&) const = default;
};

class SeriesDataset {
 public:
  /// Years must be strictly increasing. Bounds default to the data range;
  /// throws DegenerateBounds if max <= min (e.g. a constant series without
  /// explicit bounds).
  explicit SeriesDataset(std::vector<SeriesPoint> points,
                         std::optional<std::pair<double, double>> bounds = std::nullopt);

  const std::vector<SeriesPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double min() const { return min_; }
  double max() const { return max_; }

  double normalize(double v) const { return (v - min_) / (max_ - min_); }
  double denormalize(double u) const { return min_ + u * (max_ - min_); }
  std::vector<double> normalized_values() const;

 private:
  std::vector<SeriesPoint> points_;
  double min_ = 0.0;
  double max_ = 1.0;
};

struct TrainConfig {
  std::size_t window = 4;
  std::size_t epochs = 2000;
  double learning_rate = 0.1;
  std::uint64_t seed = 42;
  std::size_t hidden_size = 6;
  double init_scale = 0.3;
};

struct TrainedForecaster {
  LstmModel model;
  std::size_t window = 0;
  double initial_loss = 0.0;  // mean window loss before the first update
  double final_loss = 0.0;    // mean window loss after the last update
};

/// Throws InsufficientData when the series has no more points than the window.
TrainedForecaster train(const SeriesDataset& data, const TrainConfig& config = {});

/// Mean squared error of the model over all training windows of the series.
double training_loss(const LstmModel& model, const SeriesDataset& data, std::size_t window);

/// Autoregressive rollout of `horizon` steps past the last point, in original
/// units. Years advance by the spacing of the last two points (1 if only one).
std::vector<SeriesPoint> forecast(const TrainedForecaster& trained, const SeriesDataset& data,
                                  std::size_t horizon);

}  // namespace esv
