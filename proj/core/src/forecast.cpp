#include "esv/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace esv {

namespace {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Portable uniform draw in [0, 1) from the raw 64-bit engine output.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct StepCache {
  double x = 0.0;
  std::vector<double> h_prev, c_prev;
  GateActivations gates;
  std::vector<double> tanh_c;
};

}  // namespace

LstmCell LstmCell::zeros(std::size_t input_size, std::size_t hidden_size) {
  LstmCell cell;
  cell.input_size = input_size;
  cell.hidden_size = hidden_size;
  cell.w_x.assign(4 * hidden_size * input_size, 0.0);
  cell.w_h.assign(4 * hidden_size * hidden_size, 0.0);
  cell.b.assign(4 * hidden_size, 0.0);
  return cell;
}

LstmCell LstmCell::random(std::size_t input_size, std::size_t hidden_size, std::uint64_t seed,
                          double scale, double forget_bias) {
  LstmCell cell = zeros(input_size, hidden_size);
  std::mt19937_64 rng(seed);
  for (double& w : cell.w_x) w = scale * (2.0 * unit_draw(rng) - 1.0);
  for (double& w : cell.w_h) w = scale * (2.0 * unit_draw(rng) - 1.0);
  for (std::size_t k = 0; k < hidden_size; ++k) cell.b[k] = forget_bias;
  return cell;
}

void LstmCell::validate() const {
  if (input_size == 0 || hidden_size == 0)
    throw Error(ErrorCode::ShapeMismatch, "LSTM sizes must be positive");
  if (w_x.size() != 4 * hidden_size * input_size || w_h.size() != 4 * hidden_size * hidden_size ||
      b.size() != 4 * hidden_size)
    throw Error(ErrorCode::ShapeMismatch, "LSTM parameter shapes do not match its sizes");
  for (const auto* v : {&w_x, &w_h, &b})
    for (double p : *v)
      if (!std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "LSTM parameter is not finite");
}

LstmState lstm_step(std::span<const double> x, const LstmState& state, const LstmCell& cell,
                    GateActivations* gates) {
  const std::size_t hs = cell.hidden_size;
  const std::size_t d = cell.input_size;
  if (x.size() != d) throw Error(ErrorCode::ShapeMismatch, "input size does not match the cell");
  if (state.h.size() != hs || state.c.size() != hs)
    throw Error(ErrorCode::ShapeMismatch, "state size does not match the cell");
  if (cell.w_x.size() != 4 * hs * d || cell.w_h.size() != 4 * hs * hs || cell.b.size() != 4 * hs)
    throw Error(ErrorCode::ShapeMismatch, "LSTM parameter shapes do not match its sizes");

  std::vector<double> pre(cell.b);
  for (std::size_t r = 0; r < 4 * hs; ++r) {
    for (std::size_t k = 0; k < d; ++k) pre[r] += cell.w_x[r * d + k] * x[k];
    for (std::size_t k = 0; k < hs; ++k) pre[r] += cell.w_h[r * hs + k] * state.h[k];
  }

  GateActivations local;
  GateActivations& g = gates != nullptr ? *gates : local;
  g.f.resize(hs);
  g.i.resize(hs);
  g.o.resize(hs);
  g.candidate.resize(hs);
  LstmState next{std::vector<double>(hs), std::vector<double>(hs)};
  for (std::size_t k = 0; k < hs; ++k) {
    g.f[k] = logistic(pre[k]);
    g.i[k] = logistic(pre[hs + k]);
    g.o[k] = logistic(pre[2 * hs + k]);
    g.candidate[k] = std::tanh(pre[3 * hs + k]);
    next.c[k] = g.f[k] * state.c[k] + g.i[k] * g.candidate[k];
    next.h[k] = g.o[k] * std::tanh(next.c[k]);
  }
  return next;
}

// ---------------------------------------------------------------------------
// LstmModel

LstmModel LstmModel::random(std::size_t hidden_size, std::uint64_t seed, double scale) {
  LstmModel m;
  m.cell = LstmCell::random(1, hidden_size, seed, scale);
  // head draws continue from a derived stream so cell init is independent of it
  std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ULL);
  m.w_out.resize(hidden_size);
  for (double& w : m.w_out) w = scale * (2.0 * unit_draw(rng) - 1.0);
  m.b_out = 0.0;
  return m;
}

std::size_t LstmModel::parameter_count() const {
  return cell.w_x.size() + cell.w_h.size() + cell.b.size() + w_out.size() + 1;
}

std::vector<double> LstmModel::flatten() const {
  std::vector<double> p;
  p.reserve(parameter_count());
  p.insert(p.end(), cell.w_x.begin(), cell.w_x.end());
  p.insert(p.end(), cell.w_h.begin(), cell.w_h.end());
  p.insert(p.end(), cell.b.begin(), cell.b.end());
  p.insert(p.end(), w_out.begin(), w_out.end());
  p.push_back(b_out);
  return p;
}

void LstmModel::assign(std::span<const double> p) {
  if (p.size() != parameter_count())
    throw Error(ErrorCode::ShapeMismatch, "parameter vector has the wrong length");
  auto it = p.begin();
  for (auto* v : {&cell.w_x, &cell.w_h, &cell.b, &w_out})
    for (double& x : *v) x = *it++;
  b_out = *it;
}

double predict(const LstmModel& model, std::span<const double> window) {
  LstmState s = LstmState::zeros(model.cell.hidden_size);
  for (double x : window) s = lstm_step(std::span<const double>(&x, 1), s, model.cell);
  double y = model.b_out;
  for (std::size_t k = 0; k < s.h.size(); ++k) y += model.w_out[k] * s.h[k];
  return y;
}

double window_loss(const LstmModel& model, std::span<const double> window, double target,
                   std::vector<double>* grad) {
  const LstmCell& cell = model.cell;
  if (cell.input_size != 1) throw Error(ErrorCode::ShapeMismatch, "series model needs input size 1");
  if (window.empty()) throw Error(ErrorCode::InsufficientData, "empty window");
  if (model.w_out.size() != cell.hidden_size)
    throw Error(ErrorCode::ShapeMismatch, "output head does not match the hidden size");
  const std::size_t hs = cell.hidden_size;

  std::vector<StepCache> caches(window.size());
  LstmState s = LstmState::zeros(hs);
  for (std::size_t t = 0; t < window.size(); ++t) {
    StepCache& sc = caches[t];
    sc.x = window[t];
    sc.h_prev = s.h;
    sc.c_prev = s.c;
    s = lstm_step(std::span<const double>(&sc.x, 1), s, cell, &sc.gates);
    sc.tanh_c.resize(hs);
    for (std::size_t k = 0; k < hs; ++k) sc.tanh_c[k] = std::tanh(s.c[k]);
  }
  double y = model.b_out;
  for (std::size_t k = 0; k < hs; ++k) y += model.w_out[k] * s.h[k];
  const double err = y - target;
  const double loss = err * err;
  if (grad == nullptr) return loss;

  // gradient buffers laid out as flatten()
  const std::size_t off_wh = cell.w_x.size();
  const std::size_t off_b = off_wh + cell.w_h.size();
  const std::size_t off_out = off_b + cell.b.size();
  grad->assign(model.parameter_count(), 0.0);
  std::vector<double>& g = *grad;

  const double dy = 2.0 * err;
  std::vector<double> dh(hs), dc(hs, 0.0), dpre(4 * hs);
  for (std::size_t k = 0; k < hs; ++k) {
    g[off_out + k] = dy * s.h[k];
    dh[k] = dy * model.w_out[k];
  }
  g[off_out + hs] = dy;

  for (std::size_t t = window.size(); t-- > 0;) {
    const StepCache& sc = caches[t];
    const GateActivations& a = sc.gates;
    for (std::size_t k = 0; k < hs; ++k) {
      const double tc = sc.tanh_c[k];
      dc[k] += dh[k] * a.o[k] * (1.0 - tc * tc);
      dpre[k] = dc[k] * sc.c_prev[k] * a.f[k] * (1.0 - a.f[k]);
      dpre[hs + k] = dc[k] * a.candidate[k] * a.i[k] * (1.0 - a.i[k]);
      dpre[2 * hs + k] = dh[k] * tc * a.o[k] * (1.0 - a.o[k]);
      dpre[3 * hs + k] = dc[k] * a.i[k] * (1.0 - a.candidate[k] * a.candidate[k]);
    }
    for (std::size_t r = 0; r < 4 * hs; ++r) {
      g[r] += dpre[r] * sc.x;
      for (std::size_t k = 0; k < hs; ++k) g[off_wh + r * hs + k] += dpre[r] * sc.h_prev[k];
      g[off_b + r] += dpre[r];
    }
    for (std::size_t k = 0; k < hs; ++k) {
      double acc = 0.0;
      for (std::size_t r = 0; r < 4 * hs; ++r) acc += cell.w_h[r * hs + k] * dpre[r];
      dh[k] = acc;
      dc[k] *= a.f[k];
    }
  }
  return loss;
}

// ---------------------------------------------------------------------------
// SeriesDataset

SeriesDataset::SeriesDataset(std::vector<SeriesPoint> points,
                             std::optional<std::pair<double, double>> bounds)
    : points_(std::move(points)) {
  if (points_.empty()) throw Error(ErrorCode::InsufficientData, "series is empty");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].value))
      throw Error(ErrorCode::InvalidArgument, "series value is not finite");
    if (i > 0 && points_[i].year <= points_[i - 1].year)
      throw Error(ErrorCode::InvalidArgument, "series years must be strictly increasing");
  }
  if (bounds) {
    min_ = bounds->first;
    max_ = bounds->second;
  } else {
    min_ = max_ = points_.front().value;
    for (const auto& p : points_) {
      min_ = std::min(min_, p.value);
      max_ = std::max(max_, p.value);
    }
  }
  if (!std::isfinite(min_) || !std::isfinite(max_) || !(max_ > min_))
    throw Error(ErrorCode::DegenerateBounds,
                "normalization bounds are degenerate (max <= min); supply explicit bounds");
}

std::vector<double> SeriesDataset::normalized_values() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(normalize(p.value));
  return out;
}

// ---------------------------------------------------------------------------
// Training

double training_loss(const LstmModel& model, const SeriesDataset& data, std::size_t window) {
  const std::vector<double> u = data.normalized_values();
  if (window == 0 || u.size() <= window)
    throw Error(ErrorCode::InsufficientData, "series needs more points than the window");
  const std::size_t n = u.size() - window;
  double total = 0.0;
  for (std::size_t s = 0; s < n; ++s)
    total += window_loss(model, std::span<const double>(u).subspan(s, window), u[s + window]);
  return total / static_cast<double>(n);
}

TrainedForecaster train(const SeriesDataset& data, const TrainConfig& config) {
  if (config.window == 0) throw Error(ErrorCode::InvalidArgument, "window must be >= 1");
  if (data.size() <= config.window)
    throw Error(ErrorCode::InsufficientData, "InsufficientData: series has " +
                                                 std::to_string(data.size()) +
                                                 " points, window is " + std::to_string(config.window));
  if (config.hidden_size == 0) throw Error(ErrorCode::InvalidArgument, "hidden size must be >= 1");
  if (!(config.learning_rate > 0.0)) throw Error(ErrorCode::InvalidArgument, "learning rate must be > 0");

  TrainedForecaster out;
  out.window = config.window;
  out.model = LstmModel::random(config.hidden_size, config.seed, config.init_scale);
  out.initial_loss = training_loss(out.model, data, config.window);

  const std::vector<double> u = data.normalized_values();
  const std::size_t n = u.size() - config.window;
  const double scale = config.learning_rate / static_cast<double>(n);
  std::vector<double> params = out.model.flatten();
  std::vector<double> total(params.size()), g;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::fill(total.begin(), total.end(), 0.0);
    for (std::size_t s = 0; s < n; ++s) {
      window_loss(out.model, std::span<const double>(u).subspan(s, config.window), u[s + config.window], &g);
      for (std::size_t k = 0; k < g.size(); ++k) total[k] += g[k];
    }
    for (std::size_t k = 0; k < params.size(); ++k) params[k] -= scale * total[k];
    out.model.assign(params);
  }
  out.final_loss = training_loss(out.model, data, config.window);
  return out;
}

std::vector<SeriesPoint> forecast(const TrainedForecaster& trained, const SeriesDataset& data,
                                  std::size_t horizon) {
  std::vector<SeriesPoint> out;
  if (horizon == 0) return out;
  if (data.size() < trained.window)
    throw Error(ErrorCode::InsufficientData, "series is shorter than the model window");
  const auto& pts = data.points();
  const int step = pts.size() >= 2 ? pts.back().year - pts[pts.size() - 2].year : 1;
  std::vector<double> history = data.normalized_values();
  int year = pts.back().year;
  for (std::size_t h = 0; h < horizon; ++h) {
    const double next = predict(trained.model,
                                std::span<const double>(history).last(trained.window));
    history.push_back(next);
    year += step;
    out.push_back({year, data.denormalize(next)});
  }
  return out;
}

}  // namespace esv
