#include "dnfa/network.hpp"

#include <numeric>
#include <random>
#include <stdexcept>

namespace dnfa {

namespace {

YArea random_y_area(const NetworkConfig& config) {
  std::mt19937_64 rng(config.seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  YArea area;
  area.k = config.k;
  area.neurons.reserve(config.capacity);
  for (std::size_t i = 0; i < config.capacity; ++i) {
    Neuron n = Neuron::blank(config.z_dim, config.x_dim);
    for (double& w : n.top_down) w = uniform();
    for (double& w : n.bottom_up) w = uniform();
    area.neurons.push_back(std::move(n));
  }
  return area;
}

void validate(const NetworkConfig& c) {
  if (c.z_dim == 0 || c.x_dim == 0) throw std::invalid_argument("network dimensions must be positive");
  if (c.capacity == 0) throw std::invalid_argument("Y capacity must be at least 1");
  if (c.k == 0 || c.k > c.capacity) throw std::invalid_argument("k must lie in [1, capacity]");
  if (!(c.epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
}

BitPattern masked(const BitPattern& p, const std::optional<AttentionMask>& m) {
  return m ? apply_mask(p, *m) : p;
}

/// Projection input: the response itself for k = 1, rescaled to sum 1 otherwise.
Vector projection_input(const Vector& response) {
  const double total = std::accumulate(response.begin(), response.end(), 0.0);
  if (total == 1.0 || total == 0.0) return response;
  Vector out = response;
  for (double& v : out) v /= total;
  return out;
}

}  // namespace

Network::Network(const NetworkConfig& config)
    : Network(config, YArea{}, ProjectionArea{}, ProjectionArea{}) {}

Network::Network(const NetworkConfig& config, YArea y, ProjectionArea to_z, ProjectionArea to_x)
    : config_(config) {
  validate(config_);
  y_ = y.neurons.empty() ? random_y_area(config_) : std::move(y);
  to_z_ = to_z.weights.empty() ? ProjectionArea::make(config_.z_dim, config_.capacity) : std::move(to_z);
  to_x_ = to_x.weights.empty() ? ProjectionArea::make(config_.x_dim, config_.capacity) : std::move(to_x);
}

Network Network::restore(const NetworkConfig& config, YArea y, ProjectionArea to_z, ProjectionArea to_x,
                         std::uint64_t time, std::uint64_t exhausted_updates) {
  if (y.capacity() != config.capacity || y.k != config.k) throw std::invalid_argument("Y area does not match config");
  for (const auto& n : y.neurons) {
    if (n.top_down.size() != config.z_dim || n.bottom_up.size() != config.x_dim ||
        n.top_mask.size() != config.z_dim || n.bottom_mask.size() != config.x_dim ||
        n.top_beta.size() != config.z_dim || n.bottom_beta.size() != config.x_dim) {
      throw std::invalid_argument("neuron dimensions do not match config");
    }
    if (n.initialized != (n.age >= 1)) throw std::invalid_argument("neuron age inconsistent with initialization");
  }
  auto check_projection = [&](const ProjectionArea& a, std::size_t dim) {
    if (a.target_dim() != dim || a.ages.size() != dim || a.source_size != config.capacity) {
      throw std::invalid_argument("projection area does not match config");
    }
    for (const auto& row : a.weights) {
      if (row.size() != config.capacity) throw std::invalid_argument("projection row has wrong length");
    }
  };
  check_projection(to_z, config.z_dim);
  check_projection(to_x, config.x_dim);
  Network net(config, std::move(y), std::move(to_z), std::move(to_x));
  net.time_ = time;
  net.exhausted_updates_ = exhausted_updates;
  return net;
}

void Network::check_dims(const BitPattern& z, const BitPattern& x) const {
  if (z.dim() != config_.z_dim || x.dim() != config_.x_dim) {
    throw std::invalid_argument("pattern dimensions (" + std::to_string(z.dim()) + "," + std::to_string(x.dim()) +
                                ") do not match network (" + std::to_string(config_.z_dim) + "," +
                                std::to_string(config_.x_dim) + ")");
  }
}

StepOutput Network::evaluate(const BitPattern& z, const BitPattern& x, const std::optional<AttentionMask>& z_mask,
                             const std::optional<AttentionMask>& x_mask) const {
  check_dims(z, x);
  const BitPattern zm = masked(z, z_mask);
  const BitPattern xm = masked(x, x_mask);
  Competition c = compete(y_, zm.values(), xm.values());

  StepOutput out;
  out.winners = std::move(c.winners);
  out.y_response = std::move(c.response);
  out.pre_responses = std::move(c.pre_responses);
  out.best_pre_response = c.best_score;
  auto zp = predict_from(to_z_, projection_input(out.y_response));
  auto xp = predict_from(to_x_, projection_input(out.y_response));
  out.z_pred = std::move(zp.pattern);
  out.z_graded = std::move(zp.graded);
  out.x_pred = std::move(xp.pattern);
  out.x_graded = std::move(xp.graded);
  return out;
}

StepOutput Network::step(const StepInput& input) {
  check_dims(input.z, input.x);
  if (input.z_next && input.z_next->dim() != config_.z_dim) throw std::invalid_argument("z supervision dimension mismatch");
  if (input.x_next && input.x_next->dim() != config_.x_dim) throw std::invalid_argument("x supervision dimension mismatch");
  if (!(input.learning_rate_gain > 0.0)) throw std::invalid_argument("learning-rate gain must be positive");

  const BitPattern z = masked(input.z, input.z_mask);
  const BitPattern x = masked(input.x, input.x_mask);

  // Phase A: Y area. Work on a copy and commit at the end (N <- N').
  YArea next_y = y_;
  Competition c = compete(next_y, z.values(), x.values());
  StepOutput out;
  out.pre_responses = c.pre_responses;
  out.best_pre_response = c.best_score;

  const bool novel = !c.best || c.best_score < 2.0 - config_.epsilon;
  bool updated_best_for_exhaustion = false;
  if (novel && input.z_supervised()) {
    if (auto slot = recruit(next_y, z.values(), x.values())) {
      out.recruited = true;
      c.winners = {*slot};
      c.response.assign(next_y.capacity(), 0.0);
      c.response[*slot] = 1.0;
    } else {
      out.pool_exhausted = true;
      updated_best_for_exhaustion = true;
    }
  }
  if (!out.recruited) {
    for (std::size_t j : c.winners) {
      Neuron& n = next_y.neurons[j];
#ifndef DNFA_NO_PLASTICITY
      if (config_.maintenance.enabled) maintain_on_firing(n, z.values(), x.values(), config_.maintenance);
#endif
      hebbian_update(n, z.values(), x.values(), c.response[j], input.learning_rate_gain);
    }
  }
  out.winners = c.winners;
  out.y_response = c.response;

  // Phase B: Z and X predict from the new response, then supervision
  // overrides and the projections learn.
  const Vector p = projection_input(out.y_response);
  auto zp = predict_from(to_z_, p);
  auto xp = predict_from(to_x_, p);
  ProjectionArea next_z = to_z_;
  ProjectionArea next_x = to_x_;
  if (!out.winners.empty()) {
    if (input.z_next) update_projection(next_z, p, *input.z_next);
    if (input.x_next) update_projection(next_x, p, *input.x_next);
  }

  y_ = std::move(next_y);
  to_z_ = std::move(next_z);
  to_x_ = std::move(next_x);
  time_ += 2;
  if (updated_best_for_exhaustion) ++exhausted_updates_;

  out.z_pred = std::move(zp.pattern);
  out.z_graded = std::move(zp.graded);
  out.x_pred = std::move(xp.pattern);
  out.x_graded = std::move(xp.graded);
  return out;
}

StepOutput network_step(Network& net, const StepInput& input) { return net.step(input); }

}  // namespace dnfa
