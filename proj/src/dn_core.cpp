#include "dnfa/dn_core.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dnfa {

Neuron Neuron::blank(std::size_t z_dim, std::size_t x_dim) {
  Neuron n;
  n.top_down.assign(z_dim, 0.0);
  n.bottom_up.assign(x_dim, 0.0);
  n.top_mask.assign(z_dim, true);
  n.bottom_mask.assign(x_dim, true);
  n.top_beta.assign(z_dim, 0.0);
  n.bottom_beta.assign(x_dim, 0.0);
  return n;
}

double learning_weight(std::uint64_t age, double gain) {
  if (age == 0) throw std::invalid_argument("learning weight undefined for age 0");
  if (!(gain > 0.0)) throw std::invalid_argument("learning-rate gain must be positive");
  return std::min(1.0, gain / static_cast<double>(age));
}

Vector live_direction(std::span<const double> input, const std::vector<bool>& mask) {
  if (input.size() != mask.size()) throw std::invalid_argument("synapse mask dimension mismatch");
  Vector live(input.begin(), input.end());
  for (std::size_t i = 0; i < live.size(); ++i) {
    if (!mask[i]) live[i] = 0.0;
  }
  return normalize(live);
}

double pre_response(std::span<const double> z, std::span<const double> x, const Neuron& neuron) {
  if (z.size() != neuron.top_down.size() || x.size() != neuron.bottom_up.size()) {
    throw std::invalid_argument("pre_response: input dimensions do not match neuron");
  }
  return dot(live_direction(neuron.top_down, neuron.top_mask), live_direction(z, neuron.top_mask)) +
         dot(live_direction(neuron.bottom_up, neuron.bottom_mask), live_direction(x, neuron.bottom_mask));
}

std::size_t YArea::initialized_count() const {
  return static_cast<std::size_t>(
      std::count_if(neurons.begin(), neurons.end(), [](const Neuron& n) { return n.initialized; }));
}

std::optional<std::size_t> YArea::first_free() const {
  for (std::size_t i = 0; i < neurons.size(); ++i) {
    if (!neurons[i].initialized) return i;
  }
  return std::nullopt;
}

Competition compete(const YArea& area, std::span<const double> z, std::span<const double> x) {
  if (area.k == 0) throw std::invalid_argument("top-k requires k >= 1");
  Competition c;
  const std::size_t n = area.capacity();
  c.response.assign(n, 0.0);
  c.pre_responses.assign(n, 0.0);

  std::vector<std::size_t> ranked;
  for (std::size_t i = 0; i < n; ++i) {
    if (!area.neurons[i].initialized) continue;
    c.pre_responses[i] = pre_response(z, x, area.neurons[i]);
    ranked.push_back(i);
  }
  if (ranked.empty()) return c;

  // Selection by repeated tie-tolerant argmax so equal scores rank by index.
  std::vector<std::size_t> order;
  std::vector<bool> taken(n, false);
  const std::size_t wanted = std::min(area.k + 1, ranked.size());
  while (order.size() < wanted) {
    double top = -3.0;
    for (std::size_t i : ranked) {
      if (!taken[i]) top = std::max(top, c.pre_responses[i]);
    }
    for (std::size_t i : ranked) {
      if (!taken[i] && c.pre_responses[i] >= top - kTieTolerance) {
        order.push_back(i);
        taken[i] = true;
        break;
      }
    }
  }

  c.best = order.front();
  c.best_score = c.pre_responses[order.front()];

  if (area.k == 1) {
    c.winners.push_back(order.front());
    c.response[order.front()] = 1.0;
    return c;
  }

  const std::size_t k = std::min(area.k, order.size());
  const double floor = order.size() > k ? c.pre_responses[order[k]] : 0.0;
  const double span = c.best_score - floor;
  if (!(span > 0.0)) {
    c.winners.push_back(order.front());
    c.response[order.front()] = 1.0;
    return c;
  }
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t i = order[r];
    const double value = r == 0 ? 1.0 : (c.pre_responses[i] - floor) / span;
    if (value > 0.0) {
      c.winners.push_back(i);
      c.response[i] = value;
    }
  }
  return c;
}

std::optional<std::size_t> recruit(YArea& area, std::span<const double> z, std::span<const double> x) {
  auto slot = area.first_free();
  if (!slot) return std::nullopt;
  Neuron& n = area.neurons[*slot];
  if (z.size() != n.top_down.size() || x.size() != n.bottom_up.size()) {
    throw std::invalid_argument("recruit: input dimensions do not match neuron");
  }
  std::fill(n.top_mask.begin(), n.top_mask.end(), true);
  std::fill(n.bottom_mask.begin(), n.bottom_mask.end(), true);
  std::fill(n.top_beta.begin(), n.top_beta.end(), 0.0);
  std::fill(n.bottom_beta.begin(), n.bottom_beta.end(), 0.0);
  // First firing: w1(1) = 0, so the random initial weight is replaced outright.
  n.top_down = normalize(z);
  n.bottom_up = normalize(x);
  n.age = 1;
  n.initialized = true;
  return slot;
}

namespace {

void average_into(Vector& v, const Vector& direction, const std::vector<bool>& mask, double response, double w2) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (mask[i]) v[i] += w2 * (response * direction[i] - v[i]);
  }
}

}  // namespace

void hebbian_update(Neuron& neuron, std::span<const double> z, std::span<const double> x, double response,
                    double gain) {
  if (z.size() != neuron.top_down.size() || x.size() != neuron.bottom_up.size()) {
    throw std::invalid_argument("hebbian_update: input dimensions do not match neuron");
  }
  ++neuron.age;
  neuron.initialized = true;
  const double w2 = learning_weight(neuron.age, gain);
  average_into(neuron.top_down, live_direction(z, neuron.top_mask), neuron.top_mask, response, w2);
  average_into(neuron.bottom_up, live_direction(x, neuron.bottom_mask), neuron.bottom_mask, response, w2);
}

ProjectionArea ProjectionArea::make(std::size_t target_dim, std::size_t source_size) {
  ProjectionArea a;
  a.weights.assign(target_dim, Vector(source_size, 0.0));
  a.ages.assign(target_dim, 0);
  a.source_size = source_size;
  return a;
}

void update_projection(ProjectionArea& area, std::span<const double> y, const BitPattern& target) {
  if (y.size() != area.source_size) throw std::invalid_argument("update_projection: response size mismatch");
  if (target.dim() != area.target_dim()) throw std::invalid_argument("update_projection: target dimension mismatch");
  for (std::size_t i = 0; i < area.target_dim(); ++i) {
    if (target[i] <= 0.5) continue;
    const double w2 = learning_weight(++area.ages[i]);
    Vector& row = area.weights[i];
    for (std::size_t j = 0; j < row.size(); ++j) row[j] += w2 * (y[j] - row[j]);
  }
}

Prediction predict_from(const ProjectionArea& area, std::span<const double> y) {
  if (y.size() != area.source_size) throw std::invalid_argument("predict_from: response size mismatch");
  Vector graded(area.target_dim(), 0.0);
  std::vector<double> bits(area.target_dim(), 0.0);
  for (std::size_t i = 0; i < area.target_dim(); ++i) {
    if (area.ages[i] == 0) continue;
    graded[i] = dot(area.weights[i], y);
    if (graded[i] > 0.0) bits[i] = 1.0;
  }
  return Prediction{BitPattern(std::move(bits)), std::move(graded)};
}

}  // namespace dnfa
