#pragma once

// Building blocks of the Developmental Network: Y neurons with two-part
// weights, top-k competition, recruitment, amnesic Hebbian averaging and the
// frequency-weighted Y->Z / Y->X projections.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dnfa/pattern_codec.hpp"
#include "dnfa/vector_math.hpp"

namespace dnfa {

/// A Y neuron: top-down weight over Z, bottom-up weight over X.
struct Neuron {
  Vector top_down;
  Vector bottom_up;
  std::uint64_t age = 0;  // firing count; >= 1 iff initialized
  bool initialized = false;
  std::vector<bool> top_mask;  // false = trimmed synapse
  std::vector<bool> bottom_mask;
  Vector top_beta;  // per-synapse deviation estimates, see plasticity.hpp
  Vector bottom_beta;

  static Neuron blank(std::size_t z_dim, std::size_t x_dim);

  bool operator==(const Neuron&) const = default;
};

/// w2(n) = gain / n, clamped to 1. w1 = 1 - w2.
double learning_weight(std::uint64_t age, double gain = 1.0);

/// Unit direction of `input` restricted to the live components of `mask`.
Vector live_direction(std::span<const double> input, const std::vector<bool>& mask);

/// ṫ·ż + ḃ·ẋ with trimmed synapses removed from both sides before normalizing.
double pre_response(std::span<const double> z, std::span<const double> x, const Neuron& neuron);

struct YArea {
  std::vector<Neuron> neurons;
  std::size_t k = 1;

  std::size_t capacity() const { return neurons.size(); }
  std::size_t initialized_count() const;
  std::optional<std::size_t> first_free() const;

  bool operator==(const YArea&) const = default;
};

struct Competition {
  std::vector<std::size_t> winners;  // best first
  Vector response;                   // one entry per neuron, 0 for non-winners
  Vector pre_responses;              // 0 for uninitialized neurons
  std::optional<std::size_t> best;
  double best_score = 0.0;
};

/// Top-k competition among initialized neurons. Ties go to the lowest index.
/// For k > 1 responses are rescaled linearly so the top winner gets 1 and the
/// (k+1)-th score (or 0 if there is none) would get 0.
Competition compete(const YArea& area, std::span<const double> z, std::span<const double> x);

/// Initializes the lowest free neuron to the normalized context and returns its
/// index, or nullopt when the pool is exhausted.
std::optional<std::size_t> recruit(YArea& area, std::span<const double> z, std::span<const double> x);

/// Increments the firing age, then v += w2 (r ṗ - v) on every live synapse,
/// with ṗ the per-part live direction of (z, x).
void hebbian_update(Neuron& neuron, std::span<const double> z, std::span<const double> x, double response,
                    double gain = 1.0);

/// Y->Z or Y->X weights. Row i holds the conditional firing frequencies of
/// the Y neurons right before target neuron i fired.
struct ProjectionArea {
  std::vector<Vector> weights;  // target_dim rows of length source_size
  std::vector<std::uint64_t> ages;
  std::size_t source_size = 0;

  static ProjectionArea make(std::size_t target_dim, std::size_t source_size);
  std::size_t target_dim() const { return weights.size(); }

  bool operator==(const ProjectionArea&) const = default;
};

/// Every target component equal to 1 fires: its age increments and its row
/// averages in `y`. Silent target neurons keep their memory.
void update_projection(ProjectionArea& area, std::span<const double> y, const BitPattern& target);

struct Prediction {
  BitPattern pattern;  // 1 where the graded value is > 0
  Vector graded;
};

Prediction predict_from(const ProjectionArea& area, std::span<const double> y);

}  // namespace dnfa
