#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dnfa/dn_core.hpp"
#include "dnfa/pattern_codec.hpp"
#include "dnfa/plasticity.hpp"

namespace dnfa {

struct NetworkConfig {
  std::size_t z_dim = 0;
  std::size_t x_dim = 0;
  std::size_t capacity = 1;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  /// Best pre-response below 2 - epsilon counts as a novel context.
  double epsilon = 1e-9;
  MaintenanceConfig maintenance;

  bool operator==(const NetworkConfig&) const = default;
};

/// One transition presented to the network. (z, x) is the current context;
/// z_next / x_next, when present, are the teacher's supervision for the
/// following half-step.
struct StepInput {
  BitPattern z;
  BitPattern x;
  std::optional<BitPattern> z_next;
  std::optional<BitPattern> x_next;
  std::optional<AttentionMask> z_mask;
  std::optional<AttentionMask> x_mask;
  double learning_rate_gain = 1.0;

  bool z_supervised() const { return z_next.has_value(); }
  bool x_supervised() const { return x_next.has_value(); }
};

struct StepOutput {
  std::vector<std::size_t> winners;
  Vector y_response;
  BitPattern z_pred;  // thresholded prediction, made before supervision
  BitPattern x_pred;
  Vector z_graded;
  Vector x_graded;
  Vector pre_responses;
  double best_pre_response = 0.0;
  bool recruited = false;
  bool pool_exhausted = false;  // novel supervised context with no free neuron
};

class Network {
 public:
  explicit Network(const NetworkConfig& config);

  /// Rebuilds a network from previously saved state.
  static Network restore(const NetworkConfig& config, YArea y, ProjectionArea to_z, ProjectionArea to_x,
                         std::uint64_t time, std::uint64_t exhausted_updates);

  /// One Y update followed by one Z/X update; time advances by 2.
  StepOutput step(const StepInput& input);

  /// Competition and prediction only; nothing is learned.
  StepOutput evaluate(const BitPattern& z, const BitPattern& x,
                      const std::optional<AttentionMask>& z_mask = std::nullopt,
                      const std::optional<AttentionMask>& x_mask = std::nullopt) const;

  const NetworkConfig& config() const { return config_; }
  const YArea& y_area() const { return y_; }
  const ProjectionArea& to_z() const { return to_z_; }
  const ProjectionArea& to_x() const { return to_x_; }
  std::uint64_t time() const { return time_; }
  std::uint64_t exhausted_updates() const { return exhausted_updates_; }
  std::size_t initialized_count() const { return y_.initialized_count(); }

  bool operator==(const Network&) const = default;

 private:
  Network(const NetworkConfig& config, YArea y, ProjectionArea to_z, ProjectionArea to_x);

  void check_dims(const BitPattern& z, const BitPattern& x) const;

  NetworkConfig config_;
  YArea y_;
  ProjectionArea to_z_;
  ProjectionArea to_x_;
  std::uint64_t time_ = 0;
  std::uint64_t exhausted_updates_ = 0;
};

StepOutput network_step(Network& net, const StepInput& input);

}  // namespace dnfa
