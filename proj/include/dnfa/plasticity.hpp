#pragma once

// Synaptic maintenance: each synapse keeps an amnesic average β of
// |pre-synaptic signal - weight|; the ratio β/β̄ against the neuron's mean
// deviation decides whether the synapse grows back, stays, or is trimmed.

#include <cstdint>
#include <span>
#include <vector>

#include "dnfa/dn_core.hpp"

namespace dnfa {

struct MaintenanceConfig {
  bool enabled = false;
  double grow_threshold = 1.0;
  double trim_threshold = 1.5;

  bool operator==(const MaintenanceConfig&) const = default;
};

struct SynapseStats {
  double beta = 0.0;
  double neuron_mean_beta = 0.0;
};

SynapseStats update_deviation(SynapseStats stats, double pre_signal, double weight, std::uint64_t age);

enum class SynapseDecision { grow, keep, trim };

const char* to_string(SynapseDecision d);

/// ratio = beta / mean_beta (1 when mean_beta is 0); < grow -> grow,
/// > trim -> trim, otherwise keep.
SynapseDecision synaptogenic_decision(double beta, double mean_beta, double grow_threshold = 1.0,
                                      double trim_threshold = 1.5);

struct MaintenanceDecisions {
  std::vector<SynapseDecision> top;
  std::vector<SynapseDecision> bottom;
};

/// Trim clears the synapse's live bit, grow sets it again. Weights are kept.
Neuron apply_maintenance(Neuron neuron, const MaintenanceDecisions& decisions);

/// Mean β over the live synapses of both weight parts.
double mean_live_beta(const Neuron& neuron);

/// One maintenance cycle for a neuron that is about to fire on (z, x):
/// deviations are updated against the current weights, then every synapse is
/// decided and the decisions applied. Call before hebbian_update.
MaintenanceDecisions maintain_on_firing(Neuron& neuron, std::span<const double> z, std::span<const double> x,
                                        const MaintenanceConfig& config);

}  // namespace dnfa
