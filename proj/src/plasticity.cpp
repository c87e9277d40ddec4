#include "dnfa/plasticity.hpp"

#include <cmath>
#include <stdexcept>

namespace dnfa {

SynapseStats update_deviation(SynapseStats stats, double pre_signal, double weight, std::uint64_t age) {
  const double w2 = learning_weight(age);
  stats.beta += w2 * (std::abs(pre_signal - weight) - stats.beta);
  return stats;
}

const char* to_string(SynapseDecision d) {
  switch (d) {
    case SynapseDecision::grow: return "grow";
    case SynapseDecision::keep: return "keep";
    case SynapseDecision::trim: return "trim";
  }
  return "?";
}

SynapseDecision synaptogenic_decision(double beta, double mean_beta, double grow_threshold, double trim_threshold) {
  if (mean_beta < 0.0 || beta < 0.0) throw std::invalid_argument("deviations must be nonnegative");
  const double ratio = mean_beta == 0.0 ? 1.0 : beta / mean_beta;
  if (ratio < grow_threshold) return SynapseDecision::grow;
  if (ratio > trim_threshold) return SynapseDecision::trim;
  return SynapseDecision::keep;
}

Neuron apply_maintenance(Neuron neuron, const MaintenanceDecisions& decisions) {
  if (decisions.top.size() != neuron.top_mask.size() || decisions.bottom.size() != neuron.bottom_mask.size()) {
    throw std::invalid_argument("maintenance decisions do not match synapse count");
  }
  auto apply = [](std::vector<bool>& mask, const std::vector<SynapseDecision>& ds) {
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (ds[i] == SynapseDecision::trim) mask[i] = false;
      if (ds[i] == SynapseDecision::grow) mask[i] = true;
    }
  };
  apply(neuron.top_mask, decisions.top);
  apply(neuron.bottom_mask, decisions.bottom);
  return neuron;
}

double mean_live_beta(const Neuron& neuron) {
  double sum = 0.0;
  std::size_t live = 0;
  for (std::size_t i = 0; i < neuron.top_beta.size(); ++i) {
    if (neuron.top_mask[i]) {
      sum += neuron.top_beta[i];
      ++live;
    }
  }
  for (std::size_t i = 0; i < neuron.bottom_beta.size(); ++i) {
    if (neuron.bottom_mask[i]) {
      sum += neuron.bottom_beta[i];
      ++live;
    }
  }
  return live == 0 ? 0.0 : sum / static_cast<double>(live);
}

MaintenanceDecisions maintain_on_firing(Neuron& neuron, std::span<const double> z, std::span<const double> x,
                                        const MaintenanceConfig& config) {
  if (z.size() != neuron.top_down.size() || x.size() != neuron.bottom_up.size()) {
    throw std::invalid_argument("maintain_on_firing: input dimensions do not match neuron");
  }
  // The firing about to happen is number age + 1.
  const std::uint64_t age = neuron.age + 1;
  const Vector zd = normalize(z);
  const Vector xd = normalize(x);
  for (std::size_t i = 0; i < zd.size(); ++i) {
    neuron.top_beta[i] = update_deviation({neuron.top_beta[i], 0.0}, zd[i], neuron.top_down[i], age).beta;
  }
  for (std::size_t i = 0; i < xd.size(); ++i) {
    neuron.bottom_beta[i] = update_deviation({neuron.bottom_beta[i], 0.0}, xd[i], neuron.bottom_up[i], age).beta;
  }
  const double mean = mean_live_beta(neuron);
  MaintenanceDecisions d;
  for (double b : neuron.top_beta) {
    d.top.push_back(synaptogenic_decision(b, mean, config.grow_threshold, config.trim_threshold));
  }
  for (double b : neuron.bottom_beta) {
    d.bottom.push_back(synaptogenic_decision(b, mean, config.grow_threshold, config.trim_threshold));
  }
  neuron = apply_maintenance(std::move(neuron), d);
  return d;
}

}  // namespace dnfa
