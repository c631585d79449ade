// Copyright 2026 The drivekit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "drivekit/objectives.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "drivekit/errors.hpp"

namespace drivekit {

double ear_focal_loss(std::span<const double> true_class_probs, const FocalParams& params) {
  const std::size_t agents = params.alpha.size();
  if (!(params.gamma >= 0.0)) throw DomainError("focal gamma must be >= 0");
  if (agents == 0) {
    if (!true_class_probs.empty()) throw DomainError("probabilities given without agent weights");
    return 0.0;
  }
  if (true_class_probs.size() % agents != 0) {
    throw DomainError("probability count is not a multiple of the agent count");
  }
  const std::size_t directions = true_class_probs.size() / agents;
  double loss = 0.0;
  for (std::size_t i = 0; i < agents; ++i) {
    const double alpha = params.alpha[i];
    if (!(alpha >= 0.0)) throw DomainError("focal alpha must be >= 0");
    for (std::size_t d = 0; d < directions; ++d) {
      const double p = true_class_probs[i * directions + d];
      if (!(p > 0.0 && p <= 1.0)) throw DomainError("probability outside (0, 1]");
      loss -= alpha * std::pow(1.0 - p, params.gamma) * std::log(p);
    }
  }
  return loss;
}

double ear_focal_loss(std::span<const RelationDistribution> probs,
                      std::span<const RelationshipLabel> targets, const FocalParams& params) {
  if (probs.size() != targets.size() || probs.size() != params.alpha.size()) {
    throw DomainError("agent count mismatch between probabilities, labels and weights");
  }
  std::vector<double> picked;
  picked.reserve(probs.size() * kRelationDirections);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    for (const auto& dist : probs[i]) {
      double sum = 0.0;
      for (double p : dist) {
        if (!(p > 0.0 && p <= 1.0)) throw DomainError("probability outside (0, 1]");
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-6) throw DomainError("class probabilities do not sum to 1");
    }
    picked.push_back(probs[i][0][static_cast<std::size_t>(targets[i].longitudinal)]);
    picked.push_back(probs[i][1][static_cast<std::size_t>(targets[i].lateral)]);
  }
  return ear_focal_loss(picked, params);
}

double kinematic_loss(std::span<const double> decoded, std::span<const double> actual) {
  if (decoded.size() != actual.size()) throw std::invalid_argument("kinematic_loss: length mismatch");
  if (decoded.empty()) throw std::invalid_argument("kinematic_loss: need at least one status");
  double sum = 0.0;
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    const double d = decoded[i] - actual[i];
    sum += d * d;
  }
  return sum / static_cast<double>(decoded.size());
}

ModeSelection closest_mode(std::span<const std::vector<Vec2>> predictions,
                           std::span<const Vec2> ground_truth) {
  if (predictions.empty()) throw std::invalid_argument("closest_mode: need at least one mode");
  if (ground_truth.empty()) throw std::invalid_argument("closest_mode: empty ground truth");
  ModeSelection sel;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < predictions.size(); ++k) {
    if (predictions[k].size() != ground_truth.size()) {
      throw std::invalid_argument("closest_mode: horizon mismatch");
    }
    double sum = 0.0;
    for (std::size_t t = 0; t < ground_truth.size(); ++t) {
      sum += norm(predictions[k][t] - ground_truth[t]);
    }
    const double ade = sum / static_cast<double>(ground_truth.size());
    sel.average_displacement.push_back(ade);
    if (ade < best) {
      best = ade;
      sel.index = k;
    }
  }
  return sel;
}

}  // namespace drivekit
