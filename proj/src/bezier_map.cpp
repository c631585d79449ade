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

#include "drivekit/bezier_map.hpp"

#include <cmath>
#include <string>

#include "drivekit/errors.hpp"

namespace drivekit {

namespace {

constexpr std::array<std::string_view, kNumMapClasses> kMapClassNames = {"divider", "cross",
                                                                         "road_segment", "lane"};

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
  return r;
}

void check_piece(const BezierPiece& piece) {
  if (piece.degree < 1) throw DomainError("bezier piece degree must be >= 1");
  if (piece.control_points.size() != static_cast<std::size_t>(piece.degree) + 1) {
    throw DomainError("bezier piece needs degree + 1 control points");
  }
}

}  // namespace

std::string_view to_string(MapClass c) { return kMapClassNames[static_cast<std::size_t>(c)]; }

std::optional<MapClass> map_class_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kMapClassNames.size(); ++i) {
    if (kMapClassNames[i] == s) return static_cast<MapClass>(i);
  }
  return std::nullopt;
}

BezierClassConfig::BezierClassConfig()
    : budgets_{PieceBudget{3, 2}, PieceBudget{1, 1}, PieceBudget{7, 3}, PieceBudget{7, 3}} {}

void BezierClassConfig::set(MapClass c, PieceBudget budget) {
  if (budget.max_pieces < 1 || budget.max_degree < 1) {
    throw DomainError("piece budget entries must be positive");
  }
  budgets_[static_cast<std::size_t>(c)] = budget;
}

PieceBudget class_config(MapClass c, const BezierClassConfig& config) { return config[c]; }

double bernstein(int i, int n, double t) {
  if (n < 0 || i < 0 || i > n) throw DomainError("bernstein: index outside [0, n]");
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("bernstein: t outside [0, 1]");
  return binomial(n, i) * std::pow(t, i) * std::pow(1.0 - t, n - i);
}

Vec2 eval_piece(const BezierPiece& piece, double t) {
  check_piece(piece);
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("eval_piece: t outside [0, 1]");
  // Endpoints are returned exactly so that joints between pieces coincide.
  if (t == 0.0) return piece.control_points.front();
  if (t == 1.0) return piece.control_points.back();
  Vec2 p{};
  for (int i = 0; i <= piece.degree; ++i) {
    p = p + bernstein(i, piece.degree, t) * piece.control_points[static_cast<std::size_t>(i)];
  }
  return p;
}

std::vector<Vec2> sample_element(const MapElement& element, int samples_per_piece) {
  if (samples_per_piece < 2) throw DomainError("sample_element: need at least 2 samples per piece");
  std::vector<Vec2> out;
  out.reserve(element.pieces.size() * static_cast<std::size_t>(samples_per_piece));
  const double denom = static_cast<double>(samples_per_piece - 1);
  for (std::size_t k = 0; k < element.pieces.size(); ++k) {
    const int first = k == 0 ? 0 : 1;
    for (int j = first; j < samples_per_piece; ++j) {
      const double t = j == samples_per_piece - 1 ? 1.0 : static_cast<double>(j) / denom;
      out.push_back(eval_piece(element.pieces[k], t));
    }
  }
  return out;
}

void validate_element(const MapElement& element, const BezierClassConfig& config,
                      const std::string& path) {
  const PieceBudget budget = config[element.map_class];
  if (element.pieces.empty()) throw ValidationError(path + ".pieces", "element has no pieces");
  if (static_cast<int>(element.pieces.size()) > budget.max_pieces) {
    throw ValidationError(path + ".pieces", "piece count " + std::to_string(element.pieces.size()) +
                                                " exceeds max_pieces " +
                                                std::to_string(budget.max_pieces) + " for class " +
                                                std::string(to_string(element.map_class)));
  }
  for (std::size_t k = 0; k < element.pieces.size(); ++k) {
    const auto& piece = element.pieces[k];
    const std::string piece_path = path + ".pieces[" + std::to_string(k) + "]";
    if (piece.degree < 1) throw ValidationError(piece_path + ".degree", "degree must be >= 1");
    if (piece.degree > budget.max_degree) {
      throw ValidationError(piece_path + ".degree",
                            "degree " + std::to_string(piece.degree) + " exceeds max_degree " +
                                std::to_string(budget.max_degree));
    }
    if (piece.control_points.size() != static_cast<std::size_t>(piece.degree) + 1) {
      throw ValidationError(piece_path + ".control_points",
                            "expected degree + 1 control points");
    }
    if (k > 0) {
      const Vec2 gap = piece.control_points.front() - element.pieces[k - 1].control_points.back();
      if (norm(gap) > kContinuityTolerance) {
        throw ValidationError(piece_path + ".control_points[0]",
                              "C0 continuity violated with previous piece");
      }
    }
  }
}

}  // namespace drivekit
