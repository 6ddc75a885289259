#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/fields.hpp"
#include "core/geometry.hpp"
#include "core/hash_rng.hpp"

namespace rwlab {

struct ConductanceParams {
  double A = 1.25;
  double alpha_bar = 0.7;  // informational target, A * alpha_bar < 1

  void validate() const;
};

// Natural-log conductances on in-box edges (both endpoints inside the box).
// Horizontal edges: (w-1) x h entries, edge (i,j)->(i+1,j) at j*(w-1)+i.
// Vertical edges:   w x (h-1) entries, edge (i,j)->(i,j+1) at j*w+i.
// Zero log-weight means unit conductance.
struct ConductanceField {
  BoxSpec box;
  std::vector<double> logw_h;
  std::vector<double> logw_v;

  std::size_t h_index(std::int64_t i, std::int64_t j) const {
    return static_cast<std::size_t>(j) * (box.width - 1) + static_cast<std::size_t>(i);
  }
  std::size_t v_index(std::int64_t i, std::int64_t j) const {
    return static_cast<std::size_t>(j) * box.width + static_cast<std::size_t>(i);
  }
  // Log-weight of the edge from in-box base point p along axis; edges leaving
  // the box report 0.
  double logw(const Point& p, Axis axis) const;
};

ConductanceField conductances_from_heights(const HeightField& h, const AncestralField& a,
                                           const ConductanceParams& p);

// Control environment: independent log-Pareto edge weights,
// P(log w > t) = t^(-beta) for t >= 1.
struct IidLogParams {
  double beta = 2.0;
  std::uint64_t seed = 1;

  void validate() const;
};

double iid_log_weight(const IidLogParams& p, const Edge& e);

ConductanceField iid_log_pareto(const BoxSpec& box, const IidLogParams& p);

double empirical_log_moment(std::span<const double> logw_samples, double alpha);

// Truncated series sum_{k=0}^{K} P(h > k-1) * ((k+1)^{alpha A} - k^{alpha A}).
// tail_survival[k] = P(h > k-1); the k = 0 entry is 1 by convention.
struct LogMomentSeries {
  double value = 0.0;
  std::size_t truncation_index = 0;
};
LogMomentSeries log_moment_from_height_tail(std::span<const double> tail_survival, double A,
                                            double alpha);

}  // namespace rwlab
