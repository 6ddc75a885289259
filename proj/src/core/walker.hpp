#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "core/conductance.hpp"
#include "core/geometry.hpp"

namespace rwlab {

// Step order everywhere: +e1, +e2, -e1, -e2.
inline constexpr std::array<Point, 4> kSteps = {Point{1, 0}, Point{0, 1}, Point{-1, 0},
                                                Point{0, -1}};

std::array<double, 4> transition_probs(const std::array<double, 4>& logw);
std::array<double, 4> transition_log_probs(const std::array<double, 4>& logw);

// Incident log-weights of the four edges at x, in step order.
std::array<double, 4> incident_logw(const ConductanceField& f, const Point& x);
std::array<double, 4> transition_probs(const ConductanceField& f, const Point& x);

// log pi(x) = log sum of the four incident conductances.
double stationary_log_weight(const ConductanceField& f, const Point& x);

// Read-only quenched environment as seen by a walker.
class EnvView {
public:
  virtual ~EnvView() = default;
  virtual std::array<double, 4> logw4(const Point& x) = 0;
  virtual bool interior(const Point& x) const = 0;
  // Parent direction 1|2 when the environment carries a tree, else 0.
  virtual int tree_dir(const Point& x) { return 0; }
  virtual const BoxSpec& box() const = 0;
};

class BoxCondView : public EnvView {
public:
  BoxCondView(const ConductanceField* field, const AncestralField* tree)
      : field_(field), tree_(tree) {}
  std::array<double, 4> logw4(const Point& x) override { return incident_logw(*field_, x); }
  bool interior(const Point& x) const override {
    return x.x > field_->box.xmin() && x.x < field_->box.xmax() && x.y > field_->box.ymin() &&
           x.y < field_->box.ymax();
  }
  int tree_dir(const Point& x) override {
    return tree_ != nullptr && tree_->box.contains(x) ? tree_->dir[tree_->box.index(x)] : 0;
  }
  const BoxSpec& box() const override { return field_->box; }

private:
  const ConductanceField* field_;
  const AncestralField* tree_;
};

// Unbounded-style iid environment evaluated directly from the edge hash.
class IidLazyView : public EnvView {
public:
  IidLazyView(BoxSpec box, IidLogParams params) : box_(box), params_(params) {
    params_.validate();
  }
  std::array<double, 4> logw4(const Point& x) override {
    return {iid_log_weight(params_, {x, Axis::Horizontal}),
            iid_log_weight(params_, {x, Axis::Vertical}),
            iid_log_weight(params_, {{x.x - 1, x.y}, Axis::Horizontal}),
            iid_log_weight(params_, {{x.x, x.y - 1}, Axis::Vertical})};
  }
  bool interior(const Point& x) const override {
    return x.x > box_.xmin() && x.x < box_.xmax() && x.y > box_.ymin() && x.y < box_.ymax();
  }
  const BoxSpec& box() const override { return box_; }

private:
  BoxSpec box_;
  IidLogParams params_;
};

struct WalkConfig {
  Point start;
  std::uint64_t steps = 1;
  std::uint64_t seed = 1;
  double gamma = 1.2;  // geometric checkpoint ratio
  std::vector<std::uint64_t> extra_checkpoints;
  bool stop_on_exit = true;

  void validate() const;
};

struct Checkpoint {
  std::uint64_t n;
  Point position;              // absolute
  double follow_frac_window;   // tree-following fraction since previous checkpoint
};

struct Trajectory {
  WalkConfig config;
  std::vector<Checkpoint> checkpoints;
  Point final_position;
  std::uint64_t steps_taken = 0;
  double follow_fraction_tail = 0.0;  // over the last 10% of realized steps
  bool exited = false;
  bool has_tree = false;
};

Trajectory run_walk(EnvView& env, const WalkConfig& cfg);

// Certified lower bound for the probability of following the tree forever:
// truncated product over k <= K plus the analytic negative tail.
double follow_tree_lower_bound(double A, int K);

}  // namespace rwlab
