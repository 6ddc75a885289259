#include "core/conductance.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace rwlab {

void ConductanceParams::validate() const {
  if (!(A > 1.0)) config_error("conductance exponent requires A > 1");
  if (alpha_bar > 0.0 && !(A * alpha_bar < 1.0)) {
    config_error("conductance exponent requires A * alpha_bar < 1 (got A=" + std::to_string(A) +
                 ", alpha_bar=" + std::to_string(alpha_bar) + ")");
  }
}

double ConductanceField::logw(const Point& p, Axis axis) const {
  const std::int64_t i = p.x - box.xmin();
  const std::int64_t j = p.y - box.ymin();
  if (axis == Axis::Horizontal) {
    if (i < 0 || j < 0 || i >= static_cast<std::int64_t>(box.width) - 1 ||
        j >= static_cast<std::int64_t>(box.height)) {
      return 0.0;
    }
    return logw_h[h_index(i, j)];
  }
  if (i < 0 || j < 0 || i >= static_cast<std::int64_t>(box.width) ||
      j >= static_cast<std::int64_t>(box.height) - 1) {
    return 0.0;
  }
  return logw_v[v_index(i, j)];
}

ConductanceField conductances_from_heights(const HeightField& h, const AncestralField& a,
                                           const ConductanceParams& p) {
  if (!(h.box == a.box)) config_error("conductances_from_heights: mismatched boxes");
  p.validate();
  ConductanceField out;
  out.box = h.box;
  const std::uint64_t w = h.box.width;
  const std::uint64_t hh = h.box.height;
  out.logw_h.assign((w - 1) * hh, 0.0);
  out.logw_v.assign(w * (hh - 1), 0.0);
  for (std::uint64_t j = 0; j < hh; ++j) {
    for (std::uint64_t i = 0; i < w; ++i) {
      const std::size_t idx = j * w + i;
      const double logw = std::pow(static_cast<double>(h.h[idx]) + 1.0, p.A);
      if (a.dir[idx] == 1) {
        if (i + 1 < w) out.logw_h[out.h_index(i, j)] = logw;
      } else {
        if (j + 1 < hh) out.logw_v[out.v_index(i, j)] = logw;
      }
    }
  }
  return out;
}

void IidLogParams::validate() const {
  if (!(beta > 1.0)) config_error("iid log-conductance tail requires beta > 1");
}

double iid_log_weight(const IidLogParams& p, const Edge& e) {
  const SiteHash hash(derive_stream(p.seed, StreamTag::IidEdge));
  const double u = unit_open(hash.bits_edge(e));
  return std::pow(u, -1.0 / p.beta);
}

ConductanceField iid_log_pareto(const BoxSpec& box, const IidLogParams& p) {
  p.validate();
  ConductanceField out;
  out.box = box;
  const std::uint64_t w = box.width;
  const std::uint64_t h = box.height;
  out.logw_h.resize((w - 1) * h);
  out.logw_v.resize(w * (h - 1));
  const SiteHash hash(derive_stream(p.seed, StreamTag::IidEdge));
  const double inv_beta = -1.0 / p.beta;
  for (std::uint64_t j = 0; j < h; ++j) {
    for (std::uint64_t i = 0; i + 1 < w; ++i) {
      const Edge e{{box.xmin() + static_cast<std::int64_t>(i),
                    box.ymin() + static_cast<std::int64_t>(j)},
                   Axis::Horizontal};
      out.logw_h[out.h_index(i, j)] = std::pow(unit_open(hash.bits_edge(e)), inv_beta);
    }
  }
  for (std::uint64_t j = 0; j + 1 < h; ++j) {
    for (std::uint64_t i = 0; i < w; ++i) {
      const Edge e{{box.xmin() + static_cast<std::int64_t>(i),
                    box.ymin() + static_cast<std::int64_t>(j)},
                   Axis::Vertical};
      out.logw_v[out.v_index(i, j)] = std::pow(unit_open(hash.bits_edge(e)), inv_beta);
    }
  }
  return out;
}

double empirical_log_moment(std::span<const double> logw_samples, double alpha) {
  if (logw_samples.empty()) config_error("empirical_log_moment: empty sample set");
  if (!(alpha > 0.0)) config_error("empirical_log_moment: alpha must be positive");
  double sum = 0.0;
  for (const double v : logw_samples) sum += std::pow(v, alpha);
  return sum / static_cast<double>(logw_samples.size());
}

LogMomentSeries log_moment_from_height_tail(std::span<const double> tail_survival, double A,
                                            double alpha) {
  LogMomentSeries out;
  const double e = alpha * A;
  double prev = 0.0;
  for (std::size_t k = 0; k < tail_survival.size(); ++k) {
    const double next = std::pow(static_cast<double>(k) + 1.0, e);
    out.value += tail_survival[k] * (next - prev);
    prev = next;
  }
  out.truncation_index = tail_survival.empty() ? 0 : tail_survival.size() - 1;
  return out;
}

}  // namespace rwlab
