#pragma once

#include <array>
#include <cmath>

namespace rwlab {

// log(sum exp(a_i)), stable for arguments spanning [0, 1e6] and beyond.
inline double logsumexp4(const std::array<double, 4>& a) {
  double m = a[0];
  for (int i = 1; i < 4; ++i) m = a[i] > m ? a[i] : m;
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += std::exp(a[i] - m);
  return m + std::log(s);
}

}  // namespace rwlab
