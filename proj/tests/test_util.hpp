#pragma once

#include "vgic/channel.hpp"
#include "vgic/linalg.hpp"
#include "vgic/rates.hpp"

#include <random>

namespace vgic::testing {

inline Mat gauss(std::mt19937_64& rng, int r, int c) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = n(rng);
  return m;
}

inline double uni(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline ChannelMimo random_channel(std::mt19937_64& rng, int t1, int t2, int r1, int r2) {
  ChannelMimo ch;
  ch.h1 = gauss(rng, r1, t1);
  ch.f1 = gauss(rng, r2, t1);
  ch.h2 = gauss(rng, r2, t2);
  ch.f2 = gauss(rng, r1, t2);
  ch.p1 = uni(rng, 0.5, 10.0);
  ch.p2 = uni(rng, 0.5, 10.0);
  return ch;
}

/// Random PSD matrix with trace in (0, p].
inline SymMatrix random_cov(std::mt19937_64& rng, int t, double p) {
  const Mat g = gauss(rng, t, t);
  const Mat c = g * g.transpose();
  return SymMatrix(Mat(c * (uni(rng, 0.05, 1.0) * p / c.trace())));
}

inline Mat random_contraction(std::mt19937_64& rng, int r, int c, double max_norm) {
  const Mat a = gauss(rng, r, c);
  return a * (uni(rng, 0.05, max_norm) / a.jacobiSvd().singularValues()(0));
}

}  // namespace vgic::testing
