// Copyright (c) 2026 The lecgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference implementations used as test oracles. They share no code with
// the library and favour obviousness over speed.

#ifndef LECGEN_TESTS_SUPPORT_ORACLES_H_
#define LECGEN_TESTS_SUPPORT_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

namespace oracle {

// English cardinals for 0..9999 built from word lists, no "and".
inline std::string CardinalUnder10000(unsigned n) {
  static const char *kSmall[] = {
      "zero",    "one",     "two",       "three",    "four",
      "five",    "six",     "seven",     "eight",    "nine",
      "ten",     "eleven",  "twelve",    "thirteen", "fourteen",
      "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};
  static const char *kTens[] = {"",      "",      "twenty",  "thirty", "forty",
                                "fifty", "sixty", "seventy", "eighty", "ninety"};
  std::vector<std::string> words;
  const unsigned thousands = n / 1000, hundreds = (n / 100) % 10,
                 rest = n % 100;
  if (thousands > 0) {
    words.push_back(kSmall[thousands]);
    words.push_back("thousand");
  }
  if (hundreds > 0) {
    words.push_back(kSmall[hundreds]);
    words.push_back("hundred");
  }
  if (rest > 0 || words.empty()) {
    if (rest < 20) {
      words.push_back(kSmall[rest]);
    } else {
      words.push_back(kTens[rest / 10]);
      if (rest % 10 != 0) words.push_back(kSmall[rest % 10]);
    }
  }
  std::string out;
  for (const auto &w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

// Literal ping-pong walk: copies the frame array, reverses the copy at every
// turn and keeps reading from the current position. `draw(lo, hi)` must
// return an integer in [lo, hi].
inline std::vector<size_t> BruteForcePlan(
    size_t t, size_t t_prime, double r,
    const std::function<size_t(size_t, size_t)> &draw) {
  const size_t last = t - 1;
  const auto low_max =
      static_cast<size_t>(std::floor(r * static_cast<double>(last) + 1e-9));
  const size_t high_min = last - low_max;
  std::vector<size_t> frames(t);
  std::iota(frames.begin(), frames.end(), size_t{0});
  size_t start = draw(0, low_max);
  size_t end = draw(high_min, last);
  while (end <= start) end = draw(high_min, last);
  std::vector<size_t> out;
  while (out.size() < t_prime) {
    out.push_back(frames[start]);
    ++start;
    if (start == end) {
      std::reverse(frames.begin(), frames.end());
      start = last - start;
      end = draw(high_min, last);
      while (end <= start) end = draw(high_min, last);
    }
  }
  return out;
}

// Number of analysis windows of length `win` that fit, stepping by `hop`.
inline size_t EnumerateFrames(size_t len, size_t win, size_t hop) {
  size_t count = 0;
  for (size_t start = 0; start + win <= len; start += hop) ++count;
  return count;
}

// |X_k| for k = 0..n/2 of a zero-padded length-n real signal.
inline std::vector<double> DirectDftMagnitude(const std::vector<double> &x,
                                              size_t n) {
  std::vector<double> mag(n / 2 + 1);
  for (size_t k = 0; k < mag.size(); ++k) {
    long double re = 0, im = 0;
    for (size_t i = 0; i < x.size() && i < n; ++i) {
      const long double phase = -2.0L * std::numbers::pi_v<long double> *
                                static_cast<long double>((k * i) % n) /
                                static_cast<long double>(n);
      re += x[i] * std::cos(phase);
      im += x[i] * std::sin(phase);
    }
    mag[k] = static_cast<double>(std::sqrt(re * re + im * im));
  }
  return mag;
}

inline double HtkMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
inline double HtkHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

// Log-mel energies of one frame: periodic Hann window, direct DFT
// magnitude, triangular filters between mel-spaced edges, natural log with
// an amplitude floor.
inline std::vector<double> MelFrame(const std::vector<double> &samples,
                                    size_t offset, size_t win, size_t n_fft,
                                    double sample_rate, size_t bands,
                                    double fmin, double fmax, double floor) {
  std::vector<double> frame(win);
  for (size_t i = 0; i < win; ++i) {
    const double hann =
        0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                              static_cast<double>(win)));
    frame[i] = hann * samples[offset + i];
  }
  const auto mag = DirectDftMagnitude(frame, n_fft);
  std::vector<double> edges(bands + 2);
  const double mlo = HtkMel(fmin), mhi = HtkMel(fmax);
  for (size_t i = 0; i < edges.size(); ++i) {
    edges[i] = HtkHz(mlo + (mhi - mlo) * static_cast<double>(i) /
                               static_cast<double>(bands + 1));
  }
  edges.front() = fmin;
  edges.back() = fmax;
  std::vector<double> out(bands);
  for (size_t b = 0; b < bands; ++b) {
    double energy = 0.0;
    for (size_t k = 0; k < mag.size(); ++k) {
      const double f = static_cast<double>(k) * sample_rate /
                       static_cast<double>(n_fft);
      double w = 0.0;
      if (f > edges[b] && f <= edges[b + 1]) {
        w = (f - edges[b]) / (edges[b + 1] - edges[b]);
      } else if (f > edges[b + 1] && f < edges[b + 2]) {
        w = (edges[b + 2] - f) / (edges[b + 2] - edges[b + 1]);
      }
      energy += w * mag[k];
    }
    out[b] = std::log(std::max(energy, floor));
  }
  return out;
}

// Band whose center frequency lies closest to `hz` on the mel scale.
inline size_t NearestMelBand(double hz, size_t bands, double fmin, double fmax) {
  const double target = HtkMel(hz);
  const double mlo = HtkMel(fmin), mhi = HtkMel(fmax);
  size_t best = 0;
  double best_dist = INFINITY;
  for (size_t b = 0; b < bands; ++b) {
    const double center = mlo + (mhi - mlo) * static_cast<double>(b + 1) /
                                    static_cast<double>(bands + 1);
    if (std::fabs(center - target) < best_dist) {
      best_dist = std::fabs(center - target);
      best = b;
    }
  }
  return best;
}

inline double Cosine(const std::vector<double> &a, const std::vector<double> &b) {
  long double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<long double>(a[i]) * b[i];
    na += static_cast<long double>(a[i]) * a[i];
    nb += static_cast<long double>(b[i]) * b[i];
  }
  return static_cast<double>(dot / (std::sqrt(na) * std::sqrt(nb)));
}

// Regularized incomplete beta I_x(a, b), modified Lentz continued fraction.
inline long double IncompleteBeta(long double a, long double b, long double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  if (x > (a + 1) / (a + b + 2)) return 1 - IncompleteBeta(b, a, 1 - x);
  const long double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                               std::lgamma(b) + a * std::log(x) +
                               b * std::log(1 - x);
  const long double tiny = 1e-300L;
  long double c = 1, d = 1 - (a + b) * x / (a + 1);
  if (std::fabs(d) < tiny) d = tiny;
  d = 1 / d;
  long double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const long double m2 = 2.0L * m;
    long double num = m * (b - m) * x / ((a + m2 - 1) * (a + m2));
    d = 1 + num * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1 + num / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1 / d;
    h *= d * c;
    num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1));
    d = 1 + num * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1 + num / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1 / d;
    const long double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1) < 1e-19L) break;
  }
  return std::exp(ln_front) * h / a;
}

inline long double StudentTCdf(long double t, long double df) {
  const long double tail = 0.5L * IncompleteBeta(df / 2, 0.5L, df / (df + t * t));
  return t >= 0 ? 1 - tail : tail;
}

// Quantile of Student's t by bisection on the CDF.
inline double StudentTQuantile(double p, double df) {
  long double lo = 0, hi = 1;
  while (StudentTCdf(hi, df) < p) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    const long double mid = (lo + hi) / 2;
    (StudentTCdf(mid, df) < p ? lo : hi) = mid;
  }
  return static_cast<double>((lo + hi) / 2);
}

struct Interval {
  double mean;
  double half_width;
};

// Two-sided t interval for the mean at the given confidence.
inline Interval TInterval(const std::vector<double> &x, double confidence) {
  const double n = static_cast<double>(x.size());
  long double sum = 0;
  for (double v : x) sum += v;
  const long double mean = sum / n;
  long double ss = 0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const long double sd = std::sqrt(ss / (n - 1));
  const double q = StudentTQuantile((1 + confidence) / 2, n - 1);
  return {static_cast<double>(mean),
          static_cast<double>(q * sd / std::sqrt(static_cast<long double>(n)))};
}

}  // namespace oracle

#endif  // LECGEN_TESTS_SUPPORT_ORACLES_H_
