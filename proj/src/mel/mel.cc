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

#include "mel/mel.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <thread>

#include "common/error.h"
#include "json.hpp"

namespace lecgen::mel {

namespace {

// FFTW planning is not thread-safe; execution with new arrays is.
std::mutex &PlannerMutex() {
  static std::mutex mu;
  return mu;
}

struct FftwFree {
  void operator()(void *p) const { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

class R2cPlan {
 public:
  explicit R2cPlan(int n_fft) {
    RealBuffer in(fftw_alloc_real(static_cast<size_t>(n_fft)));
    ComplexBuffer out(fftw_alloc_complex(static_cast<size_t>(n_fft / 2 + 1)));
    std::lock_guard<std::mutex> lock(PlannerMutex());
    // ESTIMATE keeps the chosen algorithm, and so the rounding, identical
    // from run to run.
    plan_ = fftw_plan_dft_r2c_1d(n_fft, in.get(), out.get(), FFTW_ESTIMATE);
    if (!plan_) throw ValidationError("FFTW could not plan size " +
                                      std::to_string(n_fft));
  }
  ~R2cPlan() {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fftw_destroy_plan(plan_);
  }
  R2cPlan(const R2cPlan &) = delete;
  R2cPlan &operator=(const R2cPlan &) = delete;

  void Execute(double *in, fftw_complex *out) const {
    fftw_execute_dft_r2c(plan_, in, out);
  }

 private:
  fftw_plan plan_ = nullptr;
};

void CheckPositive(int v, const char *name) {
  if (v <= 0) {
    throw ValidationError(std::string("mel config: ") + name +
                          " must be positive");
  }
}

}  // namespace

double MelConfig::log_floor() const { return std::log(floor_amplitude); }

void MelConfig::Validate() const {
  CheckPositive(sample_rate, "sample_rate");
  CheckPositive(n_fft, "n_fft");
  CheckPositive(win, "win");
  CheckPositive(hop, "hop");
  CheckPositive(bands, "bands");
  if (win > n_fft) throw ValidationError("mel config: win must be <= n_fft");
  if (n_fft % 2 != 0) throw ValidationError("mel config: n_fft must be even");
  if (!(fmin >= 0.0 && fmin < fmax && fmax <= sample_rate / 2.0)) {
    throw ValidationError("mel config: need 0 <= fmin < fmax <= sample_rate/2");
  }
  if (!(floor_amplitude > 0.0)) {
    throw ValidationError("mel config: floor_amplitude must be positive");
  }
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

namespace {

// bands + 2 edge frequencies equally spaced on the mel scale.
std::vector<double> MelEdges(int bands, double fmin, double fmax) {
  const double lo = HzToMel(fmin);
  const double hi = HzToMel(fmax);
  std::vector<double> edges(static_cast<size_t>(bands) + 2);
  for (size_t i = 0; i < edges.size(); ++i) {
    edges[i] = MelToHz(lo + (hi - lo) * static_cast<double>(i) /
                                static_cast<double>(bands + 1));
  }
  edges.front() = fmin;
  edges.back() = fmax;
  return edges;
}

}  // namespace

std::vector<double> MelBandCenters(int bands, double fmin, double fmax) {
  const auto edges = MelEdges(bands, fmin, fmax);
  return {edges.begin() + 1, edges.end() - 1};
}

Matrix MelFilterbank(int bands, int n_fft, int sample_rate, double fmin,
                     double fmax) {
  if (bands < 1) throw ValidationError("filterbank needs at least one band");
  if (n_fft < 2 || n_fft % 2 != 0) {
    throw ValidationError("filterbank n_fft must be even and >= 2");
  }
  if (sample_rate <= 0) throw ValidationError("sample rate must be positive");
  if (!(fmin >= 0.0 && fmin < fmax && fmax <= sample_rate / 2.0)) {
    throw ValidationError("filterbank needs 0 <= fmin < fmax <= sample_rate/2");
  }
  const auto edges = MelEdges(bands, fmin, fmax);
  const size_t bins = static_cast<size_t>(n_fft / 2 + 1);
  Matrix fb(static_cast<size_t>(bands), bins);
  for (size_t m = 0; m < fb.rows(); ++m) {
    const double lo = edges[m];
    const double center = edges[m + 1];
    const double hi = edges[m + 2];
    for (size_t k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate / n_fft;
      double w = 0.0;
      if (f > lo && f <= center) {
        w = (f - lo) / (center - lo);
      } else if (f > center && f < hi) {
        w = (hi - f) / (hi - center);
      }
      fb(m, k) = w;
    }
  }
  return fb;
}

size_t FrameCount(size_t num_samples, int win, int hop) {
  const auto w = static_cast<size_t>(win);
  if (num_samples < w) return 0;
  return 1 + (num_samples - w) / static_cast<size_t>(hop);
}

MelSpectrogram ComputeMelSpectrogram(const Waveform &wave,
                                     const MelConfig &config,
                                     int num_threads) {
  config.Validate();
  if (wave.sample_rate != config.sample_rate) {
    throw ValidationError("waveform sample rate " +
                          std::to_string(wave.sample_rate) +
                          " does not match mel config " +
                          std::to_string(config.sample_rate));
  }
  if (wave.samples.size() < static_cast<size_t>(config.win)) {
    throw ValidationError("waveform has " + std::to_string(wave.samples.size()) +
                          " samples, fewer than the window length " +
                          std::to_string(config.win));
  }
  for (size_t i = 0; i < wave.samples.size(); ++i) {
    if (!std::isfinite(wave.samples[i])) {
      throw ValidationError("non-finite sample at index " + std::to_string(i));
    }
  }

  const size_t frames = FrameCount(wave.samples.size(), config.win, config.hop);
  const size_t bins = static_cast<size_t>(config.n_fft / 2 + 1);
  const Matrix fb = MelFilterbank(config.bands, config.n_fft,
                                  config.sample_rate, config.fmin, config.fmax);
  std::vector<double> window(static_cast<size_t>(config.win));
  for (size_t i = 0; i < window.size(); ++i) {
    // Periodic Hann.
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi *
                                      static_cast<double>(i) /
                                      static_cast<double>(config.win));
  }
  const R2cPlan plan(config.n_fft);
  const double floor_amp = config.floor_amplitude;

  MelSpectrogram out;
  out.config = config;
  out.frames = Matrix(frames, static_cast<size_t>(config.bands));

  auto worker = [&](size_t begin, size_t end) {
    RealBuffer in(fftw_alloc_real(static_cast<size_t>(config.n_fft)));
    ComplexBuffer spec(fftw_alloc_complex(bins));
    std::vector<double> mag(bins);
    for (size_t f = begin; f < end; ++f) {
      const size_t offset = f * static_cast<size_t>(config.hop);
      std::fill(in.get(), in.get() + config.n_fft, 0.0);
      for (size_t i = 0; i < window.size(); ++i) {
        in[i] = window[i] * wave.samples[offset + i];
      }
      plan.Execute(in.get(), spec.get());
      for (size_t k = 0; k < bins; ++k) {
        mag[k] = std::hypot(spec[k][0], spec[k][1]);
      }
      auto row = out.frames.row(f);
      for (size_t m = 0; m < row.size(); ++m) {
        double e = 0.0;
        auto weights = fb.row(m);
        for (size_t k = 0; k < bins; ++k) e += weights[k] * mag[k];
        row[m] = std::log(std::max(e, floor_amp));
      }
    }
  };

  const size_t threads = std::clamp<size_t>(
      static_cast<size_t>(std::max(num_threads, 1)), 1, std::max<size_t>(frames, 1));
  if (threads == 1) {
    worker(0, frames);
  } else {
    std::vector<std::thread> pool;
    const size_t chunk = (frames + threads - 1) / threads;
    for (size_t t = 0; t < threads; ++t) {
      const size_t begin = t * chunk;
      const size_t end = std::min(frames, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (auto &th : pool) th.join();
  }
  return out;
}

std::string SidecarPath(const std::string &mel_path) {
  return mel_path + ".json";
}

std::string EncodeSidecar(const MelConfig &config) {
  nlohmann::ordered_json j;
  j["sample_rate"] = config.sample_rate;
  j["hop"] = config.hop;
  j["win"] = config.win;
  j["n_fft"] = config.n_fft;
  j["bands"] = config.bands;
  j["log_floor"] = config.log_floor();
  j["floor_amplitude"] = config.floor_amplitude;
  j["fmin"] = config.fmin;
  j["fmax"] = config.fmax;
  return j.dump(2) + "\n";
}

MelConfig DecodeSidecar(const std::string &json_text) {
  MelConfig c;
  try {
    const auto j = nlohmann::json::parse(json_text);
    c.sample_rate = j.at("sample_rate").get<int>();
    c.hop = j.at("hop").get<int>();
    c.win = j.at("win").get<int>();
    c.n_fft = j.at("n_fft").get<int>();
    c.bands = j.at("bands").get<int>();
    c.floor_amplitude =
        j.contains("floor_amplitude")
            ? j.at("floor_amplitude").get<double>()
            : std::exp(j.at("log_floor").get<double>());
    c.fmin = j.value("fmin", c.fmin);
    c.fmax = j.value("fmax", c.fmax);
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError(std::string("bad mel sidecar: ") + e.what());
  }
  return c;
}

void CheckSameParameters(const MelConfig &expected, const MelConfig &actual) {
  auto mismatch = [](const char *field, double want, double got) {
    throw ValidationError(std::string("mel sidecar mismatch on ") + field +
                          ": expected " + std::to_string(want) + ", got " +
                          std::to_string(got));
  };
  if (expected.sample_rate != actual.sample_rate) {
    mismatch("sample_rate", expected.sample_rate, actual.sample_rate);
  }
  if (expected.hop != actual.hop) mismatch("hop", expected.hop, actual.hop);
  if (expected.win != actual.win) mismatch("win", expected.win, actual.win);
  if (expected.n_fft != actual.n_fft) {
    mismatch("n_fft", expected.n_fft, actual.n_fft);
  }
  if (expected.bands != actual.bands) {
    mismatch("bands", expected.bands, actual.bands);
  }
  if (std::abs(expected.log_floor() - actual.log_floor()) > 1e-6) {
    mismatch("log_floor", expected.log_floor(), actual.log_floor());
  }
  if (std::abs(expected.fmin - actual.fmin) > 1e-6) {
    mismatch("fmin", expected.fmin, actual.fmin);
  }
  if (std::abs(expected.fmax - actual.fmax) > 1e-6) {
    mismatch("fmax", expected.fmax, actual.fmax);
  }
}

void WriteMel(const MelSpectrogram &mel, const std::string &path) {
  WriteMatrixBinary(mel.frames, path);
  WriteFileBytes(SidecarPath(path), EncodeSidecar(mel.config));
}

MelSpectrogram ReadMel(const std::string &path) {
  MelSpectrogram mel;
  mel.frames = ReadMatrixBinary(path);
  mel.config = DecodeSidecar(ReadFileBytes(SidecarPath(path)));
  if (mel.frames.cols() != static_cast<size_t>(mel.config.bands)) {
    throw ValidationError(path + ": matrix has " +
                          std::to_string(mel.frames.cols()) +
                          " columns but sidecar declares " +
                          std::to_string(mel.config.bands) + " bands");
  }
  return mel;
}

}  // namespace lecgen::mel
