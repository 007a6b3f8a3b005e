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

#ifndef LECGEN_MEL_MEL_H_
#define LECGEN_MEL_MEL_H_

#include <string>
#include <vector>

#include "common/matrix.h"
#include "mel/wav_io.h"

namespace lecgen::mel {

// 80 ms windows and 12.5 ms hops at 16 kHz.
struct MelConfig {
  int sample_rate = 16000;
  int n_fft = 1024;
  int win = 800;
  int hop = 200;
  int bands = 80;
  double fmin = 0.0;
  double fmax = 8000.0;
  double floor_amplitude = 1e-5;

  double log_floor() const;
  void Validate() const;
  bool operator==(const MelConfig &) const = default;
};

// HTK mel scale.
double HzToMel(double hz);
double MelToHz(double mel);

// Center frequency (Hz) of each triangular band.
std::vector<double> MelBandCenters(int bands, double fmin, double fmax);

// bands x (n_fft/2 + 1) triangular filters, peak weight 1 at each center.
Matrix MelFilterbank(int bands, int n_fft, int sample_rate, double fmin,
                     double fmax);

// 1 + floor((len - win) / hop), or 0 when len < win. No center padding.
size_t FrameCount(size_t num_samples, int win, int hop);

struct MelSpectrogram {
  Matrix frames;  // frames x bands, natural-log magnitudes
  MelConfig config;
};

// Hann-windowed magnitude STFT, mel projection, log with floor. The result
// does not depend on `num_threads`.
MelSpectrogram ComputeMelSpectrogram(const Waveform &wave,
                                     const MelConfig &config = {},
                                     int num_threads = 1);

// Writes the binary matrix to `path` and the parameters to `path + ".json"`.
void WriteMel(const MelSpectrogram &mel, const std::string &path);
MelSpectrogram ReadMel(const std::string &path);
std::string SidecarPath(const std::string &mel_path);

std::string EncodeSidecar(const MelConfig &config);
MelConfig DecodeSidecar(const std::string &json_text);

// Throws ValidationError naming the first field that differs.
void CheckSameParameters(const MelConfig &expected, const MelConfig &actual);

}  // namespace lecgen::mel

#endif  // LECGEN_MEL_MEL_H_
