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

#ifndef LECGEN_MEL_WAV_IO_H_
#define LECGEN_MEL_WAV_IO_H_

#include <string>
#include <vector>

namespace lecgen::mel {

struct Waveform {
  std::vector<float> samples;
  int sample_rate = 0;

  double duration_seconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

// RIFF WAVE, PCM 16-bit or IEEE float 32-bit. Multi-channel input is
// averaged down to mono.
Waveform DecodeWav(const std::string &bytes);
Waveform ReadWav(const std::string &path);

// Mono PCM 16-bit; samples are clipped to [-1, 1].
std::string EncodeWavPcm16(const Waveform &w);
void WriteWavPcm16(const Waveform &w, const std::string &path);

}  // namespace lecgen::mel

#endif  // LECGEN_MEL_WAV_IO_H_
