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

#include "mel/wav_io.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>

#include "common/error.h"
#include "common/matrix.h"

namespace lecgen::mel {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint16_t LoadU16(const uint8_t *p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void AppendU16(std::string *out, uint16_t v) {
  out->push_back(static_cast<char>(v & 0xff));
  out->push_back(static_cast<char>(v >> 8));
}

}  // namespace

Waveform DecodeWav(const std::string &bytes) {
  const auto *data = reinterpret_cast<const uint8_t *>(bytes.data());
  const size_t size = bytes.size();
  if (size < 12 || std::memcmp(data, "RIFF", 4) != 0 ||
      std::memcmp(data + 8, "WAVE", 4) != 0) {
    throw ValidationError("not a RIFF/WAVE file");
  }
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  const uint8_t *pcm = nullptr;
  size_t pcm_size = 0;
  size_t pos = 12;
  while (pos + 8 <= size) {
    const uint8_t *chunk = data + pos;
    const uint32_t chunk_size = LoadU32(chunk + 4);
    const size_t body = pos + 8;
    const size_t available = std::min<size_t>(chunk_size, size - body);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (available < 16) throw ValidationError("WAVE fmt chunk too short");
      format = LoadU16(data + body);
      channels = LoadU16(data + body + 2);
      rate = LoadU32(data + body + 4);
      bits = LoadU16(data + body + 14);
      if (format == kFormatExtensible && available >= 26) {
        format = LoadU16(data + body + 24);
      }
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      pcm = data + body;
      pcm_size = available;
    }
    pos = body + chunk_size + (chunk_size & 1u);
  }
  if (channels == 0 || rate == 0) throw ValidationError("WAVE missing fmt chunk");
  if (!pcm) throw ValidationError("WAVE missing data chunk");
  const bool is_pcm16 = format == kFormatPcm && bits == 16;
  const bool is_f32 = format == kFormatFloat && bits == 32;
  if (!is_pcm16 && !is_f32) {
    throw ValidationError("unsupported WAVE encoding (format " +
                          std::to_string(format) + ", " +
                          std::to_string(bits) + " bits)");
  }
  const size_t bytes_per_sample = bits / 8;
  const size_t frame_bytes = bytes_per_sample * channels;
  const size_t frames = pcm_size / frame_bytes;
  Waveform w;
  w.sample_rate = static_cast<int>(rate);
  w.samples.resize(frames);
  for (size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (size_t c = 0; c < channels; ++c) {
      const uint8_t *p = pcm + i * frame_bytes + c * bytes_per_sample;
      if (is_pcm16) {
        acc += static_cast<int16_t>(LoadU16(p)) / 32768.0;
      } else {
        acc += LoadF32(p);
      }
    }
    w.samples[i] = static_cast<float>(acc / channels);
  }
  return w;
}

Waveform ReadWav(const std::string &path) {
  try {
    return DecodeWav(ReadFileBytes(path));
  } catch (const ValidationError &e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string EncodeWavPcm16(const Waveform &w) {
  if (w.sample_rate <= 0) throw ValidationError("sample rate must be positive");
  const auto data_bytes = static_cast<uint32_t>(w.samples.size() * 2);
  std::string out = "RIFF";
  AppendU32(&out, 36 + data_bytes);
  out += "WAVEfmt ";
  AppendU32(&out, 16);
  AppendU16(&out, kFormatPcm);
  AppendU16(&out, 1);
  AppendU32(&out, static_cast<uint32_t>(w.sample_rate));
  AppendU32(&out, static_cast<uint32_t>(w.sample_rate) * 2);
  AppendU16(&out, 2);
  AppendU16(&out, 16);
  out += "data";
  AppendU32(&out, data_bytes);
  for (float s : w.samples) {
    const double scaled = std::lround(static_cast<double>(s) * 32768.0);
    const auto q = static_cast<int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    AppendU16(&out, static_cast<uint16_t>(q));
  }
  return out;
}

void WriteWavPcm16(const Waveform &w, const std::string &path) {
  WriteFileBytes(path, EncodeWavPcm16(w));
}

}  // namespace lecgen::mel
