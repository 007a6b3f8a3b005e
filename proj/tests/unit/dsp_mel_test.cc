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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

#include "common/error.h"
#include "common/matrix.h"
#include "common/rng.h"
#include "mel/mel.h"
#include "mel/wav_io.h"
#include "support/oracles.h"
#include "support/test_util.h"

namespace lecgen::mel {
namespace {

Waveform Tone(double hz, double amplitude, size_t n, int sr = 16000) {
  Waveform w;
  w.sample_rate = sr;
  w.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    w.samples[i] = static_cast<float>(
        amplitude * std::sin(2.0 * std::numbers::pi * hz * i / sr));
  }
  return w;
}

std::vector<double> AsDouble(const Waveform &w) {
  return {w.samples.begin(), w.samples.end()};
}

// Minimal RIFF writer for the float32 and stereo decoding cases.
std::string RiffBytes(uint16_t format, uint16_t channels, uint16_t bits,
                      int sr, const std::string &data) {
  std::string out;
  auto u32 = [&](uint32_t v) { out.append(reinterpret_cast<char *>(&v), 4); };
  auto u16 = [&](uint16_t v) { out.append(reinterpret_cast<char *>(&v), 2); };
  out += "RIFF";
  u32(static_cast<uint32_t>(36 + data.size()));
  out += "WAVEfmt ";
  u32(16);
  u16(format);
  u16(channels);
  u32(static_cast<uint32_t>(sr));
  u32(static_cast<uint32_t>(sr * channels * bits / 8));
  u16(static_cast<uint16_t>(channels * bits / 8));
  u16(bits);
  out += "data";
  u32(static_cast<uint32_t>(data.size()));
  out += data;
  return out;
}

TEST(MelScaleTest, HtkFormula) {
  EXPECT_NEAR(HzToMel(700.0), 2595.0 * std::log10(2.0), 1e-9);
  EXPECT_NEAR(HzToMel(700.0), 781.17, 0.01);
  for (double hz : {0.0, 100.0, 440.0, 4000.0, 8000.0}) {
    EXPECT_NEAR(MelToHz(HzToMel(hz)), hz, 1e-9);
  }
}

TEST(FilterbankTest, TriangleShape) {
  const Matrix fb = MelFilterbank(80, 1024, 16000, 0.0, 8000.0);
  ASSERT_EQ(fb.rows(), 80u);
  ASSERT_EQ(fb.cols(), 513u);
  for (size_t b = 0; b < fb.rows(); ++b) {
    double peak = 0.0;
    for (double w : fb.row(b)) {
      ASSERT_GE(w, 0.0);
      ASSERT_LE(w, 1.0);
      peak = std::max(peak, w);
    }
    EXPECT_GT(peak, 0.0) << "band " << b << " covers no FFT bin";
  }
  const auto centers = MelBandCenters(80, 0.0, 8000.0);
  EXPECT_TRUE(std::is_sorted(centers.begin(), centers.end()));
}

TEST(FrameCountTest, MatchesEnumeration) {
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const size_t len = static_cast<size_t>(rng.UniformInt(0, 50000));
    const int win = static_cast<int>(rng.UniformInt(1, 2048));
    const int hop = static_cast<int>(rng.UniformInt(1, 1024));
    ASSERT_EQ(FrameCount(len, win, hop), oracle::EnumerateFrames(len, win, hop));
  }
}

TEST(MelSpectrogramTest, SilenceIsLogFloor) {
  Waveform w;
  w.sample_rate = 16000;
  w.samples.assign(16000, 0.0f);
  const MelConfig cfg;
  const auto mel = ComputeMelSpectrogram(w, cfg);
  ASSERT_EQ(mel.frames.rows(), FrameCount(16000, cfg.win, cfg.hop));
  ASSERT_EQ(mel.frames.cols(), 80u);
  for (double v : mel.frames.data()) ASSERT_EQ(v, cfg.log_floor());
}

TEST(MelSpectrogramTest, MatchesDirectDftOracle) {
  const MelConfig cfg;
  const Waveform w = Tone(440.0, 0.5, 4000);
  const auto mel = ComputeMelSpectrogram(w, cfg);
  const auto x = AsDouble(w);
  for (size_t f : {size_t{0}, size_t{7}, mel.frames.rows() - 1}) {
    const auto ref = oracle::MelFrame(x, f * cfg.hop, cfg.win, cfg.n_fft,
                                      cfg.sample_rate, cfg.bands, cfg.fmin,
                                      cfg.fmax, cfg.floor_amplitude);
    for (size_t b = 0; b < ref.size(); ++b) {
      ASSERT_NEAR(mel.frames(f, b), ref[b], 1e-7) << "frame " << f << " band " << b;
    }
  }
}

TEST(MelSpectrogramTest, TonePeaksNearAnalyticBand) {
  const MelConfig cfg;
  for (double hz : {220.0, 440.0, 1000.0, 3000.0}) {
    const auto mel = ComputeMelSpectrogram(Tone(hz, 0.5, 8000), cfg);
    const auto row = mel.frames.row(3);
    const auto peak = static_cast<long>(
        std::max_element(row.begin(), row.end()) - row.begin());
    const auto expected = static_cast<long>(
        oracle::NearestMelBand(hz, cfg.bands, cfg.fmin, cfg.fmax));
    EXPECT_LE(std::labs(peak - expected), 1) << hz << " Hz";
  }
}

TEST(MelSpectrogramTest, DoublingAmplitudeAddsLogTwo) {
  const MelConfig cfg;
  const auto a = ComputeMelSpectrogram(Tone(440.0, 0.25, 6000), cfg);
  const auto b = ComputeMelSpectrogram(Tone(440.0, 0.5, 6000), cfg);
  size_t checked = 0;
  for (size_t i = 0; i < a.frames.size(); ++i) {
    if (a.frames.data()[i] > cfg.log_floor()) {
      ASSERT_NEAR(b.frames.data()[i] - a.frames.data()[i], std::log(2.0), 1e-4);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(MelSpectrogramTest, ThreadCountDoesNotChangeResult) {
  Rng rng(4);
  Waveform w;
  w.sample_rate = 16000;
  for (int i = 0; i < 20000; ++i) {
    w.samples.push_back(static_cast<float>(rng.NextUnit() - 0.5));
  }
  const auto one = ComputeMelSpectrogram(w, {}, 1);
  const auto many = ComputeMelSpectrogram(w, {}, 7);
  EXPECT_EQ(one.frames, many.frames);
}

TEST(MelSpectrogramTest, RejectsBadInput) {
  const MelConfig cfg;
  EXPECT_THROW(ComputeMelSpectrogram(Tone(440, 0.5, 100), cfg), ValidationError);
  EXPECT_THROW(ComputeMelSpectrogram(Tone(440, 0.5, 4000, 22050), cfg),
               ValidationError);
  Waveform w = Tone(440, 0.5, 4000);
  w.samples[10] = NAN;
  EXPECT_THROW(ComputeMelSpectrogram(w, cfg), ValidationError);
  MelConfig bad;
  bad.win = 2048;
  EXPECT_THROW(bad.Validate(), ValidationError);
  bad = MelConfig{};
  bad.fmax = 9000;
  EXPECT_THROW(bad.Validate(), ValidationError);
}

TEST(MelIoTest, WriteReadWithSidecar) {
  testutil::TempDir dir;
  const auto mel = ComputeMelSpectrogram(Tone(440, 0.5, 4000));
  WriteMel(mel, dir / "m.bin");
  const auto back = ReadMel(dir / "m.bin");
  EXPECT_EQ(back.config, mel.config);
  ASSERT_EQ(back.frames.rows(), mel.frames.rows());
  for (size_t i = 0; i < mel.frames.size(); ++i) {
    EXPECT_EQ(back.frames.data()[i],
              static_cast<double>(static_cast<float>(mel.frames.data()[i])));
  }
  const std::string sidecar = ReadFileBytes(SidecarPath(dir / "m.bin"));
  EXPECT_NE(sidecar.find("\"hop\": 200"), std::string::npos) << sidecar;
}

TEST(MelIoTest, SidecarMismatchIsReported) {
  MelConfig other;
  other.hop = 256;
  try {
    CheckSameParameters(MelConfig{}, other);
    FAIL();
  } catch (const ValidationError &e) {
    EXPECT_NE(std::string(e.what()).find("hop"), std::string::npos);
  }
  EXPECT_NO_THROW(CheckSameParameters(MelConfig{}, MelConfig{}));
}

TEST(WavTest, Pcm16RoundTrip) {
  const Waveform w = Tone(300, 0.8, 1000);
  const Waveform back = DecodeWav(EncodeWavPcm16(w));
  EXPECT_EQ(back.sample_rate, 16000);
  ASSERT_EQ(back.samples.size(), w.samples.size());
  for (size_t i = 0; i < w.samples.size(); ++i) {
    EXPECT_NEAR(back.samples[i], w.samples[i], 1.0 / 32767);
  }
}

TEST(WavTest, Float32AndStereo) {
  const float mono[] = {0.25f, -0.5f, 1.0f};
  std::string data(reinterpret_cast<const char *>(mono), sizeof(mono));
  Waveform w = DecodeWav(RiffBytes(3, 1, 32, 8000, data));
  EXPECT_EQ(w.sample_rate, 8000);
  EXPECT_EQ(w.samples, (std::vector<float>{0.25f, -0.5f, 1.0f}));

  const int16_t stereo[] = {16384, 0, -16384, -16384};
  data.assign(reinterpret_cast<const char *>(stereo), sizeof(stereo));
  w = DecodeWav(RiffBytes(1, 2, 16, 8000, data));
  ASSERT_EQ(w.samples.size(), 2u);
  EXPECT_NEAR(w.samples[0], 0.25f, 1e-4);
  EXPECT_NEAR(w.samples[1], -0.5f, 1e-4);
}

TEST(WavTest, RejectsGarbage) {
  EXPECT_THROW(DecodeWav("not a wav file at all"), ValidationError);
  EXPECT_THROW(DecodeWav(RiffBytes(1, 1, 8, 8000, "abcd")), ValidationError);
}

}  // namespace
}  // namespace lecgen::mel
