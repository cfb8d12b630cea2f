// Copyright 2026 The kfpue Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef KFPUE__PROPAGATION_HPP_
#define KFPUE__PROPAGATION_HPP_

#include "kfpue/random.hpp"

namespace kfpue
{

/// Free-space link budget. Powers are linear (W), gains dimensionless.
struct LinkModel
{
  double pt{1.0};
  double gt{1.0};
  double gr{1.0};
  double lambda{0.333};  ///< wavelength (m), ~900 MHz
  double alpha{2.0};     ///< path-loss exponent

  /// 10 log10(pt gt gr lambda^2) - 20 log10(4 pi), in dB.
  double link_constant_db() const;

  void validate() const;

  friend bool operator==(const LinkModel &, const LinkModel &) = default;
};

struct RssSample
{
  double pr_db{0.0};
  int anchor_id{0};
  double timestamp{0.0};
};

/// Zero-mean Gaussian noise added to received power in the dB domain.
struct NoiseModel
{
  double sigma_db{0.0};
};

/// Noiseless received power at `distance` metres: -10 alpha log10(d) + A_link.
double received_power_db(const LinkModel & link, double distance);

/// received_power_db plus one N(0, sigma_db^2) draw from `rng`.
RssSample sample_rss(
  const LinkModel & link, double distance, const NoiseModel & noise, RandomStream & rng,
  int anchor_id = 0, double timestamp = 0.0);

/// Inverse of received_power_db: 10^((A_link - pr_db) / (10 alpha)).
double distance_from_rss(const LinkModel & link, double pr_db);

/// Maps an SNR (dB) to RSS noise: sigma_db = calibration_db * 10^(-snr_db / 20).
NoiseModel sigma_from_snr(double snr_db, double calibration_db);

}  // namespace kfpue

#endif  // KFPUE__PROPAGATION_HPP_
