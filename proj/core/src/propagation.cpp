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
#include "kfpue/propagation.hpp"

#include <cmath>
#include <numbers>

#include "kfpue/errors.hpp"

namespace kfpue
{

double LinkModel::link_constant_db() const
{
  return 10.0 * std::log10(pt * gt * gr * lambda * lambda) -
         20.0 * std::log10(4.0 * std::numbers::pi);
}

void LinkModel::validate() const
{
  const auto positive = [](double v) {return std::isfinite(v) && v > 0.0;};
  if (!positive(pt) || !positive(gt) || !positive(gr) || !positive(lambda) ||
    !positive(alpha))
  {
    throw InvalidInput("LinkModel: pt, gt, gr, lambda and alpha must all be finite and > 0");
  }
}

double received_power_db(const LinkModel & link, double distance)
{
  if (!std::isfinite(distance) || distance <= 0.0) {
    throw InvalidInput("received_power_db: distance must be finite and > 0");
  }
  return -10.0 * link.alpha * std::log10(distance) + link.link_constant_db();
}

RssSample sample_rss(
  const LinkModel & link, double distance, const NoiseModel & noise, RandomStream & rng,
  int anchor_id, double timestamp)
{
  if (!std::isfinite(noise.sigma_db) || noise.sigma_db < 0.0) {
    throw InvalidInput("sample_rss: sigma_db must be finite and >= 0");
  }
  const double clean = received_power_db(link, distance);
  return RssSample{clean + rng.gaussian(noise.sigma_db), anchor_id, timestamp};
}

double distance_from_rss(const LinkModel & link, double pr_db)
{
  if (!std::isfinite(pr_db)) {
    throw InvalidInput("distance_from_rss: received power is non-finite");
  }
  return std::pow(10.0, (link.link_constant_db() - pr_db) / (10.0 * link.alpha));
}

NoiseModel sigma_from_snr(double snr_db, double calibration_db)
{
  if (!std::isfinite(calibration_db) || calibration_db <= 0.0) {
    throw InvalidInput("sigma_from_snr: calibration must be finite and > 0");
  }
  if (!std::isfinite(snr_db)) {
    throw InvalidInput("sigma_from_snr: snr is non-finite");
  }
  return NoiseModel{calibration_db * std::pow(10.0, -snr_db / 20.0)};
}

}  // namespace kfpue
