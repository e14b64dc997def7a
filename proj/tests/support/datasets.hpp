#pragma once

#include <string>

#include "peerscope/model.hpp"
#include "peerscope/rng.hpp"

namespace testing_support {

/// Three well-separated Gaussian-like blobs (sum of uniforms) in `dims`
/// dimensions plus `noise_dims` pure-noise columns. Class c is centred at
/// 4c on the first informative axis and -4c on the second.
inline peerscope::Dataset blobs(std::size_t per_class, std::uint64_t seed, std::size_t dims = 4,
                                std::size_t noise_dims = 2) {
  peerscope::Rng rng(seed);
  peerscope::Dataset d;
  for (std::size_t j = 0; j < dims + noise_dims; ++j) d.feature_names.push_back("f" + std::to_string(j));
  auto jitter = [&] { return rng.uniform() + rng.uniform() + rng.uniform() - 1.5; };
  for (std::size_t i = 0; i < per_class; ++i) {
    for (auto c : peerscope::kAllCategories) {
      const double centre = 4.0 * static_cast<double>(peerscope::index_of(c));
      std::vector<double> row;
      for (std::size_t j = 0; j < dims; ++j) {
        const double sign = j % 2 == 0 ? 1.0 : -1.0;
        row.push_back(sign * centre + jitter());
      }
      for (std::size_t j = 0; j < noise_dims; ++j) row.push_back(10.0 * rng.uniform());
      d.add(std::move(row), c);
    }
  }
  return d;
}

}  // namespace testing_support
