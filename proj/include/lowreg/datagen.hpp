#pragma once

#include <cstdint>

#include "lowreg/field.hpp"

namespace lowreg {

/// Random field with prescribed Sobolev regularity: coefficient at mode k is
/// (1 + |k|)^(-theta - 1/2) * a_k with a_k uniform on [0,1) + i[0,1). The a_k
/// stream is counter-based, keyed by (seed, k), so coefficients at shared
/// modes are identical across grid sizes.
struct RegularitySpec {
  double theta = 0.0;
  std::uint64_t seed = 0;
  GridPtr grid;
};

Field random_sobolev_field(const RegularitySpec& spec);

/// The uniform draw at mode k; exposed for determinism tests.
complexd mode_amplitude(std::uint64_t seed, const int* k, int dim);

/// Keep modes whose every component lies in [-K_target/2, K_target/2 - 1];
/// the result lives on the coarser grid with K_target modes per axis.
Field truncated_projection(const Field& a, int k_target);

} // namespace lowreg
