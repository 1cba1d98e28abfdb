#pragma once

#include <filesystem>

#include "pinn/net.hpp"

namespace pinn {

/// Binary checkpoint, bit-exact round trip. Layout (all integers and reals
/// little-endian, documented in docs/formats.md):
///   magic   8 bytes  "PINNCKPT"
///   u32     format version (1)
///   u32     activation tag (0 gelu, 1 tanh, 2 sigmoid, 3 relu)
///   u32     number of layer sizes, L+1
///   u32[]   layer sizes, input first
///   f64[]   per weight layer: weights row-major, then biases
void save_checkpoint(const Network& net, const std::filesystem::path& path);

Network load_checkpoint(const std::filesystem::path& path);

} // namespace pinn
