#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace grassland {

// FNV-1a 64-bit. Used for golden-image hashes and config digests.
inline std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t fnv1a64(std::string_view text) { return fnv1a64(text.data(), text.size()); }

std::string to_hex(std::uint64_t value);

}  // namespace grassland
