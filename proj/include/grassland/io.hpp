#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace grassland {

// Tiny binary/text file helpers; all throw ErrorKind::Io on failure.
void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace grassland
