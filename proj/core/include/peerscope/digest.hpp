#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace peerscope {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// Digest of a file's bytes. Throws Error when it cannot be read.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace peerscope
