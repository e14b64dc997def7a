#pragma once

#include <filesystem>
#include <vector>

namespace peerscope {

/// Builds report/ from the stage outputs already in `out_dir`: nine tables
/// and a few SVG charts. Throws Error naming the stage whose output is
/// missing. Returns the written files relative to `out_dir`.
std::vector<std::filesystem::path> write_report(const std::filesystem::path& out_dir);

}  // namespace peerscope
