#pragma once

#include <filesystem>
#include <string_view>

namespace brinkman {

/// Writes `contents` to a sibling temporary file and renames it over `path`,
/// so readers never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace brinkman
