#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace fieldscope::io {

// Opens for reading or throws Error{input_not_found}.
std::ifstream open_input(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

// Writes through a temporary sibling file and renames it into place, so a
// reader never observes a partially written output.
void write_atomic(const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& writer);
void write_atomic(const std::filesystem::path& path, std::string_view contents);

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace fieldscope::io
