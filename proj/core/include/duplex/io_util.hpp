#pragma once

#include <string>
#include <vector>

namespace duplex {

std::string read_file(const std::string& path);
std::vector<std::string> read_lines(const std::string& path);

// Write via temp file + rename so readers never observe a partial file.
void atomic_write_file(const std::string& path, const std::string& content);

} // namespace duplex
