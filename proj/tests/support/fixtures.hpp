// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <unistd.h>

#include <filesystem>
#include <string>

#include "wfsem/text.hpp"

namespace wfsem::testing {

inline std::filesystem::path fixture_path(const std::string& relative) {
  return std::filesystem::path(WFSEM_FIXTURES) / relative;
}

inline std::string read_fixture(const std::string& relative) { return read_file(fixture_path(relative).string()); }

// Fresh, empty scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("wfsem-test-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace wfsem::testing
