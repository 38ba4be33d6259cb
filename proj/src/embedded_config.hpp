#pragma once

#include <string_view>

// Contents of config/*.json, generated into the build tree by CMake.
namespace codeprov::embedded {

std::string_view lcs_rules_json();
std::string_view cwe_map_json();
std::string_view task_matrix_json();

}  // namespace codeprov::embedded
