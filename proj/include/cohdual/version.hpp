#pragma once

#include <string_view>

namespace cohdual {
inline constexpr std::string_view kToolName = "cohdual";
inline constexpr std::string_view kToolVersion = "1.0.0";
}  // namespace cohdual
