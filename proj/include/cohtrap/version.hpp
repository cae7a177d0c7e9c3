// version.hpp

#pragma once

#include <string_view>

namespace cohtrap {

inline constexpr std::string_view kVersion = "1.0.0";

} // namespace cohtrap
