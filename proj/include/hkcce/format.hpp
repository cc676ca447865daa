#pragma once

#include <string>

namespace hkcce {

/// 15 significant digits, locale independent; trailing zeros dropped.
std::string format_number(double v);

}  // namespace hkcce
