#pragma once

namespace mint {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mint
