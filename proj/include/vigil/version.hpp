#pragma once

namespace vigil {

inline constexpr const char* kEngineVersion = "1.0.0";

}  // namespace vigil
