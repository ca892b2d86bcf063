#pragma once

namespace towerforge {

inline constexpr const char* kToolName = "towerforge";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

}  // namespace towerforge
