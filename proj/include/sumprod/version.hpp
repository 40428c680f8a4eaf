#pragma once

namespace sumprod {

inline constexpr const char* kVersion = "1.0.0";

/// Version of the fixed witness-pool definition; bump when pool
/// membership rules change so reports stay comparable.
inline constexpr int kWitnessPoolVersion = 1;

} // namespace sumprod
