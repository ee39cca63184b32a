#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qrsum::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240601;
inline constexpr const char* kWorkersEnv = "QRSUM_WORKERS";

/// args[0] is the program name. Returns 0 on success, 1 when a checked
/// inequality fails or a decomposition is found, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qrsum::cli
