#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cheb/sampler.hpp"

namespace cheb::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitBadFlags = 2;
inline constexpr int kExitIo = 3;

/// Entry point of the `cheb` tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Loads the dataset for config from $CHEB_CACHE_DIR if present there,
/// otherwise sieves it (and stores it in the cache when the variable is set).
FrobeniusDataset cached_dataset(const SieveConfig& config, unsigned workers);

/// Validates a file written by the tool (JSON report, CSV table or dataset).
/// Returns an empty optional when valid, the problem otherwise.
std::optional<std::string> check_file(const std::filesystem::path& path);

}  // namespace cheb::cli
