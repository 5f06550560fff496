// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0
//
// `hpcai500 {validate|score|rank|variation|cluster|scaling}`.
//
// Exit status: 0 success, 1 domain violation, 2 input, parse or usage error.
// Machine-readable output goes to stdout (or the files a command writes),
// diagnostics to stderr.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hpcai500::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr std::string_view kOutputDirEnv = "HPCAI500_OUTPUT_DIR";

enum ExitCode : int { kOk = 0, kDomainViolation = 1, kInputError = 2 };

// Unreadable files, malformed config and similar problems with the inputs
// themselves (exit 2).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Settings from `--config FILE` (JSON). Command-line flags override them;
// HPCAI500_OUTPUT_DIR sits between the config file and the built-in default.
struct Config {
    std::optional<std::filesystem::path> registry_path;
    std::uint64_t seed = 42;
    double threshold = 0.02;
    int k = 3;
    double perplexity = 4.0;
    std::optional<std::filesystem::path> output_dir;
};

// Keys: registry, seed, threshold, k, perplexity, output_dir. A relative
// registry path resolves against the config file's directory. Throws
// InputError.
Config load_config(const std::filesystem::path& path);

// `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hpcai500::cli
