#ifndef DRIESZ_TOOLS_CLI_HPP
#define DRIESZ_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>

namespace driesz::cli {

/// Seed used when --seed is not given.
inline constexpr std::uint64_t kDefaultSeed = 1729;

/// Runs one command line. Exit codes: 0 success, 1 bad arguments, domain or hypothesis
/// violation, 2 file I/O failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace driesz::cli

#endif
