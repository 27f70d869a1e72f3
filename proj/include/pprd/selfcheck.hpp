#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace pprd {

// Named property suites behind the CLI `verify` command. Each suite prints
// one line per invariant ("PASS ..." / "FAIL ... observed=... expected=...")
// to `out` and returns the number of failures.
int verify_distortion(std::ostream& out, std::uint64_t seed);
int verify_bounds(std::ostream& out, std::uint64_t seed);
int verify_sampling(std::ostream& out, std::uint64_t seed);
int verify_codebook(std::ostream& out, std::uint64_t seed);

// Runs the named suite ("distortion", "bounds", "sampling", "codebook",
// "all"); returns the total failure count.
int verify_suite(const std::string& name, std::ostream& out, std::uint64_t seed);

}  // namespace pprd
