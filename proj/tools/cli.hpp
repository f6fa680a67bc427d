#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sidonlab::cli {

/// Runs one subcommand. `args` excludes the program name. Returns 0 on success,
/// 1 on a domain error, 2 on a usage error (the grammar is printed to `err`).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

/// Accepts "12345", "1e7", "10^7" and "2*10^6".
std::uint64_t parse_count(std::string_view text);

/// Accepts a comma/space separated list and "lo:hi:step" ranges, e.g. "20:200:10".
std::vector<std::uint64_t> parse_list(std::string_view text);

/// Accepts decimals and fractions such as "1/3".
double parse_real(std::string_view text);

} // namespace sidonlab::cli
