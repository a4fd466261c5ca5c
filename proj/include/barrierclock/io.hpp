#ifndef BARRIERCLOCK_IO_HPP
#define BARRIERCLOCK_IO_HPP

#include <complex>
#include <optional>
#include <string>

namespace barrierclock::io {

/// Shortest-round-trip decimal with 17 significant digits, the fixed width
/// used in every CSV/JSON number the tools emit.
std::string fmt17(double v);

/// fmt17 for an optional cell; empty string when absent (CSV convention).
std::string fmt17_opt(const std::optional<double>& v);

}  // namespace barrierclock::io

#endif
