#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "rocscale/roc.hpp"

namespace rocscale::io {

/// Loads a `score,label` CSV pool. Scores must parse as decimals in [0,1]
/// and labels as exactly 0 or 1; violations raise ParseError naming the
/// 1-based data row. A header-only file raises EmptyInputError.
ScorePool load_pool(const std::filesystem::path& path);

/// Loads a JSON curve spec. Supported types: empirical (pool_path, resolved
/// relative to the spec file), points, linear_slope (alpha), power (gamma,
/// optional grid), two_segment (breakpoint [F, T]). Unknown keys and unknown
/// types raise SpecError naming the offending field.
RocCurve load_roc_spec(const std::filesystem::path& path);

/// Writes a curve as a `points` spec; reloading gives a point-for-point
/// identical curve.
void write_roc_spec(const RocCurve& curve, const std::filesystem::path& path);

/// Serializes a double with 17 significant digits so text round-trips are
/// bit-exact.
std::string format_double(double v);

/// FNV-1a 64-bit digest of a file's bytes, as fixed-width hex.
std::string file_digest(const std::filesystem::path& path);

}  // namespace rocscale::io
