#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kpwave/config.hpp"
#include "kpwave/solver.hpp"

namespace kpwave {

// Snapshot file layout (both formats share the header):
//
//   KPSNAP 1
//   <nx> <ny>
//   <xmin> <xmax> <ymin> <ymax>
//   time <t>
//   equation <tag>
//   config <hex digest>
//   DATA
//
// f64le: the header lines as written above, then nx*ny IEEE-754 binary64 values in
// little-endian byte order, row-major with y as the slow index.
// csv: every header line prefixed with "# ", then ny lines of nx comma-separated
// values printed with 17 significant digits.
//
// Header numbers use 17 significant digits so geometry and time round-trip exactly.

void write_snapshot(const Snapshot& s, const std::string& path, SnapshotFormat format);

/// Serialises into memory; `write_snapshot` writes exactly these bytes.
std::string encode_snapshot(const Snapshot& s, SnapshotFormat format);

/// Detects the format from the first bytes. Throws FormatError on a magic mismatch,
/// truncated or oversized payload or malformed header, and UnsupportedVersion for
/// `KPSNAP n` with n != 1.
Snapshot read_snapshot(const std::string& path);
Snapshot decode_snapshot(std::string_view bytes);

/// File name used by `solve`, e.g. "quadratic-plus_t2.000000.f64le".
std::string snapshot_file_name(const Snapshot& s, SnapshotFormat format);

/// Writes the diagnostics series as CSV: time,mean,l2_norm,min,max,peak_x,peak_y,peak_value.
void write_diagnostics_csv(const std::vector<Diagnostics>& series, const std::string& path);

}  // namespace kpwave
