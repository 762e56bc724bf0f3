#include "kpwave/snapshot_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace kpwave {

namespace {

constexpr std::string_view kMagic = "KPSNAP";
constexpr int kVersion = 1;
constexpr std::size_t kMaxSamples = std::size_t{1} << 28;

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xFFu) << (8 * (7 - i));
    return r;
  }
}

std::vector<std::string> header_lines(const Snapshot& s) {
  const auto& g = s.field.geometry;
  const auto& d = g.domain;
  return {
      std::string(kMagic) + " " + std::to_string(kVersion),
      std::to_string(g.nx) + " " + std::to_string(g.ny),
      num17(d.x_min) + " " + num17(d.x_max) + " " + num17(d.y_min) + " " + num17(d.y_max),
      "time " + num17(s.sim_time),
      "equation " + s.equation,
      "config " + s.digest,
      "DATA",
  };
}

void check_writable(const Snapshot& s) {
  const auto& g = s.field.geometry;
  if (g.nx == 0 || g.ny == 0 || s.field.values.size() != g.size()) {
    throw InputError("snapshot field does not match its geometry");
  }
  for (const auto& text : {s.equation, s.digest}) {
    if (text.find_first_of(" \t\r\n") != std::string::npos) {
      throw InputError("snapshot tags must not contain whitespace");
    }
  }
}

// Splits off one '\n'-terminated line; throws FormatError if there is none.
std::string_view take_line(std::string_view& rest, const char* what) {
  const auto nl = rest.find('\n');
  if (nl == std::string_view::npos) {
    throw FormatError(std::string("truncated snapshot header: missing ") + what);
  }
  std::string_view line = rest.substr(0, nl);
  rest.remove_prefix(nl + 1);
  return line;
}

std::string_view strip_comment_prefix(std::string_view line, bool csv) {
  if (!csv) return line;
  if (line.substr(0, 2) != "# ") throw FormatError("csv header line must start with '# '");
  return line.substr(2);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    const std::size_t j = std::min(s.find(' ', i), s.size());
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_double(std::string_view s, const char* what) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw FormatError(std::string("malformed ") + what + ": '" + std::string(s) + "'");
  }
  return v;
}

std::size_t parse_dim(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc::result_out_of_range) throw FormatError("snapshot dimension overflow");
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw FormatError("malformed snapshot dimension '" + std::string(s) + "'");
  }
  if (v == 0) throw FormatError("snapshot dimensions must be positive");
  if (v > kMaxSamples) throw FormatError("snapshot dimension overflow");
  return static_cast<std::size_t>(v);
}

std::string_view keyed(std::string_view line, std::string_view key) {
  if (line.substr(0, key.size()) != key ||
      (line.size() > key.size() && line[key.size()] != ' ')) {
    throw FormatError("expected '" + std::string(key) + "' header line");
  }
  line.remove_prefix(std::min(line.size(), key.size() + 1));
  return line;
}

Snapshot decode_header(std::string_view& rest, bool csv) {
  std::string_view magic = strip_comment_prefix(take_line(rest, "magic"), csv);
  const auto parts = split_ws(magic);
  if (parts.size() != 2 || parts[0] != kMagic) throw FormatError("not a snapshot file");
  if (parts[1] != std::to_string(kVersion)) {
    throw UnsupportedVersion("unsupported snapshot version '" + std::string(parts[1]) + "'");
  }

  const auto dims = split_ws(strip_comment_prefix(take_line(rest, "dimensions"), csv));
  if (dims.size() != 2) throw FormatError("expected '<nx> <ny>' header line");
  Geometry g;
  g.nx = parse_dim(dims[0]);
  g.ny = parse_dim(dims[1]);
  if (g.nx > kMaxSamples / g.ny) throw FormatError("snapshot dimension overflow");

  const auto box = split_ws(strip_comment_prefix(take_line(rest, "domain"), csv));
  if (box.size() != 4) throw FormatError("expected '<xmin> <xmax> <ymin> <ymax>' header line");
  g.domain = {parse_double(box[0], "domain"), parse_double(box[1], "domain"),
              parse_double(box[2], "domain"), parse_double(box[3], "domain")};

  Snapshot s;
  s.field.geometry = g;
  s.sim_time =
      parse_double(keyed(strip_comment_prefix(take_line(rest, "time"), csv), "time"), "time");
  s.equation = std::string(keyed(strip_comment_prefix(take_line(rest, "equation"), csv), "equation"));
  s.digest = std::string(keyed(strip_comment_prefix(take_line(rest, "config"), csv), "config"));
  if (strip_comment_prefix(take_line(rest, "DATA marker"), csv) != "DATA") {
    throw FormatError("expected 'DATA' line");
  }
  return s;
}

void decode_f64le(std::string_view rest, Snapshot& s) {
  const std::size_t n = s.field.geometry.size();
  if (rest.size() < n * 8) throw FormatError("truncated snapshot payload");
  if (rest.size() > n * 8) throw FormatError("trailing bytes after snapshot payload");
  s.field.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, rest.data() + 8 * i, 8);
    s.field.values[i] = std::bit_cast<double>(to_little_endian(bits));
  }
}

void decode_csv(std::string_view rest, Snapshot& s) {
  const auto& g = s.field.geometry;
  s.field.values.clear();
  s.field.values.reserve(g.size());
  for (std::size_t row = 0; row < g.ny; ++row) {
    if (rest.empty()) throw FormatError("truncated snapshot payload");
    const auto nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest.remove_prefix(nl == std::string_view::npos ? rest.size() : nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t count = 0;
    std::size_t pos = 0;
    while (true) {
      const auto comma = line.find(',', pos);
      const auto cell = line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos);
      if (++count > g.nx) throw FormatError("too many values in csv row");
      s.field.values.push_back(parse_double(cell, "csv value"));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (count != g.nx) throw FormatError("truncated snapshot payload: short csv row");
  }
  if (rest.find_first_not_of("\r\n") != std::string_view::npos) {
    throw FormatError("trailing data after csv payload");
  }
}

}  // namespace

std::string encode_snapshot(const Snapshot& s, SnapshotFormat format) {
  check_writable(s);
  const bool csv = format == SnapshotFormat::csv;
  std::string out;
  for (const auto& line : header_lines(s)) {
    if (csv) out += "# ";
    out += line;
    out += '\n';
  }
  const auto& g = s.field.geometry;
  if (!csv) {
    const std::size_t base = out.size();
    out.resize(base + 8 * g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(s.field.values[i]));
      std::memcpy(out.data() + base + 8 * i, &bits, 8);
    }
    return out;
  }
  out.reserve(out.size() + g.size() * 25);
  for (std::size_t iy = 0; iy < g.ny; ++iy) {
    for (std::size_t ix = 0; ix < g.nx; ++ix) {
      if (ix) out += ',';
      out += num17(s.field(ix, iy));
    }
    out += '\n';
  }
  return out;
}

Snapshot decode_snapshot(std::string_view bytes) {
  const bool csv = bytes.substr(0, 2) == "# ";
  std::string_view rest = bytes;
  Snapshot s = decode_header(rest, csv);
  if (csv) {
    decode_csv(rest, s);
  } else {
    decode_f64le(rest, s);
  }
  return s;
}

void write_snapshot(const Snapshot& s, const std::string& path, SnapshotFormat format) {
  const std::string bytes = encode_snapshot(s, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open snapshot '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_snapshot(buf.str());
}

std::string snapshot_file_name(const Snapshot& s, SnapshotFormat format) {
  char t[64];
  std::snprintf(t, sizeof t, "%.6f", s.sim_time);
  return s.equation + "_t" + t + "." + std::string(to_string(format));
}

void write_diagnostics_csv(const std::vector<Diagnostics>& series, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << "time,mean,l2_norm,min,max,peak_x,peak_y,peak_value\n";
  for (const auto& d : series) {
    out << num17(d.time) << ',' << num17(d.mean) << ',' << num17(d.l2_norm) << ','
        << num17(d.min) << ',' << num17(d.max) << ',';
    if (d.peak) {
      out << num17(d.peak->x) << ',' << num17(d.peak->y) << ',' << num17(d.peak->value);
    } else {
      out << "flat,flat,flat";
    }
    out << '\n';
  }
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace kpwave
