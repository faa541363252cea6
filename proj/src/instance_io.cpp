#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "diskdense/error.hpp"
#include "diskdense/geom.hpp"

namespace diskdense {
namespace {

constexpr std::string_view kNamePrefix = "# name:";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  fail(ErrorCode::kParse, "line " + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_number(std::string_view field, std::size_t line, const char* what) {
  field = trim(field);
  T value{};
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    parse_error(line, std::string("bad ") + what + " '" + std::string(field) +
                          "'");
  }
  return value;
}

void append_double(std::string& out, double v) {
  std::array<char, 32> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), ptr);
}

}  // namespace

Instance parse_instance(const std::string& text, std::string name) {
  std::vector<Disk> disks;
  std::vector<std::size_t> line_of;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with(kNamePrefix)) {
        name = std::string(trim(line.substr(kNamePrefix.size())));
      }
      continue;
    }
    std::array<std::string_view, 4> fields;
    std::size_t count = 0;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      if (count == fields.size()) parse_error(lineno, "expected 4 fields");
      fields[count++] = line.substr(start, comma == std::string_view::npos
                                               ? std::string_view::npos
                                               : comma - start);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (count != fields.size()) parse_error(lineno, "expected 4 fields");

    Disk d;
    d.id = parse_number<DiskId>(fields[0], lineno, "id");
    d.cx = parse_number<double>(fields[1], lineno, "cx");
    d.cy = parse_number<double>(fields[2], lineno, "cy");
    d.r = parse_number<double>(fields[3], lineno, "r");
    try {
      validate_disk(d);
    } catch (const Error& e) {
      parse_error(lineno, e.what());
    }
    disks.push_back(d);
    line_of.push_back(lineno);
  }

  std::vector<std::size_t> seen(disks.size(), 0);
  for (std::size_t i = 0; i < disks.size(); ++i) {
    const DiskId id = disks[i].id;
    if (id >= disks.size()) {
      parse_error(line_of[i], "id " + std::to_string(id) +
                                  " outside 0..n-1 (n=" +
                                  std::to_string(disks.size()) + ")");
    }
    if (seen[id] != 0) {
      parse_error(line_of[i], "duplicate id " + std::to_string(id) +
                                  " (first on line " +
                                  std::to_string(seen[id]) + ")");
    }
    seen[id] = line_of[i];
  }
  return Instance(std::move(name), std::move(disks));
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), path.stem().string());
}

std::string format_instance(const Instance& inst) {
  std::string out;
  out.reserve(inst.size() * 48 + 64);
  out += kNamePrefix;
  out += ' ';
  out += inst.name();
  out += "\n# id,cx,cy,r\n";
  for (const Disk& d : inst.disks()) {
    out += std::to_string(d.id);
    out += ',';
    append_double(out, d.cx);
    out += ',';
    append_double(out, d.cy);
    out += ',';
    append_double(out, d.r);
    out += '\n';
  }
  return out;
}

void write_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << format_instance(inst);
  if (!out) fail(ErrorCode::kIo, "write failed for '" + path.string() + "'");
}

}  // namespace diskdense
