#include "ellstat/cache.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <thread>

#include <boost/crc.hpp>

namespace ellstat {

namespace {

constexpr std::string_view kColumns = "class_id,r,s,orbit_size,trace,n1,n2";

std::uint32_t crc32(std::string_view bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

std::string hex8(std::uint32_t v) {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", v);
  return buf;
}

[[noreturn]] void corrupt(const std::string& why) { throw Error(ErrorCode::CorruptCache, why); }

// Value of `key=` inside the header line.
std::string header_field(const std::string& header, const std::string& key) {
  const auto at = header.find(" " + key + "=");
  if (at == std::string::npos) corrupt("header lacks " + key);
  const auto start = at + key.size() + 2;
  const auto end = header.find(' ', start);
  return header.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

template <typename T>
T parse_number(std::string_view s, int base = 10) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    corrupt("bad number '" + std::string(s) + "'");
  return value;
}

}  // namespace

std::filesystem::path cache_path(const std::filesystem::path& dir, std::int64_t p) {
  return dir / ("p" + std::to_string(p) + ".csv");
}

std::string serialize_class_table(const ClassTable& table) {
  std::ostringstream body;
  body << kColumns << '\n';
  for (const auto& r : table.rows())
    body << r.id << ',' << r.r << ',' << r.s << ',' << r.orbit_size << ',' << r.trace << ','
         << r.n1 << ',' << r.n2 << '\n';
  const std::string text = body.str();
  return "# ellstat-cache v" + std::to_string(kCacheFormatVersion) +
         " p=" + std::to_string(table.p()) + " g=" + std::to_string(table.context().g()) +
         " crc=" + hex8(crc32(text)) + "\n" + text;
}

ClassTable parse_class_table(const std::string& text) {
  const auto eol = text.find('\n');
  if (eol == std::string::npos) corrupt("missing header line");
  const std::string header = text.substr(0, eol);
  const std::string body = text.substr(eol + 1);
  if (header.rfind("# ellstat-cache v", 0) != 0) corrupt("not an ellstat cache file");

  const auto version_end = header.find(' ', 17);
  const auto version = parse_number<int>(std::string_view(header).substr(17, version_end - 17));
  if (version != kCacheFormatVersion)
    throw Error(ErrorCode::VersionMismatch, "cache format v" + std::to_string(version) +
                                                ", expected v" + std::to_string(kCacheFormatVersion));

  const auto p = parse_number<std::int64_t>(header_field(header, "p"));
  const auto g = parse_number<std::uint32_t>(header_field(header, "g"));
  const auto crc = parse_number<std::uint32_t>(header_field(header, "crc"), 16);
  if (crc32(body) != crc) corrupt("checksum mismatch for p = " + std::to_string(p));

  auto ctx = build_context(p);
  if (ctx.g() != g) corrupt("primitive root mismatch for p = " + std::to_string(p));

  std::istringstream in(body);
  std::string line;
  if (!std::getline(in, line) || line != kColumns) corrupt("unexpected column line");
  std::vector<ClassRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      cells.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cells.size() != 7) corrupt("row with " + std::to_string(cells.size()) + " fields");
    rows.push_back({parse_number<ClassId>(cells[0]), parse_number<Residue>(cells[1]),
                    parse_number<Residue>(cells[2]), parse_number<std::uint32_t>(cells[3]),
                    parse_number<std::int64_t>(cells[4]), parse_number<std::int64_t>(cells[5]),
                    parse_number<std::int64_t>(cells[6])});
  }
  return ClassTable::from_rows(std::move(ctx), rows);
}

void cache_store(const ClassTable& table, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto target = cache_path(dir, table.p());
  std::ostringstream suffix;
  suffix << ".tmp." << std::this_thread::get_id();
  auto tmp = target;
  tmp += suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << serialize_class_table(table);
    if (!out) throw Error(ErrorCode::Io, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot rename into " + target.string() + ": " + ec.message());
}

ClassTable cache_load(std::int64_t p, const std::filesystem::path& dir) {
  const auto path = cache_path(dir, p);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::CacheMiss, "no cache entry for p = " + std::to_string(p) +
                                                 " in " + dir.string() + "; rebuild it");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_class_table(text.str());
}

ClassTable obtain_class_table(std::int64_t p, const std::optional<std::filesystem::path>& dir) {
  if (dir) {
    try {
      return cache_load(p, *dir);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CacheMiss) throw;
    }
  }
  auto table = build_class_table(build_context(p));
  if (dir) cache_store(table, *dir);
  return table;
}

}  // namespace ellstat
