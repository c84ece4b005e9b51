#include "zsort/keyfile.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace zsort::io {

namespace {

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
}

std::uint64_t load_word(const char* p) {
  std::uint64_t v;
  std::memcpy(&v, p, sizeof v);
  return to_little(v);
}

void store_word(char* p, std::uint64_t v) {
  v = to_little(v);
  std::memcpy(p, &v, sizeof v);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw std::runtime_error("read failed: " + path.string());
  return bytes;
}

Records parse_binary(const std::string& bytes, const std::filesystem::path& path, bool with_payload) {
  const std::size_t width = with_payload ? 16 : 8;
  if (bytes.size() % width != 0)
    throw FormatError(path.string() + ": size " + std::to_string(bytes.size()) +
                      " is not a multiple of " + std::to_string(width));
  Records out(bytes.size() / width);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const char* p = bytes.data() + i * width;
    out[i].key = static_cast<std::int64_t>(load_word(p));
    out[i].payload = with_payload ? load_word(p + 8) : i;
  }
  return out;
}

Records parse_text(const std::string& text, const std::filesystem::path& path) {
  Records out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    std::size_t b = pos, e = end;
    while (b < e && (text[b] == ' ' || text[b] == '\t' || text[b] == '\r')) ++b;
    while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t' || text[e - 1] == '\r')) --e;
    if (b < e) {
      std::int64_t key = 0;
      const auto [ptr, ec] = std::from_chars(text.data() + b, text.data() + e, key);
      if (ec != std::errc{} || ptr != text.data() + e)
        throw FormatError(path.string() + ":" + std::to_string(line_no) + ": not a 64-bit integer");
      out.push_back(Record{key, out.size()});
    }
    pos = end + 1;
  }
  return out;
}

}  // namespace

KeyFormat format_for(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".bin") return KeyFormat::Binary;
  if (ext == ".txt") return KeyFormat::Text;
  if (ext == ".rec") return KeyFormat::RecordBinary;
  throw FormatError("unsupported key file extension '" + ext + "' (use .bin, .txt or .rec)");
}

Records read_records(const std::filesystem::path& path) {
  const KeyFormat format = format_for(path);
  const std::string bytes = slurp(path);
  switch (format) {
    case KeyFormat::Binary: return parse_binary(bytes, path, false);
    case KeyFormat::RecordBinary: return parse_binary(bytes, path, true);
    case KeyFormat::Text: return parse_text(bytes, path);
  }
  throw FormatError("unreachable key format");
}

void write_records(const std::filesystem::path& path, std::span<const Record> records) {
  const KeyFormat format = format_for(path);
  std::string bytes;
  if (format == KeyFormat::Text) {
    char buf[24];
    for (const auto& r : records) {
      const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, r.key);
      bytes.append(buf, end);
      bytes.push_back('\n');
    }
  } else {
    const std::size_t width = format == KeyFormat::RecordBinary ? 16 : 8;
    bytes.resize(records.size() * width);
    for (std::size_t i = 0; i < records.size(); ++i) {
      char* p = bytes.data() + i * width;
      store_word(p, static_cast<std::uint64_t>(records[i].key));
      if (width == 16) store_word(p + 8, records[i].payload);
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<std::int64_t> keys_of(std::span<const Record> records) {
  std::vector<std::int64_t> keys(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) keys[i] = records[i].key;
  return keys;
}

}  // namespace zsort::io
