#pragma once

// Key files: .bin holds little-endian 64-bit signed keys back to back, .txt
// holds one decimal key per line. .rec holds little-endian (key, payload)
// pairs of 16 bytes each, so sorted output can carry sequence numbers.

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "zsort/record.hpp"

namespace zsort::io {

enum class KeyFormat { Binary, Text, RecordBinary };

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Chosen by extension. Throws FormatError for anything else.
KeyFormat format_for(const std::filesystem::path& path);

/// Reads records; for key-only formats payload i is the record's index.
Records read_records(const std::filesystem::path& path);
void write_records(const std::filesystem::path& path, std::span<const Record> records);

std::vector<std::int64_t> keys_of(std::span<const Record> records);

}  // namespace zsort::io
