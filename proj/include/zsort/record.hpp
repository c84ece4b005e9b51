#pragma once

#include <cstdint>
#include <vector>

namespace zsort {

/// A sortable unit: a signed 64-bit key carrying an opaque payload.
/// The sort never inspects the payload; it only moves with the key.
template <class Payload>
struct BasicRecord {
  std::int64_t key;
  Payload payload;

  friend bool operator==(const BasicRecord&, const BasicRecord&) = default;
};

/// Record whose payload is a 64-bit sequence number.
using Record = BasicRecord<std::uint64_t>;
using Records = std::vector<Record>;

/// Exact accumulator for key sums. 10^7 keys of magnitude 2^63 need ~87 bits.
using WideInt = __int128;

}  // namespace zsort
