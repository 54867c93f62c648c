#pragma once
// io.hpp - CSV/bitmap export and newline-delimited set import/export.

#include <string>
#include <vector>

#include "elab/bitset_range.hpp"
#include "elab/numeric.hpp"

namespace elab {

// (value, count) CSV with header.
void write_counts_csv(const std::string& path, const std::vector<long long>& values,
                      const std::vector<long long>& counts);

// Newline-delimited integers.
std::vector<long long> read_int_set(const std::string& path);
void write_int_set(const std::string& path, const std::vector<long long>& values);

// Raw little-endian bitmap dump plus a JSON sidecar (offset, length, extra
// fields supplied by the caller as pre-rendered JSON members).
void write_bitmap_dump(const std::string& path, const RangeBitset& bits,
                       const std::string& sidecar_extra_json);

}  // namespace elab
