#include "elab/io.hpp"

#include <fstream>
#include <stdexcept>

namespace elab {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

}  // namespace

void write_counts_csv(const std::string& path, const std::vector<long long>& values,
                      const std::vector<long long>& counts) {
    auto f = open_out(path);
    f << "value,count\n";
    for (size_t i = 0; i < values.size(); ++i)
        f << values[i] << "," << (i < counts.size() ? counts[i] : 1) << "\n";
}

std::vector<long long> read_int_set(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::vector<long long> out;
    long long v;
    while (f >> v) out.push_back(v);
    return out;
}

void write_int_set(const std::string& path, const std::vector<long long>& values) {
    auto f = open_out(path);
    for (long long v : values) f << v << "\n";
}

void write_bitmap_dump(const std::string& path, const RangeBitset& bits,
                       const std::string& sidecar_extra_json) {
    auto f = open_out(path);
    for (long long v = bits.lo(); v < bits.hi(); v += 8) {
        unsigned char byte = 0;
        for (int j = 0; j < 8 && v + j < bits.hi(); ++j)
            if (bits.test(v + j)) byte |= static_cast<unsigned char>(1u << j);
        f.put(static_cast<char>(byte));
    }
    auto side = open_out(path + ".json");
    side << "{\"offset\":" << bits.lo() << ",\"length\":" << (bits.hi() - bits.lo())
         << ",\"popcount\":" << bits.popcount();
    if (!sidecar_extra_json.empty()) side << "," << sidecar_extra_json;
    side << "}\n";
}

}  // namespace elab
