#pragma once
// Dense presence bitmap over a contiguous integer window; the engine behind
// sumsets, basis-order search and progression scans. Windows are always
// explicit in signatures; clipping is the defined behaviour, silent
// truncation is not.

#include <cstdint>
#include <vector>

#include "elab/budget.hpp"

namespace elab {

// Half-open window [lo, hi) of integers.
struct Window {
    long long lo = 0;
    long long hi = 0;

    long long size() const { return hi > lo ? hi - lo : 0; }
    bool contains(long long v) const { return v >= lo && v < hi; }
    bool empty() const { return hi <= lo; }
};

class RangeBitset {
public:
    RangeBitset() : offset_(0), size_(0) {}

    RangeBitset(Window w, const Budgets& budget) : offset_(w.lo), size_(w.size()) {
        budget.need_bits(static_cast<uint64_t>(size_), "RangeBitset");
        words_.assign((static_cast<uint64_t>(size_) + 63) / 64, 0);
    }

    static RangeBitset from_values(const std::vector<long long>& values, Window w,
                                   const Budgets& budget) {
        RangeBitset r(w, budget);
        for (long long v : values) r.set_if_inside(v);
        return r;
    }

    long long lo() const { return offset_; }
    long long hi() const { return offset_ + size_; }
    Window window() const { return {offset_, offset_ + size_}; }

    bool test(long long v) const {
        if (v < offset_ || v >= offset_ + size_) return false;
        uint64_t i = static_cast<uint64_t>(v - offset_);
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    void set_if_inside(long long v) {
        if (v < offset_ || v >= offset_ + size_) return;
        uint64_t i = static_cast<uint64_t>(v - offset_);
        uint64_t& w = words_[i >> 6];
        uint64_t bit = uint64_t{1} << (i & 63);
        if (!(w & bit)) { w |= bit; ++pop_; }
    }

    long long popcount() const { return pop_; }

    // OR `src` shifted by delta into this bitset (clipped to this window).
    void or_shifted(const RangeBitset& src, long long delta);

    // Least set value >= from, or nullopt sentinel via found=false.
    bool next_set(long long from, long long& out) const;

    std::vector<long long> values() const {
        std::vector<long long> v;
        v.reserve(static_cast<size_t>(pop_));
        long long x = offset_;
        while (next_set(x, x)) { v.push_back(x); ++x; }
        return v;
    }

    bool covers(Window w) const {
        for (long long v = w.lo; v < w.hi; ++v)
            if (!test(v)) return false;
        return true;
    }

private:
    long long offset_;
    long long size_;
    long long pop_ = 0;
    std::vector<uint64_t> words_;
};

// {a + b : a in A, b in B} clipped to `clip`; bit-exact.
RangeBitset sumset(const RangeBitset& a, const RangeBitset& b, Window clip,
                   const Budgets& budget);

}  // namespace elab
