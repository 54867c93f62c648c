#pragma once
// Resource budgets and the structured error types the CLI maps to exit codes.
// Silent truncation is forbidden everywhere: an operation either completes
// bit-exactly within budget or throws budget_error.

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace elab {

struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// A stated precondition of a lemma/operation does not hold; the message
// names the failing clause.
struct hypothesis_error : std::runtime_error {
    explicit hypothesis_error(const std::string& what) : std::runtime_error(what) {}
};

struct Budgets {
    uint64_t enumeration = uint64_t{1} << 24;  // word/tuple enumeration cap
    uint64_t bitset_bits = uint64_t{1} << 30;  // dense bitmap cap

    static Budgets from_env() {
        Budgets b;
        if (const char* s = std::getenv("ELAB_BUDGET_BITS")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(s, &end, 10);
            if (end && *end == '\0' && v > 0) b.bitset_bits = v;
        }
        return b;
    }

    void need_enum(uint64_t count, const char* what) const {
        if (count > enumeration)
            throw budget_error(std::string(what) + ": enumeration of " +
                               std::to_string(count) + " exceeds budget " +
                               std::to_string(enumeration));
    }

    void need_bits(uint64_t bits, const char* what) const {
        if (bits > bitset_bits)
            throw budget_error(std::string(what) + ": bitmap of " + std::to_string(bits) +
                               " bits exceeds budget " + std::to_string(bitset_bits));
    }
};

}  // namespace elab
