#pragma once
// verify.hpp - named verification routines behind `elab verify-lemma`.
// Each entry checks one statement end to end and reports pass/fail.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace elab {

struct LemmaCheck {
    std::string name;
    std::string what;  // plain statement of the inequality/identity checked
    // run(trials, seed, out) -> pass
    std::function<bool(uint64_t, uint64_t, std::ostream&)> run;
};

const std::vector<LemmaCheck>& lemma_checks();

}  // namespace elab
