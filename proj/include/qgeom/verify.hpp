// verify.hpp: acceptance checks against the closed forms and the structural identities
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qgeom {

enum class Suite { Example1, Example2, Properties, All };
const char* to_string(Suite s) noexcept;
Suite parse_suite(std::string_view s); // InvalidArgument

struct Check {
    int criterion{0};
    std::string label;
    double error{0.0};
    double tolerance{0.0};
    bool pass{false};
    std::string note; // exception text when the check could not run
};

struct VerifyOptions {
    double hbar{1.0};      // used for the numerics only; oracles stay at ħ = 1
    std::size_t trunc_dim{0}; // per-point default when 0
    unsigned jobs{1};
};

// Criteria 1-5 and 14 belong to example1, 6-7 to example2, 8-13 to properties.
std::vector<int> suite_criteria(Suite s);
std::vector<Check> run_criterion(int criterion, const VerifyOptions& opt = {});
std::vector<Check> run_suite(Suite s, const VerifyOptions& opt = {});

// "label  error  tolerance  PASS|FAIL"
std::string format_check(const Check& c);

} // namespace qgeom
