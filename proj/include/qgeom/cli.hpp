// cli.hpp: the qgeom command line: eval, sweep, verify, riemann
#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qgeom::cli {

// Malformed flags or config; exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AxisSpec {
    std::string name; // a parameter name, or "n" for the level
    double min{0.0};
    double max{0.0};
    std::size_t steps{1};

    double value(std::size_t k) const noexcept;
};

struct RunConfig {
    std::string family{"example1"};     // built-in name or Hamiltonian text
    std::vector<std::string> params;    // parameter names for Hamiltonian text
    std::vector<std::string> domain;    // extra constraints, each required > 0
    double hbar{1.0};
    std::size_t trunc{0};               // 0: default for the level count
    bool trunc_auto{false};
    double trunc_tol{1e-8};
    std::size_t levels{0};              // 0: default for (n, m)
    std::string gauge{"largest-real-positive"};
    double fd_step{1e-5};
    double riemann_step{1e-3};
    std::string format;                 // per-command default when empty
    std::string out;                    // stdout when empty
    unsigned jobs{1};
    std::vector<std::pair<std::string, double>> lambda;
    std::size_t n{0};
    std::string m;                      // "", "k", "+k" or "-k"
    bool curvature{false};
    std::string suite{"all"};
    std::vector<std::string> axes;
};

// "W=1,Z=0.5"
std::vector<std::pair<std::string, double>> parse_lambda(std::string_view text);
// "name:min:max:steps"
AxisSpec parse_axis(std::string_view text);
// Partner level for n: absolute "k" or relative "+k"/"-k"; nullopt for "".
std::optional<std::size_t> resolve_m(std::string_view m, std::size_t n);

// Strict JSON with the RunConfig keys; unknown keys and wrong types are ConfigErrors.
void apply_config_json(RunConfig& cfg, std::string_view json_text);

// Whole command line including the program name. Returns the exit code:
// 0 success, 1 verification failure, 2 usage/config error, 3 domain/numeric error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qgeom::cli
