// cli.cpp: command-line front end

#include "qgeom/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include "qgeom/error.hpp"
#include "qgeom/geometry.hpp"
#include "qgeom/invariants.hpp"
#include "qgeom/oracles.hpp"
#include "qgeom/riemann.hpp"
#include "qgeom/verify.hpp"

namespace qgeom::cli {

namespace {

using json = nlohmann::ordered_json;

// NaN or Inf reached an output; exit code 3.
class NonFinite : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto p = s.find(sep, start);
        out.push_back(trim(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start)));
        if (p == std::string_view::npos) break;
        start = p + 1;
    }
    return out;
}

double parse_double(std::string_view text, const std::string& what)
{
    const std::string t = trim(text);
    double v = 0.0;
    const char* first = t.data();
    if (!t.empty() && t[0] == '+') ++first;
    const auto [p, ec] = std::from_chars(first, t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || p != t.data() + t.size() || !std::isfinite(v))
        throw ConfigError(what + ": expected a finite number, got '" + t + "'");
    return v;
}

std::size_t parse_count(std::string_view text, const std::string& what)
{
    const std::string t = trim(text);
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || p != t.data() + t.size())
        throw ConfigError(what + ": expected a non-negative integer, got '" + t + "'");
    return v;
}

std::string number(double v)
{
    if (!std::isfinite(v)) throw NonFinite("non-finite value in output");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ------------------------------------------------------------------ JSON

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

json cvec(const ComplexVector& v)
{
    json a = json::array();
    for (const auto& z : v) a.push_back(cjson(z));
    return a;
}

json rvec(const RealVector& v) { return json(v); }

json cmat(const ComplexMatrix& m)
{
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(cjson(m(i, j)));
        a.push_back(std::move(row));
    }
    return a;
}

json rmat(const RealMatrix& m)
{
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        a.push_back(std::move(row));
    }
    return a;
}

json tensor4(const InvariantTensor& t)
{
    json a = json::array();
    for (std::size_t i = 0; i < t.dim; ++i) {
        json b = json::array();
        for (std::size_t j = 0; j < t.dim; ++j) {
            json c = json::array();
            for (std::size_t k = 0; k < t.dim; ++k) {
                json d = json::array();
                for (std::size_t l = 0; l < t.dim; ++l) d.push_back(t(i, j, k, l));
                c.push_back(std::move(d));
            }
            b.push_back(std::move(c));
        }
        a.push_back(std::move(b));
    }
    return a;
}

void require_finite(const json& j)
{
    if (j.is_number_float() && !std::isfinite(j.get<double>())) throw NonFinite("non-finite value in output");
    if (j.is_structured())
        for (const auto& x : j) require_finite(x);
}

// ------------------------------------------------------------------ config

const char* const kConfigKeys[] = {"family",   "params", "domain",       "hbar",   "trunc", "trunc_tol",
                                   "levels",   "gauge",  "fd_step",      "riemann_step", "format", "out",
                                   "jobs",     "lambda", "n",            "m",      "curvature", "suite",
                                   "axes"};

std::vector<std::string> string_list(const json& v, const std::string& key)
{
    if (v.is_string()) return split(v.get<std::string>(), ',');
    if (!v.is_array()) throw ConfigError("config key '" + key + "' must be a string or an array of strings");
    std::vector<std::string> out;
    for (const auto& x : v) {
        if (!x.is_string()) throw ConfigError("config key '" + key + "' must hold strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

double json_number(const json& v, const std::string& key)
{
    if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

std::size_t json_count(const json& v, const std::string& key)
{
    if (!v.is_number_unsigned()) throw ConfigError("config key '" + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

std::string json_string(const json& v, const std::string& key)
{
    if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
    return v.get<std::string>();
}

void set_trunc(RunConfig& cfg, std::string_view text)
{
    if (trim(text) == "auto") {
        cfg.trunc_auto = true;
        return;
    }
    cfg.trunc_auto = false;
    cfg.trunc = parse_count(text, "--trunc");
}

void check_m_syntax(std::string_view t)
{
    if (t.empty()) return;
    parse_count((t[0] == '+' || t[0] == '-') ? t.substr(1) : t, "--m");
}

void set_m(RunConfig& cfg, std::string_view text)
{
    const std::string t = trim(text);
    check_m_syntax(t);
    cfg.m = t;
}

// ------------------------------------------------------------------ points

FamilySpec build_spec(const RunConfig& cfg)
{
    if (is_builtin_family(cfg.family)) {
        if (!cfg.params.empty()) throw ConfigError("--params applies to Hamiltonian text, not built-in families");
        FamilySpec spec = builtin_family(cfg.family, cfg.hbar);
        for (const auto& c : cfg.domain) spec.domain_constraints.push_back(parse_coeff(c, spec.parameter_names));
        return spec;
    }
    if (cfg.params.empty()) throw ConfigError("Hamiltonian text needs --params");
    return parse_family(cfg.family, cfg.params, cfg.hbar, cfg.domain);
}

std::vector<double> resolve_lambda(const FamilySpec& spec, const std::vector<std::pair<std::string, double>>& given,
                                   const std::vector<std::string>& swept = {})
{
    std::map<std::string, double> byname;
    for (const auto& [k, v] : given) {
        if (std::find(spec.parameter_names.begin(), spec.parameter_names.end(), k) == spec.parameter_names.end())
            throw ConfigError("unknown parameter '" + k + "' in --lambda");
        if (!byname.emplace(k, v).second) throw ConfigError("parameter '" + k + "' given twice");
    }
    std::vector<double> lam;
    for (const auto& name : spec.parameter_names) {
        auto it = byname.find(name);
        if (it == byname.end()) {
            if (std::find(swept.begin(), swept.end(), name) == swept.end())
                throw ConfigError("missing value for parameter '" + name + "' in --lambda");
            lam.push_back(0.0);
        } else {
            lam.push_back(it->second);
        }
    }
    return lam;
}

struct Point {
    std::vector<double> lambda;
    std::size_t n{0};
    std::optional<std::size_t> m;
    std::size_t levels{0};
    std::size_t trunc{0};
    double trunc_delta{-1.0}; // set by auto truncation
};

Point prepare(const RunConfig& cfg, const FamilySpec& spec, std::vector<double> lam, std::size_t n,
              std::optional<std::size_t> m)
{
    if (m && *m == n) throw ConfigError("n and m must differ");
    Point p{std::move(lam), n, m, 0, 0};
    const std::size_t top = std::max(n, m.value_or(n));
    p.levels = cfg.levels ? cfg.levels : default_levels(n, m.value_or(n));
    if (p.levels <= top) throw ConfigError("--levels must exceed max(n, m)");
    check_domain(spec, p.lambda);
    if (cfg.trunc_auto) {
        const auto t = converge_truncation(spec, p.lambda, p.levels, cfg.trunc_tol, cfg.trunc);
        p.trunc = t.trunc_dim;
        p.trunc_delta = t.delta;
    } else {
        p.trunc = cfg.trunc ? cfg.trunc : default_trunc_dim(p.levels);
    }
    return p;
}

std::shared_ptr<StateField> make_field(const RunConfig& cfg, const FamilySpec& spec, const Point& p)
{
    auto assembler = std::make_shared<Assembler>(spec, p.trunc);
    FieldOptions fo;
    fo.levels = p.levels;
    if (cfg.gauge == "coordinate") {
        fo.phase_rule = example2_coordinate_gauge(p.trunc, spec.hbar);
        fo.rule_tag = "coordinate";
    }
    return std::make_shared<StateField>(assembler, p.lambda, std::move(fo));
}

void validate(const RunConfig& cfg)
{
    if (!(cfg.hbar > 0)) throw ConfigError("--hbar must be positive");
    if (!(cfg.fd_step > 0) || !(cfg.riemann_step > 0)) throw ConfigError("finite-difference steps must be positive");
    if (!(cfg.trunc_tol > 0)) throw ConfigError("--trunc-tol must be positive");
    if (cfg.jobs == 0) throw ConfigError("--jobs must be at least 1");
    if (cfg.gauge != "largest-real-positive" && cfg.gauge != "coordinate")
        throw ConfigError("--gauge must be largest-real-positive or coordinate");
    if (cfg.gauge == "coordinate" && cfg.family != "example2")
        throw ConfigError("the coordinate gauge is defined for example2 only");
}

std::string pick_format(const RunConfig& cfg, std::initializer_list<const char*> allowed)
{
    if (cfg.format.empty()) return *allowed.begin();
    for (const char* a : allowed)
        if (cfg.format == a) return cfg.format;
    std::string list;
    for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
    throw ConfigError("--format for this command must be one of: " + list);
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text)
{
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigError("cannot open '" + cfg.out + "' for writing");
    f << text;
    if (!f) throw ConfigError("failed writing '" + cfg.out + "'");
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

// ------------------------------------------------------------------ eval

json eval_point(const RunConfig& cfg, const FamilySpec& spec, const Point& p)
{
    auto field = make_field(cfg, spec, p);
    const Frame& f = field->center_frame();
    const std::size_t n = p.n;
    json j;
    j["family"] = cfg.family;
    json lam = json::object();
    for (std::size_t i = 0; i < p.lambda.size(); ++i) lam[spec.parameter_names[i]] = p.lambda[i];
    j["lambda"] = lam;
    j["hbar"] = spec.hbar;
    j["trunc_dim"] = p.trunc;
    if (p.trunc_delta >= 0) j["trunc_delta"] = p.trunc_delta;
    j["levels"] = p.levels;
    j["gauge"] = field->gauge_tag();
    j["n"] = n;
    if (p.m) j["m"] = *p.m;
    j["energies"] = rvec(f.bundle.energies);
    json nb = json::array();
    for (std::size_t k = 0; k < p.levels; ++k) {
        if (k == n) continue;
        json e;
        e["m"] = k;
        try {
            e["e"] = cvec(nbein_spectral(f, n, k).components);
        } catch (const Error& ex) {
            if (ex.kind() != ErrorKind::DegeneratePair) throw;
            e["degenerate"] = true;
        }
        nb.push_back(std::move(e));
    }
    j["nbein"] = std::move(nb);
    j["A"] = rvec(field->connection(p.lambda, n, cfg.fd_step));
    const auto q = qgt(f, n);
    j["Q"] = cmat(q.Q);
    j["g"] = rmat(q.g);
    j["F"] = rmat(q.F);
    j["det_g"] = determinant(q.g);
    if (p.m) {
        const std::size_t m = *p.m;
        const auto inv = invariant_report(f, n, m);
        j["M"] = cmat(inv.two_state.M);
        j["G"] = cmat(inv.two_state.G);
        j["T"] = cmat(inv.two_state.T);
        const auto c = gamma_connection(*field, p.lambda, n, m, cfg.fd_step);
        j["Gamma"] = rvec(c.Gamma);
        j["R"] = rmat(c.R);
        json ij;
        for (const auto& t : inv.tensors) ij[t.name()] = tensor4(t);
        json sc;
        for (const auto& s : inv.scalars) {
            std::string name = std::string("N_") + to_string(s.xi);
            if (s.theta != s.xi) name += to_string(s.theta);
            sc[name] = s.value;
        }
        ij["scalars"] = std::move(sc);
        ij["symmetry_residual"] = inv.symmetry_residual;
        j["invariants"] = std::move(ij);
    }
    if (cfg.curvature) {
        const auto r = scalar_curvature(spec, p.lambda, n, cfg.riemann_step, p.trunc, cfg.jobs);
        j["scalar_curvature"] = {{"value", r.scalar}, {"error_estimate", r.error_estimate}};
    }
    return j;
}

// quantity,i,j,re,im
std::string eval_csv(const json& j)
{
    std::ostringstream s;
    s << "quantity,i,j,re,im\n";
    auto row = [&](const std::string& q, const std::string& i, const std::string& k, double re, double im) {
        s << csv_field(q) << ',' << i << ',' << k << ',' << number(re) << ',' << number(im) << '\n';
    };
    auto value = [&](const json& x, const std::string& q, const std::string& i, const std::string& k) {
        if (x.is_array())
            row(q, i, k, x[0].get<double>(), x[1].get<double>());
        else
            row(q, i, k, x.get<double>(), 0.0);
    };
    auto vec = [&](const json& v, const std::string& q) {
        for (std::size_t i = 0; i < v.size(); ++i) value(v[i], q, std::to_string(i), "");
    };
    auto mat = [&](const json& m, const std::string& q) {
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t k = 0; k < m[i].size(); ++k) value(m[i][k], q, std::to_string(i), std::to_string(k));
    };
    vec(j["energies"], "energies");
    for (const auto& e : j["nbein"])
        if (e.contains("e")) vec(e["e"], "e_" + std::to_string(e["m"].get<std::size_t>()));
    vec(j["A"], "A");
    mat(j["Q"], "Q");
    mat(j["g"], "g");
    mat(j["F"], "F");
    value(j["det_g"], "det_g", "", "");
    if (j.contains("M")) {
        for (const char* k : {"M", "G", "T", "R"}) mat(j[k], k);
        vec(j["Gamma"], "Gamma");
        for (const auto& [k, v] : j["invariants"]["scalars"].items()) value(v, k, "", "");
    }
    if (j.contains("scalar_curvature")) {
        value(j["scalar_curvature"]["value"], "scalar_curvature", "", "");
        value(j["scalar_curvature"]["error_estimate"], "scalar_curvature_error", "", "");
    }
    return s.str();
}

int cmd_eval(const RunConfig& cfg, std::ostream& out)
{
    const std::string fmt = pick_format(cfg, {"json", "csv"});
    const FamilySpec spec = build_spec(cfg);
    const Point p = prepare(cfg, spec, resolve_lambda(spec, cfg.lambda), cfg.n, resolve_m(cfg.m, cfg.n));
    const json j = eval_point(cfg, spec, p);
    require_finite(j);
    emit(cfg, out, fmt == "json" ? j.dump(2) + "\n" : eval_csv(j));
    return 0;
}

// ------------------------------------------------------------------ sweep

int cmd_sweep(const RunConfig& cfg, std::ostream& out)
{
    const std::string fmt = pick_format(cfg, {"csv", "json"});
    const FamilySpec spec = build_spec(cfg);
    if (cfg.axes.empty() || cfg.axes.size() > 2) throw ConfigError("sweep takes one or two --axis specs");
    std::vector<AxisSpec> axes;
    std::vector<std::string> swept;
    for (const auto& a : cfg.axes) {
        axes.push_back(parse_axis(a));
        const auto& name = axes.back().name;
        if (name != "n" &&
            std::find(spec.parameter_names.begin(), spec.parameter_names.end(), name) == spec.parameter_names.end())
            throw ConfigError("axis '" + name + "' is neither a parameter nor n");
        if (std::find(swept.begin(), swept.end(), name) != swept.end())
            throw ConfigError("axis '" + name + "' swept twice");
        if (name == "n") {
            const auto& ax = axes.back();
            if (ax.min < 0 || ax.min != std::floor(ax.min) || (ax.steps > 1 && (ax.max - ax.min) != std::floor(ax.max - ax.min)))
                throw ConfigError("the n axis needs non-negative integer bounds");
            if (ax.steps > 1 && std::fmod(ax.max - ax.min, static_cast<double>(ax.steps - 1)) != 0)
                throw ConfigError("the n axis must land on integers");
        }
        swept.push_back(name);
    }
    const std::vector<double> base = resolve_lambda(spec, cfg.lambda, swept);
    const bool n_swept = std::find(swept.begin(), swept.end(), "n") != swept.end();
    const bool pair = !cfg.m.empty();
    check_m_syntax(cfg.m);

    std::vector<std::string> header(swept);
    if (!n_swept) header.push_back("n");
    if (pair) header.push_back("m");
    header.push_back("det_g");
    if (cfg.curvature) {
        header.push_back("scalar_curvature");
        header.push_back("scalar_curvature_error");
    }
    if (pair)
        for (const char* k : {"N_M", "N_G", "N_T"}) header.push_back(k);

    const std::size_t inner = axes.size() == 2 ? axes[1].steps : 1;
    const std::size_t count = axes[0].steps * inner;
    std::vector<std::vector<std::string>> rows(count);
    std::vector<std::exception_ptr> errors(count);

    auto work = [&](std::size_t k) {
        const std::size_t idx[2] = {k / inner, k % inner};
        std::vector<double> lam = base;
        std::size_t n = cfg.n;
        std::vector<std::string> row;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            const double v = axes[a].value(idx[a]);
            if (axes[a].name == "n") {
                n = static_cast<std::size_t>(std::llround(v));
                row.push_back(std::to_string(n));
            } else {
                lam[spec.parameter_index(axes[a].name)] = v;
                row.push_back(number(v));
            }
        }
        const auto m = resolve_m(cfg.m, n);
        const Point p = prepare(cfg, spec, lam, n, m);
        if (!n_swept) row.push_back(std::to_string(n));
        if (m) row.push_back(std::to_string(*m));
        auto field = make_field(cfg, spec, p);
        const Frame& f = field->center_frame();
        row.push_back(number(determinant(qgt(f, n).g)));
        if (cfg.curvature) {
            const auto r = scalar_curvature(spec, lam, n, cfg.riemann_step, p.trunc, 1);
            row.push_back(number(r.scalar));
            row.push_back(number(r.error_estimate));
        }
        if (m) {
            const auto inv = invariant_report(f, n, *m);
            for (auto x : {TensorLabel::M, TensorLabel::G, TensorLabel::T}) row.push_back(number(inv.scalar(x, x).value));
        }
        rows[k] = std::move(row);
    };

    const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(count)));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (std::size_t k; (k = next++) < count;) {
                try {
                    work(k);
                } catch (...) {
                    errors[k] = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::ostringstream s;
    if (fmt == "csv") {
        for (std::size_t i = 0; i < header.size(); ++i) s << (i ? "," : "") << csv_field(header[i]);
        s << '\n';
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) s << (i ? "," : "") << r[i];
            s << '\n';
        }
    } else {
        json j;
        j["columns"] = header;
        json data = json::array();
        for (const auto& r : rows) {
            json row = json::array();
            for (const auto& v : r) row.push_back(std::stod(v));
            data.push_back(std::move(row));
        }
        j["rows"] = std::move(data);
        s << j.dump(2) << '\n';
    }
    emit(cfg, out, s.str());
    return 0;
}

// ------------------------------------------------------------------ verify

int cmd_verify(const RunConfig& cfg, std::ostream& out)
{
    const std::string fmt = pick_format(cfg, {"text", "json"});
    const Suite suite = parse_suite(cfg.suite);
    VerifyOptions opt;
    opt.hbar = cfg.hbar;
    opt.trunc_dim = cfg.trunc;
    opt.jobs = cfg.jobs;
    const auto checks = run_suite(suite, opt);
    std::size_t failed = 0;
    for (const auto& c : checks) failed += !c.pass;
    std::ostringstream s;
    if (fmt == "text") {
        for (const auto& c : checks) s << format_check(c) << '\n';
        s << checks.size() << " checks, " << failed << " failed\n";
    } else {
        json a = json::array();
        for (const auto& c : checks) {
            json x{{"criterion", c.criterion}, {"label", c.label}, {"pass", c.pass}, {"tolerance", c.tolerance}};
            if (std::isfinite(c.error))
                x["error"] = c.error;
            else
                x["error"] = nullptr; // never silent: pass is false
            if (!c.note.empty()) x["note"] = c.note;
            a.push_back(std::move(x));
        }
        s << json{{"suite", to_string(suite)}, {"checks", std::move(a)}, {"failed", failed}}.dump(2) << '\n';
    }
    emit(cfg, out, s.str());
    return failed ? 1 : 0;
}

// ------------------------------------------------------------------ riemann

int cmd_riemann(const RunConfig& cfg, std::ostream& out)
{
    const std::string fmt = pick_format(cfg, {"text", "json"});
    const FamilySpec spec = build_spec(cfg);
    const Point p = prepare(cfg, spec, resolve_lambda(spec, cfg.lambda), cfg.n, std::nullopt);
    const auto r = scalar_curvature(spec, p.lambda, p.n, cfg.riemann_step, p.trunc, cfg.jobs);
    std::ostringstream s;
    if (fmt == "text") {
        s << "scalar_curvature " << number(r.scalar) << " +- " << number(r.error_estimate) << " (n=" << p.n;
        for (std::size_t i = 0; i < p.lambda.size(); ++i)
            s << ", " << spec.parameter_names[i] << "=" << number(p.lambda[i]);
        s << ")\n";
    } else {
        json lam = json::object();
        for (std::size_t i = 0; i < p.lambda.size(); ++i) lam[spec.parameter_names[i]] = p.lambda[i];
        json j{{"n", p.n},
               {"lambda", lam},
               {"trunc_dim", p.trunc},
               {"step", cfg.riemann_step},
               {"scalar_curvature", r.scalar},
               {"error_estimate", r.error_estimate},
               {"ricci", rmat(r.ricci)}};
        require_finite(j);
        s << j.dump(2) << '\n';
    }
    emit(cfg, out, s.str());
    return 0;
}

// ------------------------------------------------------------------ flags

struct Flags {
    std::string config, family, params, domain, hbar, lambda, n, m, trunc, trunc_tol, levels, gauge, fd_step,
        riemann_step, format, out, jobs, suite;
    std::vector<std::string> axes;
    bool curvature{false};
    std::map<std::string, CLI::Option*> opts;

    bool given(const std::string& name) const
    {
        auto it = opts.find(name);
        return it != opts.end() && it->second->count() > 0;
    }
};

void add_flags(CLI::App* app, Flags& f, bool sweep, bool verify)
{
    auto opt = [&](const std::string& name, std::string& target, const std::string& help) {
        f.opts[name] = app->add_option("--" + name, target, help);
    };
    opt("config", f.config, "JSON config file; flags override its values");
    opt("family", f.family, "example1, example2, or Hamiltonian text such as '0.5*q^2 + W*q'");
    opt("params", f.params, "comma-separated parameter names for Hamiltonian text");
    opt("domain", f.domain, "comma-separated constraints, each required > 0");
    opt("hbar", f.hbar, "reduced Planck constant (default 1)");
    opt("lambda", f.lambda, "parameter point, e.g. W=1,Z=0.5");
    opt("n", f.n, "level n (default 0)");
    opt("m", f.m, "partner level: k, or +k / -k relative to n");
    opt("trunc", f.trunc, "Fock truncation D, or 'auto'");
    opt("trunc-tol", f.trunc_tol, "metric tolerance for --trunc auto (default 1e-8)");
    opt("levels", f.levels, "retained levels (default max(n, m) + 6)");
    opt("gauge", f.gauge, "largest-real-positive (default) or coordinate (example2)");
    opt("fd-step", f.fd_step, "relative first-derivative step (default 1e-5)");
    opt("riemann-step", f.riemann_step, "relative curvature stencil step (default 1e-3)");
    opt("format", f.format, "json or csv (eval, sweep); text or json (verify, riemann)");
    opt("out", f.out, "output file instead of stdout");
    opt("jobs", f.jobs, "worker threads");
    f.opts["curvature"] = app->add_flag("--curvature", f.curvature, "include the scalar curvature of level n");
    if (sweep) f.opts["axis"] = app->add_option("--axis", f.axes, "name:min:max:steps; name is a parameter or n");
    if (verify) opt("suite", f.suite, "example1, example2, properties or all (default all)");
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

RunConfig build_config(const Flags& f)
{
    RunConfig cfg;
    if (f.given("config")) apply_config_json(cfg, read_file(f.config));
    if (f.given("family")) cfg.family = f.family;
    if (f.given("params")) cfg.params = split(f.params, ',');
    if (f.given("domain")) cfg.domain = split(f.domain, ',');
    if (f.given("hbar")) cfg.hbar = parse_double(f.hbar, "--hbar");
    if (f.given("lambda")) cfg.lambda = parse_lambda(f.lambda);
    if (f.given("n")) cfg.n = parse_count(f.n, "--n");
    if (f.given("m")) set_m(cfg, f.m);
    if (f.given("trunc")) set_trunc(cfg, f.trunc);
    if (f.given("trunc-tol")) cfg.trunc_tol = parse_double(f.trunc_tol, "--trunc-tol");
    if (f.given("levels")) cfg.levels = parse_count(f.levels, "--levels");
    if (f.given("gauge")) cfg.gauge = trim(f.gauge);
    if (f.given("fd-step")) cfg.fd_step = parse_double(f.fd_step, "--fd-step");
    if (f.given("riemann-step")) cfg.riemann_step = parse_double(f.riemann_step, "--riemann-step");
    if (f.given("format")) cfg.format = trim(f.format);
    if (f.given("out")) cfg.out = f.out;
    if (f.given("jobs")) cfg.jobs = static_cast<unsigned>(parse_count(f.jobs, "--jobs"));
    if (f.given("curvature")) cfg.curvature = f.curvature;
    if (f.given("axis")) cfg.axes = f.axes;
    if (f.given("suite")) cfg.suite = trim(f.suite);
    validate(cfg);
    return cfg;
}

} // namespace

double AxisSpec::value(std::size_t k) const noexcept
{
    if (steps <= 1) return min;
    return min + (max - min) * static_cast<double>(k) / static_cast<double>(steps - 1);
}

std::vector<std::pair<std::string, double>> parse_lambda(std::string_view text)
{
    std::vector<std::pair<std::string, double>> out;
    if (trim(text).empty()) return out;
    for (const auto& item : split(text, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("--lambda entries look like name=value, got '" + item + "'");
        const std::string name = trim(std::string_view(item).substr(0, eq));
        if (name.empty()) throw ConfigError("--lambda entry without a name");
        out.emplace_back(name, parse_double(std::string_view(item).substr(eq + 1), "--lambda " + name));
    }
    return out;
}

AxisSpec parse_axis(std::string_view text)
{
    const auto parts = split(text, ':');
    if (parts.size() != 4 || parts[0].empty()) throw ConfigError("--axis looks like name:min:max:steps, got '" + std::string(text) + "'");
    AxisSpec a{parts[0], parse_double(parts[1], "--axis min"), parse_double(parts[2], "--axis max"),
               parse_count(parts[3], "--axis steps")};
    if (a.steps == 0) throw ConfigError("--axis needs at least one step");
    return a;
}

std::optional<std::size_t> resolve_m(std::string_view m, std::size_t n)
{
    const std::string t = trim(m);
    if (t.empty()) return std::nullopt;
    if (t[0] == '+' || t[0] == '-') {
        const std::size_t k = parse_count(std::string_view(t).substr(1), "--m");
        if (t[0] == '+') return n + k;
        if (k > n) throw ConfigError("--m " + t + " points below the ground state for n=" + std::to_string(n));
        return n - k;
    }
    return parse_count(t, "--m");
}

void apply_config_json(RunConfig& cfg, std::string_view json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (std::find(std::begin(kConfigKeys), std::end(kConfigKeys), key) == std::end(kConfigKeys))
            throw ConfigError("unknown config key '" + key + "'");
        if (key == "family") cfg.family = json_string(v, key);
        else if (key == "params") cfg.params = string_list(v, key);
        else if (key == "domain") cfg.domain = string_list(v, key);
        else if (key == "hbar") cfg.hbar = json_number(v, key);
        else if (key == "trunc") {
            if (v.is_string()) set_trunc(cfg, v.get<std::string>());
            else {
                cfg.trunc = json_count(v, key);
                cfg.trunc_auto = false;
            }
        }
        else if (key == "trunc_tol") cfg.trunc_tol = json_number(v, key);
        else if (key == "levels") cfg.levels = json_count(v, key);
        else if (key == "gauge") cfg.gauge = json_string(v, key);
        else if (key == "fd_step") cfg.fd_step = json_number(v, key);
        else if (key == "riemann_step") cfg.riemann_step = json_number(v, key);
        else if (key == "format") cfg.format = json_string(v, key);
        else if (key == "out") cfg.out = json_string(v, key);
        else if (key == "jobs") cfg.jobs = static_cast<unsigned>(json_count(v, key));
        else if (key == "lambda") {
            if (v.is_string()) cfg.lambda = parse_lambda(v.get<std::string>());
            else if (v.is_object()) {
                cfg.lambda.clear();
                for (const auto& [name, x] : v.items()) cfg.lambda.emplace_back(name, json_number(x, "lambda." + name));
            } else throw ConfigError("config key 'lambda' must be an object or a string");
        }
        else if (key == "n") cfg.n = json_count(v, key);
        else if (key == "m") {
            if (v.is_string()) set_m(cfg, v.get<std::string>());
            else cfg.m = std::to_string(json_count(v, key));
        }
        else if (key == "curvature") {
            if (!v.is_boolean()) throw ConfigError("config key 'curvature' must be true or false");
            cfg.curvature = v.get<bool>();
        }
        else if (key == "suite") cfg.suite = json_string(v, key);
        else if (key == "axes") cfg.axes = string_list(v, key);
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Quantum geometry of parameter-dependent Hamiltonians on a truncated Fock space", "qgeom"};
    app.require_subcommand(1);
    Flags fe, fs, fv, fr;
    auto* eval = app.add_subcommand("eval", "tensors and invariants at one parameter point");
    auto* sweep = app.add_subcommand("sweep", "det g, curvature and scalar invariants over a 1D or 2D grid (CSV)");
    auto* verify = app.add_subcommand("verify", "acceptance checks against closed forms and identities");
    auto* riemann = app.add_subcommand("riemann", "scalar curvature of the level-n metric");
    add_flags(eval, fe, false, false);
    add_flags(sweep, fs, true, false);
    add_flags(verify, fv, false, true);
    add_flags(riemann, fr, false, false);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (eval->parsed()) return cmd_eval(build_config(fe), out);
        if (sweep->parsed()) return cmd_sweep(build_config(fs), out);
        if (verify->parsed()) return cmd_verify(build_config(fv), out);
        if (riemann->parsed()) return cmd_riemann(build_config(fr), out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "error: config: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_input_error(e.kind()) ? 2 : 3;
    } catch (const NonFinite& e) {
        err << "error: numeric: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace qgeom::cli
