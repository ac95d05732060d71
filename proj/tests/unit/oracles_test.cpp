#include <gtest/gtest.h>

#include <cmath>

#include "qgeom/oracles.hpp"

using namespace qgeom;

namespace {

ComplexVector nbein_of(const TensorSet& s)
{
    return find_quantity(s, "e")->value.column(0);
}

const ComplexMatrix& get(const TensorSet& s, const char* label)
{
    const auto* q = find_quantity(s, label);
    if (!q) throw std::runtime_error(std::string("missing ") + label);
    return q->value;
}

// M from the oracle's own N-beins, summed over every other level.
ComplexMatrix contracted(const char* fam, std::size_t n, std::size_t m, const std::vector<double>& lam)
{
    const std::size_t d = lam.size();
    ComplexMatrix out(d, d);
    for (std::size_t l = 0; l < std::max(n, m) + 6; ++l) {
        if (l == n || l == m) continue;
        const auto em = nbein_of(oracle_for(fam, m, l, lam));
        const auto en = nbein_of(oracle_for(fam, n, l, lam));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) out(i, j) += std::conj(em[i]) * en[j];
    }
    return out;
}

ComplexMatrix qgt_of(const char* fam, std::size_t n, const std::vector<double>& lam)
{
    const std::size_t d = lam.size();
    ComplexMatrix out(d, d);
    for (std::size_t l = 0; l < n + 4; ++l) {
        if (l == n) continue;
        const auto e = nbein_of(oracle_for(fam, n, l, lam));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) out(i, j) += std::conj(e[i]) * e[j];
    }
    return out;
}

double nt_closed(double n)
{
    return 2 * (n + 1) * (1 / ((n + 0.5) * (n * n + 3 * n + 3)) + 1 / ((n + 1.5) * (n * n + n + 1)));
}

struct Case {
    const char* fam;
    std::vector<double> lam;
};

const Case kCases[] = {{"example1", {0.4, 1.7}}, {"example2", {1.0, 0.3, 1.0}}, {"example2", {-0.6, -0.5, 1.4}}};

} // namespace

TEST(Oracle, TwoStateMatchesOwnNbeins)
{
    for (const auto& c : kCases)
        for (std::size_t n = 0; n <= 5; ++n)
            for (std::size_t m = n > 4 ? n - 4 : 0; m <= n + 4; ++m) {
                if (m == n) continue;
                const auto s = oracle_for(c.fam, n, m, c.lam);
                const auto mm = contracted(c.fam, n, m, c.lam);
                EXPECT_LT(max_abs(get(s, "M") - mm), 1e-12) << c.fam << " " << n << "," << m;
                const auto& g = get(s, "G");
                const auto& t = get(s, "T");
                EXPECT_LT(max_abs(g - 0.5 * (mm + transpose(mm))), 1e-12) << c.fam << " " << n << "," << m;
                EXPECT_LT(max_abs(t - Complex(0, 1) * (mm - transpose(mm))), 1e-12) << c.fam << " " << n << "," << m;
            }
}

TEST(Oracle, MetricAndCurvatureMatchOwnNbeins)
{
    for (const auto& c : kCases)
        for (std::size_t n = 0; n <= 5; ++n) {
            const auto s = oracle_for(c.fam, n, std::nullopt, c.lam);
            const auto q = qgt_of(c.fam, n, c.lam);
            EXPECT_LT(max_abs(get(s, "g_n") - to_complex(real_part(q))), 1e-12) << c.fam << n;
            EXPECT_LT(max_abs(get(s, "F_n") - to_complex(-2.0 * imag_part(q))), 1e-12) << c.fam << n;
            const double det = determinant(real_part(get(s, "g_n")));
            EXPECT_NEAR(get(s, "det_g_n")(0, 0).real(), det, 1e-12 * std::abs(det)) << c.fam << n;
        }
}

TEST(Oracle, Example2ReducesToExample1)
{
    const double w = 0.8, z = 1.3;
    for (std::size_t n = 0; n <= 4; ++n) {
        const auto a = oracle_example1(n, n + 1, std::vector{w, z});
        const auto b = oracle_example2(n, n + 1, std::vector{w, 0.0, z});
        EXPECT_NEAR(get(a, "E_n")(0, 0).real(), get(b, "E_n")(0, 0).real(), 1e-14);
        EXPECT_NEAR(get(a, "g_n")(0, 0).real(), get(b, "g_n")(0, 0).real(), 1e-12);
        EXPECT_NEAR(get(a, "g_n")(1, 1).real(), get(b, "g_n")(2, 2).real(), 1e-12);
        EXPECT_LT(std::abs(get(a, "G")(0, 1) - get(b, "G")(0, 2)), 1e-12);
        EXPECT_LT(std::abs(get(a, "T")(0, 1) - get(b, "T")(0, 2)), 1e-12);
    }
}

TEST(Oracle, Example1Scalars)
{
    const std::vector<double> lam{0.2, 0.9};
    for (std::size_t n = 0; n <= 6; ++n) {
        const auto s = oracle_example1(n, n + 1, lam);
        EXPECT_NEAR(get(s, "N_T")(0, 0).real(), nt_closed(n), 1e-12);
        const double nd = n;
        EXPECT_NEAR(get(s, "scalar_curvature")(0, 0).real(), -4 / (nd * nd + nd + 1), 1e-15);
    }
    EXPECT_NEAR(get(oracle_example1(0, 2, lam), "N_M")(0, 0).real(), 0.8, 1e-12);
    EXPECT_NEAR(get(oracle_example1(0, 1, lam), "N_T")(0, 0).real(), 8.0 / 3, 1e-12);
}

TEST(Oracle, DomainAndArguments)
{
    auto kind = [](auto fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InvalidArgument;
    };
    EXPECT_EQ(kind([] { oracle_example1(0, 1, std::vector{0.0, -1.0}); }), ErrorKind::DomainViolation);
    EXPECT_EQ(kind([] { oracle_example2(0, 1, std::vector{0.0, 1.0, 1.0}); }), ErrorKind::DomainViolation);
    EXPECT_THROW(oracle_example1(1, 1, std::vector{0.0, 1.0}), Error);
    EXPECT_THROW(oracle_for("harmonic", 0, 1, std::vector{1.0}), Error);
    EXPECT_EQ(find_quantity(oracle_example2(0, std::nullopt, std::vector{0.0, 0.1, 1.0}), "M"), nullptr);
}

TEST(Compare, ToleranceAndModes)
{
    const auto o = oracle_example2(1, 2, std::vector{1.0, 0.3, 1.0});
    for (auto mode : {CompareMode::Direct, CompareMode::Modulus, CompareMode::InvariantOnly})
        for (const auto& r : compare(o, o, mode, 1e-6)) {
            EXPECT_EQ(r.max_error, 0.0);
            EXPECT_TRUE(r.pass);
        }
    TensorSet scaled = o;
    for (auto& q : scaled) q.value = (1 + 2e-6) * q.value;
    for (const auto& r : compare(scaled, o, CompareMode::Direct, 1e-6))
        if (max_abs(r.oracle) > 1e-12) EXPECT_FALSE(r.pass) << r.label;
    // a global phase on e survives only the modulus comparison
    TensorSet rotated = o;
    for (auto& q : rotated)
        if (q.label == "e") q.value = std::polar(1.0, 0.7) * q.value;
    for (const auto& r : compare(rotated, o, CompareMode::Direct, 1e-6))
        if (r.label == "e") EXPECT_FALSE(r.pass);
    for (const auto& r : compare(rotated, o, CompareMode::Modulus, 1e-6)) EXPECT_TRUE(r.pass) << r.label;
    EXPECT_EQ(compare(o, o, CompareMode::InvariantOnly, 0).size() + 6, o.size()); // e, G, T, M, A_n, Gamma
    TensorSet extra{{"nonsense", ComplexMatrix(1, 1), true}};
    EXPECT_THROW(compare(extra, o, CompareMode::Direct, 1e-6), Error);
    EXPECT_THROW(compare_error(ComplexMatrix(2, 2), ComplexMatrix(3, 3), false), Error);
    EXPECT_EQ(parse_compare_mode("invariant-only"), CompareMode::InvariantOnly);
    EXPECT_THROW(parse_compare_mode("loose"), Error);
}

TEST(Compare, ZeroEntriesAreAbsolute)
{
    ComplexMatrix a{{1.0, 1e-9}}, b{{1.0, 0.0}};
    EXPECT_NEAR(compare_error(a, b, false), 1e-9, 1e-20);
    ComplexMatrix c{{1.0 + 1e-7, 0.0}};
    EXPECT_NEAR(compare_error(c, b, false), 1e-7, 1e-15);
}

TEST(Pipeline, Example1AgainstOracle)
{
    const auto spec = builtin_family("example1");
    const std::vector<double> lam{0.5, 1.3};
    PipelineOptions opt;
    opt.curvature = true;
    for (std::size_t n = 0; n <= 3; ++n)
        for (std::size_t m : {n + 1, n + 2}) {
            const auto num = numeric_set(spec, lam, n, m, opt);
            for (const auto& r : compare(num, oracle_example1(n, m, lam), CompareMode::Modulus, 1e-6)) {
                const double tol = r.label == "R" ? 1e-6 : r.label == "scalar_curvature" ? 1e-3 : 1e-8;
                EXPECT_LE(r.max_error, tol) << n << "," << m << " " << r.label;
            }
        }
}

TEST(Pipeline, Example2AgainstOracle)
{
    const auto spec = builtin_family("example2");
    const std::vector<double> lam{1.0, 0.3, 1.0};
    PipelineOptions opt;
    opt.coordinate_gauge = true;
    for (std::size_t n = 0; n <= 4; ++n)
        for (std::size_t m : {n + 1, n + 3}) {
            const auto num = numeric_set(spec, lam, n, m, opt);
            EXPECT_NE(find_quantity(num, "Gamma"), nullptr);
            for (const auto& r : compare(num, oracle_example2(n, m, lam), CompareMode::Modulus, 1e-6)) {
                const bool fd = r.label == "R" || r.label == "A_n" || r.label == "Gamma";
                EXPECT_LE(r.max_error, fd ? 1e-6 : 1e-8) << n << "," << m << " " << r.label;
            }
        }
}

TEST(Pipeline, CoordinateGaugeIsDirect)
{
    // In the coordinate gauge the real parts of the N-beins carry the oracle signs up to one overall sign.
    const auto spec = builtin_family("example2");
    const std::vector<double> lam{0.7, -0.2, 1.2};
    PipelineOptions opt;
    opt.coordinate_gauge = true;
    const auto num = numeric_set(spec, lam, 1, 3, opt);
    const auto o = oracle_example2(1, 3, lam);
    const auto a = get(num, "e"), b = get(o, "e");
    const double s = (a(1, 0) / b(1, 0)).real() > 0 ? 1.0 : -1.0;
    EXPECT_LT(compare_error(s * a, b, false), 1e-8);
}

TEST(Oracle, PinnedValues)
{
    const auto a = oracle_example1(0, std::nullopt, std::vector{0.0, 1.0});
    EXPECT_EQ(real_part(get(a, "g_n")), (RealMatrix{{0.5, 0.0}, {0.0, 1.0 / 32}}));
    EXPECT_DOUBLE_EQ(get(a, "scalar_curvature")(0, 0).real(), -4.0);

    const auto b = oracle_example2(0, std::nullopt, std::vector{0.0, 0.0, 1.0});
    const auto g = real_part(get(b, "g_n"));
    EXPECT_DOUBLE_EQ(g(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(g(1, 1), 0.125);
    EXPECT_DOUBLE_EQ(g(2, 2), 0.03125);
    EXPECT_EQ(find_quantity(b, "scalar_curvature"), nullptr);

    const std::vector<double> lam{1.0, 0.3, 1.0};
    const double om = std::sqrt(0.91);
    EXPECT_DOUBLE_EQ(get(oracle_example2(2, 0, lam), "R")(1, 2).real(), -2 / (4 * om * om * om));
    EXPECT_EQ(max_abs(get(oracle_example2(0, 3, lam), "T")), 0.0);
    EXPECT_EQ(max_abs(get(oracle_example1(0, 3, std::vector{0.0, 1.0}), "T")), 0.0);
}
