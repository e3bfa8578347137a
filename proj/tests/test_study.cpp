#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "support.hpp"
#include "wgbh/cases.hpp"
#include "wgbh/study.hpp"

using namespace wgbh;

namespace {

// fourth derivative along one axis, O(s^4)
double d4(const ScalarField& f, const Point& p, const Point& dir, double s)
{
    static const double w[] = {-1.0, 12.0, -39.0, 56.0, -39.0, 12.0, -1.0};
    double acc = 0.0;
    for (int i = 0; i < 7; ++i) acc += w[i] * f(p + (i - 3) * s * dir);
    return acc / (6.0 * std::pow(s, 4));
}

// tensor product of 5-point second differences
double dxxyy(const ScalarField& f, const Point& p, double s)
{
    static const double w[] = {-1.0, 16.0, -30.0, 16.0, -1.0};
    double acc = 0.0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) acc += w[i] * w[j] * f(p + Point((i - 2) * s, (j - 2) * s));
    return acc / (144.0 * std::pow(s, 4));
}

ConvergenceReport read_fixture(const std::string& name)
{
    std::ifstream in(test::fixture_path(name));
    return parse_csv(in);
}

ConvergenceReport round_trip(const ConvergenceReport& r)
{
    std::stringstream ss;
    emit_csv(ss, r);
    return parse_csv(ss);
}

StudyConfig config(const std::string& name, MeshFamily family, std::vector<int> levels)
{
    StudyConfig c;
    c.case_name = name;
    c.mesh_family = family;
    c.refinements = std::move(levels);
    c.deterministic = true;
    return c;
}

}  // namespace

TEST(Cases, BilaplacianMatchesFiniteDifferences)
{
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(0.1, 0.9);
    const double s = 0.02;
    for (const auto& name : manufactured_case_names()) {
        const auto sol = manufactured_case(name);
        for (int trial = 0; trial < 20; ++trial) {
            const Point p(dist(rng), dist(rng));
            const double fd = d4(sol.u, p, Point(1, 0), s) + d4(sol.u, p, Point(0, 1), s) +
                              2.0 * dxxyy(sol.u, p, s);
            const double scale = std::max(1.0, std::abs(sol.bilaplacian(p)));
            EXPECT_NEAR(fd, sol.bilaplacian(p), 1e-6 * scale) << name;
        }
    }
}

TEST(Cases, GradientAndHessianMatchFiniteDifferences)
{
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> dist(0.1, 0.9);
    const double s = 1e-4;
    for (const auto& name : manufactured_case_names()) {
        const auto sol = manufactured_case(name);
        for (int trial = 0; trial < 20; ++trial) {
            const Point p(dist(rng), dist(rng));
            const Point ex(s, 0), ey(0, s);
            const Eigen::Vector2d g((sol.u(p + ex) - sol.u(p - ex)) / (2 * s),
                                    (sol.u(p + ey) - sol.u(p - ey)) / (2 * s));
            EXPECT_LT((g - sol.grad(p)).cwiseAbs().maxCoeff(), 1e-7) << name;
            Eigen::Matrix2d hess;
            hess.col(0) = (sol.grad(p + ex) - sol.grad(p - ex)) / (2 * s);
            hess.col(1) = (sol.grad(p + ey) - sol.grad(p - ey)) / (2 * s);
            EXPECT_LT((hess - sol.hessian(p)).cwiseAbs().maxCoeff(), 1e-6) << name;
        }
    }
}

TEST(Cases, UnknownNameThrows) { EXPECT_THROW(manufactured_case("nope"), std::invalid_argument); }

TEST(Csv, EmptyReportIsHeaderOnly)
{
    ConvergenceReport r;
    std::stringstream ss;
    emit_csv(ss, r);
    EXPECT_EQ(ss.str(),
              "case,mesh,k,h,l2,l2_order,h2,h2_order,ubinf,ubinf_order,uginf,uginf_order,"
              "solver_residual,wall_ms\n");
}

TEST(Csv, FirstRowHasBlankOrdersAndRoundTrips)
{
    const ConvergenceReport r = run_case(config("trig", MeshFamily::tri, {2, 4, 8}));
    std::stringstream ss;
    emit_csv(ss, r);
    std::string header, first;
    std::getline(ss, header);
    std::getline(ss, first);
    EXPECT_NE(first.find(",,"), std::string::npos);

    const ConvergenceReport back = round_trip(r);
    ASSERT_EQ(back.rows.size(), 3u);
    EXPECT_EQ(back.case_name, "trig");
    EXPECT_FALSE(back.rows[0].orders.h2.has_value());
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& a = r.rows[i];
        const auto& b = back.rows[i];
        EXPECT_NEAR(b.h, a.h, 1e-15 * a.h);
        EXPECT_NEAR(b.errors.l2, a.errors.l2, 1e-14 * a.errors.l2);
        EXPECT_NEAR(b.errors.h2, a.errors.h2, 1e-14 * a.errors.h2);
        EXPECT_NEAR(b.errors.ub_inf, a.errors.ub_inf, 1e-14 * a.errors.ub_inf);
        EXPECT_NEAR(b.errors.ug_inf, a.errors.ug_inf, 1e-14 * a.errors.ug_inf);
        if (i > 0) EXPECT_NEAR(*b.orders.h2, *a.orders.h2, 1e-13);
    }
}

TEST(Csv, SchemaMismatchThrows)
{
    std::stringstream ss("case,mesh,h,l2\nquad,tri,0.5,1\n");
    EXPECT_THROW(parse_csv(ss), RegressionError);
}

TEST(Markdown, HasOneLinePerRow)
{
    const ConvergenceReport r = run_case(config("quad", MeshFamily::rect, {1, 2}));
    std::stringstream ss;
    emit_markdown(ss, r);
    int bars = 0;
    for (std::string line; std::getline(ss, line);)
        if (!line.empty() && line.front() == '|') ++bars;
    EXPECT_EQ(bars, 2 + 2);
}

TEST(Study, DeterministicRunsAreIdentical)
{
    const auto c = config("bubble", MeshFamily::rect, {2, 4});
    std::stringstream a, b;
    emit_csv(a, run_case(c));
    emit_csv(b, run_case(c));
    EXPECT_EQ(a.str(), b.str());
}

TEST(Study, RejectsBadConfig)
{
    EXPECT_THROW(run_case(config("quad", MeshFamily::tri, {4, 2})), StudyError);
    auto c = config("quad", MeshFamily::tri, {2});
    c.k = 1;
    EXPECT_THROW(run_case(c), StudyError);
}

TEST(Study, QuadraticIsExactOnEveryLevel)
{
    for (MeshFamily family : {MeshFamily::tri, MeshFamily::rect}) {
        const auto r = run_case(config("quad", family, {2, 4, 8}));
        for (const auto& row : r.rows) {
            EXPECT_LE(row.errors.l2, 1e-8);
            EXPECT_LE(row.errors.h2, 1e-8);
            EXPECT_LE(row.errors.ub_inf, 1e-8);
            EXPECT_LE(row.errors.ug_inf, 1e-8);
        }
        EXPECT_LE(r.rows.back().errors.h2, 1e-7);
    }
}

TEST(Study, MeshFileFamily)
{
    StudyConfig c = config("quad", MeshFamily::file, {});
    c.mesh_file = test::fixture_path("polygon6.wgmesh");
    const auto r = run_case(c);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_LE(r.rows[0].errors.h2, 1e-8);
}

TEST(Regress, IdenticalReportPasses)
{
    const auto r = run_case(config("trig", MeshFamily::tri, {2, 4, 8}));
    const auto result = regress(r, round_trip(r));
    EXPECT_TRUE(result.pass);
    EXPECT_EQ(result.rows_compared, 3);
    EXPECT_GT(result.cells_compared, 0);
}

TEST(Regress, LargeDeviationIsNamed)
{
    const auto r = run_case(config("trig", MeshFamily::tri, {2, 4}));
    ConvergenceReport off = r;
    off.rows[1].errors.h2 *= 1.5;
    const auto result = regress(off, r);
    EXPECT_FALSE(result.pass);
    ASSERT_FALSE(result.failures.empty());
    const std::string& msg = result.failures.front();
    EXPECT_NE(msg.find("trig"), std::string::npos) << msg;
    EXPECT_NE(msg.find("h2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("h=2.5000e-01"), std::string::npos) << msg;
}

TEST(Regress, DisjointLevelsFail)
{
    const auto a = run_case(config("quad", MeshFamily::tri, {2}));
    const auto b = run_case(config("quad", MeshFamily::tri, {4}));
    EXPECT_FALSE(regress(a, b).pass);
}

TEST(Regress, BubbleOnTrianglesMatchesReference)
{
    const auto r = run_case(config("bubble", MeshFamily::tri, {4, 8, 16, 32, 64, 128}));
    const auto result = regress(r, read_fixture("bubble_tri.csv"));
    for (const auto& f : result.failures) ADD_FAILURE() << f;
    EXPECT_TRUE(result.pass);
    EXPECT_EQ(result.rows_compared, 6);
}

TEST(Regress, BiquadraticOnTrianglesMatchesReference)
{
    const auto r = run_case(config("biquad", MeshFamily::tri, {1, 2, 4, 8, 16, 32, 64}));
    const auto result = regress(r, read_fixture("biquad_tri.csv"));
    for (const auto& f : result.failures) ADD_FAILURE() << f;
    EXPECT_TRUE(result.pass);
}

TEST(Regress, TrigOnRectanglesOrderPattern)
{
    // published H2 orders for this mesh family; checked row by row
    const auto r = run_case(config("trig", MeshFamily::rect, {2, 4, 8, 16, 32, 64}));
    const auto ref = read_fixture("trig_rect.csv");
    for (const auto& base : ref.rows) {
        if (!base.orders.h2 || base.h > 0.25 + 1e-12) continue;
        const ReportRow* mine = nullptr;
        for (const auto& row : r.rows)
            if (std::abs(row.h - base.h) < 1e-12) mine = &row;
        ASSERT_NE(mine, nullptr);
        ASSERT_TRUE(mine->orders.h2.has_value());
        EXPECT_NEAR(*mine->orders.h2, *base.orders.h2, 0.15) << "h=" << base.h;
    }
}

TEST(Markdown, HeaderHasOneCellPerColumn)
{
    const ConvergenceReport r = run_case(config("quad", MeshFamily::rect, {1}));
    std::stringstream ss;
    emit_markdown(ss, r);
    auto cells = [](const std::string& line) {
        int n = 0;
        for (std::size_t i = 0; i < line.size(); ++i)
            if (line[i] == '|' && (i == 0 || line[i - 1] != '\\')) ++n;
        return n - 1;
    };
    std::vector<std::string> table;
    for (std::string line; std::getline(ss, line);)
        if (!line.empty() && line.front() == '|') table.push_back(line);
    ASSERT_EQ(table.size(), 3u);
    EXPECT_EQ(cells(table[0]), 9);
    EXPECT_EQ(cells(table[1]), 9);
    EXPECT_EQ(cells(table[2]), 9);
}
