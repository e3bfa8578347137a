#include "wgbh/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "wgbh/cases.hpp"
#include "wgbh/projection.hpp"

namespace wgbh {

namespace {

constexpr const char* kCsvHeader =
    "case,mesh,k,h,l2,l2_order,h2,h2_order,ubinf,ubinf_order,uginf,uginf_order,solver_residual,"
    "wall_ms";

std::string format_number(double v)
{
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15e", v);
    return buf;
}

std::string format_order(const std::optional<double>& v)
{
    return v ? format_number(*v) : std::string();
}

std::string format_short(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4e", v);
    return buf;
}

std::string format_percent(double fraction)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g%%", fraction * 100.0);
    return buf;
}

std::string format_order_short(const std::optional<double>& v)
{
    if (!v) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *v);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trim(std::string s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& cell, int line_no)
{
    const std::string s = trim(cell);
    if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw RegressionError("line " + std::to_string(line_no) + ": '" + s + "' is not a number");
    }
}

std::optional<double> parse_order(const std::string& cell, int line_no)
{
    const double v = parse_number(cell, line_no);
    if (std::isnan(v)) return std::nullopt;
    return v;
}

PolyMesh build_mesh(const StudyConfig& config, int n)
{
    switch (config.mesh_family) {
    case MeshFamily::tri:
        return uniform_triangles(n);
    case MeshFamily::rect:
        return uniform_rectangles(n);
    case MeshFamily::file:
        return load_mesh_file(config.mesh_file);
    }
    throw StudyError("unknown mesh family");
}

}  // namespace

std::string to_string(MeshFamily family)
{
    switch (family) {
    case MeshFamily::tri:
        return "tri";
    case MeshFamily::rect:
        return "rect";
    case MeshFamily::file:
        return "file";
    }
    return "unknown";
}

MeshFamily parse_mesh_family(const std::string& name)
{
    if (name == "tri") return MeshFamily::tri;
    if (name == "rect") return MeshFamily::rect;
    if (name == "file") return MeshFamily::file;
    throw StudyError("unknown mesh family '" + name + "' (expected tri, rect or file)");
}

void StudyConfig::validate() const
{
    if (k < 2) throw StudyError("degree k must be >= 2");
    if (mesh_family == MeshFamily::file) {
        if (mesh_file.empty()) throw StudyError("mesh family 'file' needs a mesh file");
        return;
    }
    if (refinements.empty()) throw StudyError("no refinement levels given");
    for (std::size_t i = 0; i < refinements.size(); ++i) {
        if (refinements[i] < 1) throw StudyError("refinement levels must be positive");
        if (i > 0 && refinements[i] <= refinements[i - 1])
            throw StudyError("refinement levels must be strictly increasing");
    }
}

ConvergenceReport run_case(const StudyConfig& config)
{
    config.validate();
    const ManufacturedSolution sol = manufactured_case(config.case_name);
    const BiharmonicProblem problem = sol.problem();
    const auto degrees = QuadratureDegrees::for_degree(config.k);

    ConvergenceReport report;
    report.case_name = config.case_name;
    report.mesh = to_string(config.mesh_family);
    report.k = config.k;
    report.element_quadrature_degree = degrees.element;
    report.edge_quadrature_degree = degrees.edge;
    report.analytic_tangential_derivative = problem.has_analytic_tangential_derivative();

    std::vector<int> levels = config.refinements;
    if (config.mesh_family == MeshFamily::file) levels = {0};

    std::vector<ErrorQuadruple> errors;
    for (int n : levels) {
        try {
            const auto start = std::chrono::steady_clock::now();
            const PolyMesh mesh = build_mesh(config, n);
            const Solution s = solve_biharmonic(mesh, config.k, problem, config.solver);
            const WeakFunction qhu = project_Qh(mesh, config.k, sol.u, sol.grad, degrees);
            const auto stop = std::chrono::steady_clock::now();

            ReportRow row;
            row.errors = compute_errors(mesh, s.u, qhu);
            row.h = row.errors.h;
            row.solver_residual = s.relative_residual;
            row.wall_ms = config.deterministic
                              ? 0.0
                              : std::chrono::duration<double, std::milli>(stop - start).count();
            report.rows.push_back(row);
            errors.push_back(row.errors);
        } catch (const std::exception& err) {
            const std::string level =
                config.mesh_family == MeshFamily::file ? config.mesh_file : "n=" + std::to_string(n);
            throw StudyError("refinement " + level + ": " + err.what());
        }
    }
    const auto orders = observed_order(errors);
    for (std::size_t r = 0; r < report.rows.size(); ++r) report.rows[r].orders = orders[r];
    return report;
}

void emit_csv(std::ostream& out, const ConvergenceReport& report)
{
    out << kCsvHeader << '\n';
    for (const auto& row : report.rows) {
        const auto& e = row.errors;
        const auto& o = row.orders;
        out << report.case_name << ',' << report.mesh << ',' << report.k << ','
            << format_number(row.h) << ',' << format_number(e.l2) << ',' << format_order(o.l2) << ','
            << format_number(e.h2) << ',' << format_order(o.h2) << ',' << format_number(e.ub_inf)
            << ',' << format_order(o.ub_inf) << ',' << format_number(e.ug_inf) << ','
            << format_order(o.ug_inf) << ',' << format_number(row.solver_residual) << ','
            << format_number(row.wall_ms) << '\n';
    }
}

void emit_markdown(std::ostream& out, const ConvergenceReport& report)
{
    out << "Case `" << report.case_name << "`, mesh `" << report.mesh << "`, k = " << report.k
        << "\n\n";
    out << "| h | ‖u_0 − Q_0u‖ | order | \\|\\|\\|u_h − Q_hu\\|\\|\\| | order | ‖u_b − Q_bu‖_∞ | order | "
           "‖u_g − Q_b∇u‖_∞ | order |\n";
    out << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& row : report.rows) {
        const auto& e = row.errors;
        const auto& o = row.orders;
        out << "| " << format_short(row.h) << " | " << format_short(e.l2) << " | "
            << format_order_short(o.l2) << " | " << format_short(e.h2) << " | "
            << format_order_short(o.h2) << " | " << format_short(e.ub_inf) << " | "
            << format_order_short(o.ub_inf) << " | " << format_short(e.ug_inf) << " | "
            << format_order_short(o.ug_inf) << " |\n";
    }
}

ConvergenceReport parse_csv(std::istream& in)
{
    ConvergenceReport report;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (!have_header) {
            if (line != kCsvHeader)
                throw RegressionError("unexpected CSV header: '" + line + "'");
            have_header = true;
            continue;
        }
        const auto cells = split_csv(line);
        if (cells.size() != 14)
            throw RegressionError("line " + std::to_string(line_no) + ": expected 14 columns, got " +
                                  std::to_string(cells.size()));
        const std::string case_name = trim(cells[0]);
        const std::string mesh = trim(cells[1]);
        const int k = static_cast<int>(parse_number(cells[2], line_no));
        if (report.rows.empty()) {
            report.case_name = case_name;
            report.mesh = mesh;
            report.k = k;
        } else if (case_name != report.case_name || mesh != report.mesh || k != report.k) {
            throw RegressionError("line " + std::to_string(line_no) +
                                  ": rows mix cases, meshes or degrees");
        }
        ReportRow row;
        row.h = parse_number(cells[3], line_no);
        row.errors.h = row.h;
        row.errors.l2 = parse_number(cells[4], line_no);
        row.orders.l2 = parse_order(cells[5], line_no);
        row.errors.h2 = parse_number(cells[6], line_no);
        row.orders.h2 = parse_order(cells[7], line_no);
        row.errors.ub_inf = parse_number(cells[8], line_no);
        row.orders.ub_inf = parse_order(cells[9], line_no);
        row.errors.ug_inf = parse_number(cells[10], line_no);
        row.orders.ug_inf = parse_order(cells[11], line_no);
        row.solver_residual = parse_number(cells[12], line_no);
        row.wall_ms = parse_number(cells[13], line_no);
        if (std::isnan(row.h)) throw RegressionError("line " + std::to_string(line_no) + ": missing h");
        report.rows.push_back(row);
    }
    if (!have_header) throw RegressionError("missing CSV header");
    return report;
}

RegressionResult regress(const ConvergenceReport& report, const ConvergenceReport& baseline,
                         const RegressionTolerances& tol)
{
    RegressionResult result;
    auto fail = [&result](std::string msg) {
        result.pass = false;
        result.failures.push_back(std::move(msg));
    };

    if (!baseline.rows.empty() &&
        (report.case_name != baseline.case_name || report.mesh != baseline.mesh ||
         report.k != baseline.k)) {
        fail("report (" + report.case_name + ", " + report.mesh + ", k=" +
             std::to_string(report.k) + ") does not match baseline (" + baseline.case_name + ", " +
             baseline.mesh + ", k=" + std::to_string(baseline.k) + ")");
        return result;
    }

    for (const auto& b : baseline.rows) {
        if (tol.skip_unit_h && std::abs(b.h - 1.0) < 1e-12) continue;
        const ReportRow* match = nullptr;
        for (const auto& r : report.rows)
            if (std::abs(r.h - b.h) <= 1e-6 * b.h) match = &r;
        const std::string where = "(" + baseline.case_name + ", h=" + format_short(b.h) + ", ";
        // levels the report did not run are not compared
        if (!match) continue;
        ++result.rows_compared;

        auto check_value = [&](const char* name, double got, double want, double rel) {
            if (std::isnan(want)) return;
            ++result.cells_compared;
            const bool ok = want == 0.0 ? std::abs(got) <= tol.zero_abs
                                        : std::abs(got - want) <= rel * std::abs(want);
            if (!ok)
                fail(where + name + ") report " + format_short(got) + " vs baseline " +
                     format_short(want) + " (tolerance " + format_percent(rel) + ")");
        };
        auto check_order = [&](const char* name, const std::optional<double>& got,
                               const std::optional<double>& want) {
            // the report's first row has no order to compare
            if (!want || !got) return;
            ++result.cells_compared;
            if (std::abs(*got - *want) > tol.order_abs) {
                fail(where + name + ") report order " + format_order_short(got) + " vs baseline " +
                     format_order_short(want));
            }
        };

        check_value("l2", match->errors.l2, b.errors.l2, tol.l2_rel);
        check_value("h2", match->errors.h2, b.errors.h2, tol.h2_rel);
        check_value("ubinf", match->errors.ub_inf, b.errors.ub_inf, tol.linf_rel);
        check_value("uginf", match->errors.ug_inf, b.errors.ug_inf, tol.linf_rel);
        check_order("l2_order", match->orders.l2, b.orders.l2);
        check_order("h2_order", match->orders.h2, b.orders.h2);
        check_order("ubinf_order", match->orders.ub_inf, b.orders.ub_inf);
        check_order("uginf_order", match->orders.ug_inf, b.orders.ug_inf);
    }
    if (result.rows_compared == 0 && !baseline.rows.empty())
        fail("no report row matches a baseline row");
    return result;
}

}  // namespace wgbh
