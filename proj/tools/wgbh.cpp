// Batch driver for weak Galerkin biharmonic convergence studies.
//
//   wgbh run --case bubble --mesh tri --n 4,8,16 --k 2 --out report.csv
//   wgbh regress --report report.csv --baseline fixtures/bubble_tri.csv

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wgbh/cases.hpp"
#include "wgbh/study.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitRegression = 1;
constexpr int kExitRuntime = 2;

std::vector<int> parse_levels(const std::string& text)
{
    std::vector<int> levels;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const int n = std::stoi(item, &used);
        if (used != item.size()) throw wgbh::StudyError("bad refinement level '" + item + "'");
        levels.push_back(n);
    }
    return levels;
}

wgbh::ConvergenceReport read_report(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw wgbh::RegressionError("cannot open '" + path + "'");
    return wgbh::parse_csv(in);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Weak Galerkin biharmonic solver: convergence studies and baseline regression"};
    app.require_subcommand(1);

    std::string case_name = "quad";
    std::string mesh = "tri";
    std::string levels = "2,4,8";
    int k = 2;
    std::string out_path;
    std::string format = "csv";
    std::string mesh_file;
    bool deterministic = false;
    bool no_condense = false;
    std::string solver = "cholesky";

    auto* run = app.add_subcommand("run", "Solve a manufactured case on a sequence of meshes");
    run->add_option("--case", case_name, "quad, bubble, trig or biquad")->required();
    run->add_option("--mesh", mesh, "tri, rect or file")->check(CLI::IsMember({"tri", "rect", "file"}));
    run->add_option("--n", levels, "comma separated refinement levels");
    run->add_option("--k", k, "polynomial degree k >= 2");
    run->add_option("--out", out_path, "output path (stdout when omitted)");
    run->add_option("--format", format, "csv or md")->check(CLI::IsMember({"csv", "md"}));
    run->add_flag("--deterministic", deterministic, "zero wall times for reproducible output");
    run->add_option("--mesh-file", mesh_file, "wgmesh file for --mesh file");
    run->add_flag("--no-condense", no_condense, "solve without static condensation");
    run->add_option("--solver", solver, "cholesky or cg")->check(CLI::IsMember({"cholesky", "cg"}));

    std::string report_path;
    std::string baseline_path;
    wgbh::RegressionTolerances tol;
    auto* reg = app.add_subcommand("regress", "Compare a report against a baseline CSV");
    reg->add_option("--report", report_path, "report CSV")->required();
    reg->add_option("--baseline", baseline_path, "baseline CSV")->required();
    reg->add_option("--l2-tol", tol.l2_rel, "relative tolerance for the L2 column");
    reg->add_option("--h2-tol", tol.h2_rel, "relative tolerance for the H2 column");
    reg->add_option("--linf-tol", tol.linf_rel, "relative tolerance for edge max-norm columns");
    reg->add_option("--order-tol", tol.order_abs, "absolute tolerance for order columns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitRuntime;
    }

    try {
        if (*run) {
            wgbh::StudyConfig config;
            config.case_name = case_name;
            config.mesh_family = wgbh::parse_mesh_family(mesh);
            config.refinements = parse_levels(levels);
            config.k = k;
            config.mesh_file = mesh_file;
            config.deterministic = deterministic;
            config.solver.condense = !no_condense;
            config.solver.method =
                solver == "cg" ? wgbh::LinearSolver::cg : wgbh::LinearSolver::cholesky;
            if (!mesh_file.empty() && mesh != "file")
                throw wgbh::StudyError("--mesh-file requires --mesh file");

            const auto report = wgbh::run_case(config);

            std::ofstream file;
            if (!out_path.empty()) {
                file.open(out_path);
                if (!file) throw wgbh::StudyError("cannot write '" + out_path + "'");
            }
            std::ostream& out = out_path.empty() ? std::cout : file;
            if (format == "md")
                wgbh::emit_markdown(out, report);
            else
                wgbh::emit_csv(out, report);
            if (!out) throw wgbh::StudyError("failed writing report");
            return kExitPass;
        }

        const auto report = read_report(report_path);
        const auto baseline = read_report(baseline_path);
        const auto result = wgbh::regress(report, baseline, tol);
        for (const auto& f : result.failures) std::cout << "FAIL " << f << '\n';
        std::cout << (result.pass ? "PASS" : "FAIL") << " (" << result.cells_compared
                  << " cells in " << result.rows_compared << " rows compared, " << result.failures.size() << " failures)\n";
        return result.pass ? kExitPass : kExitRegression;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitRuntime;
    }
}
