#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wgbh/error_norms.hpp"
#include "wgbh/solver.hpp"

namespace wgbh {

class StudyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RegressionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class MeshFamily { tri, rect, file };

std::string to_string(MeshFamily family);
MeshFamily parse_mesh_family(const std::string& name);

struct StudyConfig {
    std::string case_name = "quad";
    MeshFamily mesh_family = MeshFamily::tri;
    std::vector<int> refinements{2, 4, 8};  // ignored for MeshFamily::file
    int k = 2;
    std::string mesh_file;
    SolverOptions solver;
    /// Zero wall times so repeated runs give identical reports.
    bool deterministic = false;

    /// Throws StudyError when refinements are not strictly increasing or k < 2.
    void validate() const;
};

struct ReportRow {
    double h = 0.0;
    ErrorQuadruple errors;
    OrderRow orders;
    double solver_residual = 0.0;
    double wall_ms = 0.0;
};

struct ConvergenceReport {
    std::string case_name;
    std::string mesh;
    int k = 2;
    std::vector<ReportRow> rows;

    // metadata
    int element_quadrature_degree = 0;
    int edge_quadrature_degree = 0;
    bool analytic_tangential_derivative = true;
};

/// One solve and error evaluation per refinement level.
ConvergenceReport run_case(const StudyConfig& config);

/// CSV columns:
/// case,mesh,k,h,l2,l2_order,h2,h2_order,ubinf,ubinf_order,uginf,uginf_order,solver_residual,wall_ms
void emit_csv(std::ostream& out, const ConvergenceReport& report);
/// Markdown table with one error/order column pair per measure.
void emit_markdown(std::ostream& out, const ConvergenceReport& report);

/// Reads a CSV written by emit_csv (or a baseline fixture with blank cells,
/// which come back as NaN). Throws RegressionError on a schema mismatch.
ConvergenceReport parse_csv(std::istream& in);

struct RegressionTolerances {
    double l2_rel = 0.05;
    double h2_rel = 0.05;
    double linf_rel = 0.15;
    double order_abs = 0.15;
    /// Absolute slack for baseline cells that are exactly zero.
    double zero_abs = 1e-8;
    bool skip_unit_h = true;
};

struct RegressionResult {
    bool pass = true;
    int rows_compared = 0;
    int cells_compared = 0;
    std::vector<std::string> failures;
};

/// Compares every non-blank baseline cell with the report row of equal h.
/// Baseline rows the report did not run are skipped, but at least one must
/// match; order cells are skipped where the report has none.
RegressionResult regress(const ConvergenceReport& report, const ConvergenceReport& baseline,
                         const RegressionTolerances& tolerances = {});

}  // namespace wgbh
