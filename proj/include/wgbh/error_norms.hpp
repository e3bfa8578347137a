#pragma once

#include <optional>
#include <vector>

#include "wgbh/mesh.hpp"
#include "wgbh/quadrature.hpp"
#include "wgbh/weak_function.hpp"

namespace wgbh {

/// The four error measures of a discrete solution against Q_h u.
struct ErrorQuadruple {
    double l2 = 0.0;      // ||u_0 - Q_0 u||
    double h2 = 0.0;      // |||u_h - Q_h u|||
    double ub_inf = 0.0;  // ||u_b - Q_b u||_inf
    double ug_inf = 0.0;  // ||u_g - Q_b grad u||_inf
    double h = 0.0;       // mesh size
};

/// Discrete H2 norm
///   sum_T [ sum_ij ||d_ij,w v||_T^2 + h_T^-1 ||Q_b grad v_0 - v_g||_dT^2
///           + h_T^-3 ||Q_b v_0 - v_b||_dT^2 ],
/// integrated point by point on the element and edge rules.
double triple_bar_norm(const PolyMesh& mesh, const WeakFunction& v, QuadratureDegrees degrees);
double triple_bar_norm(const PolyMesh& mesh, const WeakFunction& v);

/// Element-based L2 norm of v_0.
double l2_norm(const PolyMesh& mesh, const WeakFunction& v, QuadratureDegrees degrees);
double l2_norm(const PolyMesh& mesh, const WeakFunction& v);

/// Max of |v_b| over every edge, sampled at edge Gauss points and endpoints.
double ub_linf(const PolyMesh& mesh, const WeakFunction& v);

/// Max over every edge and both components of |v_gi|, sampled as ub_linf.
double ug_linf(const PolyMesh& mesh, const WeakFunction& v);

/// All four measures of `uh - qhu`.
ErrorQuadruple compute_errors(const PolyMesh& mesh, const WeakFunction& uh, const WeakFunction& qhu);

/// Convergence orders log2(e_coarse / e_fine) between consecutive rows.
/// Undefined (zero or non-finite) ratios yield std::nullopt.
struct OrderRow {
    std::optional<double> l2;
    std::optional<double> h2;
    std::optional<double> ub_inf;
    std::optional<double> ug_inf;
};

std::optional<double> observed_order(double coarse, double fine);

/// One entry per row; the first entry is always empty.
std::vector<OrderRow> observed_order(const std::vector<ErrorQuadruple>& errors);

}  // namespace wgbh
