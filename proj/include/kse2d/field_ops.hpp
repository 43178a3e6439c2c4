#pragma once

#include <iosfwd>
#include <string>

#include "kse2d/grid.hpp"

namespace kse2d {

enum class MeasurementMode { averaged, point };

// Discrete differential operators on clamped fields (second order, ghost
// reflection z_{-1} = z_1 across the boundary). Outputs are not clamped.
// All reject a non-clamped input.

/// 5-point Laplacian on interior nodes; boundary nodes carry the one-sided
/// value consistent with ghost reflection (2*f_1/dx^2 on edges, 0 at corners
/// of a clamped field).
Field laplacian(const Field& f);

/// 13-point biharmonic on interior nodes, ghost reflection next to the
/// boundary; boundary outputs are zero.
Field biharmonic(const Field& f);

Field dx1(const Field& f);
Field dx2(const Field& f);
Field dx1x2(const Field& f);

/// Trapezoidal quadrature of f^2 over the whole square.
double l2_sq(const Field& f);

/// Max of |f| over all nodes.
double c0_norm(const Field& f);

/// Trapezoidal integrals over the closed node box of one subdomain.
double integral_on(const Field& f, const Partition& p, const Subdomain& s);
double integral_sq_on(const Field& f, const Partition& p, const Subdomain& s);

/// Averaged measurement: trapezoid of f over s divided by |Omega_j| = delta_bar^2.
double subdomain_mean(const Field& f, const Partition& p, const Subdomain& s);

/// Point measurement: node value at the subdomain center (must be a node).
double point_value(const Field& f, const Partition& p, const Subdomain& s);

/// Diagnostic residual f_j = f - (mean | center value), nonzero only on the
/// closed node box of s.
Field residual_f_j(const Field& f, const Partition& p, const Subdomain& s, MeasurementMode mode);

/// CSV dump, header x1,x2,value, row-major nodes, 17 significant digits.
void write_field_csv(const Field& f, std::ostream& os);
void write_field_csv(const Field& f, const std::string& path);

} // namespace kse2d
