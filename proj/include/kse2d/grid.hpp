#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kse2d {

/// Uniform grid on the unit square [0,1]^2 with m intervals per side.
/// Nodes are (x1,x2) = (i*dx, j*dx), i,j = 0..m, dx = 1/m (always derived).
struct Grid2D {
    int m = 0;

    explicit Grid2D(int m_) : m(m_) {
        if (m < 8) throw std::invalid_argument("Grid2D: m must be >= 8, got " + std::to_string(m));
    }

    double dx() const { return 1.0 / m; }
    int side() const { return m + 1; }
    int node_count() const { return (m + 1) * (m + 1); }
    int index(int i, int j) const { return i * (m + 1) + j; }

    friend bool operator==(const Grid2D& a, const Grid2D& b) { return a.m == b.m; }
};

/// Scalar nodal field, row-major over (i,j) with x1 = i*dx (slow axis),
/// x2 = j*dx (fast axis). `clamped` asserts zero boundary values; the stencil
/// operators additionally interpret clamped fields with zero normal derivative
/// (ghost reflection z_{-1} = z_1).
struct Field {
    Grid2D grid;
    std::vector<double> values;
    bool clamped = false;

    explicit Field(Grid2D g, double fill = 0.0, bool clamped_ = true)
        : grid(g), values(static_cast<size_t>(g.node_count()), fill), clamped(clamped_) {
        if (clamped && fill != 0.0)
            throw std::invalid_argument("Field: clamped field must have zero boundary");
    }

    double& at(int i, int j) { return values[static_cast<size_t>(grid.index(i, j))]; }
    double at(int i, int j) const { return values[static_cast<size_t>(grid.index(i, j))]; }
    int m() const { return grid.m; }

    /// Zeroes the boundary ring and marks the field clamped.
    void clamp_boundary();
    /// True if every boundary node is exactly zero.
    bool boundary_is_zero() const;
    /// True if all values are finite.
    bool all_finite() const;
};

/// One square subdomain Omega_j: closed coordinate ranges and center.
struct Subdomain {
    int j = 0;
    double x1_min = 0, x1_max = 0;
    double x2_min = 0, x2_max = 0;

    double side() const { return x1_max - x1_min; }
    double center_x1() const { return 0.5 * (x1_min + x1_max); }
    double center_x2() const { return 0.5 * (x2_min + x2_max); }
};

/// Partition of [0,1]^2 into N = n_side^2 square subdomains of side
/// delta_bar = 1/n_side, indexed j = a*n_side + b (a along x1, b along x2).
struct Partition {
    double delta_bar = 1.0;
    int n_side = 1;
    std::vector<Subdomain> subdomains;

    static Partition uniform(int n_side);

    int count() const { return n_side * n_side; }

    /// Grid alignment: subdomain edges on grid lines.
    bool aligned_with(const Grid2D& g) const { return g.m % n_side == 0; }
    /// Stronger alignment: subdomain centers on grid nodes.
    bool centers_on_nodes(const Grid2D& g) const { return g.m % (2 * n_side) == 0; }

    /// Inclusive node index range [i0,i1]x[j0,j1] covered by subdomain j on g
    /// (the closed geometric square; shared edges belong to both).
    void node_range(const Grid2D& g, int j, int& i0, int& i1, int& j0, int& j1) const;

    /// Owner subdomain of node (i,j) under the half-open convention
    /// [min,max) except the last row/column.
    int owner(const Grid2D& g, int i, int j) const;
};

} // namespace kse2d
