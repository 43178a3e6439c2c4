#include "kse2d/grid.hpp"

#include <cmath>

namespace kse2d {

void Field::clamp_boundary() {
    const int m_ = grid.m;
    for (int k = 0; k <= m_; ++k) {
        at(0, k) = 0.0;
        at(m_, k) = 0.0;
        at(k, 0) = 0.0;
        at(k, m_) = 0.0;
    }
    clamped = true;
}

bool Field::boundary_is_zero() const {
    const int m_ = grid.m;
    for (int k = 0; k <= m_; ++k) {
        if (at(0, k) != 0.0 || at(m_, k) != 0.0 || at(k, 0) != 0.0 || at(k, m_) != 0.0)
            return false;
    }
    return true;
}

bool Field::all_finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

Partition Partition::uniform(int n_side) {
    if (n_side < 1) throw std::invalid_argument("Partition: n_side must be >= 1");
    Partition p;
    p.n_side = n_side;
    p.delta_bar = 1.0 / n_side;
    p.subdomains.reserve(static_cast<size_t>(n_side) * n_side);
    for (int a = 0; a < n_side; ++a) {
        for (int b = 0; b < n_side; ++b) {
            Subdomain s;
            s.j = a * n_side + b;
            s.x1_min = a * p.delta_bar;
            s.x1_max = (a + 1) * p.delta_bar;
            s.x2_min = b * p.delta_bar;
            s.x2_max = (b + 1) * p.delta_bar;
            p.subdomains.push_back(s);
        }
    }
    return p;
}

void Partition::node_range(const Grid2D& g, int j, int& i0, int& i1, int& j0, int& j1) const {
    if (!aligned_with(g))
        throw std::invalid_argument("Partition: grid not aligned (m not divisible by n_side)");
    const int q = g.m / n_side;
    const int a = j / n_side, b = j % n_side;
    i0 = a * q;
    i1 = (a + 1) * q;
    j0 = b * q;
    j1 = (b + 1) * q;
}

int Partition::owner(const Grid2D& g, int i, int j) const {
    if (!aligned_with(g))
        throw std::invalid_argument("Partition: grid not aligned (m not divisible by n_side)");
    const int q = g.m / n_side;
    const int a = std::min(i / q, n_side - 1);
    const int b = std::min(j / q, n_side - 1);
    return a * n_side + b;
}

} // namespace kse2d
