#include "kse2d/random_fields.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace kse2d {

std::uint64_t ClampedFieldGenerator::next_u64() {
    // splitmix64; self-contained so streams are identical on every platform
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double ClampedFieldGenerator::uniform_pm1() {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53; // [0,1)
    return 2.0 * u - 1.0;
}

Field ClampedFieldGenerator::next(const Grid2D& grid) {
    const double pi = std::numbers::pi;
    const int m = grid.m;
    double coeff[max_mode][max_mode];
    for (int k = 1; k <= max_mode; ++k)
        for (int l = 1; l <= max_mode; ++l)
            coeff[k - 1][l - 1] = uniform_pm1() / double(k * k + l * l);

    std::vector<double> s1(static_cast<size_t>(max_mode) * (m + 1));
    for (int k = 1; k <= max_mode; ++k)
        for (int i = 0; i <= m; ++i) s1[(k - 1) * (m + 1) + i] = std::sin(k * pi * i * grid.dx());

    Field f(grid, 0.0, true);
    for (int i = 1; i < m; ++i) {
        for (int j = 1; j < m; ++j) {
            double v = 0.0;
            for (int k = 1; k <= max_mode; ++k)
                for (int l = 1; l <= max_mode; ++l)
                    v += coeff[k - 1][l - 1] * s1[(k - 1) * (m + 1) + i] * s1[(l - 1) * (m + 1) + j];
            f.at(i, j) = v;
        }
    }
    return f;
}

Field normal_clamped_field(const Grid2D& grid, std::uint64_t seed) {
    const double pi = std::numbers::pi;
    ClampedFieldGenerator gen(seed);
    const int m = grid.m;
    double coeff[3][3];
    for (int k = 1; k <= 3; ++k)
        for (int l = 1; l <= 3; ++l) coeff[k - 1][l - 1] = gen.uniform_pm1() / double(k * k + l * l);
    Field f(grid, 0.0, true);
    for (int i = 1; i < m; ++i) {
        for (int j = 1; j < m; ++j) {
            double v = 0.0;
            for (int k = 1; k <= 3; ++k) {
                const double sx = std::sin(k * pi * i * grid.dx());
                for (int l = 1; l <= 3; ++l) {
                    const double sy = std::sin(l * pi * j * grid.dx());
                    v += coeff[k - 1][l - 1] * sx * sx * sy * sy;
                }
            }
            f.at(i, j) = v;
        }
    }
    return f;
}

Field sin_sin_field(const Grid2D& grid, double amplitude) {
    const double pi = std::numbers::pi;
    Field f(grid, 0.0, true);
    const int m = grid.m;
    for (int i = 1; i < m; ++i)
        for (int j = 1; j < m; ++j)
            f.at(i, j) = amplitude * std::sin(pi * i * grid.dx()) * std::sin(pi * j * grid.dx());
    return f;
}

} // namespace kse2d
