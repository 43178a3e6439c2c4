#pragma once

#include <cstdint>

#include "kse2d/grid.hpp"

namespace kse2d {

/// Seeded generator of smooth clamped test fields: sums of
/// sin(k pi x1) sin(l pi x2), k,l = 1..6, coefficients uniform in [-1,1]
/// scaled by 1/(k^2+l^2). The draw order (k outer, l inner) and the
/// bits-to-double mapping are fixed so reports are byte-reproducible.
class ClampedFieldGenerator {
public:
    explicit ClampedFieldGenerator(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    Field next(const Grid2D& grid);

    /// One uniform draw in [-1, 1] from the deterministic stream.
    double uniform_pm1();

    static constexpr int max_mode = 6;

private:
    std::uint64_t next_u64();
    std::uint64_t state_;
};

/// amplitude * sin(pi x1) sin(pi x2)
Field sin_sin_field(const Grid2D& grid, double amplitude);

/// Seeded smooth field with both clamped conditions (zero boundary value and
/// zero normal derivative): sums of sin^2(k pi x1) sin^2(l pi x2), k,l = 1..3.
Field normal_clamped_field(const Grid2D& grid, std::uint64_t seed);

} // namespace kse2d
