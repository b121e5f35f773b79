#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "subrad/geometry.hpp"

using namespace subrad;

namespace {

LatticeDescriptor make(LatticeKind kind, int n, double a) {
    LatticeDescriptor d;
    d.kind = kind;
    d.side_count = n;
    d.period_x = a;
    return d;
}

// Positions as a sorted set of rounded pairs, for set-equality checks.
std::set<std::pair<long, long>> position_set(const AtomArray& array) {
    std::set<std::pair<long, long>> s;
    for (const auto& p : array.positions)
        s.insert({std::lround(p.x * 1e9), std::lround(p.y * 1e9)});
    return s;
}

} // namespace

TEST_CASE("2x2 square matches the explicit grid") {
    const auto array = generate_array(make(LatticeKind::Square, 2, 0.4), Polarization::SigmaZ);
    REQUIRE(array.total_count() == 4);
    CHECK(array.positions[0].x == doctest::Approx(0.0));
    CHECK(array.positions[1].x == doctest::Approx(0.4));
    CHECK(array.positions[1].y == doctest::Approx(0.0));
    CHECK(array.positions[2].x == doctest::Approx(0.0));
    CHECK(array.positions[2].y == doctest::Approx(0.4));
    CHECK(array.positions[3].x == doctest::Approx(0.4));
    CHECK(array.positions[3].y == doctest::Approx(0.4));
}

TEST_CASE("counting formulas by enumeration") {
    // Independent counts: enumerate the defining cuts directly.
    for (int n = 2; n <= 30; ++n) {
        CHECK(generate_array(make(LatticeKind::Square, n, 0.4), Polarization::SigmaZ).total_count() ==
              n * n);

        int diamond = 0;
        for (int i = -n; i <= n; ++i)
            for (int j = -n; j <= n; ++j)
                if (std::abs(i) + std::abs(j) <= n - 1)
                    ++diamond;
        CHECK(generate_array(make(LatticeKind::DiagonalSquare, n, 0.4), Polarization::SigmaZ)
                  .total_count() == diamond);

        int triangle = 0;
        for (int r = 0; r < n; ++r)
            triangle += n - r;
        CHECK(generate_array(make(LatticeKind::Triangle, n, 0.4), Polarization::SigmaZ)
                  .total_count() == triangle);

        int hexagon = 0;
        for (int q = -n; q <= n; ++q)
            for (int r = -n; r <= n; ++r)
                if (std::max({std::abs(q), std::abs(r), std::abs(q + r)}) <= n - 1)
                    ++hexagon;
        CHECK(generate_array(make(LatticeKind::Hexagon, n, 0.4), Polarization::SigmaZ)
                  .total_count() == hexagon);
        CHECK(hexagon == 3 * n * n - 3 * n + 1);
    }
    CHECK(generate_array(make(LatticeKind::Triangle, 3, 0.4), Polarization::SigmaZ).total_count() ==
          6);
    CHECK(generate_array(make(LatticeKind::Hexagon, 2, 0.4), Polarization::SigmaZ).total_count() ==
          7);
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS(generate_array(make(LatticeKind::Square, 1, 0.4), Polarization::SigmaZ),
                    InvalidSize);
    CHECK_THROWS_AS(generate_array(make(LatticeKind::Square, 4, 0.1), Polarization::SigmaZ),
                    PeriodTooSmall);
    CHECK_THROWS_AS(generate_array(make(LatticeKind::Hexagon, 3, 0.05), Polarization::SigmaZ),
                    PeriodTooSmall);
}

TEST_CASE("grid index mapping is the row-major bijection") {
    const auto array = generate_array(make(LatticeKind::Square, 2, 0.4), Polarization::SigmaZ);
    CHECK(grid_index(array, 1, 1) == 0);
    CHECK(grid_index(array, 2, 2) == 3);

    const auto a3 = generate_array(make(LatticeKind::Square, 3, 0.4), Polarization::SigmaZ);
    CHECK(grid_index(a3, 2, 1) == 1);
    for (int idx = 0; idx < a3.total_count(); ++idx) {
        const auto [nx, ny] = grid_coords(a3, idx);
        CHECK(grid_index(a3, nx, ny) == idx);
    }
    CHECK_THROWS_AS(grid_index(a3, 0, 1), IndexOutOfRange);
    CHECK_THROWS_AS(grid_index(a3, 1, 4), IndexOutOfRange);

    const auto tri = generate_array(make(LatticeKind::Triangle, 4, 0.4), Polarization::SigmaZ);
    CHECK_THROWS_AS(grid_index(tri, 1, 1), NotAGrid);
    const auto diag = generate_array(make(LatticeKind::DiagonalSquare, 4, 0.4), Polarization::SigmaZ);
    CHECK_THROWS_AS(grid_index(diag, 1, 1), NotAGrid);
}

TEST_CASE("rectangular arrays take independent counts and periods") {
    LatticeDescriptor d;
    d.kind = LatticeKind::Rectangular;
    d.side_count = 4;
    d.side_count_y = 3;
    d.period_x = 0.3;
    d.period_y = 0.5;
    const auto array = generate_array(d, Polarization::SigmaPlus);
    CHECK(array.total_count() == 12);
    CHECK(array.positions[5].x == doctest::Approx(0.3));
    CHECK(array.positions[5].y == doctest::Approx(0.5));
}

TEST_CASE("square arrays map onto themselves under axis and diagonal mirrors") {
    for (auto kind : {LatticeKind::Square, LatticeKind::DiagonalSquare}) {
        const auto array = generate_array(make(kind, 5, 0.4), Polarization::SigmaZ);
        const auto reference = position_set(array);
        const Vec2 c = array.centroid();

        AtomArray mirrored = array;
        for (auto& p : mirrored.positions)
            p.x = 2.0 * c.x - p.x;
        CHECK(position_set(mirrored) == reference);

        AtomArray swapped = array;
        for (auto& p : swapped.positions) {
            const double dx = p.x - c.x, dy = p.y - c.y;
            p.x = c.x + dy;
            p.y = c.y + dx;
        }
        CHECK(position_set(swapped) == reference);
    }
}

TEST_CASE("all positions respect the minimum-distance floor") {
    for (auto kind : {LatticeKind::Square, LatticeKind::DiagonalSquare, LatticeKind::Triangle,
                      LatticeKind::Hexagon}) {
        const auto array = generate_array(make(kind, 5, 0.25), Polarization::SigmaZ);
        double dmin = 1e9;
        for (int i = 0; i < array.total_count(); ++i)
            for (int j = i + 1; j < array.total_count(); ++j)
                dmin = std::min(dmin, std::hypot(array.positions[i].x - array.positions[j].x,
                                                 array.positions[i].y - array.positions[j].y));
        CHECK(dmin >= 0.25 * (1.0 - 1e-12));
    }
}
