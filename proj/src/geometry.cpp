#include "subrad/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace subrad {

const char* to_string(LatticeKind kind) {
    switch (kind) {
    case LatticeKind::Square: return "square";
    case LatticeKind::DiagonalSquare: return "diagonal";
    case LatticeKind::Rectangular: return "rectangular";
    case LatticeKind::Triangle: return "triangle";
    default: return "hexagon";
    }
}

LatticeKind lattice_kind_from_string(const std::string& name) {
    if (name == "square") return LatticeKind::Square;
    if (name == "diagonal") return LatticeKind::DiagonalSquare;
    if (name == "rectangular") return LatticeKind::Rectangular;
    if (name == "triangle") return LatticeKind::Triangle;
    if (name == "hexagon") return LatticeKind::Hexagon;
    throw ConfigInvalid("unknown geometry: " + name);
}

void LatticeDescriptor::validate() const {
    if (side_count < 2)
        throw InvalidSize("side_count must be >= 2, got " + std::to_string(side_count));
    if (side_count_y != 0 && side_count_y < 2)
        throw InvalidSize("side_count_y must be >= 2, got " + std::to_string(side_count_y));
    // Validity floor of the dipole-dipole model: closer atoms would require
    // the (neglected) short-range interaction terms.
    if (ax() <= 0.1 || ay() <= 0.1)
        throw PeriodTooSmall("period must exceed 0.1 lambda0");
    if (kind != LatticeKind::Rectangular && period_y > 0.0 && period_y != period_x)
        throw ConfigInvalid("only rectangular lattices take distinct periods");
    if (kind != LatticeKind::Rectangular && side_count_y > 0 && side_count_y != side_count)
        throw ConfigInvalid("only rectangular lattices take distinct side counts");
}

int LatticeDescriptor::total_count() const {
    const int n = side_count;
    switch (kind) {
    case LatticeKind::Square: return n * n;
    case LatticeKind::Rectangular: return n * rows();
    // Diamond cut |i|+|j| <= n-1 of the square lattice: n atoms per edge.
    case LatticeKind::DiagonalSquare: return 2 * n * n - 2 * n + 1;
    case LatticeKind::Triangle: return n * (n + 1) / 2;
    default: return 3 * n * n - 3 * n + 1; // Hexagon
    }
}

Vec2 AtomArray::centroid() const {
    Vec2 c;
    for (const auto& p : positions) {
        c.x += p.x;
        c.y += p.y;
    }
    const double inv = 1.0 / static_cast<double>(positions.size());
    return {c.x * inv, c.y * inv};
}

bool AtomArray::is_grid() const {
    return descriptor.kind == LatticeKind::Square || descriptor.kind == LatticeKind::Rectangular;
}

namespace {

void check_min_distance(const AtomArray& array) {
    const double a_min = std::min(array.descriptor.ax(), array.descriptor.ay());
    const double floor = a_min * (1.0 - 1e-9);
    const int n = array.total_count();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dx = array.positions[i].x - array.positions[j].x;
            const double dy = array.positions[i].y - array.positions[j].y;
            if (std::hypot(dx, dy) < floor)
                throw Error("duplicate or too-close atom positions generated");
        }
    }
}

} // namespace

AtomArray generate_array(const LatticeDescriptor& descriptor, Polarization polarization) {
    descriptor.validate();

    AtomArray array;
    array.descriptor = descriptor;
    array.polarization = polarization;

    const int n = descriptor.side_count;
    const double ax = descriptor.ax();
    const double ay = descriptor.ay();

    switch (descriptor.kind) {
    case LatticeKind::Square:
    case LatticeKind::Rectangular: {
        const int ny = descriptor.rows();
        array.positions.reserve(static_cast<size_t>(n) * ny);
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < n; ++ix)
                array.positions.push_back({ix * ax, iy * ay});
        break;
    }
    case LatticeKind::DiagonalSquare: {
        // Diamond |i|+|j| <= n-1, ordered row-major in (j, i).
        const int m = n - 1;
        for (int j = -m; j <= m; ++j)
            for (int i = -m; i <= m; ++i)
                if (std::abs(i) + std::abs(j) <= m)
                    array.positions.push_back({i * ax, j * ax});
        break;
    }
    case LatticeKind::Triangle: {
        // Rows bottom-up, each row one atom shorter than the previous.
        const double row_h = ax * std::sqrt(3.0) / 2.0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n - r; ++c)
                array.positions.push_back({(c + 0.5 * r) * ax, r * row_h});
        break;
    }
    case LatticeKind::Hexagon: {
        // Axial coordinates (q, r) with hex distance <= n-1 from the center.
        const int m = n - 1;
        const double row_h = ax * std::sqrt(3.0) / 2.0;
        for (int r = -m; r <= m; ++r)
            for (int q = -m; q <= m; ++q)
                if (std::abs(q) <= m && std::abs(r) <= m && std::abs(q + r) <= m)
                    array.positions.push_back({(q + 0.5 * r) * ax, r * row_h});
        break;
    }
    }

    if (array.total_count() != descriptor.total_count())
        throw Error("atom count mismatch against counting formula");
    check_min_distance(array);
    return array;
}

int grid_index(const AtomArray& array, int nx, int ny) {
    if (!array.is_grid())
        throw NotAGrid("grid indexing requires a square or rectangular array");
    const int cols = array.descriptor.side_count;
    const int rows = array.descriptor.rows();
    if (nx < 1 || nx > cols || ny < 1 || ny > rows)
        throw IndexOutOfRange("grid coordinates out of range");
    return (ny - 1) * cols + (nx - 1);
}

std::pair<int, int> grid_coords(const AtomArray& array, int index) {
    if (!array.is_grid())
        throw NotAGrid("grid indexing requires a square or rectangular array");
    if (index < 0 || index >= array.total_count())
        throw IndexOutOfRange("site index out of range");
    const int cols = array.descriptor.side_count;
    return {index % cols + 1, index / cols + 1};
}

} // namespace subrad
