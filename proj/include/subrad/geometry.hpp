#ifndef SUBRAD_GEOMETRY_HPP
#define SUBRAD_GEOMETRY_HPP

#include <string>
#include <utility>
#include <vector>

#include "subrad/types.hpp"

namespace subrad {

// Planar array shapes. All are cut from either a simple square lattice or a
// triangular (hexagonal) lattice:
//   Square         - N x N grid, edges along the lattice vectors
//   DiagonalSquare - square cut whose edges run along the lattice diagonals
//                    (a diamond |i|+|j| <= N-1 in lattice coordinates)
//   Rectangular    - Nx x Ny grid with independent periods
//   Triangle       - triangular cut of the hexagonal lattice, N atoms per edge
//   Hexagon        - hexagonal cut of the hexagonal lattice, N atoms per edge
enum class LatticeKind { Square, DiagonalSquare, Rectangular, Triangle, Hexagon };

const char* to_string(LatticeKind kind);
LatticeKind lattice_kind_from_string(const std::string& name);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct LatticeDescriptor {
    LatticeKind kind = LatticeKind::Square;
    int side_count = 2;      // atoms per edge
    int side_count_y = 0;    // Rectangular only; 0 means same as side_count
    double period_x = 0.4;   // units of lambda0
    double period_y = 0.0;   // 0 means same as period_x

    int rows() const { return side_count_y > 0 ? side_count_y : side_count; }
    double ax() const { return period_x; }
    double ay() const { return period_y > 0.0 ? period_y : period_x; }

    // Throws PeriodTooSmall / InvalidSize.
    void validate() const;

    // Atom count implied by kind and side_count.
    int total_count() const;
};

struct AtomArray {
    LatticeDescriptor descriptor;
    Polarization polarization = Polarization::SigmaZ;
    std::vector<Vec2> positions; // z = 0 everywhere, units of lambda0

    int total_count() const { return static_cast<int>(positions.size()); }
    Vec2 centroid() const;
    bool is_grid() const;
};

AtomArray generate_array(const LatticeDescriptor& descriptor, Polarization polarization);

// Grid index mapping for Square/Rectangular arrays, row-major in (n_y, n_x)
// with 1-based n_x, n_y. Throws NotAGrid / IndexOutOfRange.
int grid_index(const AtomArray& array, int nx, int ny);
std::pair<int, int> grid_coords(const AtomArray& array, int index);

} // namespace subrad

#endif // SUBRAD_GEOMETRY_HPP
