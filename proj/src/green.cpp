#include "subrad/green.hpp"

#include <cmath>

namespace subrad {

cdouble green_projected(Vec2 displacement, Polarization polarization) {
    const double r = std::hypot(displacement.x, displacement.y);
    if (r == 0.0)
        throw ZeroDisplacement("projected Green's function needs R != 0");

    const double u = k0 * r;
    const cdouble phase = std::polar(1.0, u);
    const cdouble pref = phase / (4.0 * kPi * r);
    const cdouble iu{0.0, 1.0 / u};
    const double u2 = 1.0 / (u * u);

    if (out_of_plane(polarization)) {
        // z.(R x R)/R^2.z = 0 in the array plane: only the transverse part.
        return pref * (1.0 + iu - u2);
    }
    // (G_xx + G_yy)/2 with in-plane R: transverse part + half the
    // longitudinal correction.
    return pref * (0.5 * (1.0 + u2) - 0.5 * iu);
}

EffectiveHamiltonian build_hamiltonian(const AtomArray& array) {
    const int n = array.total_count();
    EffectiveHamiltonian h;
    h.array = array;
    h.matrix.resize(n, n);

    const double coupling = -3.0 * kPi / k0;
    for (int j = 0; j < n; ++j) {
        h.matrix(j, j) = cdouble{0.0, -0.5};
        for (int i = j + 1; i < n; ++i) {
            const Vec2 d{array.positions[i].x - array.positions[j].x,
                         array.positions[i].y - array.positions[j].y};
            const cdouble m = coupling * green_projected(d, array.polarization);
            h.matrix(i, j) = m;
            h.matrix(j, i) = m;
        }
    }
    return h;
}

} // namespace subrad
