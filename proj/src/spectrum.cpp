#include "subrad/spectrum.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace subrad {

const char* to_string(Irrep irrep) {
    switch (irrep) {
    case Irrep::A1: return "A1";
    case Irrep::A2: return "A2";
    case Irrep::B1: return "B1";
    case Irrep::B2: return "B2";
    case Irrep::E: return "E";
    default: return "unresolved";
    }
}

const char* to_string(PointGroup group) {
    switch (group) {
    case PointGroup::C2v: return "C2v";
    case PointGroup::C3v: return "C3v";
    case PointGroup::C4v: return "C4v";
    default: return "C6v";
    }
}

std::vector<CollectiveState> diagonalize(const EffectiveHamiltonian& hamiltonian) {
    const int n = hamiltonian.size();
    Eigen::MatrixXcd a = hamiltonian.matrix; // zgeev overwrites its input
    Eigen::VectorXcd w(n);
    Eigen::MatrixXcd v(n, n);

    const int info = LAPACKE_zgeev(
        LAPACK_COL_MAJOR, 'N', 'V', n,
        reinterpret_cast<lapack_complex_double*>(a.data()), n,
        reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1,
        reinterpret_cast<lapack_complex_double*>(v.data()), n);
    if (info != 0)
        throw EigenSolverFailure("zgeev failed with info=" + std::to_string(info));

    const double residual =
        (hamiltonian.matrix * v - v * w.asDiagonal()).colwise().norm().maxCoeff();
    if (residual > 1e-8)
        throw EigenSolverFailure("eigen residual " + std::to_string(residual) + " exceeds 1e-8");

    double decay_sum = 0.0;
    std::vector<CollectiveState> states(n);
    for (int j = 0; j < n; ++j) {
        CollectiveState& s = states[j];
        s.detuning = w(j).real();
        s.decay = -2.0 * w(j).imag();
        if (s.decay < -1e-10)
            throw EigenSolverFailure("negative decay rate: passivity violated");
        decay_sum += s.decay;

        Eigen::VectorXcd vec = v.col(j);
        vec.normalize();
        // Deterministic gauge: largest component real positive.
        int imax = 0;
        vec.cwiseAbs().maxCoeff(&imax);
        const cdouble z = vec(imax);
        if (std::abs(z) > 0.0)
            vec *= std::conj(z) / std::abs(z);
        s.amplitudes = std::move(vec);
    }
    if (std::abs(decay_sum - n) > 1e-8 * n)
        throw EigenSolverFailure("decay sum rule violated: sum=" + std::to_string(decay_sum));

    std::sort(states.begin(), states.end(), [](const CollectiveState& a, const CollectiveState& b) {
        if (a.decay != b.decay) return a.decay < b.decay;
        return a.detuning < b.detuning;
    });
    for (int j = 0; j < n; ++j)
        states[j].index = j;
    return states;
}

namespace {

// Orthonormal 1D sine mode, s_m(n) = sqrt(2/(N+1)) sin(q0 m n).
Eigen::MatrixXd sine_modes(int side_count) {
    const int n = side_count;
    const double q0 = discretization_wavevector(n);
    const double norm = std::sqrt(2.0 / (n + 1));
    Eigen::MatrixXd s(n, n);
    for (int m = 1; m <= n; ++m)
        for (int j = 1; j <= n; ++j)
            s(m - 1, j - 1) = norm * std::sin(q0 * m * j);
    return s;
}

} // namespace

Eigen::VectorXd standing_wave_basis(int side_count, int mx, int my) {
    const int n = side_count;
    if (n < 2)
        throw InvalidSize("side_count must be >= 2");
    if (mx < 1 || mx > n || my < 1 || my > n)
        throw IndexOutOfRange("basis index out of 1..N");
    const double q0 = discretization_wavevector(n);
    const double norm = 2.0 / (n + 1);
    Eigen::VectorXd v(n * n);
    for (int ny = 1; ny <= n; ++ny)
        for (int nx = 1; nx <= n; ++nx)
            v((ny - 1) * n + (nx - 1)) = norm * std::sin(q0 * mx * nx) * std::sin(q0 * my * ny);
    return v;
}

Eigen::VectorXd symmetrize(int side_count, int m1, int m2, int sign) {
    if (m1 == m2 || ((m1 + m2) % 2) != 0)
        throw InvalidPair("symmetrized pairs need m1 != m2 with even m1+m2");
    if (sign != 1 && sign != -1)
        throw InvalidPair("sign must be +1 or -1");
    const Eigen::VectorXd a = standing_wave_basis(side_count, m1, m2);
    const Eigen::VectorXd b = standing_wave_basis(side_count, m2, m1);
    return (a + sign * b) / std::sqrt(2.0);
}

BlochDecomposition decompose(const Eigen::VectorXcd& amplitudes, const AtomArray& array) {
    if (!array.is_grid())
        throw NotAGrid("standing-wave decomposition requires a grid array");
    const int nx = array.descriptor.side_count;
    const int ny = array.descriptor.rows();
    if (amplitudes.size() != static_cast<Eigen::Index>(nx) * ny)
        throw Error("amplitude vector does not match the array");

    // Row-major site ordering means reshaping to (nx, ny) column-major.
    Eigen::MatrixXcd grid = Eigen::Map<const Eigen::MatrixXcd>(amplitudes.data(), nx, ny);
    const Eigen::MatrixXd sx = sine_modes(nx);
    const Eigen::MatrixXd sy = sine_modes(ny);

    BlochDecomposition d;
    d.coefficients = sx * grid * sy.transpose();
    d.q0 = discretization_wavevector(nx);
    d.q0_y = discretization_wavevector(ny);
    return d;
}

BlochDecomposition decompose(const CollectiveState& state, const AtomArray& array) {
    return decompose(state.amplitudes, array);
}

std::vector<Harmonic> top_harmonics(const BlochDecomposition& decomposition, int count) {
    std::vector<Harmonic> all;
    const auto& c = decomposition.coefficients;
    all.reserve(c.size());
    for (int mx = 1; mx <= c.rows(); ++mx)
        for (int my = 1; my <= c.cols(); ++my)
            all.push_back({mx, my, std::norm(c(mx - 1, my - 1))});
    const int keep = std::min<int>(count, static_cast<int>(all.size()));
    std::partial_sort(all.begin(), all.begin() + keep, all.end(),
                      [](const Harmonic& a, const Harmonic& b) { return a.weight > b.weight; });
    all.resize(keep);
    return all;
}

Irrep classify_basis_irrep(int mx, int my, int sign) {
    if (mx < 1 || my < 1)
        throw IndexOutOfRange("basis indices must be positive");
    if (((mx + my) % 2) != 0)
        return Irrep::E;
    const bool odd = (mx % 2) != 0;
    if (mx == my)
        return odd ? Irrep::A1 : Irrep::B2;
    if (sign > 0)
        return odd ? Irrep::A1 : Irrep::B2;
    return odd ? Irrep::B1 : Irrep::A2;
}

// --- Point-group detection ---------------------------------------------------

namespace {

struct SiteLookup {
    std::vector<int> order;
    const std::vector<Vec2>* positions;
    double tol;

    explicit SiteLookup(const std::vector<Vec2>& pos, double tolerance)
        : positions(&pos), tol(tolerance) {
        order.resize(pos.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (pos[a].x != pos[b].x) return pos[a].x < pos[b].x;
            return pos[a].y < pos[b].y;
        });
    }

    int find(Vec2 p) const {
        const auto& pos = *positions;
        auto it = std::lower_bound(order.begin(), order.end(), p.x - tol,
                                   [&](int idx, double x) { return pos[idx].x < x; });
        for (; it != order.end() && pos[*it].x <= p.x + tol; ++it)
            if (std::abs(pos[*it].y - p.y) <= tol)
                return *it;
        return -1;
    }
};

struct Mat2 {
    double a, b, c, d; // row-major 2x2
    Vec2 apply(Vec2 p) const { return {a * p.x + b * p.y, c * p.x + d * p.y}; }
};

Mat2 rotation(double degrees) {
    const double t = degrees * kPi / 180.0;
    return {std::cos(t), -std::sin(t), std::sin(t), std::cos(t)};
}

Mat2 mirror(double axis_degrees) {
    const double t = 2.0 * axis_degrees * kPi / 180.0;
    return {std::cos(t), std::sin(t), std::sin(t), -std::cos(t)};
}

// Site permutation of the op about the centroid, or empty if the op does not
// map the array onto itself.
std::vector<int> permutation_of(const AtomArray& array, const SiteLookup& lookup, const Mat2& op) {
    const Vec2 c = array.centroid();
    const int n = array.total_count();
    std::vector<int> perm(n);
    std::vector<char> hit(n, 0);
    for (int i = 0; i < n; ++i) {
        const Vec2 rel{array.positions[i].x - c.x, array.positions[i].y - c.y};
        const Vec2 q = op.apply(rel);
        const int j = lookup.find({q.x + c.x, q.y + c.y});
        if (j < 0 || hit[j])
            return {};
        hit[j] = 1;
        perm[i] = j;
    }
    return perm;
}

void push_op(SiteGroup& g, const AtomArray& array, const SiteLookup& lookup, const Mat2& m,
             const char* klass) {
    auto perm = permutation_of(array, lookup, m);
    if (perm.empty())
        throw Error(std::string("expected symmetry operation missing: ") + klass);
    g.ops.push_back({klass, std::move(perm)});
}

} // namespace

SiteGroup point_group(const AtomArray& array) {
    const double tol = 1e-6 * std::min(array.descriptor.ax(), array.descriptor.ay());
    const SiteLookup lookup(array.positions, tol);

    const bool has4 = !permutation_of(array, lookup, rotation(90)).empty();
    const bool has6 = !permutation_of(array, lookup, rotation(60)).empty();
    const bool has3 = !permutation_of(array, lookup, rotation(120)).empty();

    SiteGroup g;
    std::vector<int> identity(array.total_count());
    std::iota(identity.begin(), identity.end(), 0);
    g.ops.push_back({"E", std::move(identity)});

    if (has6) {
        g.group = PointGroup::C6v;
        push_op(g, array, lookup, rotation(60), "C6");
        push_op(g, array, lookup, rotation(-60), "C6");
        push_op(g, array, lookup, rotation(120), "C3");
        push_op(g, array, lookup, rotation(-120), "C3");
        push_op(g, array, lookup, rotation(180), "C2");
        for (double axis : {0.0, 60.0, 120.0})
            push_op(g, array, lookup, mirror(axis), "sigma_v");
        for (double axis : {30.0, 90.0, 150.0})
            push_op(g, array, lookup, mirror(axis), "sigma_d");
    } else if (has4) {
        g.group = PointGroup::C4v;
        push_op(g, array, lookup, rotation(90), "C4");
        push_op(g, array, lookup, rotation(-90), "C4");
        push_op(g, array, lookup, rotation(180), "C2");
        // Convention: sigma_v axes along the grid rows/columns.
        push_op(g, array, lookup, mirror(0), "sigma_v");
        push_op(g, array, lookup, mirror(90), "sigma_v");
        push_op(g, array, lookup, mirror(45), "sigma_d");
        push_op(g, array, lookup, mirror(135), "sigma_d");
    } else if (has3) {
        g.group = PointGroup::C3v;
        push_op(g, array, lookup, rotation(120), "C3");
        push_op(g, array, lookup, rotation(-120), "C3");
        const bool apex = !permutation_of(array, lookup, mirror(90)).empty();
        for (double axis : apex ? std::initializer_list<double>{90.0, 30.0, 150.0}
                                : std::initializer_list<double>{0.0, 60.0, 120.0})
            push_op(g, array, lookup, mirror(axis), "sigma_v");
    } else {
        g.group = PointGroup::C2v;
        push_op(g, array, lookup, rotation(180), "C2");
        push_op(g, array, lookup, mirror(0), "sigma_v");
        push_op(g, array, lookup, mirror(90), "sigma_v_prime");
    }
    return g;
}

// --- Irrep classification ----------------------------------------------------

namespace {

struct IrrepRow {
    const char* name;
    Irrep label;
    int dim;
    // Characters keyed by class label.
    std::vector<std::pair<const char*, double>> chars;

    double character(const std::string& klass) const {
        for (const auto& [k, v] : chars)
            if (klass == k) return v;
        throw Error("character table lookup failed for class " + klass);
    }
};

std::vector<IrrepRow> character_table(PointGroup group) {
    switch (group) {
    case PointGroup::C2v:
        return {
            {"A1", Irrep::A1, 1, {{"E", 1}, {"C2", 1}, {"sigma_v", 1}, {"sigma_v_prime", 1}}},
            {"A2", Irrep::A2, 1, {{"E", 1}, {"C2", 1}, {"sigma_v", -1}, {"sigma_v_prime", -1}}},
            {"B1", Irrep::B1, 1, {{"E", 1}, {"C2", -1}, {"sigma_v", 1}, {"sigma_v_prime", -1}}},
            {"B2", Irrep::B2, 1, {{"E", 1}, {"C2", -1}, {"sigma_v", -1}, {"sigma_v_prime", 1}}},
        };
    case PointGroup::C3v:
        return {
            {"A1", Irrep::A1, 1, {{"E", 1}, {"C3", 1}, {"sigma_v", 1}}},
            {"A2", Irrep::A2, 1, {{"E", 1}, {"C3", 1}, {"sigma_v", -1}}},
            {"E", Irrep::E, 2, {{"E", 2}, {"C3", -1}, {"sigma_v", 0}}},
        };
    case PointGroup::C4v:
        return {
            {"A1", Irrep::A1, 1, {{"E", 1}, {"C4", 1}, {"C2", 1}, {"sigma_v", 1}, {"sigma_d", 1}}},
            {"A2", Irrep::A2, 1, {{"E", 1}, {"C4", 1}, {"C2", 1}, {"sigma_v", -1}, {"sigma_d", -1}}},
            {"B1", Irrep::B1, 1, {{"E", 1}, {"C4", -1}, {"C2", 1}, {"sigma_v", 1}, {"sigma_d", -1}}},
            {"B2", Irrep::B2, 1, {{"E", 1}, {"C4", -1}, {"C2", 1}, {"sigma_v", -1}, {"sigma_d", 1}}},
            {"E", Irrep::E, 2, {{"E", 2}, {"C4", 0}, {"C2", -2}, {"sigma_v", 0}, {"sigma_d", 0}}},
        };
    default: // C6v
        return {
            {"A1", Irrep::A1, 1,
             {{"E", 1}, {"C6", 1}, {"C3", 1}, {"C2", 1}, {"sigma_v", 1}, {"sigma_d", 1}}},
            {"A2", Irrep::A2, 1,
             {{"E", 1}, {"C6", 1}, {"C3", 1}, {"C2", 1}, {"sigma_v", -1}, {"sigma_d", -1}}},
            {"B1", Irrep::B1, 1,
             {{"E", 1}, {"C6", -1}, {"C3", 1}, {"C2", -1}, {"sigma_v", 1}, {"sigma_d", -1}}},
            {"B2", Irrep::B2, 1,
             {{"E", 1}, {"C6", -1}, {"C3", 1}, {"C2", -1}, {"sigma_v", -1}, {"sigma_d", 1}}},
            {"E1", Irrep::E, 2,
             {{"E", 2}, {"C6", 1}, {"C3", -1}, {"C2", -2}, {"sigma_v", 0}, {"sigma_d", 0}}},
            {"E2", Irrep::E, 2,
             {{"E", 2}, {"C6", -1}, {"C3", -1}, {"C2", 2}, {"sigma_v", 0}, {"sigma_d", 0}}},
        };
    }
}

// <psi|P_g|psi> for a permutation operator.
cdouble op_character(const Eigen::VectorXcd& psi, const std::vector<int>& perm) {
    cdouble acc{0.0, 0.0};
    for (int j = 0; j < psi.size(); ++j)
        acc += std::conj(psi(perm[j])) * psi(j);
    return acc;
}

} // namespace

std::vector<std::pair<std::string, double>> irrep_weights(const Eigen::VectorXcd& amplitudes,
                                                          const SiteGroup& group) {
    // Isotypic projector weights w = (d/|G|) sum_g chi(g) <psi|P_g|psi>;
    // they resolve the identity, so sum(w) = |psi|^2.
    std::vector<cdouble> chars(group.ops.size());
    for (size_t i = 0; i < group.ops.size(); ++i)
        chars[i] = op_character(amplitudes, group.ops[i].permutation);

    std::vector<std::pair<std::string, double>> weights;
    for (const auto& row : character_table(group.group)) {
        cdouble acc{0.0, 0.0};
        for (size_t i = 0; i < group.ops.size(); ++i)
            acc += row.character(group.ops[i].klass) * chars[i];
        weights.emplace_back(row.name,
                             (row.dim / static_cast<double>(group.ops.size())) * acc.real());
    }
    return weights;
}

Irrep classify_state_irrep(const CollectiveState& state, const AtomArray& array,
                           double character_tolerance) {
    const SiteGroup group = point_group(array);
    const auto rows = character_table(group.group);
    const auto weights = irrep_weights(state.amplitudes, group);
    for (size_t i = 0; i < weights.size(); ++i)
        if (weights[i].second > 1.0 - character_tolerance)
            return rows[i].label;
    return Irrep::Unresolved;
}

std::vector<CollectiveState> spectrum_catalog(const EffectiveHamiltonian& hamiltonian) {
    auto states = diagonalize(hamiltonian);
    const AtomArray& array = hamiltonian.array;
    const SiteGroup group = point_group(array);
    const auto rows = character_table(group.group);
    for (auto& s : states) {
        const auto weights = irrep_weights(s.amplitudes, group);
        s.irrep = Irrep::Unresolved;
        for (size_t i = 0; i < weights.size(); ++i) {
            if (weights[i].second > 1.0 - 1e-4) {
                s.irrep = rows[i].label;
                break;
            }
        }
        if (array.is_grid())
            s.dominant_harmonics = top_harmonics(decompose(s, array));
    }
    return states;
}

std::vector<CollectiveState> spectrum_catalog(const AtomArray& array) {
    return spectrum_catalog(build_hamiltonian(array));
}

} // namespace subrad
