#ifndef SUBRAD_TYPES_HPP
#define SUBRAD_TYPES_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace subrad {

using cdouble = std::complex<double>;

// Normalized units used everywhere: hbar = Gamma0 = lambda0 = 1, so the
// vacuum wavenumber is fixed.
inline constexpr double kPi = std::numbers::pi;
inline constexpr double k0 = 2.0 * std::numbers::pi;

// Orientation of the (fixed) transition dipole moment.
enum class Polarization { SigmaZ, SigmaPlus, SigmaMinus };

inline bool out_of_plane(Polarization p) { return p == Polarization::SigmaZ; }

inline const char* to_string(Polarization p) {
    switch (p) {
    case Polarization::SigmaZ: return "sigma_z";
    case Polarization::SigmaPlus: return "sigma_plus";
    default: return "sigma_minus";
    }
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PeriodTooSmall : Error { using Error::Error; };
struct InvalidSize : Error { using Error::Error; };
struct NotAGrid : Error { using Error::Error; };
struct ZeroDisplacement : Error { using Error::Error; };
struct EigenSolverFailure : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct InvalidPair : Error { using Error::Error; };
struct AnomalyProximity : Error { using Error::Error; };
struct TruncationNotConverged : Error { using Error::Error; };
struct ExtrapolationUnstable : Error { using Error::Error; };
struct QuadratureNotConverged : Error { using Error::Error; };
struct SolveFailure : Error { using Error::Error; };
struct DefectiveBasis : Error { using Error::Error; };
struct TrackingLost : Error { using Error::Error; };
struct ConfigInvalid : Error { using Error::Error; };

} // namespace subrad

#endif // SUBRAD_TYPES_HPP
