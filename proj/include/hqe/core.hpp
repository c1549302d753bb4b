#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hqe {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Every failure raised by the library derives from Error; kind() is the
// machine-readable tag the CLI writes into failure records.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define HQE_DECLARE_ERROR(Name)                                              \
    class Name : public Error {                                              \
    public:                                                                  \
        using Error::Error;                                                  \
        const char* kind() const noexcept override { return #Name; }         \
    }

HQE_DECLARE_ERROR(DomainError);
HQE_DECLARE_ERROR(QuadratureNotConverged);
HQE_DECLARE_ERROR(SeriesDiverged);
HQE_DECLARE_ERROR(BudgetExceeded);
HQE_DECLARE_ERROR(NonTransitive);
HQE_DECLARE_ERROR(StencilOutOfDomain);
HQE_DECLARE_ERROR(EmptyWindow);
HQE_DECLARE_ERROR(WindowNotResolved);
HQE_DECLARE_ERROR(MeshPairingFailure);
HQE_DECLARE_ERROR(SolverNotConverged);
HQE_DECLARE_ERROR(FormatError);
HQE_DECLARE_ERROR(OrthonormalityViolation);
HQE_DECLARE_ERROR(ResidualViolation);

#undef HQE_DECLARE_ERROR

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

// Estimate with a Monte Carlo standard error attached.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

}  // namespace hqe
