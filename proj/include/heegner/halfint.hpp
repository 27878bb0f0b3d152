#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heegner/bignum.hpp"
#include "heegner/qseries.hpp"

namespace heegner {

/// Default count of q-exponents past the constant term kept in exact pipelines.
inline constexpr std::int64_t default_qtrunc = 140;

/// f_{d,p} = q^{-d} + sum_{D>0} A(D,d) q^D in the plus space of level 4p.
struct HalfIntForm {
    long p = 0;
    long d = 0;
    ExactSeries series{1, 1, Rational(0)};
    std::string label;
};

/// -d is a square modulo 4p.
bool admissible(long p, long d);
std::vector<long> admissible_list(long p, long d_max);

/// p = 2: (u, v); p = 3: (u, v, w). Exponents below `trunc` are exact.
std::vector<ExactSeries> build_generators(long p, std::int64_t trunc);

enum class BasisMode {
    /// Generators u, v (, w) and theta times powers of j(4p tau); p in {2, 3} only.
    Fixed,
    /// theta and [theta, g(4p tau)]_n / Delta(4p tau)^m for any prime p.
    General,
};

/// One f_{d,p} per admissible d <= d_max, coefficients known for exponents <= qtrunc.
std::vector<HalfIntForm> basis(long p, long d_max, std::int64_t qtrunc = default_qtrunc,
                               BasisMode mode = BasisMode::Fixed);
HalfIntForm basis_form(long p, long d, std::int64_t qtrunc = default_qtrunc, BasisMode mode = BasisMode::Fixed);

Rational coefficient_A(const HalfIntForm& f, long D);
Rational A_star(const HalfIntForm& f, long D);

/// h_beta for beta = 0..2p-1, each of scale 4p.
struct VectorComponents {
    long p = 0;
    std::vector<ExactSeries> h;
};

VectorComponents vector_components(const HalfIntForm& f);
/// sum_beta h_beta(4p tau), which gives back the scalar form.
ExactSeries reassemble(const VectorComponents& v);

struct TransformationCheck {
    std::string name;
    BigReal residual;
};

struct TransformationReport {
    long p = 0;
    long d = 0;
    std::int64_t terms = 0;
    std::vector<TransformationCheck> checks;
    BigReal max_residual{64};
};

/// Evaluates the translation law, the identity for every j prime to 4p
/// (sum_beta e(beta^2 j / 4p) h_beta(-1/tau) against the h_beta(tau) side),
/// the full inversion law and, for p = 2, the extra h_0 + h_2 identity.
/// Raises ConvergenceFailure if f is not long enough at tau0 or -1/tau0.
TransformationReport check_transformations(const HalfIntForm& f, const BigComplex& tau0, unsigned bits);

/// Same, rebuilding f_{d,p} with a longer expansion until the evaluations converge.
TransformationReport check_transformations(long p, long d, const BigComplex& tau0, unsigned bits,
                                           BasisMode mode = BasisMode::Fixed);

} // namespace heegner
