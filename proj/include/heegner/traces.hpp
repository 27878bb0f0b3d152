#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "heegner/bignum.hpp"
#include "heegner/qseries.hpp"

namespace heegner {

inline constexpr unsigned default_bits = 256;

/// Relative distance below which a numeric value is accepted as its nearest integer.
BigReal default_tolerance(unsigned bits);

/// a + b sqrt(D) recognized from a numeric value.
struct QuadIntegerValue {
    long D = 1;
    Rational a;
    Rational b;
    BigReal residual{64};
};

/// Nearest b in Z with value ~ b sqrt(D) (a = 0); RecognitionFailure past the tolerance.
QuadIntegerValue recognize_sqrt_multiple(const BigComplex& value, long D, const BigReal& tolerance);
/// Nearest integer; RecognitionFailure past the tolerance.
Integer recognize_integer(const BigComplex& value, const BigReal& tolerance, BigReal* residual = nullptr);

struct TraceOptions {
    unsigned bits = default_bits;
    std::optional<long> beta;
    std::optional<BigReal> tolerance;
};

struct TraceReport {
    std::string kind;
    long p = 0;
    long D = 1;
    long d = 0;
    long m = 1;
    long beta = 0;
    std::size_t classes = 0;
    BigComplex numeric{64};
    Rational recognized;
    std::optional<Rational> crosscheck;
    BigReal residual{64};
    /// "ok", or "mismatch" when the exact cross-check disagrees.
    std::string status;
};

/// t^(p)(d) = sum_Q j_p^*(alpha_Q) / |Gamma_0(p)_Q|, with t(-1) = -1 and t(0) = 2;
/// cross-checked against A(1, d).
TraceReport trace(long p, long d, const TraceOptions& opt = {});

/// sum_Q chi(Q) j_p^*(alpha_Q) over Q_{dD,p,beta}, divided by sqrt(D); cross-checked against A*(D, d).
TraceReport twisted_trace(long p, long D, long d, const TraceOptions& opt = {});

/// sum_Q chi(Q) t_m(alpha_Q) / sqrt(D); cross-checked against
/// -sum_{u | m} u (D / (m/u)) B*(u^2 D, d) from the Jacobi side.
TraceReport twisted_faber_trace(long p, long D, long d, long m, const TraceOptions& opt = {});

struct ProductReport {
    std::string kind;
    long p = 0;
    long D = 1;
    long d = 0;
    long beta = 0;
    std::int64_t qtrunc = 0;
    /// Exact exponents A*(u^2 D, d) for u = 1 .. qtrunc.
    std::vector<Rational> exponents;
    /// Coefficient of log q on each side (for the twisted product both are 0).
    Rational log_q_exact;
    Rational log_q_numeric;
    /// Coefficients of q^1 .. q^qtrunc in the logarithm of each side.
    std::vector<Rational> exact;
    std::vector<BigComplex> numeric;
    BigReal max_residual{64};
    std::string status;
};

/// log of q^{-H} prod (1 - q^u)^{A*(u^2, d)} against sum_Q log(j_p^*(tau) - j_p^*(alpha_Q)) / |Gamma_0(p)_Q|.
ProductReport verify_borcherds_product(long p, long d, std::optional<long> beta, unsigned bits, std::int64_t qtrunc);

/// log P_D(q^u) / sqrt(D) = -sum_{m >= 1} (D/m) q^{um} / m, through q^qtrunc.
ExactSeries p_d_log_series(long D, long u, std::int64_t qtrunc);

/// sum_u A*(u^2 D, d) log P_D(q^u) against sum_Q chi(Q) log(j_p^*(tau) - j_p^*(alpha_Q)), both over sqrt(D).
ProductReport verify_twisted_product(long p, long D, long d, unsigned bits, std::int64_t qtrunc);

nlohmann::json to_json(const TraceReport& r);
nlohmann::json to_json(const ProductReport& r);

} // namespace heegner
