#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "heegner/arith.hpp"
#include "heegner/errors.hpp"
#include "heegner/rational.hpp"

namespace heegner {

/// aX^2 + bXY + cY^2.
struct BQF {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;

    std::int64_t disc() const { return b * b - 4 * a * c; }
    std::int64_t operator()(std::int64_t x, std::int64_t y) const { return a * x * x + b * x * y + c * y * y; }
    friend auto operator<=>(const BQF&, const BQF&) = default;
};

std::string to_string(const BQF& q);

/// [[a, b], [c, d]] with ad - bc = 1.
struct Mat2 {
    std::int64_t a = 1;
    std::int64_t b = 0;
    std::int64_t c = 0;
    std::int64_t d = 1;

    std::int64_t det() const { return a * d - b * c; }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 inverse(const Mat2& m);

/// (Q o g)(X, Y) = Q(aX + bY, cX + dY); (Q o g) o h = Q o (g h).
BQF act(const BQF& q, const Mat2& g);

bool is_reduced(const BQF& q);
/// Reduced R and g with R = Q o g.
std::pair<BQF, Mat2> reduce(const BQF& q);
/// All g with R o g = R for a reduced positive definite R (order 2, 4 or 6).
std::vector<Mat2> automorphs(const BQF& reduced);

struct WeightedForm {
    BQF form;
    Rational weight;
};

/// Reduced forms of discriminant -d (primitive or not) with weight 1/|stabilizer in PSL2(Z)|.
std::vector<WeightedForm> class_list(std::int64_t d);
/// Hurwitz class number H(d); 0 if -d is not a discriminant.
Rational hurwitz(std::int64_t d);

struct ClassRep {
    BQF form;
    int stab_gamma = 1;
    int stab_gamma0 = 1;
    int stab_fricke = 1;
    /// alpha_Q = (-b + i sqrt(d)) / (2a) as the exact triple (-b, d, 2a).
    std::int64_t heegner_re = 0;
    std::int64_t heegner_d = 0;
    std::int64_t heegner_den = 1;

    Rational weight_gamma0() const { return Rational(1, stab_gamma0); }
};

/// Witness g in Gamma_0(p) with Q1 o g = Q2, if any.
std::optional<Mat2> gamma0_equivalent(const BQF& q1, const BQF& q2, std::int64_t p);
/// Q o W_p for W_p = [[0, -1], [p, 0]], i.e. [pc, -b, a/p].
BQF atkin_lehner(const BQF& q, std::int64_t p);

/// Representatives of Q_{d,p,beta} / Gamma_0(p), sorted by (a, b, c).
std::vector<ClassRep> gamma0_classes(std::int64_t d, std::int64_t p, std::int64_t beta);
/// sum over classes of 1/|Gamma_0(p)_Q|.
Rational weighted_class_count(const std::vector<ClassRep>& classes);

/// chi_{D,-d}(Q) = (D / r) for a represented value r prime to 2Dd.
int genus_char(const BQF& q, std::int64_t D, std::int64_t d);

nlohmann::json to_json(const BQF& q);
BQF form_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ClassRep& r);

} // namespace heegner
