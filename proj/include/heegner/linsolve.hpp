#pragma once

#include <vector>

#include "heegner/rational.hpp"

namespace heegner {

/// Dense exact system A x = b. Rows are equations.
struct LinearSystem {
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;

    void add_row(std::vector<Rational> row, Rational value)
    {
        rows.push_back(std::move(row));
        rhs.push_back(std::move(value));
    }
};

/// Some solution of the system (free variables set to zero).
/// Throws Error(SingularSystem) when the system is inconsistent.
std::vector<Rational> solve_exact(const LinearSystem& system, std::size_t unknowns);

/// Same, for several right-hand sides sharing one matrix; rhs[k][i] is row i of case k.
std::vector<std::vector<Rational>> solve_exact_many(const std::vector<std::vector<Rational>>& rows,
                                                    const std::vector<std::vector<Rational>>& rhs,
                                                    std::size_t unknowns);

} // namespace heegner
