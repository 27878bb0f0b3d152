#include "heegner/linsolve.hpp"

#include "heegner/errors.hpp"

namespace heegner {

std::vector<std::vector<Rational>> solve_exact_many(const std::vector<std::vector<Rational>>& rows,
                                                    const std::vector<std::vector<Rational>>& rhs,
                                                    std::size_t unknowns)
{
    const std::size_t m = rows.size();
    const std::size_t cases = rhs.size();
    // Augmented matrix [A | B].
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(unknowns + cases));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < unknowns && j < rows[i].size(); ++j)
            a[i][j] = rows[i][j];
        for (std::size_t k = 0; k < cases; ++k)
            a[i][unknowns + k] = rhs[k].at(i);
    }

    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < unknowns && r < m; ++c) {
        std::size_t piv = r;
        while (piv < m && sgn(a[piv][c]) == 0)
            ++piv;
        if (piv == m)
            continue;
        std::swap(a[r], a[piv]);
        Rational inv = Rational(1) / a[r][c];
        for (std::size_t j = c; j < a[r].size(); ++j)
            a[r][j] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || sgn(a[i][c]) == 0)
                continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j < a[i].size(); ++j)
                if (sgn(a[r][j]) != 0)
                    a[i][j] -= f * a[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }

    std::vector<std::vector<Rational>> out(cases, std::vector<Rational>(unknowns));
    for (std::size_t k = 0; k < cases; ++k) {
        for (std::size_t i = r; i < m; ++i)
            if (sgn(a[i][unknowns + k]) != 0)
                throw Error(ErrorKind::SingularSystem, "linear system is inconsistent");
        for (std::size_t i = 0; i < r; ++i)
            out[k][pivot_cols[i]] = a[i][unknowns + k];
    }
    return out;
}

std::vector<Rational> solve_exact(const LinearSystem& system, std::size_t unknowns)
{
    return solve_exact_many(system.rows, {system.rhs}, unknowns).front();
}

} // namespace heegner
