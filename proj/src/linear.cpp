#include "ocssg/linear.hpp"

#include <stdexcept>
#include <utility>

namespace ocssg {

LinearSolution solve_linear_system(const std::vector<std::vector<Rational>>& a,
                                   const std::vector<Rational>& b)
{
    const std::size_t n = a.size();
    if (b.size() != n)
        throw std::invalid_argument("solve_linear_system: dimension mismatch");

    std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n)
            throw std::invalid_argument("solve_linear_system: matrix is not square");
        Integer l = b[i].get_den();
        for (const auto& v : a[i])
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
        for (std::size_t c = 0; c < n; ++c)
            m[i][c] = a[i][c].get_num() * (l / a[i][c].get_den());
        m[i][n] = b[i].get_num() * (l / b[i].get_den());
    }

    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0)
            ++p;
        if (p == n)
            throw std::domain_error("solve_linear_system: singular matrix");
        if (p != k) {
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t c = k + 1; c <= n; ++c) {
                Integer t = m[i][c] * m[k][k] - m[i][k] * m[k][c];
                mpz_divexact(m[i][c].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }

    LinearSolution out;
    out.determinant = n == 0 ? Integer(1) : Integer(sign * m[n - 1][n - 1]);
    out.x.assign(n, Rational(0));
    for (std::size_t i = n; i-- > 0;) {
        Rational acc(m[i][n]);
        for (std::size_t c = i + 1; c < n; ++c)
            acc -= Rational(m[i][c]) * out.x[c];
        out.x[i] = acc / Rational(m[i][i]);
    }
    return out;
}

}  // namespace ocssg
