#include "l1idx/linalg.hpp"

namespace l1idx {

namespace {

struct Eliminated {
    std::vector<std::vector<Int>> m;  // row echelon, fraction-free
    std::vector<int> pivot_col;       // pivot column per eliminated row
    std::size_t cols = 0;
};

// Bareiss fraction-free elimination with leftmost pivots; rows are swapped
// so pivot rows come first.
Eliminated eliminate(const Matrix& a) {
    Eliminated e;
    if (a.empty()) return e;
    e.cols = a[0].size();
    for (const auto& row : a)
        if (row.size() != e.cols) throw DomainError("ragged matrix");

    // Clear denominators row by row; row scaling preserves the kernel.
    std::vector<std::vector<Int>> m;
    for (const auto& row : a) {
        Int lcm(1);
        for (const auto& v : row) {
            Int den = v.get_den();
            lcm = lcm / gcd(lcm, den) * den;
        }
        std::vector<Int> irow;
        for (const auto& v : row) irow.push_back(Int(v.get_num() * (lcm / v.get_den())));
        m.push_back(std::move(irow));
    }

    std::size_t rows = m.size();
    std::size_t r = 0;
    Int prev(1);
    for (std::size_t c = 0; c < e.cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && m[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(m[r], m[pr]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < e.cols; ++j) {
                Int num = m[r][c] * m[i][j] - m[i][c] * m[r][j];
                mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        e.pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    m.resize(r);
    e.m = std::move(m);
    return e;
}

}  // namespace

int matrix_rank(const Matrix& a) { return static_cast<int>(eliminate(a).pivot_col.size()); }

std::vector<std::vector<Rat>> nullspace(const Matrix& a) {
    Eliminated e = eliminate(a);
    std::size_t cols = a.empty() ? 0 : a[0].size();
    std::vector<bool> is_pivot(cols, false);
    for (int c : e.pivot_col) is_pivot[c] = true;

    std::vector<std::vector<Rat>> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rat> x(cols, Rat(0));
        x[free_col] = 1;
        // Back-substitute through the echelon rows, last pivot first.
        for (std::size_t k = e.pivot_col.size(); k-- > 0;) {
            int pc = e.pivot_col[k];
            Rat sum(0);
            for (std::size_t j = pc + 1; j < cols; ++j)
                if (x[j] != 0) sum += Rat(e.m[k][j]) * x[j];
            x[pc] = -sum / Rat(e.m[k][pc]);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

}  // namespace l1idx
