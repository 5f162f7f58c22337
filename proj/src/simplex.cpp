#include "l1idx/simplex.hpp"

#include <algorithm>

namespace l1idx {

namespace {

// Dictionary simplex.  Row r reads  x_{basic[r]} = rhs[r] + sum_j M[r][j] * x_{nonbasic[j]},
// the objective reads  z = z0 + sum_j obj[j] * x_{nonbasic[j]}.
class Dictionary {
public:
    Dictionary(const Matrix& a, const std::vector<Rat>& b, std::size_t n)
        : n_(n), m_(a.size()), rhs_(b) {
        for (std::size_t j = 0; j < n_; ++j) nonbasic_.push_back(static_cast<int>(j));
        for (std::size_t i = 0; i < m_; ++i) basic_.push_back(static_cast<int>(n_ + i));
        rows_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            rows_[i].resize(n_);
            for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = -a[i][j];
        }
        obj_.assign(n_, Rat(0));
    }

    void set_objective(const std::vector<Rat>& c) {
        // Express sum_k c_k x_k in the current dictionary.
        z0_ = 0;
        obj_.assign(nonbasic_.size(), Rat(0));
        for (std::size_t j = 0; j < nonbasic_.size(); ++j)
            if (nonbasic_[j] < static_cast<int>(c.size())) obj_[j] = c[nonbasic_[j]];
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (basic_[r] >= static_cast<int>(c.size())) continue;
            const Rat& ck = c[basic_[r]];
            if (ck == 0) continue;
            z0_ += ck * rhs_[r];
            for (std::size_t j = 0; j < nonbasic_.size(); ++j) obj_[j] += ck * rows_[r][j];
        }
    }

    // Bland's rule iteration; returns false when unbounded.
    bool optimize() {
        while (true) {
            int enter_col = -1;
            for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
                if (obj_[j] > 0 && (enter_col < 0 || nonbasic_[j] < nonbasic_[enter_col]))
                    enter_col = static_cast<int>(j);
            }
            if (enter_col < 0) return true;
            int leave_row = -1;
            Rat best_ratio(0);
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (rows_[i][enter_col] >= 0) continue;
                Rat ratio = rhs_[i] / -rows_[i][enter_col];
                if (leave_row < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basic_[i] < basic_[leave_row]))
                    leave_row = static_cast<int>(i), best_ratio = ratio;
            }
            if (leave_row < 0) return false;
            pivot(static_cast<std::size_t>(leave_row), static_cast<std::size_t>(enter_col));
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        Rat piv = rows_[r][c];
        std::vector<Rat> new_row(nonbasic_.size());
        Rat new_rhs = -rhs_[r] / piv;
        for (std::size_t j = 0; j < nonbasic_.size(); ++j)
            new_row[j] = j == c ? Rat(1) / piv : -rows_[r][j] / piv;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r) continue;
            Rat f = rows_[i][c];
            if (f == 0) continue;
            rhs_[i] += f * new_rhs;
            for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
                rows_[i][j] = j == c ? f * new_row[j] : rows_[i][j] + f * new_row[j];
            }
        }
        {
            Rat f = obj_[c];
            if (f != 0) {
                z0_ += f * new_rhs;
                for (std::size_t j = 0; j < nonbasic_.size(); ++j)
                    obj_[j] = j == c ? f * new_row[j] : obj_[j] + f * new_row[j];
            }
        }
        rows_[r] = std::move(new_row);
        rhs_[r] = new_rhs;
        std::swap(basic_[r], nonbasic_[c]);
    }

    bool feasible() const {
        for (const auto& v : rhs_)
            if (v < 0) return false;
        return true;
    }

    // Phase 1 with an artificial variable; returns false when infeasible.
    bool make_feasible() {
        if (feasible()) return true;
        int art = static_cast<int>(n_ + m_);
        nonbasic_.push_back(art);
        for (auto& row : rows_) row.push_back(Rat(1));
        obj_.assign(nonbasic_.size(), Rat(0));
        obj_.back() = -1;
        z0_ = 0;
        // Initial pivot on the most negative row makes the dictionary feasible.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < rows_.size(); ++i)
            if (rhs_[i] < rhs_[worst] || (rhs_[i] == rhs_[worst] && basic_[i] < basic_[worst]))
                worst = i;
        pivot(worst, nonbasic_.size() - 1);
        optimize();  // bounded: z = -x0 <= 0
        if (z0_ != 0) return false;
        // Drive the artificial variable out of the basis if it lingers at 0.
        for (std::size_t r = 0; r < basic_.size(); ++r) {
            if (basic_[r] != art) continue;
            std::size_t c = 0;
            bool found = false;
            for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
                if (rows_[r][j] != 0 && (!found || nonbasic_[j] < nonbasic_[c])) c = j, found = true;
            }
            if (found) {
                pivot(r, c);
            } else {
                rows_.erase(rows_.begin() + r);
                rhs_.erase(rhs_.begin() + r);
                basic_.erase(basic_.begin() + r);
            }
            break;
        }
        // Delete the artificial column.
        for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
            if (nonbasic_[j] != art) continue;
            nonbasic_.erase(nonbasic_.begin() + j);
            for (auto& row : rows_) row.erase(row.begin() + j);
            obj_.erase(obj_.begin() + j);
            break;
        }
        return true;
    }

    LpResult result() const {
        LpResult out;
        out.status = LpResult::Status::Optimal;
        out.value = z0_;
        out.x.assign(n_, Rat(0));
        for (std::size_t r = 0; r < basic_.size(); ++r)
            if (basic_[r] < static_cast<int>(n_)) out.x[basic_[r]] = rhs_[r];
        out.dual.assign(m_, Rat(0));
        for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
            int v = nonbasic_[j];
            if (v >= static_cast<int>(n_) && v < static_cast<int>(n_ + m_))
                out.dual[v - n_] = -obj_[j];
        }
        return out;
    }

    std::size_t n_, m_;
    std::vector<int> basic_, nonbasic_;
    Matrix rows_;
    std::vector<Rat> rhs_, obj_;
    Rat z0_{0};
};

}  // namespace

LpResult solve_lp_max(const Matrix& a, const std::vector<Rat>& b, const std::vector<Rat>& c) {
    if (a.size() != b.size()) throw DomainError("LP row mismatch");
    for (const auto& row : a)
        if (row.size() != c.size()) throw DomainError("LP column mismatch");

    Dictionary d(a, b, c.size());
    if (!d.make_feasible()) return {LpResult::Status::Infeasible, Rat(0), {}, {}};
    d.set_objective(c);
    if (!d.optimize()) return {LpResult::Status::Unbounded, Rat(0), {}, {}};
    return d.result();
}

}  // namespace l1idx
