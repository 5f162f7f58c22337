#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "l1idx/errors.hpp"

namespace l1idx {

using Rat = mpq_class;
using Int = mpz_class;

Rat parse_rat(std::string_view text);  // "p/q" or "p", canonicalized
std::string rat_to_string(const Rat& r);

// q^e for integer e >= 0.
Rat rat_pow(const Rat& q, unsigned e);

// A finitely supported vector with exact rational coordinates indexed by
// positive integers; zero entries are never stored.
class RationalVector {
public:
    RationalVector() = default;

    const Rat& at(int i) const;       // 0 for indices outside the support
    void set(int i, const Rat& v);    // erases on zero
    bool is_zero() const { return coords_.empty(); }
    std::size_t support_size() const { return coords_.size(); }
    std::vector<int> support() const;
    int min_support() const;  // requires nonzero
    int max_support() const;  // requires nonzero

    const std::map<int, Rat>& coords() const { return coords_; }

    RationalVector& operator+=(const RationalVector& o);
    RationalVector& operator-=(const RationalVector& o);
    RationalVector& operator*=(const Rat& s);
    friend RationalVector operator+(RationalVector a, const RationalVector& b) { return a += b; }
    friend RationalVector operator-(RationalVector a, const RationalVector& b) { return a -= b; }
    friend RationalVector operator*(const Rat& s, RationalVector v) { return v *= s; }
    bool operator==(const RationalVector& o) const { return coords_ == o.coords_; }
    bool operator<(const RationalVector& o) const { return coords_ < o.coords_; }

    // Restriction to a set of indices (Ex).
    RationalVector restrict(const std::vector<int>& indices) const;
    // Coordinates 1..n (P_n x).
    RationalVector prefix(int n) const;
    // Coordinates above n (x - P_n x).
    RationalVector tail(int n) const;

    Rat dot(const RationalVector& o) const;
    Rat sup_norm() const;
    Rat l1_norm() const;

    static RationalVector unit(int i);

private:
    std::map<int, Rat> coords_;
};

// JSON form [[index,"p/q"],...] with indices increasing and reduced fractions.
std::string vector_to_json(const RationalVector& v);
RationalVector vector_from_json(const std::string& text);

}  // namespace l1idx
