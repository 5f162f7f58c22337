#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "l1idx/errors.hpp"

namespace l1idx {

// Ordinals below epsilon_0 in Cantor normal form,
//
//   a = w^e1 * c1 + ... + w^ek * ck,   e1 > ... > ek,  ci >= 1,
//
// where the exponents are themselves ordinals of this class and the empty
// term list denotes 0.  Values are immutable; every operation returns a
// fresh ordinal in canonical form.  Coefficients are machine-width and
// overflow raises OverflowError (desk scale stays far away from the bound).
class Ordinal {
public:
    Ordinal() = default;  // zero

    static Ordinal from_int(std::uint64_t n);
    static Ordinal omega();
    // Single-term w^e * c.  Requires c >= 1.
    static Ordinal single(Ordinal exp, std::uint64_t coeff);

    bool is_zero() const { return exps_.empty(); }
    std::size_t term_count() const { return exps_.size(); }
    const Ordinal& exponent(std::size_t i) const { return exps_[i]; }
    std::uint64_t coefficient(std::size_t i) const { return coeffs_[i]; }
    const Ordinal& leading_exponent() const;
    std::uint64_t leading_coefficient() const;

    enum class Kind { Zero, Successor, Limit };
    Kind kind() const;
    bool is_limit() const { return kind() == Kind::Limit; }
    bool is_successor() const { return kind() == Kind::Successor; }

    // Predecessor of a successor ordinal.
    Ordinal pred() const;

    // The finite value when the ordinal is below w.
    bool is_finite() const;
    std::uint64_t as_int() const;

    bool operator==(const Ordinal& o) const { return cmp(*this, o) == 0; }
    bool operator!=(const Ordinal& o) const { return cmp(*this, o) != 0; }
    bool operator<(const Ordinal& o) const { return cmp(*this, o) < 0; }
    bool operator<=(const Ordinal& o) const { return cmp(*this, o) <= 0; }
    bool operator>(const Ordinal& o) const { return cmp(*this, o) > 0; }
    bool operator>=(const Ordinal& o) const { return cmp(*this, o) >= 0; }

    // Total order on ordinals: -1, 0, +1.
    static int cmp(const Ordinal& a, const Ordinal& b);

    friend Ordinal ordinal_from_terms(std::vector<std::pair<Ordinal, std::uint64_t>> terms);

private:
    std::vector<Ordinal> exps_;
    std::vector<std::uint64_t> coeffs_;
};

// Builds from a (exponent, coefficient) list, validating canonical form.
Ordinal ordinal_from_terms(std::vector<std::pair<Ordinal, std::uint64_t>> terms);

Ordinal add(const Ordinal& a, const Ordinal& b);
Ordinal mul(const Ordinal& a, const Ordinal& b);
Ordinal omega_pow(const Ordinal& a);

// Canonical (Wainer-style) fundamental sequence of a limit ordinal:
//   (d + w^(g+1))[n] = d + w^g * n
//   (d + w^g)[n]     = d + w^(g[n])   for g a limit.
// Strictly increasing in n with supremum `limit`.  Requires n >= 1.
Ordinal fundamental_sequence(const Ordinal& limit, std::uint64_t n);

// Text syntax `w^(e)*c + ...`, e.g. "w^2*3 + w + 4"; to_string and
// parse_ordinal round-trip exactly.  parse_ordinal accepts full
// expressions with +, * and parentheses; ^ requires base w.
std::string to_string(const Ordinal& a);
Ordinal parse_ordinal(std::string_view text);

}  // namespace l1idx
