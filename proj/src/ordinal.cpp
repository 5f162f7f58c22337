#include "l1idx/ordinal.hpp"

#include <cctype>
#include <limits>

namespace l1idx {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b)
        throw OverflowError("ordinal coefficient overflow in addition");
    return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw OverflowError("ordinal coefficient overflow in multiplication");
    return a * b;
}

}  // namespace

Ordinal Ordinal::from_int(std::uint64_t n) {
    Ordinal r;
    if (n > 0) r.terms_.push_back({Ordinal(), n});
    return r;
}

Ordinal Ordinal::omega() { return single(from_int(1), 1); }

Ordinal Ordinal::single(Ordinal exp, std::uint64_t coeff) {
    if (coeff == 0) throw DomainError("CNF coefficient must be >= 1");
    Ordinal r;
    r.terms_.push_back({std::move(exp), coeff});
    return r;
}

const Ordinal::Term& Ordinal::leading() const {
    if (terms_.empty()) throw DomainError("zero ordinal has no leading term");
    return terms_.front();
}

Ordinal::Kind Ordinal::kind() const {
    if (terms_.empty()) return Kind::Zero;
    return terms_.back().exp.is_zero() ? Kind::Successor : Kind::Limit;
}

Ordinal Ordinal::pred() const {
    if (kind() != Kind::Successor) throw DomainError("pred requires a successor ordinal");
    Ordinal r = *this;
    if (r.terms_.back().coeff == 1)
        r.terms_.pop_back();
    else
        r.terms_.back().coeff -= 1;
    return r;
}

bool Ordinal::is_finite() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exp.is_zero());
}

std::uint64_t Ordinal::as_int() const {
    if (!is_finite()) throw DomainError("ordinal is not finite");
    return terms_.empty() ? 0 : terms_[0].coeff;
}

int Ordinal::cmp(const Ordinal& a, const Ordinal& b) {
    const auto& ta = a.terms_;
    const auto& tb = b.terms_;
    for (std::size_t i = 0; i < ta.size() && i < tb.size(); ++i) {
        int e = cmp(ta[i].exp, tb[i].exp);
        if (e != 0) return e;
        if (ta[i].coeff != tb[i].coeff) return ta[i].coeff < tb[i].coeff ? -1 : 1;
    }
    if (ta.size() == tb.size()) return 0;
    return ta.size() < tb.size() ? -1 : 1;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coeff == 0) throw DomainError("CNF coefficient must be >= 1");
        if (i > 0 && cmp(terms[i - 1].exp, terms[i].exp) <= 0)
            throw DomainError("CNF exponents must be strictly decreasing");
    }
    Ordinal r;
    r.terms_ = std::move(terms);
    return r;
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    const Ordinal& lead = b.leading().exp;
    // Terms of a below the leading exponent of b are absorbed.
    std::vector<Ordinal::Term> terms;
    for (const auto& t : a.terms()) {
        if (Ordinal::cmp(t.exp, lead) < 0) break;
        terms.push_back(t);
    }
    auto bt = b.terms();
    if (!terms.empty() && Ordinal::cmp(terms.back().exp, lead) == 0) {
        bt[0].coeff = checked_add(bt[0].coeff, terms.back().coeff);
        terms.pop_back();
    }
    for (auto& t : bt) terms.push_back(std::move(t));
    return Ordinal::from_terms(std::move(terms));
}

Ordinal mul(const Ordinal& a, const Ordinal& b) {
    if (a.is_zero() || b.is_zero()) return Ordinal();
    const Ordinal& e1 = a.leading().exp;
    Ordinal acc;
    for (const auto& t : b.terms()) {
        if (!t.exp.is_zero()) {
            acc = add(acc, Ordinal::single(add(e1, t.exp), t.coeff));
        } else {
            // a * m for finite m >= 1: leading coefficient scales, tail kept once.
            Ordinal part = Ordinal::single(e1, checked_mul(a.leading().coeff, t.coeff));
            for (std::size_t i = 1; i < a.terms().size(); ++i)
                part = add(part, Ordinal::single(a.terms()[i].exp, a.terms()[i].coeff));
            acc = add(acc, part);
        }
    }
    return acc;
}

Ordinal omega_pow(const Ordinal& a) { return Ordinal::single(a, 1); }

Ordinal fundamental_sequence(const Ordinal& limit, std::uint64_t n) {
    if (limit.kind() != Ordinal::Kind::Limit)
        throw DomainError("fundamental_sequence requires a limit ordinal");
    if (n == 0) throw DomainError("fundamental_sequence index must be >= 1");
    const auto& terms = limit.terms();
    const Ordinal::Term& last = terms.back();
    // Prefix with one copy of the last term removed.
    Ordinal prefix;
    for (std::size_t i = 0; i + 1 < terms.size(); ++i)
        prefix = add(prefix, Ordinal::single(terms[i].exp, terms[i].coeff));
    if (last.coeff > 1) prefix = add(prefix, Ordinal::single(last.exp, last.coeff - 1));

    if (last.exp.is_successor()) {
        return add(prefix, Ordinal::single(last.exp.pred(), n));
    }
    return add(prefix, omega_pow(fundamental_sequence(last.exp, n)));
}

// --- text form ------------------------------------------------------------

namespace {

bool exponent_is_atom(const Ordinal& e) {
    // Printable without parentheses: a plain integer or w itself.
    if (e.is_finite()) return true;
    return e == Ordinal::omega();
}

}  // namespace

std::string to_string(const Ordinal& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : a.terms()) {
        if (!first) out += " + ";
        first = false;
        if (t.exp.is_zero()) {
            out += std::to_string(t.coeff);
            continue;
        }
        if (t.exp == Ordinal::from_int(1)) {
            out += "w";
        } else if (exponent_is_atom(t.exp)) {
            out += "w^" + to_string(t.exp);
        } else {
            out += "w^(" + to_string(t.exp) + ")";
        }
        if (t.coeff != 1) out += "*" + std::to_string(t.coeff);
    }
    return out;
}

namespace {

class OrdinalParser {
public:
    explicit OrdinalParser(std::string_view s) : s_(s) {}

    Ordinal parse() {
        Ordinal r = sum();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return r;
    }

private:
    Ordinal sum() {
        Ordinal r = product();
        while (true) {
            skip_ws();
            if (!eat('+')) return r;
            r = add(r, product());
        }
    }

    Ordinal product() {
        Ordinal r = power();
        while (true) {
            skip_ws();
            if (!eat('*')) return r;
            r = mul(r, power());
        }
    }

    Ordinal power() {
        skip_ws();
        bool was_omega = false;
        Ordinal base = atom(&was_omega);
        skip_ws();
        if (eat('^')) {
            if (!was_omega) fail("exponentiation is only defined with base w");
            return omega_pow(power());
        }
        return base;
    }

    Ordinal atom(bool* was_omega = nullptr) {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Ordinal r = sum();
            skip_ws();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (c == 'w') {
            ++pos_;
            if (was_omega) *was_omega = true;
            return Ordinal::omega();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                std::uint64_t d = static_cast<std::uint64_t>(s_[pos_] - '0');
                if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10)
                    throw OverflowError("integer literal overflow");
                v = v * 10 + d;
                ++pos_;
            }
            return Ordinal::from_int(v);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError("ordinal syntax error at offset " + std::to_string(pos_) + ": " + msg);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return OrdinalParser(text).parse(); }

}  // namespace l1idx
