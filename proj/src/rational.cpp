#include "l1idx/rational.hpp"

#include "json.hpp"

namespace l1idx {

Rat parse_rat(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ParseError("empty rational");
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational '" + s + "'");
    }
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

Rat rat_pow(const Rat& q, unsigned e) {
    Rat r(1);
    for (unsigned i = 0; i < e; ++i) r *= q;
    return r;
}

const Rat& RationalVector::at(int i) const {
    static const Rat kZero(0);
    auto it = coords_.find(i);
    return it == coords_.end() ? kZero : it->second;
}

void RationalVector::set(int i, const Rat& v) {
    if (i < 1) throw DomainError("vector indices are positive");
    if (v == 0)
        coords_.erase(i);
    else
        coords_[i] = v;
}

std::vector<int> RationalVector::support() const {
    std::vector<int> out;
    out.reserve(coords_.size());
    for (const auto& [i, v] : coords_) out.push_back(i);
    return out;
}

int RationalVector::min_support() const {
    if (coords_.empty()) throw DomainError("zero vector has empty support");
    return coords_.begin()->first;
}

int RationalVector::max_support() const {
    if (coords_.empty()) throw DomainError("zero vector has empty support");
    return coords_.rbegin()->first;
}

RationalVector& RationalVector::operator+=(const RationalVector& o) {
    for (const auto& [i, v] : o.coords_) set(i, at(i) + v);
    return *this;
}

RationalVector& RationalVector::operator-=(const RationalVector& o) {
    for (const auto& [i, v] : o.coords_) set(i, at(i) - v);
    return *this;
}

RationalVector& RationalVector::operator*=(const Rat& s) {
    if (s == 0) {
        coords_.clear();
        return *this;
    }
    for (auto& [i, v] : coords_) v *= s;
    return *this;
}

RationalVector RationalVector::restrict(const std::vector<int>& indices) const {
    RationalVector out;
    for (int i : indices) {
        auto it = coords_.find(i);
        if (it != coords_.end()) out.coords_[i] = it->second;
    }
    return out;
}

RationalVector RationalVector::prefix(int n) const {
    RationalVector out;
    for (const auto& [i, v] : coords_) {
        if (i > n) break;
        out.coords_[i] = v;
    }
    return out;
}

RationalVector RationalVector::tail(int n) const {
    RationalVector out;
    for (const auto& [i, v] : coords_)
        if (i > n) out.coords_[i] = v;
    return out;
}

Rat RationalVector::dot(const RationalVector& o) const {
    Rat sum(0);
    const auto& a = coords_.size() <= o.coords_.size() ? coords_ : o.coords_;
    const auto& b = coords_.size() <= o.coords_.size() ? o.coords_ : coords_;
    for (const auto& [i, v] : a) {
        auto it = b.find(i);
        if (it != b.end()) sum += v * it->second;
    }
    return sum;
}

Rat RationalVector::sup_norm() const {
    Rat best(0);
    for (const auto& [i, v] : coords_) {
        Rat a = abs(v);
        if (a > best) best = a;
    }
    return best;
}

Rat RationalVector::l1_norm() const {
    Rat sum(0);
    for (const auto& [i, v] : coords_) sum += abs(v);
    return sum;
}

RationalVector RationalVector::unit(int i) {
    RationalVector v;
    v.set(i, Rat(1));
    return v;
}

std::string vector_to_json(const RationalVector& v) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [i, r] : v.coords()) j.push_back({i, rat_to_string(r)});
    return j.dump();
}

RationalVector vector_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad vector JSON: ") + e.what());
    }
    if (!j.is_array()) throw ParseError("vector JSON must be an array of [index, rational] pairs");
    RationalVector v;
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer())
            throw ParseError("vector entries are [index, \"p/q\"] pairs");
        int idx = entry[0].get<int>();
        Rat val;
        if (entry[1].is_string())
            val = parse_rat(entry[1].get<std::string>());
        else if (entry[1].is_number_integer())
            val = Rat(entry[1].get<long>());
        else
            throw ParseError("vector values are strings or integers");
        if (v.at(idx) != 0) throw ParseError("duplicate vector index " + std::to_string(idx));
        v.set(idx, val);
    }
    return v;
}

}  // namespace l1idx
