#include "l1idx/schreier.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace l1idx {

FiniteSet::FiniteSet(std::vector<int> e) : elems(std::move(e)) {
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (elems[i] < 1) throw DomainError("finite sets contain positive integers");
        if (i > 0 && elems[i - 1] >= elems[i])
            throw DomainError("finite sets are strictly increasing");
    }
}

int FiniteSet::min() const {
    if (elems.empty()) throw DomainError("empty set has no min");
    return elems.front();
}

int FiniteSet::max() const {
    if (elems.empty()) throw DomainError("empty set has no max");
    return elems.back();
}

bool FiniteSet::operator<(const FiniteSet& o) const {
    if (elems.size() != o.elems.size()) return elems.size() < o.elems.size();
    return elems < o.elems;
}

std::string to_string(const FiniteSet& f) {
    std::string out = "{";
    for (std::size_t i = 0; i < f.elems.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(f.elems[i]);
    }
    return out + "}";
}

FiniteSet parse_finite_set(std::string_view text) {
    std::string s(text);
    std::erase_if(s, [](char c) { return c == '{' || c == '}' || std::isspace(static_cast<unsigned char>(c)); });
    std::vector<int> elems;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            elems.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ParseError("bad set element '" + item + "'");
        }
    }
    try {
        return FiniteSet(std::move(elems));
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

// --- family expressions -----------------------------------------------------

struct FamilyExpr::Impl {
    Kind kind;
    Ordinal alpha;
    std::shared_ptr<const Impl> left, right;
    std::vector<int> k_prefix;
    int power = 0;
};

FamilyExpr FamilyExpr::schreier(Ordinal alpha) {
    FamilyExpr f;
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Schreier;
    impl->alpha = std::move(alpha);
    f.impl_ = impl;
    return f;
}

FamilyExpr FamilyExpr::compose(FamilyExpr m, FamilyExpr n) {
    FamilyExpr f;
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Compose;
    impl->left = m.impl_;
    impl->right = n.impl_;
    f.impl_ = impl;
    return f;
}

FamilyExpr FamilyExpr::restrict(FamilyExpr m, std::vector<int> k_prefix) {
    for (std::size_t i = 0; i < k_prefix.size(); ++i) {
        if (k_prefix[i] < 1 || (i > 0 && k_prefix[i - 1] >= k_prefix[i]))
            throw DomainError("K must be a strictly increasing sequence of positive integers");
    }
    FamilyExpr f;
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Restrict;
    impl->left = m.impl_;
    impl->k_prefix = std::move(k_prefix);
    f.impl_ = impl;
    return f;
}

FamilyExpr FamilyExpr::power_union(FamilyExpr m, int n) {
    if (n < 1) throw DomainError("power must be >= 1");
    FamilyExpr f;
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::PowerUnion;
    impl->left = m.impl_;
    impl->power = n;
    f.impl_ = impl;
    return f;
}

FamilyExpr FamilyExpr::power_compose(FamilyExpr m, int n) {
    if (n < 1) throw DomainError("power must be >= 1");
    FamilyExpr f;
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::PowerCompose;
    impl->left = m.impl_;
    impl->power = n;
    f.impl_ = impl;
    return f;
}

FamilyExpr::Kind FamilyExpr::kind() const { return impl_->kind; }

const Ordinal& FamilyExpr::alpha() const {
    if (impl_->kind != Kind::Schreier) throw DomainError("not a Schreier family");
    return impl_->alpha;
}

FamilyExpr FamilyExpr::left() const {
    FamilyExpr f;
    f.impl_ = impl_->left;
    return f;
}

FamilyExpr FamilyExpr::right() const {
    FamilyExpr f;
    f.impl_ = impl_->right;
    return f;
}

const std::vector<int>& FamilyExpr::k_prefix() const { return impl_->k_prefix; }
int FamilyExpr::power() const { return impl_->power; }
const void* FamilyExpr::key() const { return impl_.get(); }

std::string to_string(const FamilyExpr& f) {
    switch (f.kind()) {
        case FamilyExpr::Kind::Schreier:
            return "S(" + to_string(f.alpha()) + ")";
        case FamilyExpr::Kind::Compose:
            return "compose(" + to_string(f.left()) + "," + to_string(f.right()) + ")";
        case FamilyExpr::Kind::Restrict: {
            std::string out = "restrict(" + to_string(f.left());
            for (int v : f.k_prefix()) out += "," + std::to_string(v);
            return out + ")";
        }
        case FamilyExpr::Kind::PowerUnion:
            return "pow_u(" + to_string(f.left()) + "," + std::to_string(f.power()) + ")";
        case FamilyExpr::Kind::PowerCompose:
            return "pow_c(" + to_string(f.left()) + "," + std::to_string(f.power()) + ")";
    }
    throw Error("unreachable");
}

namespace {

class FamilyParser {
public:
    explicit FamilyParser(std::string_view s) : s_(s) {}

    FamilyExpr parse() {
        FamilyExpr f = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return f;
    }

private:
    FamilyExpr expr() {
        skip_ws();
        std::string name = ident();
        skip_ws();
        if (!eat('(')) fail("expected '('");
        if (name == "S" || name == "s") {
            std::string arg = until_close();
            return FamilyExpr::schreier(parse_ordinal(arg));
        }
        if (name == "compose") {
            FamilyExpr m = expr();
            expect(',');
            FamilyExpr n = expr();
            expect(')');
            return FamilyExpr::compose(m, n);
        }
        if (name == "restrict") {
            FamilyExpr m = expr();
            std::vector<int> ks;
            while (true) {
                skip_ws();
                if (eat(')')) break;
                expect(',');
                ks.push_back(integer());
            }
            return FamilyExpr::restrict(m, std::move(ks));
        }
        if (name == "pow_u" || name == "pow_c") {
            FamilyExpr m = expr();
            expect(',');
            int n = integer();
            expect(')');
            return name == "pow_u" ? FamilyExpr::power_union(m, n) : FamilyExpr::power_compose(m, n);
        }
        fail("unknown family constructor '" + name + "'");
    }

    std::string until_close() {
        int depth = 1;
        std::string out;
        while (pos_ < s_.size()) {
            char c = s_[pos_++];
            if (c == '(') ++depth;
            if (c == ')' && --depth == 0) return out;
            out += c;
        }
        fail("unbalanced parentheses");
    }

    std::string ident() {
        std::string out;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            out += s_[pos_++];
        if (out.empty()) fail("expected a name");
        return out;
    }

    int integer() {
        skip_ws();
        std::string d;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) d += s_[pos_++];
        if (d.empty()) fail("expected an integer");
        return std::stoi(d);
    }

    void expect(char c) {
        skip_ws();
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    bool eat(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& m) {
        throw ParseError("family syntax error at offset " + std::to_string(pos_) + ": " + m);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

// Membership decision with a per-call memo keyed by expression identity and
// candidate set.  Derived sub-expressions (predecessor stages, limit stages,
// power expansions) are cached so their identities stay stable.
class MemberCtx {
public:
    bool member(const std::vector<int>& f, const FamilyExpr& fam) {
        if (f.empty()) return true;  // the empty set belongs to every family
        Key key{fam.key(), f};
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        bool r = decide(f, fam);
        memo_.emplace(std::move(key), r);
        return r;
    }

private:
    using Key = std::pair<const void*, std::vector<int>>;

    FamilyExpr schreier_stage(const Ordinal& alpha) {
        auto it = stage_cache_.find(alpha);
        if (it != stage_cache_.end()) return it->second;
        FamilyExpr f = FamilyExpr::schreier(alpha);
        stage_cache_.emplace(alpha, f);
        return f;
    }

    FamilyExpr power_stage(const FamilyExpr& base, int n) {
        auto key = std::make_pair(base.key(), n);
        auto it = power_cache_.find(key);
        if (it != power_cache_.end()) return it->second;
        FamilyExpr f = FamilyExpr::power_compose(base, n);
        power_cache_.emplace(key, f);
        return f;
    }

    bool decide(const std::vector<int>& f, const FamilyExpr& fam) {
        switch (fam.kind()) {
            case FamilyExpr::Kind::Schreier:
                return schreier(f, fam.alpha());
            case FamilyExpr::Kind::Compose:
                return compose(f, fam.left(), fam.right());
            case FamilyExpr::Kind::Restrict: {
                const auto& k = fam.k_prefix();
                if (k.empty() || f.back() > k.back())
                    throw DomainError("restriction prefix too short for set " +
                                      to_string(FiniteSet(std::vector<int>(f))));
                std::vector<int> indices;
                for (int v : f) {
                    auto it = std::lower_bound(k.begin(), k.end(), v);
                    if (it == k.end() || *it != v) return false;
                    indices.push_back(static_cast<int>(it - k.begin()) + 1);
                }
                return member(indices, fam.left());
            }
            case FamilyExpr::Kind::PowerUnion: {
                std::uint32_t counts = block_counts(f, fam.left());
                std::uint32_t want = fam.power() >= 31 ? ~0u : ((1u << (fam.power() + 1)) - 2u);
                return (counts & want) != 0;
            }
            case FamilyExpr::Kind::PowerCompose: {
                if (fam.power() == 1) return member(f, fam.left());
                return compose(f, fam.left(), power_stage(fam.left(), fam.power() - 1));
            }
        }
        throw Error("unreachable");
    }

    bool schreier(const std::vector<int>& f, const Ordinal& alpha) {
        if (alpha.is_zero()) return f.size() <= 1;
        if (alpha.is_successor()) {
            // S_{b+1} = S_1[S_b]: a split into k <= min F consecutive
            // nonempty blocks, each a member of S_b.
            std::uint32_t counts = block_counts(f, schreier_stage(alpha.pred()));
            int kmax = std::min<int>(f.front(), static_cast<int>(f.size()));
            std::uint32_t want = kmax >= 31 ? ~0u : ((1u << (kmax + 1)) - 2u);
            return (counts & want) != 0;
        }
        // Limit stage: member of S_{alpha[n]} for some n <= min F.
        for (std::uint64_t n = 1; n <= static_cast<std::uint64_t>(f.front()); ++n) {
            if (member(f, schreier_stage(fundamental_sequence(alpha, n)))) return true;
        }
        return false;
    }

    // Bitmask of the achievable counts of consecutive nonempty blocks from
    // `sub` partitioning f exactly; bit k set = a k-block split exists.
    std::uint32_t block_counts(const std::vector<int>& f, const FamilyExpr& sub) {
        std::size_t s = f.size();
        std::vector<std::uint32_t> dp(s + 1, 0);
        dp[s] = 1;  // zero blocks consume the empty suffix
        for (std::size_t start = s; start-- > 0;) {
            std::uint32_t acc = 0;
            for (std::size_t end = start + 1; end <= s; ++end) {
                if (dp[end] == 0) continue;
                std::vector<int> block(f.begin() + start, f.begin() + end);
                if (member(block, sub)) acc |= dp[end] << 1;
            }
            dp[start] = acc;
        }
        return dp[0];
    }

    // General M[N]: blocks F_1 < ... < F_k in N with witnesses
    // m_1 <= F_1 < m_2 <= F_2 < ... and {m_1,...,m_k} in M.
    bool compose(const std::vector<int>& f, const FamilyExpr& m, const FamilyExpr& n) {
        std::vector<int> witness;
        return compose_search(f, m, n, 0, 0, witness);
    }

    bool compose_search(const std::vector<int>& f, const FamilyExpr& m, const FamilyExpr& n,
                        std::size_t start, int prev_max, std::vector<int>& witness) {
        if (start == f.size()) return member(witness, m);
        for (std::size_t end = start + 1; end <= f.size(); ++end) {
            std::vector<int> block(f.begin() + start, f.begin() + end);
            if (!member(block, n)) continue;
            for (int mv = prev_max + 1; mv <= block.front(); ++mv) {
                witness.push_back(mv);
                if (compose_search(f, m, n, end, block.back(), witness)) {
                    witness.pop_back();
                    return true;
                }
                witness.pop_back();
            }
        }
        return false;
    }

    std::map<Key, bool> memo_;
    std::map<Ordinal, FamilyExpr> stage_cache_;
    std::map<std::pair<const void*, int>, FamilyExpr> power_cache_;
};

void check_ground(int ground_max) {
    if (ground_max < 1) throw DomainError("ground bound must be >= 1");
    if (ground_max > kMaxGround)
        throw CapError("ground bound " + std::to_string(ground_max) + " exceeds the cap " +
                       std::to_string(kMaxGround));
}

}  // namespace

FamilyExpr parse_family(std::string_view text) { return FamilyParser(text).parse(); }

bool member(const FiniteSet& f, const FamilyExpr& fam) {
    MemberCtx ctx;
    return ctx.member(f.elems, fam);
}

struct MemberOracle::State {
    mutable MemberCtx ctx;
};

MemberOracle::MemberOracle(FamilyExpr fam) : fam_(std::move(fam)), state_(new State) {}
MemberOracle::~MemberOracle() = default;
MemberOracle::MemberOracle(MemberOracle&&) noexcept = default;
MemberOracle& MemberOracle::operator=(MemberOracle&&) noexcept = default;

bool MemberOracle::member(const std::vector<int>& elems) const {
    return state_->ctx.member(elems, fam_);
}

std::vector<FiniteSet> enumerate_members(const FamilyExpr& fam, int ground_max) {
    check_ground(ground_max);
    MemberCtx ctx;
    std::vector<FiniteSet> out;
    for (std::uint32_t mask = 0; mask < (1u << ground_max); ++mask) {
        std::vector<int> elems;
        for (int v = 1; v <= ground_max; ++v)
            if (mask & (1u << (v - 1))) elems.push_back(v);
        bool in;
        try {
            in = ctx.member(elems, fam);
        } catch (const DomainError&) {
            continue;  // beyond a restriction prefix: undecidable, omitted
        }
        if (in) out.emplace_back(FiniteSet(std::move(elems)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool admissible(const std::vector<FiniteSet>& sets, const Ordinal& alpha) {
    std::vector<int> minima;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].empty()) return false;
        if (i > 0 && sets[i - 1].max() >= sets[i].min()) return false;
        minima.push_back(sets[i].min());
    }
    return member(FiniteSet(std::move(minima)), FamilyExpr::schreier(alpha));
}

FiniteTree family_tree(const FamilyExpr& fam, int ground_max) {
    check_ground(ground_max);
    std::vector<FiniteSet> members = enumerate_members(fam, ground_max);
    std::map<std::vector<int>, NodeId> ids;
    std::vector<FiniteTree::Node> nodes;
    NodeId next = 1;
    for (const auto& f : members) {
        if (f.empty()) continue;
        ids[f.elems] = next++;
    }
    for (const auto& [elems, id] : ids) {
        // Predecessor: longest proper initial segment present as a member.
        std::optional<NodeId> pred;
        for (std::size_t len = elems.size() - 1; len >= 1; --len) {
            std::vector<int> prefix(elems.begin(), elems.begin() + len);
            auto it = ids.find(prefix);
            if (it != ids.end()) {
                pred = it->second;
                break;
            }
        }
        FiniteSet f{std::vector<int>(elems)};
        nodes.push_back({id, pred, to_string(f)});
    }
    return FiniteTree(std::move(nodes));
}

OtwCheck otw_check(const Ordinal& alpha, const Ordinal& beta, const std::vector<int>& k_prefix,
                   int bound) {
    check_ground(bound);
    FamilyExpr lhs = FamilyExpr::restrict(
        FamilyExpr::compose(FamilyExpr::schreier(alpha), FamilyExpr::schreier(beta)), k_prefix);
    FamilyExpr rhs = FamilyExpr::schreier(add(beta, alpha));
    MemberCtx ctx;
    std::vector<FiniteSet> candidates;
    for (std::uint32_t mask = 1; mask < (1u << bound); ++mask) {
        std::vector<int> elems;
        for (int v = 1; v <= bound; ++v)
            if (mask & (1u << (v - 1))) elems.push_back(v);
        candidates.emplace_back(FiniteSet(std::move(elems)));
    }
    std::sort(candidates.begin(), candidates.end());
    for (const auto& f : candidates) {
        if (!k_prefix.empty() && f.max() > k_prefix.back()) continue;  // outside the prefix
        bool in_lhs;
        try {
            in_lhs = ctx.member(f.elems, lhs);
        } catch (const DomainError&) {
            continue;
        }
        if (in_lhs && !ctx.member(f.elems, rhs)) return {false, f};
    }
    return {true, FiniteSet{}};
}

std::vector<int> otw_search(const Ordinal& alpha, const Ordinal& beta, int bound) {
    check_ground(bound);
    // Depth-first search in greedy leftmost order with backtracking; the
    // longest passing prefix seen wins, leftmost among equals.  A trial cap
    // keeps adversarial instances from running away.
    constexpr int kTrialCap = 5000;
    int trials = 0;
    std::vector<int> best;
    std::vector<int> k;
    std::vector<int> next_from{1};
    while (!next_from.empty()) {
        int v = next_from.back();
        if (v > bound) {
            next_from.pop_back();
            if (!k.empty()) k.pop_back();
            continue;
        }
        ++next_from.back();
        if (++trials > kTrialCap) break;
        std::vector<int> trial = k;
        trial.push_back(v);
        if (otw_check(alpha, beta, trial, bound).pass) {
            k = std::move(trial);
            if (k.size() > best.size()) best = k;
            if (static_cast<int>(k.size()) == bound) break;
            next_from.push_back(k.back() + 1);
        }
    }
    if (best.empty()) throw DomainError("otw_search exhausted the ground without a valid prefix");
    return best;
}

}  // namespace l1idx
