#include "l1idx/symbolic_tree.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "l1idx/schreier.hpp"

namespace l1idx {

struct SymbolicTree::Impl {
    Kind kind;
    std::shared_ptr<const Impl> inner;
    std::vector<SymbolicTree> members;
    Ordinal alpha, beta;
};

SymbolicTree SymbolicTree::leaf() {
    SymbolicTree t;
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Leaf;
    t.impl_ = impl;
    return t;
}

SymbolicTree SymbolicTree::below(SymbolicTree inner) {
    SymbolicTree t;
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Below;
    impl->inner = inner.impl_;
    t.impl_ = impl;
    return t;
}

SymbolicTree SymbolicTree::union_of(std::vector<SymbolicTree> members) {
    if (members.empty()) throw DomainError("union needs at least one member");
    SymbolicTree t;
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Union;
    impl->members = std::move(members);
    t.impl_ = impl;
    return t;
}

SymbolicTree SymbolicTree::replacement(Ordinal alpha, Ordinal beta) {
    SymbolicTree t;
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Replacement;
    impl->alpha = std::move(alpha);
    impl->beta = std::move(beta);
    t.impl_ = impl;
    return t;
}

SymbolicTree SymbolicTree::minimal(Ordinal alpha) {
    SymbolicTree t;
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Minimal;
    impl->alpha = std::move(alpha);
    t.impl_ = impl;
    return t;
}

SymbolicTree SymbolicTree::family(Ordinal alpha) {
    SymbolicTree t;
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Family;
    impl->alpha = std::move(alpha);
    t.impl_ = impl;
    return t;
}

SymbolicTree::Kind SymbolicTree::kind() const { return impl_->kind; }

SymbolicTree SymbolicTree::inner() const {
    if (impl_->kind != Kind::Below) throw DomainError("inner() requires a Below tree");
    SymbolicTree t;
    t.impl_ = impl_->inner;
    return t;
}

const std::vector<SymbolicTree>& SymbolicTree::members() const {
    if (impl_->kind != Kind::Union) throw DomainError("members() requires a Union tree");
    return impl_->members;
}

const Ordinal& SymbolicTree::alpha() const {
    if (impl_->kind != Kind::Replacement && impl_->kind != Kind::Minimal &&
        impl_->kind != Kind::Family)
        throw DomainError("alpha() not defined for this constructor");
    return impl_->alpha;
}

const Ordinal& SymbolicTree::beta() const {
    if (impl_->kind != Kind::Replacement) throw DomainError("beta() requires a Replacement tree");
    return impl_->beta;
}

Ordinal symbolic_order(const SymbolicTree& t) {
    switch (t.kind()) {
        case SymbolicTree::Kind::Leaf:
            return Ordinal::from_int(1);
        case SymbolicTree::Kind::Below:
            return add(symbolic_order(t.inner()), Ordinal::from_int(1));
        case SymbolicTree::Kind::Union: {
            Ordinal best;
            for (const auto& m : t.members()) {
                Ordinal o = symbolic_order(m);
                if (o > best) best = o;
            }
            return best;
        }
        case SymbolicTree::Kind::Replacement:
            return mul(t.beta(), t.alpha());
        case SymbolicTree::Kind::Minimal:
            return t.alpha();
        case SymbolicTree::Kind::Family:
            return omega_pow(t.alpha());
    }
    throw Error("unreachable");
}

namespace {

// Truncation builder: fresh node ids are handed out in construction order,
// components of unions and limit stages in index order.
class Truncator {
public:
    explicit Truncator(int budget) : budget_(budget) {
        if (budget < 1) throw DomainError("truncation budget must be >= 1");
    }

    std::vector<FiniteTree::Node> build(const SymbolicTree& t) {
        switch (t.kind()) {
            case SymbolicTree::Kind::Leaf:
                return {make_node("*")};
            case SymbolicTree::Kind::Below: {
                auto sub = build(t.inner());
                return attach_root(std::move(sub), "*");
            }
            case SymbolicTree::Kind::Union: {
                std::vector<FiniteTree::Node> out;
                for (const auto& m : t.members()) append(out, build(m));
                return out;
            }
            case SymbolicTree::Kind::Minimal:
                return build_minimal(t.alpha());
            case SymbolicTree::Kind::Replacement:
                return build_replacement(t.alpha(), t.beta());
            case SymbolicTree::Kind::Family: {
                FiniteTree ft = family_tree(FamilyExpr::schreier(t.alpha()),
                                            std::min(budget_, kMaxGround));
                return renumber(ft);
            }
        }
        throw Error("unreachable");
    }

private:
    FiniteTree::Node make_node(const std::string& label) { return {next_id_++, std::nullopt, label}; }

    static void append(std::vector<FiniteTree::Node>& out, std::vector<FiniteTree::Node> more) {
        for (auto& n : more) out.push_back(std::move(n));
    }

    // New minimal node beneath everything in `sub`.
    std::vector<FiniteTree::Node> attach_root(std::vector<FiniteTree::Node> sub,
                                              const std::string& label) {
        FiniteTree::Node root = make_node(label);
        for (auto& n : sub)
            if (!n.pred) n.pred = root.id;
        std::vector<FiniteTree::Node> out{std::move(root)};
        append(out, std::move(sub));
        return out;
    }

    std::vector<FiniteTree::Node> build_minimal(const Ordinal& alpha) {
        if (alpha.is_zero()) return {};
        if (alpha.is_finite()) {
            // Exact explicit chain; labels follow the set presentation.
            int n = static_cast<int>(alpha.as_int());
            std::vector<FiniteTree::Node> out;
            std::optional<NodeId> pred;
            for (int k = 1; k <= n; ++k) {
                std::string label = "{";
                for (int v = n - k + 1; v <= n; ++v) {
                    if (v > n - k + 1) label += ",";
                    label += std::to_string(v);
                }
                label += "}";
                FiniteTree::Node node = make_node(label);
                node.pred = pred;
                pred = node.id;
                out.push_back(std::move(node));
            }
            return out;
        }
        if (alpha.is_successor())
            return attach_root(build_minimal(alpha.pred()), "{" + to_string(alpha) + "}");
        // Limit: first `budget` relabeled components of the fundamental sequence.
        std::vector<FiniteTree::Node> out;
        for (int n = 1; n <= budget_; ++n)
            append(out, build_minimal(fundamental_sequence(alpha, static_cast<std::uint64_t>(n))));
        return out;
    }

    std::vector<FiniteTree::Node> build_replacement(const Ordinal& alpha, const Ordinal& beta) {
        if (alpha.is_zero() || beta.is_zero()) return {};
        if (alpha == Ordinal::from_int(1)) return build_minimal(beta);
        if (alpha.is_successor()) {
            // T_beta with a copy of T(alpha-1, beta) above each terminal node.
            std::vector<FiniteTree::Node> base = build_minimal(beta);
            FiniteTree base_tree{std::vector<FiniteTree::Node>(base.begin(), base.end())};
            std::vector<FiniteTree::Node> out = base;
            for (NodeId term : base_tree.maximal_nodes()) {
                auto copy = build_replacement(alpha.pred(), beta);
                for (auto& n : copy)
                    if (!n.pred) n.pred = term;
                append(out, std::move(copy));
            }
            return out;
        }
        // Limit alpha: components T(alpha[n], beta).
        std::vector<FiniteTree::Node> out;
        for (int n = 1; n <= budget_; ++n)
            append(out, build_replacement(fundamental_sequence(alpha, static_cast<std::uint64_t>(n)), beta));
        return out;
    }

    std::vector<FiniteTree::Node> renumber(const FiniteTree& t) {
        std::map<NodeId, NodeId> remap;
        for (const auto& n : t.nodes()) remap[n.id] = next_id_++;
        std::vector<FiniteTree::Node> out;
        for (const auto& n : t.nodes()) {
            FiniteTree::Node m = n;
            m.id = remap[n.id];
            if (m.pred) m.pred = remap[*m.pred];
            out.push_back(std::move(m));
        }
        return out;
    }

    int budget_;
    NodeId next_id_ = 1;
};

// Iterate the canonical fundamental sequence at index n until the value is
// a successor ordinal.
Ordinal to_successor(const Ordinal& limit, std::uint64_t n) {
    Ordinal v = limit;
    while (v.is_limit()) v = fundamental_sequence(v, n);
    return v;
}

}  // namespace

FiniteTree truncate(const SymbolicTree& t, int budget) {
    Truncator tr(budget);
    return FiniteTree(tr.build(t));
}

std::vector<std::pair<SymbolicTree, Ordinal>> decompose_limit(const SymbolicTree& t, int count) {
    if (count < 1) throw DomainError("component count must be >= 1");
    Ordinal total = symbolic_order(t);
    if (!total.is_limit()) throw DomainError("decompose_limit requires a tree of limit order");
    std::vector<std::pair<SymbolicTree, Ordinal>> out;
    switch (t.kind()) {
        case SymbolicTree::Kind::Replacement: {
            if (t.alpha().is_limit()) {
                for (int n = 1; n <= count; ++n) {
                    Ordinal stage = fundamental_sequence(t.alpha(), static_cast<std::uint64_t>(n));
                    Ordinal o = mul(t.beta(), stage);
                    if (o.is_successor()) {
                        out.emplace_back(SymbolicTree::replacement(stage, t.beta()), o);
                    } else {
                        Ordinal s = to_successor(o, static_cast<std::uint64_t>(std::max(n, 2)));
                        out.emplace_back(SymbolicTree::minimal(s), s);
                    }
                }
                return out;
            }
            break;  // successor alpha with limit beta: generic route below
        }
        case SymbolicTree::Kind::Union: {
            for (const auto& m : t.members()) {
                if (symbolic_order(m) == total) return decompose_limit(m, count);
            }
            throw Error("unreachable: some member attains the union order");
        }
        default:
            break;
    }
    // Generic route: minimal trees of a successor-ordinal sequence increasing
    // to the total order embed into incomparable components.
    for (int n = 1; n <= count; ++n) {
        Ordinal stage = fundamental_sequence(total, static_cast<std::uint64_t>(n));
        Ordinal refined = to_successor(stage, static_cast<std::uint64_t>(std::max(n, 2)));
        out.emplace_back(SymbolicTree::minimal(refined), refined);
    }
    return out;
}

std::string to_string(const SymbolicTree& t) {
    switch (t.kind()) {
        case SymbolicTree::Kind::Leaf:
            return "leaf";
        case SymbolicTree::Kind::Below:
            return "below(" + to_string(t.inner()) + ")";
        case SymbolicTree::Kind::Union: {
            std::string out = "union(";
            bool first = true;
            for (const auto& m : t.members()) {
                if (!first) out += ",";
                first = false;
                out += to_string(m);
            }
            return out + ")";
        }
        case SymbolicTree::Kind::Replacement:
            return "rep(" + to_string(t.alpha()) + "," + to_string(t.beta()) + ")";
        case SymbolicTree::Kind::Minimal:
            return "min(" + to_string(t.alpha()) + ")";
        case SymbolicTree::Kind::Family:
            return "family(" + to_string(t.alpha()) + ")";
    }
    throw Error("unreachable");
}

namespace {

class SymParser {
public:
    explicit SymParser(std::string_view s) : s_(s) {}

    SymbolicTree parse() {
        SymbolicTree t = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return t;
    }

private:
    SymbolicTree expr() {
        skip_ws();
        std::string name = ident();
        if (name == "leaf") return SymbolicTree::leaf();
        skip_ws();
        if (!eat('(')) fail("expected '(' after '" + name + "'");
        if (name == "below") {
            SymbolicTree inner = expr();
            expect(')');
            return SymbolicTree::below(inner);
        }
        if (name == "union") {
            std::vector<SymbolicTree> members{expr()};
            while (true) {
                skip_ws();
                if (eat(')')) break;
                expect(',');
                members.push_back(expr());
            }
            return SymbolicTree::union_of(std::move(members));
        }
        if (name == "min" || name == "family") {
            Ordinal a = parse_ordinal(until_arg_end());
            expect(')');
            return name == "min" ? SymbolicTree::minimal(a) : SymbolicTree::family(a);
        }
        if (name == "rep") {
            Ordinal a = parse_ordinal(until_arg_end());
            expect(',');
            Ordinal b = parse_ordinal(until_arg_end());
            expect(')');
            return SymbolicTree::replacement(a, b);
        }
        fail("unknown tree constructor '" + name + "'");
    }

    // Ordinal argument text up to a ',' or ')' at depth zero.
    std::string until_arg_end() {
        std::string out;
        int depth = 0;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (depth == 0 && (c == ',' || c == ')')) return out;
            if (c == '(') ++depth;
            if (c == ')') --depth;
            out += c;
            ++pos_;
        }
        fail("unterminated argument");
    }

    std::string ident() {
        std::string out;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
            out += s_[pos_++];
        if (out.empty()) fail("expected a name");
        return out;
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
        throw ParseError("tree syntax error at offset " + std::to_string(pos_) + ": " + m);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

SymbolicTree parse_symbolic_tree(std::string_view text) { return SymParser(text).parse(); }

}  // namespace l1idx
