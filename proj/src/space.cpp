#include "l1idx/space.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "l1idx/linalg.hpp"

namespace l1idx {

SpaceDescriptor SpaceDescriptor::schreier(Ordinal a) {
    SpaceDescriptor s;
    s.kind = Kind::Schreier;
    s.alpha = std::move(a);
    return s;
}

SpaceDescriptor SpaceDescriptor::tsirelson(Ordinal a, Rat theta) {
    if (theta <= 0 || theta >= 1) throw DomainError("theta must lie strictly between 0 and 1");
    SpaceDescriptor s;
    s.kind = Kind::Tsirelson;
    s.alpha = std::move(a);
    s.theta = std::move(theta);
    return s;
}

SpaceDescriptor SpaceDescriptor::finite_l1(int k) {
    if (k < 1) throw DomainError("l1 dimension must be >= 1");
    SpaceDescriptor s;
    s.kind = Kind::FiniteL1;
    s.dim = k;
    return s;
}

SpaceDescriptor SpaceDescriptor::szlenk_step(SpaceDescriptor inner, int extra) {
    if (extra < 1) throw DomainError("szlenk step appends at least one coordinate");
    if (!dimension(inner)) throw DomainError("szlenk step requires a finite-dimensional inner space");
    SpaceDescriptor s;
    s.kind = Kind::SzlenkStep;
    s.children.push_back(std::move(inner));
    s.extra = extra;
    return s;
}

SpaceDescriptor SpaceDescriptor::l2_sum(std::vector<SpaceDescriptor> children) {
    if (children.empty()) throw DomainError("l2 sum needs at least one component");
    for (const auto& c : children)
        if (!dimension(c)) throw DomainError("l2 sum components must be finite-dimensional");
    SpaceDescriptor s;
    s.kind = Kind::L2Sum;
    s.children = std::move(children);
    return s;
}

std::string SpaceDescriptor::to_key(const SpaceDescriptor& s) { return to_string(s); }

std::string to_string(const SpaceDescriptor& s) {
    switch (s.kind) {
        case SpaceDescriptor::Kind::Schreier:
            return "schreier(" + to_string(s.alpha) + ")";
        case SpaceDescriptor::Kind::Tsirelson:
            return "tsirelson(" + to_string(s.alpha) + "," + rat_to_string(s.theta) + ")";
        case SpaceDescriptor::Kind::FiniteL1:
            return "l1(" + std::to_string(s.dim) + ")";
        case SpaceDescriptor::Kind::SzlenkStep:
            return "szlenk(" + to_string(s.children[0]) + "," + std::to_string(s.extra) + ")";
        case SpaceDescriptor::Kind::L2Sum: {
            std::string out = "l2sum(";
            for (std::size_t i = 0; i < s.children.size(); ++i) {
                if (i) out += ",";
                out += to_string(s.children[i]);
            }
            return out + ")";
        }
    }
    throw Error("unreachable");
}

namespace {

class SpaceParser {
public:
    explicit SpaceParser(std::string_view s) : s_(s) {}

    SpaceDescriptor parse() {
        SpaceDescriptor d = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return d;
    }

private:
    SpaceDescriptor expr() {
        skip_ws();
        std::string name = ident();
        skip_ws();
        if (!eat('(')) fail("expected '(' after '" + name + "'");
        if (name == "schreier") {
            Ordinal a = parse_ordinal(arg_text());
            expect(')');
            return SpaceDescriptor::schreier(a);
        }
        if (name == "tsirelson") {
            Ordinal a = parse_ordinal(arg_text());
            expect(',');
            Rat th = parse_rat(arg_text());
            expect(')');
            return SpaceDescriptor::tsirelson(a, th);
        }
        if (name == "l1") {
            int k = integer();
            expect(')');
            return SpaceDescriptor::finite_l1(k);
        }
        if (name == "szlenk") {
            SpaceDescriptor inner = expr();
            expect(',');
            int extra = integer();
            expect(')');
            return SpaceDescriptor::szlenk_step(std::move(inner), extra);
        }
        if (name == "l2sum") {
            std::vector<SpaceDescriptor> cs{expr()};
            while (true) {
                skip_ws();
                if (eat(')')) break;
                expect(',');
                cs.push_back(expr());
            }
            return SpaceDescriptor::l2_sum(std::move(cs));
        }
        fail("unknown space '" + name + "'");
    }

    std::string arg_text() {
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
        throw ParseError("space syntax error at offset " + std::to_string(pos_) + ": " + m);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

SpaceDescriptor parse_space(std::string_view text) { return SpaceParser(text).parse(); }

std::optional<int> dimension(const SpaceDescriptor& s) {
    switch (s.kind) {
        case SpaceDescriptor::Kind::Schreier:
        case SpaceDescriptor::Kind::Tsirelson:
            return std::nullopt;
        case SpaceDescriptor::Kind::FiniteL1:
            return s.dim;
        case SpaceDescriptor::Kind::SzlenkStep: {
            auto inner = dimension(s.children[0]);
            return inner ? std::optional<int>(*inner + s.extra) : std::nullopt;
        }
        case SpaceDescriptor::Kind::L2Sum: {
            int total = 0;
            for (const auto& c : s.children) {
                auto d = dimension(c);
                if (!d) return std::nullopt;
                total += *d;
            }
            return total;
        }
    }
    throw Error("unreachable");
}

bool is_polyhedral(const SpaceDescriptor& s) {
    switch (s.kind) {
        case SpaceDescriptor::Kind::Schreier:
        case SpaceDescriptor::Kind::Tsirelson:
        case SpaceDescriptor::Kind::FiniteL1:
            return true;
        case SpaceDescriptor::Kind::SzlenkStep:
            return is_polyhedral(s.children[0]);
        case SpaceDescriptor::Kind::L2Sum:
            return false;
    }
    throw Error("unreachable");
}

bool is_l1_like(const SpaceDescriptor& s) {
    switch (s.kind) {
        case SpaceDescriptor::Kind::FiniteL1:
            return true;
        case SpaceDescriptor::Kind::SzlenkStep:
            return is_l1_like(s.children[0]);
        default:
            return false;
    }
}

// --- Schreier norm ----------------------------------------------------------

Rat schreier_norm(const RationalVector& x, const Ordinal& alpha) {
    if (x.is_zero()) return Rat(0);
    int maxv = x.max_support();
    if (maxv > kMaxSchreierNormSupport)
        throw CapError("schreier_norm support reaches " + std::to_string(maxv) + ", cap is " +
                       std::to_string(kMaxSchreierNormSupport));
    MemberOracle oracle(FamilyExpr::schreier(alpha));
    Rat best(0);

    auto scan = [&](const std::vector<int>& pool, int sign) {
        // Maximize sign * sum over members contained in `pool`.
        int n = static_cast<int>(pool.size());
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> elems;
            Rat sum(0);
            for (int i = 0; i < n; ++i) {
                if (mask & (1u << i)) {
                    elems.push_back(pool[i]);
                    sum += x.at(pool[i]);
                }
            }
            if (sign < 0) sum = -sum;
            if (sum <= best) continue;
            if (oracle.member(elems)) best = sum;
        }
    };

    if (maxv <= 14) {
        // Full enumeration over the value range; hereditariness not assumed.
        std::vector<int> pool;
        for (int v = 1; v <= maxv; ++v) pool.push_back(v);
        int n = static_cast<int>(pool.size());
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> elems;
            Rat sum(0);
            for (int i = 0; i < n; ++i) {
                if (mask & (1u << i)) {
                    elems.push_back(pool[i]);
                    sum += x.at(pool[i]);
                }
            }
            Rat v = abs(sum);
            if (v <= best) continue;
            if (oracle.member(elems)) best = v;
        }
    } else {
        // Sign split: the positive-part and negative-part maxima are each
        // attained on one-signed members (hereditary at verified scale).
        std::vector<int> pos, neg;
        for (const auto& [i, v] : x.coords()) (v > 0 ? pos : neg).push_back(i);
        scan(pos, +1);
        scan(neg, -1);
    }
    return best;
}

// --- Tsirelson norm ---------------------------------------------------------

namespace {

struct TsirelsonEngine {
    const std::vector<int> supp;
    std::vector<Rat> av;
    Rat theta;
    // Minima candidates: members of S_alpha within the value range, with the
    // index of the first support position at or above each minimum.
    struct Candidate {
        std::vector<int> q;  // position starts per part; size() parts
    };
    std::vector<Candidate> candidates;

    TsirelsonEngine(const RationalVector& x, const Ordinal& alpha, const Rat& th)
        : supp(x.support()), theta(th) {
        for (int i : supp) av.push_back(x.at(i));
        int maxv = supp.back();
        MemberOracle oracle(FamilyExpr::schreier(alpha));
        for (std::uint32_t mask = 1; mask < (1u << maxv); ++mask) {
            std::vector<int> elems;
            for (int v = 1; v <= maxv; ++v)
                if (mask & (1u << (v - 1))) elems.push_back(v);
            if (!oracle.member(elems)) continue;
            Candidate c;
            for (int v : elems) {
                auto it = std::lower_bound(supp.begin(), supp.end(), v);
                c.q.push_back(static_cast<int>(it - supp.begin()));
            }
            candidates.push_back(std::move(c));
        }
    }

    Rat run() {
        int s = static_cast<int>(supp.size());
        auto idx = [s](int i, int j) { return i * s + j; };
        std::vector<Rat> sup_part(s * s), norm(s * s), next(s * s), win(s * s);
        for (int i = 0; i < s; ++i) {
            Rat m(0);
            for (int j = i; j < s; ++j) {
                Rat a = abs(av[j]);
                if (a > m) m = a;
                sup_part[idx(i, j)] = m;
                norm[idx(i, j)] = m;  // round 0: the sup norm
            }
        }
        for (int round = 0; round <= s + 1; ++round) {
            // win[i][j] = max norm over subintervals of [i..j], previous round.
            for (int len = 1; len <= s; ++len) {
                for (int i = 0; i + len - 1 < s; ++i) {
                    int j = i + len - 1;
                    Rat v = norm[idx(i, j)];
                    if (len > 1) {
                        if (win[idx(i + 1, j)] > v) v = win[idx(i + 1, j)];
                        if (win[idx(i, j - 1)] > v) v = win[idx(i, j - 1)];
                    }
                    win[idx(i, j)] = v;
                }
            }
            bool changed = false;
            for (int i = 0; i < s; ++i) {
                for (int j = i; j < s; ++j) {
                    Rat best = sup_part[idx(i, j)];
                    for (const auto& c : candidates) {
                        Rat sum(0);
                        bool any = false;
                        int parts = static_cast<int>(c.q.size());
                        for (int t = 0; t < parts; ++t) {
                            int lo = std::max(c.q[t], i);
                            int hi = t + 1 < parts ? std::min(c.q[t + 1] - 1, j) : j;
                            if (lo > hi) continue;
                            sum += win[idx(lo, hi)];
                            any = true;
                        }
                        if (!any) continue;
                        Rat v = theta * sum;
                        if (v > best) best = v;
                    }
                    next[idx(i, j)] = best;
                    if (best != norm[idx(i, j)]) changed = true;
                }
            }
            std::swap(norm, next);
            if (!changed) return norm[idx(0, s - 1)];
        }
        throw Error("tsirelson norm iteration failed to stabilize within the support cap");
    }
};

}  // namespace

Rat tsirelson_norm(const RationalVector& x, const Ordinal& alpha, const Rat& theta) {
    if (theta <= 0 || theta >= 1) throw DomainError("theta must lie strictly between 0 and 1");
    if (x.is_zero()) return Rat(0);
    if (x.max_support() > kMaxTsirelsonNormSupport)
        throw CapError("tsirelson_norm support reaches " + std::to_string(x.max_support()) +
                       ", cap is " + std::to_string(kMaxTsirelsonNormSupport));
    TsirelsonEngine engine(x, alpha, theta);
    return engine.run();
}

// --- dispatch and l2 enclosures ----------------------------------------------

namespace {

NormValue exact_value(Rat v) {
    NormValue n;
    n.exact = true;
    n.value = v;
    n.sq_exact = true;
    n.square = v * v;
    n.lo = n.hi = std::move(v);
    return n;
}

// Enclosure of sqrt(p/q) with width about 1/den_bound; exact when the
// square root is rational.
NormValue sqrt_enclosure(const Rat& square, const Int& den_bound) {
    if (square < 0) throw Error("negative square");
    NormValue n;
    n.sq_exact = true;
    n.square = square;
    Int p = square.get_num(), q = square.get_den();
    if (mpz_perfect_square_p(p.get_mpz_t()) && mpz_perfect_square_p(q.get_mpz_t())) {
        Int sp, sq;
        mpz_sqrt(sp.get_mpz_t(), p.get_mpz_t());
        mpz_sqrt(sq.get_mpz_t(), q.get_mpz_t());
        Rat v(sp, sq);
        v.canonicalize();
        n.exact = true;
        n.value = v;
        n.lo = n.hi = v;
        return n;
    }
    Int b = den_bound < 2 ? Int(2) : den_bound;
    Int scaled = p * q * b * b;
    Int root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    n.lo = Rat(root, q * b);
    n.hi = Rat(root + 1, q * b);
    n.lo.canonicalize();
    n.hi.canonicalize();
    n.exact = false;
    return n;
}

RationalVector reindexed_block(const RationalVector& x, int offset, int dim) {
    RationalVector out;
    for (const auto& [i, v] : x.coords())
        if (i > offset && i <= offset + dim) out.set(i - offset, v);
    return out;
}

}  // namespace

NormValue space_norm(const RationalVector& x, const SpaceDescriptor& s, const Int& den_bound) {
    switch (s.kind) {
        case SpaceDescriptor::Kind::Schreier:
            return exact_value(schreier_norm(x, s.alpha));
        case SpaceDescriptor::Kind::Tsirelson:
            return exact_value(tsirelson_norm(x, s.alpha, s.theta));
        case SpaceDescriptor::Kind::FiniteL1:
            if (!x.is_zero() && x.max_support() > s.dim)
                throw DomainError("support exceeds the l1 block dimension");
            return exact_value(x.l1_norm());
        case SpaceDescriptor::Kind::SzlenkStep: {
            int inner_dim = *dimension(s.children[0]);
            int total = inner_dim + s.extra;
            if (!x.is_zero() && x.max_support() > total)
                throw DomainError("support exceeds the szlenk step dimension");
            NormValue inner = space_norm(x.prefix(inner_dim), s.children[0], den_bound);
            Rat tail_mass = x.tail(inner_dim).l1_norm();
            if (inner.exact) return exact_value(inner.value + tail_mass);
            NormValue n;
            n.exact = false;
            n.sq_exact = false;
            n.lo = inner.lo + tail_mass;
            n.hi = inner.hi + tail_mass;
            return n;
        }
        case SpaceDescriptor::Kind::L2Sum: {
            int total = *dimension(s);
            if (!x.is_zero() && x.max_support() > total)
                throw DomainError("support exceeds the l2 sum dimension");
            Rat square(0);
            bool sq_ok = true;
            int offset = 0;
            for (const auto& c : s.children) {
                int d = *dimension(c);
                NormValue nc = space_norm(reindexed_block(x, offset, d), c, den_bound);
                if (nc.sq_exact)
                    square += nc.square;
                else
                    sq_ok = false;
                offset += d;
            }
            if (!sq_ok) throw CapError("nested inexact l2 combination is not supported");
            return sqrt_enclosure(square, den_bound);
        }
    }
    throw Error("unreachable");
}

Rat exact_norm(const RationalVector& x, const SpaceDescriptor& s) {
    NormValue n = space_norm(x, s);
    if (!n.exact) throw DomainError("norm in " + to_string(s) + " is not exactly rational");
    return n.value;
}

// --- norming sets ------------------------------------------------------------

namespace {

void check_set_size(std::size_t n) {
    if (n > kMaxNormingSetSize) throw CapError("norming set exceeds the size cap");
}

std::vector<RationalVector> tsirelson_set(const Ordinal& alpha, const Rat& theta, int bound) {
    MemberOracle oracle(FamilyExpr::schreier(alpha));
    // Functionals keyed by exact support mask, built over masks of
    // increasing popcount; splits into >= 2 successive chunks with
    // admissible minima.
    std::vector<std::vector<RationalVector>> by_mask(1u << bound);
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 1; m < (1u << bound); ++m) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    std::size_t total = 0;
    for (std::uint32_t m : masks) {
        std::vector<int> elems;
        for (int v = 1; v <= bound; ++v)
            if (m & (1u << (v - 1))) elems.push_back(v);
        std::set<RationalVector> out;
        if (elems.size() == 1) {
            out.insert(RationalVector::unit(elems[0]));
            out.insert(Rat(-1) * RationalVector::unit(elems[0]));
        } else {
            int n = static_cast<int>(elems.size());
            // Compositions into consecutive chunks: bit i set = cut after i.
            for (std::uint32_t cuts = 1; cuts < (1u << (n - 1)); ++cuts) {
                std::vector<std::uint32_t> chunk_masks;
                std::vector<int> minima;
                std::uint32_t cur = 0;
                int first = elems[0];
                for (int i = 0; i < n; ++i) {
                    if (cur == 0) first = elems[i];
                    cur |= 1u << (elems[i] - 1);
                    bool cut = i + 1 == n || (cuts & (1u << i));
                    if (cut) {
                        chunk_masks.push_back(cur);
                        minima.push_back(first);
                        cur = 0;
                    }
                }
                if (chunk_masks.size() < 2) continue;
                if (!oracle.member(minima)) continue;
                // Odometer over per-chunk functional choices.
                std::vector<std::size_t> pick(chunk_masks.size(), 0);
                bool feasible = true;
                for (auto cm : chunk_masks)
                    if (by_mask[cm].empty()) feasible = false;
                if (!feasible) continue;
                while (true) {
                    RationalVector f;
                    for (std::size_t t = 0; t < chunk_masks.size(); ++t)
                        f += by_mask[chunk_masks[t]][pick[t]];
                    out.insert(theta * f);
                    std::size_t t = 0;
                    while (t < pick.size()) {
                        if (++pick[t] < by_mask[chunk_masks[t]].size()) break;
                        pick[t] = 0;
                        ++t;
                    }
                    if (t == pick.size()) break;
                }
            }
        }
        by_mask[m].assign(out.begin(), out.end());
        total += by_mask[m].size();
        check_set_size(total);
    }
    std::vector<RationalVector> all;
    for (const auto& fs : by_mask)
        for (const auto& f : fs) all.push_back(f);
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace

NormingSet norming_set(const SpaceDescriptor& s, int support_bound) {
    if (support_bound < 1) throw DomainError("support bound must be >= 1");
    NormingSet g;
    g.support_bound = support_bound;
    switch (s.kind) {
        case SpaceDescriptor::Kind::Schreier: {
            for (const auto& e : enumerate_members(FamilyExpr::schreier(s.alpha), support_bound)) {
                if (e.empty()) continue;
                RationalVector f;
                for (int i : e.elems) f.set(i, Rat(1));
                g.functionals.push_back(f);
                g.functionals.push_back(Rat(-1) * f);
            }
            break;
        }
        case SpaceDescriptor::Kind::Tsirelson: {
            if (support_bound > kMaxTsirelsonSetBound)
                throw CapError("tsirelson norming set bound exceeds " +
                               std::to_string(kMaxTsirelsonSetBound));
            g.functionals = tsirelson_set(s.alpha, s.theta, support_bound);
            break;
        }
        default: {
            if (!is_l1_like(s)) throw DomainError("no polyhedral norming set for " + to_string(s));
            int d = std::min(support_bound, *dimension(s));
            if (d > kMaxL1SetBound) throw CapError("l1 norming set bound exceeds " +
                                                   std::to_string(kMaxL1SetBound));
            for (std::uint32_t m = 0; m < (1u << d); ++m) {
                RationalVector f;
                for (int i = 1; i <= d; ++i) f.set(i, (m & (1u << (i - 1))) ? Rat(1) : Rat(-1));
                g.functionals.push_back(std::move(f));
            }
            for (int i = 1; i <= d; ++i) {
                g.functionals.push_back(RationalVector::unit(i));
                g.functionals.push_back(Rat(-1) * RationalVector::unit(i));
            }
            break;
        }
    }
    std::sort(g.functionals.begin(), g.functionals.end());
    g.functionals.erase(std::unique(g.functionals.begin(), g.functionals.end()),
                        g.functionals.end());
    return g;
}

Rat induced_norm(const NormingSet& g, const RationalVector& x) {
    if (!x.is_zero() && x.max_support() > g.support_bound)
        throw DomainError("vector support exceeds the norming set bound");
    Rat best(0);
    for (const auto& f : g.functionals) {
        Rat v = f.dot(x);
        if (v > best) best = v;
    }
    return best;
}

namespace {

bool tsirelson_functional_valid(const SpaceDescriptor& s, const RationalVector& f,
                                std::map<RationalVector, bool>& memo, MemberOracle& oracle) {
    if (f.support_size() == 1) {
        Rat v = f.coords().begin()->second;
        return v == 1 || v == -1;
    }
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    bool ok = false;
    std::vector<int> supp = f.support();
    int n = static_cast<int>(supp.size());
    RationalVector scaled = Rat(1) / s.theta * f;
    for (std::uint32_t cuts = 1; cuts < (1u << (n - 1)) && !ok; ++cuts) {
        std::vector<std::vector<int>> chunks;
        std::vector<int> minima;
        std::vector<int> cur;
        for (int i = 0; i < n; ++i) {
            cur.push_back(supp[i]);
            if (i + 1 == n || (cuts & (1u << i))) {
                minima.push_back(cur.front());
                chunks.push_back(cur);
                cur.clear();
            }
        }
        if (chunks.size() < 2) continue;
        if (!oracle.member(minima)) continue;
        ok = true;
        for (const auto& ch : chunks) {
            if (!tsirelson_functional_valid(s, scaled.restrict(ch), memo, oracle)) {
                ok = false;
                break;
            }
        }
    }
    memo.emplace(f, ok);
    return ok;
}

}  // namespace

bool valid_dual_functional(const SpaceDescriptor& s, const RationalVector& f) {
    if (f.is_zero()) return false;
    switch (s.kind) {
        case SpaceDescriptor::Kind::Schreier: {
            Rat sign = f.coords().begin()->second;
            if (sign != 1 && sign != -1) return false;
            for (const auto& [i, v] : f.coords())
                if (v != sign) return false;
            return member(FiniteSet(f.support()), FamilyExpr::schreier(s.alpha));
        }
        case SpaceDescriptor::Kind::Tsirelson: {
            std::map<RationalVector, bool> memo;
            MemberOracle oracle(FamilyExpr::schreier(s.alpha));
            return tsirelson_functional_valid(s, f, memo, oracle);
        }
        default:
            if (!is_l1_like(s)) return false;
            if (f.max_support() > *dimension(s)) return false;
            return f.sup_norm() <= 1;
    }
}

NormalizedVector normalize(const RationalVector& x, const SpaceDescriptor& s,
                           const Int& den_bound) {
    if (x.is_zero()) throw DomainError("cannot normalize the zero vector");
    NormValue n = space_norm(x, s, den_bound);
    if (n.exact) return {Rat(1) / n.value * x, Rat(0)};
    NormalizedVector out{Rat(1) / n.hi * x, 1 - n.lo / n.hi};
    return out;
}

// --- block extraction ---------------------------------------------------------

namespace {

RationalVector combine(const std::vector<RationalVector>& node, const std::vector<Rat>& coeffs) {
    RationalVector v;
    for (std::size_t j = 0; j < node.size(); ++j)
        if (coeffs[j] != 0) v += coeffs[j] * node[j];
    return v;
}

int span_dimension(const std::vector<RationalVector>& node) {
    std::set<int> rows;
    for (const auto& y : node)
        for (int i : y.support()) rows.insert(i);
    Matrix m;
    for (int i : rows) {
        std::vector<Rat> row;
        for (const auto& y : node) row.push_back(y.at(i));
        m.push_back(std::move(row));
    }
    return matrix_rank(m);
}

RationalVector first_nonzero_kernel_combination(const std::vector<RationalVector>& node,
                                                const Matrix& constraints) {
    Matrix m = constraints;
    if (m.empty()) m.push_back(std::vector<Rat>(node.size(), Rat(0)));
    for (const auto& basis_vec : nullspace(m)) {
        RationalVector v = combine(node, basis_vec);
        if (!v.is_zero()) return v;
    }
    throw DomainError("span too small");
}

}  // namespace

RationalVector block_vector_zero_prefix(const std::vector<RationalVector>& node, int n,
                                        const SpaceDescriptor& s) {
    if (node.empty()) throw DomainError("empty node");
    if (n < 0) throw DomainError("prefix length must be >= 0");
    if (span_dimension(node) <= n) throw DomainError("span too small");
    Matrix constraints;
    for (int i = 1; i <= n; ++i) {
        std::vector<Rat> row;
        for (const auto& y : node) row.push_back(y.at(i));
        constraints.push_back(std::move(row));
    }
    RationalVector v = first_nonzero_kernel_combination(node, constraints);
    return normalize(v, s).v;
}

RationalVector annihilating_block(const std::vector<RationalVector>& node,
                                  const std::vector<RationalVector>& functionals,
                                  const SpaceDescriptor& s) {
    if (node.empty()) throw DomainError("empty node");
    if (span_dimension(node) <= static_cast<int>(functionals.size()))
        throw DomainError("span too small");
    Matrix constraints;
    for (const auto& f : functionals) {
        std::vector<Rat> row;
        for (const auto& y : node) row.push_back(f.dot(y));
        constraints.push_back(std::move(row));
    }
    RationalVector v = first_nonzero_kernel_combination(node, constraints);
    return normalize(v, s).v;
}

}  // namespace l1idx
