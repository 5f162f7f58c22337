#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "l1idx/finite_tree.hpp"
#include "l1idx/ordinal.hpp"

namespace l1idx {

// A strictly increasing finite set of positive integers.
struct FiniteSet {
    std::vector<int> elems;

    FiniteSet() = default;
    explicit FiniteSet(std::vector<int> e);  // validates

    bool empty() const { return elems.empty(); }
    int size() const { return static_cast<int>(elems.size()); }
    int min() const;
    int max() const;
    bool operator==(const FiniteSet& o) const { return elems == o.elems; }
    bool operator<(const FiniteSet& o) const;  // shortlex, for deterministic listings
};

std::string to_string(const FiniteSet& f);
FiniteSet parse_finite_set(std::string_view text);  // "2,3,5" or "{2,3,5}"

// Expressions over the family operators: the Schreier family S_alpha, the
// composition M[N], the image M(K) under an increasing sequence, and the
// powers (M)^n and [M]^n.
class FamilyExpr {
public:
    enum class Kind { Schreier, Compose, Restrict, PowerUnion, PowerCompose };

    static FamilyExpr schreier(Ordinal alpha);
    static FamilyExpr compose(FamilyExpr m, FamilyExpr n);
    static FamilyExpr restrict(FamilyExpr m, std::vector<int> k_prefix);
    static FamilyExpr power_union(FamilyExpr m, int n);
    static FamilyExpr power_compose(FamilyExpr m, int n);

    Kind kind() const;
    const Ordinal& alpha() const;
    FamilyExpr left() const;   // Compose: M; Restrict/Power: M
    FamilyExpr right() const;  // Compose: N
    const std::vector<int>& k_prefix() const;
    int power() const;
    // Stable identity of the expression node, usable as a memo key.
    const void* key() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

std::string to_string(const FamilyExpr& f);
// "S(1)", "S(w)", "compose(S(1),S(1))", "restrict(S(1),2,4,6)",
// "pow_u(S(1),2)", "pow_c(S(1),2)".
FamilyExpr parse_family(std::string_view text);

// Membership F in fam.  The empty set belongs to every family; limit
// stages use the canonical fundamental sequences and test every n <= min F.
bool member(const FiniteSet& f, const FamilyExpr& fam);

// Reusable membership oracle whose memo persists across queries.  Distinct
// oracles are independent, so concurrent use of separate instances is safe.
class MemberOracle {
public:
    explicit MemberOracle(FamilyExpr fam);
    ~MemberOracle();
    MemberOracle(MemberOracle&&) noexcept;
    MemberOracle& operator=(MemberOracle&&) noexcept;

    bool member(const std::vector<int>& elems) const;
    bool member(const FiniteSet& f) const { return member(f.elems); }

private:
    struct State;
    FamilyExpr fam_;
    std::unique_ptr<State> state_;
};

inline constexpr int kMaxGround = 20;

// All members with max element <= ground_max (<= kMaxGround), in shortlex
// order, the empty set first.  Consistent with member by construction.
std::vector<FiniteSet> enumerate_members(const FamilyExpr& fam, int ground_max);

// E_1 < ... < E_n with (min E_i)_i a member of S_alpha.  Empty sets in the
// list make the sequence inadmissible; the empty sequence is admissible.
bool admissible(const std::vector<FiniteSet>& sets, const Ordinal& alpha);

// Nonempty members with max <= ground_max ordered by initial-segment
// extension; node ids follow the shortlex listing.
FiniteTree family_tree(const FamilyExpr& fam, int ground_max);

struct OtwCheck {
    bool pass = false;
    FiniteSet counterexample;  // first violating set in shortlex order
};

// Exhaustively verifies S_alpha[S_beta](K) within S_{beta+alpha} on all
// sets with max <= bound.  K must be a strictly increasing prefix covering
// the values it is asked about.
OtwCheck otw_check(const Ordinal& alpha, const Ordinal& beta, const std::vector<int>& k_prefix,
                   int bound);

// Greedy leftmost search, with backtracking, for a prefix K passing
// otw_check at the given bound.  Throws DomainError when the ground is
// exhausted without success.
std::vector<int> otw_search(const Ordinal& alpha, const Ordinal& beta, int bound);

}  // namespace l1idx
