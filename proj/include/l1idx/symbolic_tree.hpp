#pragma once

#include <memory>
#include <string_view>
#include <utility>
#include <vector>

#include "l1idx/finite_tree.hpp"
#include "l1idx/ordinal.hpp"

namespace l1idx {

// Constructor-level description of the ordinal-indexed trees: a leaf, a new
// minimal node below a tree, an incomparable union, the replacement tree
// T(alpha,beta), the minimal tree T_alpha, and the family tree Tree(S_alpha).
// Orders are symbolic ordinals; truncate() instantiates finite shadows.
class SymbolicTree {
public:
    enum class Kind { Leaf, Below, Union, Replacement, Minimal, Family };

    static SymbolicTree leaf();
    static SymbolicTree below(SymbolicTree inner);
    static SymbolicTree union_of(std::vector<SymbolicTree> members);
    static SymbolicTree replacement(Ordinal alpha, Ordinal beta);
    static SymbolicTree minimal(Ordinal alpha);
    static SymbolicTree family(Ordinal alpha);

    Kind kind() const;
    SymbolicTree inner() const;                        // Below
    const std::vector<SymbolicTree>& members() const;  // Union
    const Ordinal& alpha() const;                      // Replacement/Minimal/Family
    const Ordinal& beta() const;                       // Replacement

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

// Leaf -> 1, Below(t) -> order(t)+1, Union -> max of member orders,
// Replacement(a,b) -> b*a, Minimal(a) -> a, Family(a) -> w^a.
Ordinal symbolic_order(const SymbolicTree& t);

// Deterministic finite instantiation.  Infinite component lists (limit
// stages, infinite replacement fans) keep their first `budget` members;
// finite structure is materialized exactly.  Family trees use `budget`
// as the ground-set bound.
FiniteTree truncate(const SymbolicTree& t, int budget);

// Incomparable components of a tree of limit order: returns `count`
// components of successor order whose full family has supremum
// symbolic_order(t).  Limit-order components are refined through their
// own fundamental sequences until a successor stage is reached.
std::vector<std::pair<SymbolicTree, Ordinal>> decompose_limit(const SymbolicTree& t,
                                                              int count = 8);

// Expression syntax: leaf | below(t) | union(t,...) | min(a) | rep(a,b)
// | family(a), with ordinals in the ordinal text syntax.
SymbolicTree parse_symbolic_tree(std::string_view text);
std::string to_string(const SymbolicTree& t);

}  // namespace l1idx
