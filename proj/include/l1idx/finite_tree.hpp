#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "l1idx/errors.hpp"

namespace l1idx {

using NodeId = std::int64_t;

// A finite tree in the partial-order sense: finitely many nodes, each with
// at most one predecessor, possibly several initial nodes (a forest in CS
// terms).  Nodes carry an optional string label.  Values are immutable
// after construction.
class FiniteTree {
public:
    struct Node {
        NodeId id;
        std::optional<NodeId> pred;
        std::string label;
    };

    FiniteTree() = default;
    explicit FiniteTree(std::vector<Node> nodes);  // validates, sorts by id

    bool empty() const { return nodes_.empty(); }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<Node>& nodes() const { return nodes_; }

    bool contains(NodeId id) const { return index_.count(id) != 0; }
    const Node& node(NodeId id) const;
    const std::vector<NodeId>& children(NodeId id) const;
    std::vector<NodeId> initial_nodes() const;
    std::vector<NodeId> maximal_nodes() const;
    bool is_maximal(NodeId id) const;

    // Number of strict ancestors plus one.
    int depth(NodeId id) const;
    // 1 for a terminal node, otherwise 1 + max rank of the children; the
    // tree order is the maximum rank over initial nodes.
    int rank(NodeId id) const;

    // Strict ancestors of id, nearest first.
    std::vector<NodeId> ancestors(NodeId id) const;
    // All nodes <= some node of `upper`, i.e. the downward closure.
    std::vector<NodeId> down_closure(const std::vector<NodeId>& upper) const;

private:
    std::vector<Node> nodes_;
    std::unordered_map<NodeId, std::size_t> index_;
    std::unordered_map<NodeId, std::vector<NodeId>> children_;
    mutable std::unordered_map<NodeId, int> rank_cache_;
};

// The tree with its maximal nodes removed.
FiniteTree derived(const FiniteTree& t);

// Least n such that n applications of derived() give the empty tree;
// computed by rank recursion.  order(empty) = 0.
int order(const FiniteTree& t);

// Tree isomorphism (labels ignored) via canonical forms.
bool is_isomorphic(const FiniteTree& a, const FiniteTree& b);
std::string canonical_form(const FiniteTree& t);

// The explicit chain T_n = {{1..n},{2..n},...,{n}}: node k (id k, depth k)
// carries the label "{n-k+1,...,n}"; T_0 is empty.
FiniteTree explicit_minimal_chain(int n);

// Order-preserving embedding of T_n into t, following the minimality
// argument: x_k is the first node (smallest id) above x_{k-1} with rank
// exactly n-k+1.  Returns the image chain bottom-up, or nullopt when
// order(t) < n.
std::optional<std::vector<NodeId>> embed_minimal(const FiniteTree& t, int n);

// Induced tree on a subset of nodes: pred becomes the nearest strict
// ancestor inside the subset.  Isomorphic to the subset with its induced
// order.
FiniteTree restricted_subtree(const FiniteTree& t, const std::vector<NodeId>& subset);

// Given a partition of the maximal nodes into classes, returns the first
// 1-based class index whose downward closure has full order.
int partition_maximal(const FiniteTree& t, const std::vector<std::vector<NodeId>>& parts);

// Seeded random tree of order exactly n with extra_nodes additional nodes.
FiniteTree random_tree_of_order(int n, int extra_nodes, std::uint64_t seed);

// DOT export, nodes emitted in increasing id order.
std::string to_dot(const FiniteTree& t);

// JSON round-trip: {"nodes":[{"id":..,"pred":..|null,"label":..}]}.
std::string tree_to_json(const FiniteTree& t);
FiniteTree tree_from_json(const std::string& text);

}  // namespace l1idx
