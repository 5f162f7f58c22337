#include "l1idx/finite_tree.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

namespace l1idx {

FiniteTree::FiniteTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
    std::sort(nodes_.begin(), nodes_.end(),
              [](const Node& a, const Node& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!index_.emplace(nodes_[i].id, i).second)
            throw DomainError("duplicate node id " + std::to_string(nodes_[i].id));
    }
    for (const auto& n : nodes_) {
        if (n.pred) {
            if (!index_.count(*n.pred))
                throw DomainError("predecessor of node " + std::to_string(n.id) + " is missing");
            if (*n.pred == n.id) throw DomainError("node is its own predecessor");
            children_[*n.pred].push_back(n.id);
        }
    }
    for (auto& [id, ch] : children_) std::sort(ch.begin(), ch.end());
    // Predecessor chains must terminate; finiteness rules out anything but cycles.
    for (const auto& n : nodes_) {
        std::size_t steps = 0;
        std::optional<NodeId> cur = n.pred;
        while (cur) {
            if (++steps > nodes_.size()) throw DomainError("predecessor chain has a cycle");
            cur = node(*cur).pred;
        }
    }
}

const FiniteTree::Node& FiniteTree::node(NodeId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw DomainError("unknown node id " + std::to_string(id));
    return nodes_[it->second];
}

const std::vector<NodeId>& FiniteTree::children(NodeId id) const {
    static const std::vector<NodeId> kEmpty;
    node(id);
    auto it = children_.find(id);
    return it == children_.end() ? kEmpty : it->second;
}

std::vector<NodeId> FiniteTree::initial_nodes() const {
    std::vector<NodeId> out;
    for (const auto& n : nodes_)
        if (!n.pred) out.push_back(n.id);
    return out;
}

std::vector<NodeId> FiniteTree::maximal_nodes() const {
    std::vector<NodeId> out;
    for (const auto& n : nodes_)
        if (children(n.id).empty()) out.push_back(n.id);
    return out;
}

bool FiniteTree::is_maximal(NodeId id) const { return children(id).empty(); }

int FiniteTree::depth(NodeId id) const {
    int d = 1;
    std::optional<NodeId> cur = node(id).pred;
    while (cur) {
        ++d;
        cur = node(*cur).pred;
    }
    return d;
}

int FiniteTree::rank(NodeId id) const {
    auto it = rank_cache_.find(id);
    if (it != rank_cache_.end()) return it->second;
    // Iterative post-order so deep chains cannot overflow the stack.
    std::vector<std::pair<NodeId, bool>> stack{{id, false}};
    while (!stack.empty()) {
        auto [cur, expanded] = stack.back();
        stack.pop_back();
        if (rank_cache_.count(cur)) continue;
        if (!expanded) {
            stack.push_back({cur, true});
            for (NodeId c : children(cur)) stack.push_back({c, false});
        } else {
            int r = 1;
            for (NodeId c : children(cur)) r = std::max(r, 1 + rank_cache_.at(c));
            rank_cache_[cur] = r;
        }
    }
    return rank_cache_.at(id);
}

std::vector<NodeId> FiniteTree::ancestors(NodeId id) const {
    std::vector<NodeId> out;
    std::optional<NodeId> cur = node(id).pred;
    while (cur) {
        out.push_back(*cur);
        cur = node(*cur).pred;
    }
    return out;
}

std::vector<NodeId> FiniteTree::down_closure(const std::vector<NodeId>& upper) const {
    std::set<NodeId> seen;
    for (NodeId id : upper) {
        seen.insert(id);
        for (NodeId a : ancestors(id)) seen.insert(a);
    }
    return {seen.begin(), seen.end()};
}

FiniteTree derived(const FiniteTree& t) {
    std::vector<FiniteTree::Node> keep;
    for (const auto& n : t.nodes())
        if (!t.is_maximal(n.id)) keep.push_back(n);
    return FiniteTree(std::move(keep));
}

int order(const FiniteTree& t) {
    int r = 0;
    for (NodeId id : t.initial_nodes()) r = std::max(r, t.rank(id));
    return r;
}

namespace {

std::string canon_node(const FiniteTree& t, NodeId id) {
    std::vector<std::string> parts;
    for (NodeId c : t.children(id)) parts.push_back(canon_node(t, c));
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const auto& p : parts) out += p;
    out += ")";
    return out;
}

}  // namespace

std::string canonical_form(const FiniteTree& t) {
    std::vector<std::string> parts;
    for (NodeId r : t.initial_nodes()) parts.push_back(canon_node(t, r));
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& p : parts) out += p;
    return out;
}

bool is_isomorphic(const FiniteTree& a, const FiniteTree& b) {
    if (a.size() != b.size()) return false;
    return canonical_form(a) == canonical_form(b);
}

FiniteTree explicit_minimal_chain(int n) {
    if (n < 0) throw DomainError("chain length must be >= 0");
    std::vector<FiniteTree::Node> nodes;
    for (int k = 1; k <= n; ++k) {
        std::string label = "{";
        for (int v = n - k + 1; v <= n; ++v) {
            if (v > n - k + 1) label += ",";
            label += std::to_string(v);
        }
        label += "}";
        nodes.push_back({k, k == 1 ? std::nullopt : std::optional<NodeId>(k - 1), label});
    }
    return FiniteTree(std::move(nodes));
}

std::optional<std::vector<NodeId>> embed_minimal(const FiniteTree& t, int n) {
    if (n < 0) throw DomainError("embedding length must be >= 0");
    if (n == 0) return std::vector<NodeId>{};
    if (order(t) < n) return std::nullopt;
    std::vector<NodeId> chain;
    // First node of rank exactly n-k+1 above the previous pick.
    std::optional<NodeId> prev;
    for (int k = 1; k <= n; ++k) {
        int want = n - k + 1;
        std::optional<NodeId> pick;
        for (const auto& node : t.nodes()) {
            if (t.rank(node.id) != want) continue;
            if (prev) {
                auto anc = t.ancestors(node.id);
                if (std::find(anc.begin(), anc.end(), *prev) == anc.end()) continue;
            }
            pick = node.id;
            break;
        }
        if (!pick) return std::nullopt;  // cannot happen when order(t) >= n
        chain.push_back(*pick);
        prev = pick;
    }
    return chain;
}

FiniteTree restricted_subtree(const FiniteTree& t, const std::vector<NodeId>& subset) {
    std::set<NodeId> in(subset.begin(), subset.end());
    for (NodeId id : subset)
        if (!t.contains(id)) throw DomainError("subset node " + std::to_string(id) + " not in tree");
    std::vector<FiniteTree::Node> nodes;
    for (NodeId id : in) {
        std::optional<NodeId> pred;
        for (NodeId a : t.ancestors(id)) {
            if (in.count(a)) {
                pred = a;
                break;
            }
        }
        nodes.push_back({id, pred, t.node(id).label});
    }
    return FiniteTree(std::move(nodes));
}

int partition_maximal(const FiniteTree& t, const std::vector<std::vector<NodeId>>& parts) {
    std::set<NodeId> maximal;
    for (NodeId id : t.maximal_nodes()) maximal.insert(id);
    std::set<NodeId> seen;
    for (const auto& cls : parts) {
        for (NodeId id : cls) {
            if (!maximal.count(id))
                throw DomainError("partition element " + std::to_string(id) + " is not a maximal node");
            if (!seen.insert(id).second)
                throw DomainError("partition repeats node " + std::to_string(id));
        }
    }
    if (seen.size() != maximal.size()) throw DomainError("partition does not cover the maximal nodes");
    int full = order(t);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        FiniteTree ti = restricted_subtree(t, t.down_closure(parts[i]));
        if (order(ti) == full) return static_cast<int>(i) + 1;
    }
    throw DomainError("no class attains the full order");  // ruled out by the partition lemma
}

FiniteTree random_tree_of_order(int n, int extra_nodes, std::uint64_t seed) {
    if (n < 1) throw DomainError("order must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<FiniteTree::Node> nodes;
    std::vector<int> depth;
    for (int k = 1; k <= n; ++k) {
        nodes.push_back({k, k == 1 ? std::nullopt : std::optional<NodeId>(k - 1), ""});
        depth.push_back(k);
    }
    NodeId next = n + 1;
    for (int i = 0; i < extra_nodes; ++i) {
        // Attach below a node whose depth leaves room, keeping the order at n.
        std::vector<std::size_t> hosts;
        for (std::size_t j = 0; j < nodes.size(); ++j)
            if (depth[j] < n) hosts.push_back(j);
        std::uniform_int_distribution<std::size_t> pick(0, hosts.size());
        std::size_t h = pick(rng);
        if (h == hosts.size()) {
            nodes.push_back({next, std::nullopt, ""});  // a fresh initial node
            depth.push_back(1);
        } else {
            nodes.push_back({next, nodes[hosts[h]].id, ""});
            depth.push_back(depth[hosts[h]] + 1);
        }
        ++next;
    }
    return FiniteTree(std::move(nodes));
}

std::string to_dot(const FiniteTree& t) {
    std::ostringstream os;
    os << "digraph tree {\n";
    for (const auto& n : t.nodes()) {
        os << "  n" << n.id << " [label=\"" << n.id;
        if (!n.label.empty()) os << ": " << n.label;
        os << "\"];\n";
    }
    for (const auto& n : t.nodes())
        if (n.pred) os << "  n" << *n.pred << " -> n" << n.id << ";\n";
    os << "}\n";
    return os.str();
}

std::string tree_to_json(const FiniteTree& t) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : t.nodes()) {
        nlohmann::json jn;
        jn["id"] = n.id;
        if (n.pred)
            jn["pred"] = *n.pred;
        else
            jn["pred"] = nullptr;
        if (!n.label.empty()) jn["label"] = n.label;
        nodes.push_back(jn);
    }
    nlohmann::json j;
    j["nodes"] = nodes;
    return j.dump();
}

FiniteTree tree_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad tree JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array())
        throw ParseError("tree JSON must be an object with a \"nodes\" array");
    std::vector<FiniteTree::Node> nodes;
    for (const auto& jn : j["nodes"]) {
        if (!jn.contains("id") || !jn["id"].is_number_integer())
            throw ParseError("tree node needs an integer \"id\"");
        FiniteTree::Node n;
        n.id = jn["id"].get<NodeId>();
        if (jn.contains("pred") && !jn["pred"].is_null()) {
            if (!jn["pred"].is_number_integer()) throw ParseError("\"pred\" must be an integer or null");
            n.pred = jn["pred"].get<NodeId>();
        }
        if (jn.contains("label")) {
            if (!jn["label"].is_string()) throw ParseError("\"label\" must be a string");
            n.label = jn["label"].get<std::string>();
        }
        nodes.push_back(std::move(n));
    }
    try {
        return FiniteTree(std::move(nodes));
    } catch (const DomainError& e) {
        throw ParseError(std::string("invalid tree: ") + e.what());
    }
}

}  // namespace l1idx
