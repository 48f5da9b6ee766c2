#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sftcomb/arith.hpp"
#include "sftcomb/orbit.hpp"
#include "sftcomb/poset.hpp"

namespace sftcomb {

using VertexId = std::string;

enum class Direction { In, Out };

struct TreeVertex {
    VertexId id;
    Rational degree;  // energy tag standing in for the relative class, >= 0

    bool operator==(const TreeVertex&) const = default;
};

// Internal edges are directed from the positive end to the negative end.
struct InternalEdge {
    VertexId from;
    VertexId to;
    std::string orbit;

    bool operator==(const InternalEdge&) const = default;
};

struct ExteriorEdge {
    VertexId vertex;
    Direction dir;
    std::string orbit;

    bool operator==(const ExteriorEdge&) const = default;
};

struct DecoratedTree {
    std::vector<TreeVertex> vertices;
    std::vector<InternalEdge> internal_edges;
    std::vector<ExteriorEdge> exterior_edges;

    bool operator==(const DecoratedTree&) const = default;

    std::size_t vertex_index(const VertexId& id) const
    {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i].id == id)
                return i;
        throw Error("unknown vertex id '" + id + "'");
    }

    bool has_vertex(const VertexId& id) const
    {
        return std::any_of(vertices.begin(), vertices.end(),
                           [&](const TreeVertex& v) { return v.id == id; });
    }

    const TreeVertex& vertex(const VertexId& id) const { return vertices[vertex_index(id)]; }

    // Orbit labels of all edges adjacent to v, exterior included.
    std::vector<std::string> adjacent_orbits(const VertexId& v) const
    {
        std::vector<std::string> out;
        for (const auto& e : internal_edges)
            if (e.from == v || e.to == v)
                out.push_back(e.orbit);
        for (const auto& e : exterior_edges)
            if (e.vertex == v)
                out.push_back(e.orbit);
        return out;
    }

    std::size_t adjacent_edge_count(const VertexId& v) const { return adjacent_orbits(v).size(); }

    // Edges whose positive end is at v (incoming exterior edges and internal
    // edges pointing at v) carry the + sign in all degree arithmetic.
    std::vector<std::string> positive_orbits_at(const VertexId& v) const
    {
        std::vector<std::string> out;
        for (const auto& e : internal_edges)
            if (e.to == v)
                out.push_back(e.orbit);
        for (const auto& e : exterior_edges)
            if (e.vertex == v && e.dir == Direction::In)
                out.push_back(e.orbit);
        return out;
    }

    std::vector<std::string> negative_orbits_at(const VertexId& v) const
    {
        std::vector<std::string> out;
        for (const auto& e : internal_edges)
            if (e.from == v)
                out.push_back(e.orbit);
        for (const auto& e : exterior_edges)
            if (e.vertex == v && e.dir == Direction::Out)
                out.push_back(e.orbit);
        return out;
    }

    bool has_incoming_exterior(const VertexId& v) const
    {
        return std::any_of(exterior_edges.begin(), exterior_edges.end(), [&](const ExteriorEdge& e) {
            return e.vertex == v && e.dir == Direction::In;
        });
    }

    bool has_incoming_internal(const VertexId& v) const
    {
        return std::any_of(internal_edges.begin(), internal_edges.end(),
                           [&](const InternalEdge& e) { return e.to == v; });
    }

    std::size_t count_exterior(Direction d) const
    {
        std::size_t n = 0;
        for (const auto& e : exterior_edges)
            if (e.dir == d)
                ++n;
        return n;
    }
};

struct DecoratedForest {
    std::vector<DecoratedTree> components;
};

struct ValidationIssue {
    std::string location;
    std::string message;
};

struct TreeReport {
    bool structure_ok = false;  // tree-ness and label integrity
    std::vector<ValidationIssue> issues;
    std::vector<VertexId> trivial_vertices;
    bool stable = false;

    bool valid() const { return structure_ok; }
};

// A vertex is trivial iff it has exactly two adjacent edges, both labeled by
// the same Reeb orbit, and carries degree tag 0. Stability forbids them.
inline bool is_trivial_vertex(const DecoratedTree& t, const VertexId& v)
{
    auto orbits = t.adjacent_orbits(v);
    return orbits.size() == 2 && orbits[0] == orbits[1] && t.vertex(v).degree == 0;
}

inline TreeReport validate_tree(const DecoratedTree& t, const OrbitUniverse& universe)
{
    TreeReport report;
    auto issue = [&](const std::string& where, const std::string& what) {
        report.issues.push_back({where, what});
    };

    if (t.vertices.empty()) {
        issue("tree", "no vertices");
        return report;
    }
    std::set<VertexId> ids;
    for (const auto& v : t.vertices) {
        if (!ids.insert(v.id).second)
            issue("vertex " + v.id, "duplicate vertex id");
        if (v.degree < 0)
            issue("vertex " + v.id, "negative degree tag");
    }
    for (const auto& e : t.internal_edges) {
        if (!ids.count(e.from))
            issue("edge " + e.from + "->" + e.to, "unknown source vertex");
        if (!ids.count(e.to))
            issue("edge " + e.from + "->" + e.to, "unknown target vertex");
        if (e.from == e.to)
            issue("edge " + e.from + "->" + e.to, "self-loop");
        if (!universe.contains(e.orbit))
            issue("edge " + e.from + "->" + e.to, "unknown orbit id '" + e.orbit + "'");
    }
    for (const auto& e : t.exterior_edges) {
        if (!ids.count(e.vertex))
            issue("exterior edge at " + e.vertex, "unknown vertex");
        if (!universe.contains(e.orbit))
            issue("exterior edge at " + e.vertex, "unknown orbit id '" + e.orbit + "'");
    }
    if (!report.issues.empty())
        return report;

    // Connectivity and acyclicity of the underlying undirected graph.
    if (t.internal_edges.size() + 1 != t.vertices.size()) {
        issue("tree", "edge count differs from vertex count minus one");
        return report;
    }
    std::map<VertexId, std::vector<VertexId>> adj;
    for (const auto& e : t.internal_edges) {
        adj[e.from].push_back(e.to);
        adj[e.to].push_back(e.from);
    }
    std::set<VertexId> seen;
    std::vector<VertexId> stack = {t.vertices.front().id};
    seen.insert(stack.back());
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (const auto& w : adj[v])
            if (seen.insert(w).second)
                stack.push_back(w);
    }
    if (seen.size() != t.vertices.size()) {
        issue("tree", "underlying graph is disconnected or cyclic");
        return report;
    }

    report.structure_ok = true;
    for (const auto& v : t.vertices)
        if (is_trivial_vertex(t, v.id))
            report.trivial_vertices.push_back(v.id);
    report.stable = report.trivial_vertices.empty();
    return report;
}

// ---------------------------------------------------------------------------
// Contractions

struct Contraction {
    DecoratedTree source;
    DecoratedTree target;
    std::set<std::size_t> collapsed;            // indices into source.internal_edges
    std::map<VertexId, VertexId> vertex_map;    // source vertex -> target vertex
    std::map<std::size_t, std::size_t> edge_map;  // surviving source edge -> target edge
};

// Collapse exactly the given internal edges. Fibers are the connected
// components of the collapsed subforest; each target vertex takes the
// lexicographically smallest id in its fiber and the fiber's degree sum.
inline Contraction contract(const DecoratedTree& t, const std::set<std::size_t>& edges)
{
    for (auto i : edges)
        require(i < t.internal_edges.size(), "contract: edge index out of range");

    // Union-find over vertices.
    std::map<VertexId, VertexId> parent;
    for (const auto& v : t.vertices)
        parent[v.id] = v.id;
    std::function<VertexId(VertexId)> find = [&](VertexId v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    for (auto i : edges) {
        auto a = find(t.internal_edges[i].from), b = find(t.internal_edges[i].to);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }

    Contraction c;
    c.source = t;
    c.collapsed = edges;
    std::map<VertexId, Rational> degree;
    std::map<VertexId, bool> present;
    for (const auto& v : t.vertices) {
        VertexId r = find(v.id);
        degree[r] += v.degree;
        present[r] = true;
        c.vertex_map[v.id] = r;
    }
    for (const auto& v : t.vertices)
        if (v.id == find(v.id))
            c.target.vertices.push_back({v.id, degree[v.id]});
    for (std::size_t i = 0; i < t.internal_edges.size(); ++i) {
        if (edges.count(i))
            continue;
        const auto& e = t.internal_edges[i];
        c.edge_map[i] = c.target.internal_edges.size();
        c.target.internal_edges.push_back({c.vertex_map[e.from], c.vertex_map[e.to], e.orbit});
    }
    for (const auto& e : t.exterior_edges)
        c.target.exterior_edges.push_back({c.vertex_map[e.vertex], e.dir, e.orbit});
    return c;
}

// ---------------------------------------------------------------------------
// Automorphisms

// An automorphism is a vertex bijection preserving degree tags, the directed
// labeled internal edges, and the multiset of (direction, orbit) exterior
// edges at each vertex. Exhaustive backtracking; the trees of interest are
// small.
inline std::vector<std::map<VertexId, VertexId>> tree_automorphisms(const DecoratedTree& t)
{
    std::size_t n = t.vertices.size();
    std::vector<VertexId> ids;
    for (const auto& v : t.vertices)
        ids.push_back(v.id);

    auto ext_key = [&](const VertexId& v) {
        std::vector<std::pair<int, std::string>> key;
        for (const auto& e : t.exterior_edges)
            if (e.vertex == v)
                key.emplace_back(e.dir == Direction::In ? 0 : 1, e.orbit);
        std::sort(key.begin(), key.end());
        return key;
    };
    std::map<VertexId, std::vector<std::pair<int, std::string>>> ext;
    for (const auto& id : ids)
        ext[id] = ext_key(id);

    std::vector<std::map<VertexId, VertexId>> result;
    std::map<VertexId, VertexId> img;
    std::set<VertexId> used;

    auto edges_compatible = [&]() {
        // Check edges whose endpoints are both mapped.
        for (const auto& e : t.internal_edges) {
            auto fi = img.find(e.from);
            auto ti = img.find(e.to);
            if (fi == img.end() || ti == img.end())
                continue;
            bool found = false;
            for (const auto& f : t.internal_edges)
                if (f.from == fi->second && f.to == ti->second && f.orbit == e.orbit) {
                    found = true;
                    break;
                }
            if (!found)
                return false;
        }
        return true;
    };

    std::function<void(std::size_t)> go = [&](std::size_t k) {
        if (k == n) {
            result.push_back(img);
            return;
        }
        const VertexId& v = ids[k];
        for (const auto& w : ids) {
            if (used.count(w))
                continue;
            if (t.vertex(v).degree != t.vertex(w).degree)
                continue;
            if (ext[v] != ext[w])
                continue;
            img[v] = w;
            used.insert(w);
            if (edges_compatible())
                go(k + 1);
            img.erase(v);
            used.erase(w);
        }
    };
    go(0);
    return result;
}

// Automorphisms of the source that fix the contraction: they permute the
// collapsed edge set and therefore descend to an automorphism of the target.
// For the identity contraction this is the full automorphism group.
inline std::vector<std::map<VertexId, VertexId>> relative_automorphisms(const Contraction& c)
{
    std::vector<std::map<VertexId, VertexId>> result;
    for (const auto& sigma : tree_automorphisms(c.source)) {
        bool ok = true;
        for (std::size_t i = 0; i < c.source.internal_edges.size() && ok; ++i) {
            const auto& e = c.source.internal_edges[i];
            // Locate the image edge.
            std::size_t j = c.source.internal_edges.size();
            for (std::size_t k = 0; k < c.source.internal_edges.size(); ++k) {
                const auto& f = c.source.internal_edges[k];
                if (f.from == sigma.at(e.from) && f.to == sigma.at(e.to) && f.orbit == e.orbit) {
                    j = k;
                    break;
                }
            }
            if (j == c.source.internal_edges.size() ||
                c.collapsed.count(i) != c.collapsed.count(j))
                ok = false;
        }
        if (ok)
            result.push_back(sigma);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Ghost join and the contraction poset

// Join a forest whose components each have exactly one incoming exterior edge
// into a single tree by a fresh degree-zero root. The root keeps one incoming
// exterior edge labeled gamma0 and gains one edge to each component's input
// vertex, labeled by that component's input orbit.
struct GhostJoin {
    DecoratedTree tree;
    VertexId ghost;
    std::vector<std::size_t> ghost_edges;  // indices of the new internal edges
};

inline GhostJoin ghost_join(const DecoratedForest& f, const ReebOrbit& gamma0)
{
    require(!f.components.empty(), "ghost_join: empty forest");
    std::set<VertexId> all_ids;
    for (const auto& comp : f.components)
        for (const auto& v : comp.vertices)
            require(all_ids.insert(v.id).second,
                    "ghost_join: vertex id '" + v.id + "' not unique across components");

    VertexId ghost = "ghost";
    while (all_ids.count(ghost))
        ghost += "#";

    GhostJoin out;
    out.ghost = ghost;
    out.tree.vertices.push_back({ghost, Rational(0)});
    out.tree.exterior_edges.push_back({ghost, Direction::In, gamma0.id});

    for (const auto& comp : f.components) {
        std::size_t input = comp.exterior_edges.size();
        std::size_t n_inputs = 0;
        for (std::size_t i = 0; i < comp.exterior_edges.size(); ++i)
            if (comp.exterior_edges[i].dir == Direction::In) {
                ++n_inputs;
                input = i;
            }
        require(n_inputs == 1, "ghost_join: every component needs exactly one incoming edge");

        for (const auto& v : comp.vertices)
            out.tree.vertices.push_back(v);
        for (const auto& e : comp.internal_edges)
            out.tree.internal_edges.push_back(e);
        for (std::size_t i = 0; i < comp.exterior_edges.size(); ++i)
            if (i != input)
                out.tree.exterior_edges.push_back(comp.exterior_edges[i]);
        out.ghost_edges.push_back(out.tree.internal_edges.size());
        out.tree.internal_edges.push_back(
            {ghost, comp.exterior_edges[input].vertex, comp.exterior_edges[input].orbit});
    }
    return out;
}

// Dimension of the stratum of a tree in the base space: the formula is affine
// in the number of interior edges, so every extra breaking drops it by one.
inline long long tree_dimension(const DecoratedTree& t, long long d)
{
    long long ext_in = static_cast<long long>(t.count_exterior(Direction::In));
    long long ext_out = static_cast<long long>(t.count_exterior(Direction::Out));
    return 2 * (d - 3) + 2 * (d + 1) * d + 3 * (ext_in + ext_out) -
           static_cast<long long>(t.internal_edges.size());
}

struct ContractionLabel {
    std::set<std::size_t> collapsed;
    DecoratedTree target;
};

// All contractions of t ordered by further contraction: one element per subset
// of internal edges, the corolla on top.
inline Poset<ContractionLabel> contraction_poset(const DecoratedTree& t)
{
    std::size_t n = t.internal_edges.size();
    require(n < 63, "contraction_poset: too many internal edges");
    Poset<ContractionLabel> poset;
    std::map<std::set<std::size_t>, std::size_t> index;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        std::set<std::size_t> subset;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::uint64_t(1) << i))
                subset.insert(i);
        index[subset] = poset.labels.size();
        poset.labels.push_back({subset, contract(t, subset).target});
    }
    for (const auto& [subset, idx] : index) {
        for (std::size_t i = 0; i < n; ++i) {
            if (subset.count(i))
                continue;
            auto bigger = subset;
            bigger.insert(i);
            poset.covers.emplace_back(idx, index[bigger]);
        }
    }
    return poset;
}

}  // namespace sftcomb
