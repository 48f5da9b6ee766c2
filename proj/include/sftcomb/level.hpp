#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sftcomb/tree.hpp"

namespace sftcomb {

struct LevelFunction {
    std::map<VertexId, long long> assignment;

    long long at(const VertexId& v) const
    {
        auto it = assignment.find(v);
        require(it != assignment.end(), "level function undefined at vertex '" + v + "'");
        return it->second;
    }

    long long max_level() const
    {
        long long m = 0;
        for (const auto& [v, l] : assignment)
            m = std::max(m, l);
        return m;
    }

    bool operator==(const LevelFunction&) const = default;
    auto operator<=>(const LevelFunction&) const = default;
};

struct LeveledTree {
    DecoratedTree tree;
    LevelFunction level;

    long long size() const { return level.max_level(); }
};

struct LevelReport {
    bool valid = false;
    std::vector<ValidationIssue> issues;
};

// The three axioms: level-1 vertices carry an incoming exterior edge, levels
// strictly increase along directed edges, and no level up to the maximum is
// empty (stability).
inline LevelReport validate_level(const DecoratedTree& t, const LevelFunction& l)
{
    LevelReport report;
    for (const auto& v : t.vertices)
        if (!l.assignment.count(v.id))
            report.issues.push_back({"vertex " + v.id, "no level assigned"});
    for (const auto& [v, lv] : l.assignment)
        if (!t.has_vertex(v))
            report.issues.push_back({"vertex " + v, "not a vertex of the tree"});
    if (!report.issues.empty())
        return report;

    for (const auto& [v, lv] : l.assignment) {
        if (lv < 1)
            report.issues.push_back({"vertex " + v, "level must be a positive integer"});
        else if (lv == 1 && !t.has_incoming_exterior(v))
            report.issues.push_back({"vertex " + v, "level 1 without an incoming exterior edge"});
    }
    for (const auto& e : t.internal_edges)
        if (l.at(e.to) < l.at(e.from) + 1)
            report.issues.push_back(
                {"edge " + e.from + "->" + e.to, "levels must increase along directed edges"});
    std::set<long long> occupied;
    for (const auto& [v, lv] : l.assignment)
        occupied.insert(lv);
    for (long long j = 1; j <= l.max_level(); ++j)
        if (!occupied.count(j))
            report.issues.push_back({"level " + std::to_string(j), "empty level below the maximum"});

    report.valid = report.issues.empty();
    return report;
}

// Level structures are defined for trees whose input vertices are exactly the
// vertices without incoming internal edges; an input below another vertex, or
// a branch with no input above it, leaves no admissible level function.
inline void require_level_admissible(const DecoratedTree& t)
{
    for (const auto& v : t.vertices) {
        bool in_ext = t.has_incoming_exterior(v.id);
        bool in_int = t.has_incoming_internal(v.id);
        require(!(in_ext && in_int),
                "no valid level function: vertex '" + v.id + "' lies above an input");
        require(in_ext || in_int,
                "no valid level function: no input above vertex '" + v.id + "'");
    }
}

// The unique pointwise-minimal level function: 1 on input vertices, and one
// more than the longest directed path from an input otherwise.
inline LevelFunction pre_level(const DecoratedTree& t)
{
    require_level_admissible(t);
    LevelFunction pl;
    std::function<long long(const VertexId&)> depth = [&](const VertexId& v) -> long long {
        auto it = pl.assignment.find(v);
        if (it != pl.assignment.end())
            return it->second;
        long long best = 1;
        for (const auto& e : t.internal_edges)
            if (e.to == v)
                best = std::max(best, depth(e.from) + 1);
        pl.assignment[v] = best;
        return best;
    };
    for (const auto& v : t.vertices)
        depth(v.id);
    return pl;
}

// Subdivide each edge with a level jump > 1 by the corresponding chain of
// trivial vertices; the result contracts back onto the original tree.
struct TrivialInsertion {
    DecoratedTree tree;
    LevelFunction level;
    std::vector<VertexId> inserted;
};

inline TrivialInsertion insert_trivial_vertices(const LeveledTree& lt)
{
    auto report = validate_level(lt.tree, lt.level);
    require(report.valid, "insert_trivial_vertices: invalid level function");

    TrivialInsertion out;
    out.level = lt.level;
    for (const auto& v : lt.tree.vertices)
        out.tree.vertices.push_back(v);
    for (const auto& e : lt.tree.exterior_edges)
        out.tree.exterior_edges.push_back(e);

    auto fresh = [&](const std::string& base) {
        std::string id = base;
        while (out.tree.has_vertex(id))
            id += "'";
        return id;
    };

    for (const auto& e : lt.tree.internal_edges) {
        long long gap = lt.level.at(e.to) - lt.level.at(e.from) - 1;
        VertexId prev = e.from;
        for (long long k = 1; k <= gap; ++k) {
            VertexId mid = fresh(e.from + "~" + e.to + "~" + std::to_string(k));
            out.tree.vertices.push_back({mid, Rational(0)});
            out.tree.internal_edges.push_back({prev, mid, e.orbit});
            out.level.assignment[mid] = lt.level.at(e.from) + k;
            out.inserted.push_back(mid);
            prev = mid;
        }
        out.tree.internal_edges.push_back({prev, e.to, e.orbit});
    }
    return out;
}

namespace detail {

// Enumerates all maximal (every level a singleton) stable level functions by
// filling levels top-down. At each step the next level's occupant must be a
// vertex whose constraint minimum equals that level, which both prunes and
// stays exhaustive.
inline void enumerate_levels_rec(const DecoratedTree& t, std::map<VertexId, long long>& fixed,
                                 long long next_level, std::vector<LevelFunction>& out)
{
    if (fixed.size() == t.vertices.size()) {
        out.push_back(LevelFunction{fixed});
        return;
    }
    std::vector<VertexId> candidates;
    for (const auto& v : t.vertices) {
        if (fixed.count(v.id))
            continue;
        // Minimum admissible level for v given the fixed prefix.
        long long lo = t.has_incoming_exterior(v.id) ? 1 : 2;
        bool ready = true;
        for (const auto& e : t.internal_edges) {
            if (e.to != v.id)
                continue;
            auto it = fixed.find(e.from);
            if (it == fixed.end()) {
                ready = false;  // some ancestor still unplaced, so min > next_level
                break;
            }
            lo = std::max(lo, it->second + 1);
        }
        if (ready && lo <= next_level)
            candidates.push_back(v.id);
    }
    for (const auto& v : candidates) {
        fixed[v] = next_level;
        enumerate_levels_rec(t, fixed, next_level + 1, out);
        fixed.erase(v);
    }
}

}  // namespace detail

struct MaximalLevels {
    std::vector<LevelFunction> levels;
    long long count() const { return static_cast<long long>(levels.size()); }
};

// All maximally leveled structures on t, in lexicographic order of the
// vertex-id-sorted level vector. The count N_T depends only on the underlying
// directed tree with its input set.
inline MaximalLevels enumerate_maximal_levels(const DecoratedTree& t)
{
    require_level_admissible(t);
    MaximalLevels out;
    std::map<VertexId, long long> fixed;
    detail::enumerate_levels_rec(t, fixed, 1, out.levels);
    std::sort(out.levels.begin(), out.levels.end());
    return out;
}

}  // namespace sftcomb
