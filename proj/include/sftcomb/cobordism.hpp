#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sftcomb/level.hpp"
#include "sftcomb/tree.hpp"

namespace sftcomb {

// Star labels: 0 is the positive end throughout, so (0,0) marks a
// symplectization vertex of Y+, (0,1) a cobordism vertex and (1,1) a
// symplectization vertex of Y-.
struct CobordismTree {
    DecoratedTree tree;
    std::map<std::size_t, int> edge_star;  // internal edge index -> {0,1}
    std::map<VertexId, int> vstar_plus;
    std::map<VertexId, int> vstar_minus;

    int star_plus(const VertexId& v) const
    {
        auto it = vstar_plus.find(v);
        require(it != vstar_plus.end(), "missing *+ label at vertex '" + v + "'");
        return it->second;
    }

    int star_minus(const VertexId& v) const
    {
        auto it = vstar_minus.find(v);
        require(it != vstar_minus.end(), "missing *- label at vertex '" + v + "'");
        return it->second;
    }

    bool is_symplectization_vertex(const VertexId& v) const
    {
        return star_plus(v) == star_minus(v);
    }

    std::vector<VertexId> vertices_with_stars(int plus, int minus) const
    {
        std::vector<VertexId> out;
        for (const auto& v : tree.vertices)
            if (star_plus(v.id) == plus && star_minus(v.id) == minus)
                out.push_back(v.id);
        return out;
    }
};

struct CobordismReport {
    bool structure_ok = false;
    std::vector<ValidationIssue> issues;
    bool stable = false;

    bool valid() const { return structure_ok; }
};

inline CobordismReport validate_cobordism_tree(const CobordismTree& c, const OrbitUniverse& universe)
{
    CobordismReport report;
    auto issue = [&](const std::string& where, const std::string& what) {
        report.issues.push_back({where, what});
    };

    auto tree_report = validate_tree(c.tree, universe);
    for (const auto& i : tree_report.issues)
        report.issues.push_back(i);
    if (!tree_report.valid())
        return report;

    for (const auto& v : c.tree.vertices) {
        if (!c.vstar_plus.count(v.id) || !c.vstar_minus.count(v.id)) {
            issue("vertex " + v.id, "missing star labels");
            continue;
        }
        int p = c.vstar_plus.at(v.id), m = c.vstar_minus.at(v.id);
        if ((p != 0 && p != 1) || (m != 0 && m != 1))
            issue("vertex " + v.id, "star labels must be 0 or 1");
        else if (p > m)
            issue("vertex " + v.id, "*+ must not exceed *-");
    }
    for (std::size_t i = 0; i < c.tree.internal_edges.size(); ++i) {
        if (!c.edge_star.count(i))
            issue("edge #" + std::to_string(i), "missing star label");
        else if (c.edge_star.at(i) != 0 && c.edge_star.at(i) != 1)
            issue("edge #" + std::to_string(i), "star label must be 0 or 1");
    }
    if (!report.issues.empty())
        return report;

    // Exterior edges: positive ones carry star 0 and force *+ = 0 at their
    // vertex, negative ones carry star 1 and force *- = 1.
    for (const auto& e : c.tree.exterior_edges) {
        if (e.dir == Direction::In && c.vstar_plus.at(e.vertex) != 0)
            issue("exterior edge at " + e.vertex, "positive exterior edge at a vertex with *+ = 1");
        if (e.dir == Direction::Out && c.vstar_minus.at(e.vertex) != 1)
            issue("exterior edge at " + e.vertex, "negative exterior edge at a vertex with *- = 0");
    }
    if (!report.issues.empty())
        return report;

    report.structure_ok = true;
    bool stable = true;
    for (const auto& v : c.tree.vertices)
        if (c.is_symplectization_vertex(v.id) && is_trivial_vertex(c.tree, v.id)) {
            issue("vertex " + v.id, "trivial symplectization vertex (unstable)");
            stable = false;
        }
    report.stable = stable;
    return report;
}

// A leveled cobordism tree singles out the cobordism level c: that level holds
// exactly the (0,1) vertices, everything above is (0,0) and everything below
// is (1,1).
struct LeveledCobordismTree {
    CobordismTree cob;
    LevelFunction level;
    long long cob_level = 0;

    bool operator==(const LeveledCobordismTree& o) const
    {
        return level == o.level && cob_level == o.cob_level;
    }
    auto operator<=>(const LeveledCobordismTree& o) const
    {
        if (auto c = level <=> o.level; c != 0)
            return c;
        return cob_level <=> o.cob_level;
    }
};

inline bool leveled_cobordism_axioms_hold(const CobordismTree& c, const LevelFunction& l,
                                          long long cob_level)
{
    if (cob_level < 1)
        return false;
    if (!validate_level(c.tree, l).valid)
        return false;
    for (const auto& v : c.tree.vertices) {
        int p = c.star_plus(v.id), m = c.star_minus(v.id);
        long long lv = l.at(v.id);
        bool is00 = (p == 0 && m == 0), is01 = (p == 0 && m == 1), is11 = (p == 1 && m == 1);
        if (is01 != (lv == cob_level))
            return false;
        if (is00 != (lv < cob_level))
            return false;
        if (is11 != (lv > cob_level))
            return false;
    }
    return true;
}

struct MaximalCobordismLevels {
    std::vector<LeveledCobordismTree> levels;
    std::string note;  // set when the list is empty for a structural reason
    long long count() const { return static_cast<long long>(levels.size()); }
};

namespace detail {

// Fill levels top-down as for plain trees, except that the whole block of
// (0,1) vertices must be placed at one level, all (0,0) vertices before it and
// all (1,1) vertices after it.
inline void enumerate_cob_levels_rec(const CobordismTree& c, std::map<VertexId, long long>& fixed,
                                     long long next_level, bool cob_placed, long long cob_level,
                                     std::vector<LeveledCobordismTree>& out)
{
    const auto& t = c.tree;
    if (fixed.size() == t.vertices.size()) {
        long long effective_c = cob_placed ? cob_level : next_level;
        LevelFunction l{fixed};
        if (leveled_cobordism_axioms_hold(c, l, effective_c))
            out.push_back({c, l, effective_c});
        return;
    }

    auto min_level_if_ready = [&](const VertexId& v) -> std::optional<long long> {
        long long lo = t.has_incoming_exterior(v) ? 1 : 2;
        for (const auto& e : t.internal_edges) {
            if (e.to != v)
                continue;
            auto it = fixed.find(e.from);
            if (it == fixed.end())
                return std::nullopt;
            lo = std::max(lo, it->second + 1);
        }
        return lo;
    };

    if (!cob_placed) {
        // Either the next level gets a single unplaced (0,0) vertex, or it
        // becomes the cobordism level and takes every (0,1) vertex at once.
        for (const auto& v : c.vertices_with_stars(0, 0)) {
            if (fixed.count(v))
                continue;
            auto lo = min_level_if_ready(v);
            if (lo && *lo <= next_level) {
                fixed[v] = next_level;
                enumerate_cob_levels_rec(c, fixed, next_level + 1, false, 0, out);
                fixed.erase(v);
            }
        }
        auto block = c.vertices_with_stars(0, 1);
        bool all00placed = true;
        for (const auto& v : c.vertices_with_stars(0, 0))
            if (!fixed.count(v))
                all00placed = false;
        if (all00placed) {
            bool block_ok = true;
            for (const auto& v : block) {
                auto lo = min_level_if_ready(v);
                if (!lo || *lo > next_level) {
                    block_ok = false;
                    break;
                }
            }
            if (block_ok) {
                for (const auto& v : block)
                    fixed[v] = next_level;
                enumerate_cob_levels_rec(c, fixed, next_level + 1, true, next_level, out);
                for (const auto& v : block)
                    fixed.erase(v);
            }
        }
    } else {
        for (const auto& v : c.vertices_with_stars(1, 1)) {
            if (fixed.count(v))
                continue;
            auto lo = min_level_if_ready(v);
            if (lo && *lo <= next_level) {
                fixed[v] = next_level;
                enumerate_cob_levels_rec(c, fixed, next_level + 1, true, cob_level, out);
                fixed.erase(v);
            }
        }
    }
}

}  // namespace detail

// All maximally leveled structures: every level a singleton except possibly
// the cobordism level. Trees whose star labels admit no such structure (for
// example a (1,1) vertex with no (0,1) vertex anywhere) yield an empty list
// with a note.
inline MaximalCobordismLevels enumerate_maximal_levels_cob(const CobordismTree& c)
{
    MaximalCobordismLevels out;
    try {
        require_level_admissible(c.tree);
    } catch (const Error& e) {
        out.note = e.what();
        return out;
    }
    auto c01 = c.vertices_with_stars(0, 1);
    auto c11 = c.vertices_with_stars(1, 1);
    if (c01.empty() && !c11.empty()) {
        out.note = "no admissible level function: (1,1) vertices require a cobordism level below "
                   "the top, but there are no (0,1) vertices";
        return out;
    }
    std::map<VertexId, long long> fixed;
    if (c01.empty()) {
        // Pure Y+ symplectization tree: plain enumeration, c = max + 1.
        auto plain = enumerate_maximal_levels(c.tree);
        for (const auto& l : plain.levels)
            out.levels.push_back({c, l, l.max_level() + 1});
    } else {
        detail::enumerate_cob_levels_rec(c, fixed, 1, false, 0, out.levels);
    }
    std::sort(out.levels.begin(), out.levels.end());
    if (out.levels.empty() && out.note.empty())
        out.note = "no admissible level function for the given star labels";
    return out;
}

// ---------------------------------------------------------------------------
// Star label inference from framing degrees (the divisibility rules of the
// cobordism base space)

struct StarLabels {
    std::map<VertexId, int> vstar_plus;
    std::map<VertexId, int> vstar_minus;
};

inline StarLabels infer_star_labels(const DecoratedTree& t,
                                    const std::map<VertexId, long long>& framing_degrees,
                                    const std::map<VertexId, long long>& omega_degrees,
                                    const std::map<std::size_t, long long>& node_orders,
                                    const Int& p_plus, const Int& p_minus)
{
    require(p_plus != p_minus && is_prime(p_plus) && is_prime(p_minus),
            "infer_star_labels: p+ and p- must be distinct primes");

    StarLabels out;
    for (const auto& v : t.vertices) {
        require(framing_degrees.count(v.id), "missing framing degree at vertex '" + v.id + "'");
        require(omega_degrees.count(v.id), "missing omega degree at vertex '" + v.id + "'");
        Int diff = Int(framing_degrees.at(v.id)) - Int(omega_degrees.at(v.id));

        auto classify = [&](const Int& value) -> std::optional<std::pair<int, int>> {
            bool by_plus = value % p_plus == 0;
            bool by_minus = value % p_minus == 0;
            require(!(by_plus && by_minus),
                    "infer_star_labels: both primes divide the degree at vertex '" + v.id +
                        "'; the primes were chosen badly for this universe");
            if (by_plus)
                return std::make_pair(0, 0);
            if (by_minus)
                return std::make_pair(1, 1);
            return std::nullopt;
        };

        std::optional<std::pair<int, int>> stars;
        if (diff != 0) {
            stars = classify(diff);
            if (!stars)
                stars = std::make_pair(0, 1);  // neither prime divides: cobordism vertex
        } else {
            // Zero degree difference: decide by the order of a type-1 node on
            // this component.
            for (std::size_t i = 0; i < t.internal_edges.size() && !stars; ++i) {
                const auto& e = t.internal_edges[i];
                if (e.from != v.id && e.to != v.id)
                    continue;
                auto it = node_orders.find(i);
                if (it == node_orders.end() || it->second == 0)
                    continue;  // type-0 node carries no information
                stars = classify(Int(it->second));
            }
            require(stars.has_value(),
                    "infer_star_labels: zero degree difference at vertex '" + v.id +
                        "' and no decisive type-1 node order");
        }
        out.vstar_plus[v.id] = stars->first;
        out.vstar_minus[v.id] = stars->second;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gluing parameter constraints

// Values in (0, inf]; absent value means infinity (no gluing).
struct GluingValue {
    std::optional<Rational> finite;  // nullopt = infinity

    static GluingValue infinity() { return {}; }
    static GluingValue of(Rational r) { return {std::move(r)}; }
    bool is_finite() const { return finite.has_value(); }
};

inline GluingValue operator+(const GluingValue& a, const GluingValue& b)
{
    if (!a.is_finite() || !b.is_finite())
        return GluingValue::infinity();
    return GluingValue::of(*a.finite + *b.finite);
}

inline bool operator==(const GluingValue& a, const GluingValue& b)
{
    if (a.is_finite() != b.is_finite())
        return false;
    return !a.is_finite() || *a.finite == *b.finite;
}

struct GluingEquation {
    VertexId vertex;                       // a (0,0) vertex v
    std::size_t edge;                      // edge e = (v, v')
    std::optional<VertexId> lower_vertex;  // v' when v' is itself a (0,0) vertex
};

// One variable per internal edge and per (0,0) vertex; one equation
// g_v = g_e + g_{v'} per edge out of a (0,0) vertex, reading g_{v'} as 0 when
// v' is not a (0,0) vertex.
struct GluingConstraintSystem {
    std::vector<std::size_t> edge_variables;
    std::vector<VertexId> vertex_variables;
    std::vector<GluingEquation> equations;
};

inline GluingConstraintSystem gluing_constraints(const CobordismTree& c)
{
    GluingConstraintSystem sys;
    for (std::size_t i = 0; i < c.tree.internal_edges.size(); ++i)
        sys.edge_variables.push_back(i);
    std::set<VertexId> zz;
    for (const auto& v : c.vertices_with_stars(0, 0)) {
        sys.vertex_variables.push_back(v);
        zz.insert(v);
    }
    for (std::size_t i = 0; i < c.tree.internal_edges.size(); ++i) {
        const auto& e = c.tree.internal_edges[i];
        if (!zz.count(e.from))
            continue;
        GluingEquation eq;
        eq.vertex = e.from;
        eq.edge = i;
        if (zz.count(e.to))
            eq.lower_vertex = e.to;
        sys.equations.push_back(eq);
    }
    return sys;
}

// Back-substitute the vertex variables from an assignment of the edge
// variables, from the leaves upward. A vertex with several outgoing edges is
// over-determined; disagreement reports inconsistency.
struct GluingSolution {
    bool consistent = false;
    std::string conflict;
    std::map<std::size_t, GluingValue> edges;
    std::map<VertexId, GluingValue> vertices;
};

inline GluingSolution solve_gluing(const CobordismTree& c, const GluingConstraintSystem& sys,
                                   const std::map<std::size_t, GluingValue>& edge_assignment)
{
    GluingSolution sol;
    for (auto i : sys.edge_variables) {
        auto it = edge_assignment.find(i);
        sol.edges[i] = (it == edge_assignment.end()) ? GluingValue::infinity() : it->second;
    }

    std::function<bool(const VertexId&)> eval = [&](const VertexId& v) -> bool {
        if (sol.vertices.count(v))
            return true;
        std::optional<GluingValue> value;
        for (const auto& eq : sys.equations) {
            if (eq.vertex != v)
                continue;
            GluingValue below = GluingValue::of(Rational(0));
            if (eq.lower_vertex) {
                if (!eval(*eq.lower_vertex))
                    return false;
                below = sol.vertices.at(*eq.lower_vertex);
            }
            GluingValue candidate = sol.edges.at(eq.edge) + below;
            if (!value) {
                value = candidate;
            } else if (!(*value == candidate)) {
                sol.conflict = "vertex '" + v + "': outgoing edges give conflicting values";
                return false;
            }
        }
        require(value.has_value(), "gluing system: (0,0) vertex '" + v + "' has no outgoing edge");
        sol.vertices[v] = *value;
        return true;
    };
    for (const auto& v : sys.vertex_variables)
        if (!eval(v)) {
            sol.consistent = false;
            return sol;
        }
    sol.consistent = true;
    return sol;
}

// The stratification map: finite edge parameters contract their edges, finite
// vertex parameters flip the vertex from (0,0) to (0,1). Merged vertices take
// the componentwise extremes of their fiber's star labels.
struct GluingStratum {
    std::set<std::size_t> contracted_edges;
    std::set<VertexId> flipped_vertices;
    CobordismTree target;
    Contraction contraction;
};

inline GluingStratum stratify_gluing(const CobordismTree& c, const GluingSolution& sol)
{
    require(sol.consistent, "stratify_gluing: inconsistent gluing assignment");
    GluingStratum out;
    for (const auto& [i, g] : sol.edges)
        if (g.is_finite())
            out.contracted_edges.insert(i);
    for (const auto& [v, g] : sol.vertices)
        if (g.is_finite())
            out.flipped_vertices.insert(v);

    std::map<VertexId, int> plus = c.vstar_plus, minus = c.vstar_minus;
    for (const auto& v : out.flipped_vertices)
        minus[v] = 1;

    out.contraction = contract(c.tree, out.contracted_edges);
    out.target.tree = out.contraction.target;
    for (const auto& v : c.tree.vertices) {
        VertexId w = out.contraction.vertex_map.at(v.id);
        auto itp = out.target.vstar_plus.find(w);
        if (itp == out.target.vstar_plus.end()) {
            out.target.vstar_plus[w] = plus[v.id];
            out.target.vstar_minus[w] = minus[v.id];
        } else {
            itp->second = std::min(itp->second, plus[v.id]);
            out.target.vstar_minus[w] = std::max(out.target.vstar_minus[w], minus[v.id]);
        }
    }
    for (const auto& [src, dst] : out.contraction.edge_map) {
        auto it = c.edge_star.find(src);
        if (it != c.edge_star.end())
            out.target.edge_star[dst] = it->second;
    }
    return out;
}

}  // namespace sftcomb
