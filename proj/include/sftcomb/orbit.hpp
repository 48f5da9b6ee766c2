#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sftcomb/arith.hpp"
#include "sftcomb/error.hpp"

namespace sftcomb {

enum class Parity { Even, Odd };

inline int parity_bit(Parity p) { return p == Parity::Odd ? 1 : 0; }

// A closed Reeb orbit as a record. Orbit identity is id equality; actions are
// never compared to decide identity. The parity is declared, not derived from
// the Conley-Zehnder index, since the relation between the two depends on
// trivialization conventions.
struct ReebOrbit {
    std::string id;
    Rational action;                        // action under the contact form, > 0
    std::optional<Rational> approx_action;  // action under an integral approximation
    long long multiplicity = 1;
    std::optional<long long> cz_index;
    Parity parity = Parity::Even;
    std::string simple_id;       // underlying simple orbit; equals id when simple
    bool odd_neg_eigenvalues = false;  // parity of |spec(A) ∩ (-1,0)| on the simple orbit

    bool operator==(const ReebOrbit&) const = default;
};

struct OrbitUniverse {
    std::map<std::string, ReebOrbit> orbits;
    Rational action_bound;  // L

    const ReebOrbit& get(const std::string& id) const
    {
        auto it = orbits.find(id);
        require(it != orbits.end(), "unknown orbit id '" + id + "'");
        return it->second;
    }

    bool contains(const std::string& id) const { return orbits.count(id) > 0; }

    void add(ReebOrbit orbit)
    {
        require(orbit.action > 0, "orbit '" + orbit.id + "': action must be positive");
        require(orbit.multiplicity >= 1, "orbit '" + orbit.id + "': multiplicity must be >= 1");
        if (orbit.simple_id.empty())
            orbit.simple_id = orbit.id;
        require(orbit.multiplicity != 1 || orbit.simple_id == orbit.id,
                "orbit '" + orbit.id + "': a multiplicity-1 orbit is its own simple orbit");
        if (orbit.approx_action)
            require(*orbit.approx_action > 0,
                    "orbit '" + orbit.id + "': approximate action must be positive");
        require(orbits.emplace(orbit.id, orbit).second, "duplicate orbit id '" + orbit.id + "'");
    }

    // Referential integrity of simple_id links and the action bound.
    void validate() const
    {
        for (const auto& [id, orbit] : orbits) {
            require(orbits.count(orbit.simple_id) > 0,
                    "orbit '" + id + "': simple orbit '" + orbit.simple_id + "' not in universe");
            require(orbit.action <= action_bound,
                    "orbit '" + id + "': action exceeds the bound L");
        }
    }
};

}  // namespace sftcomb
