#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "qdp/graph.hpp"
#include "qdp/rational.hpp"

namespace qdp {

// Integer-valued divisor on the vertices of some carrier graph.  Which
// graph carries it is contextual; operations that need the carrier take it
// explicitly.  Missing keys read as 0.
class Divisor {
public:
    Divisor() = default;
    explicit Divisor(std::map<std::string, int> values) : values_(std::move(values)) {}

    int value(const std::string& v) const {
        auto it = values_.find(v);
        return it == values_.end() ? 0 : it->second;
    }
    void set(const std::string& v, int k) { values_[v] = k; }
    void add(const std::string& v, int k) { values_[v] += k; }
    void erase(const std::string& v) { values_.erase(v); }

    int degree() const {
        int d = 0;
        for (const auto& [id, k] : values_) d += k;
        return d;
    }
    int sum_over(const std::vector<std::string>& V) const {
        int d = 0;
        for (const auto& v : V) d += value(v);
        return d;
    }
    const std::map<std::string, int>& values() const { return values_; }

    friend bool operator==(const Divisor&, const Divisor&) = default;
    friend auto operator<=>(const Divisor& a, const Divisor& b) {
        return a.values_ <=> b.values_;
    }

private:
    std::map<std::string, int> values_;
};

// Rational polarization on the vertices; missing keys read as 0.
struct Polarization {
    std::map<std::string, Rat> values;

    Rat value(const std::string& v) const {
        auto it = values.find(v);
        return it == values.end() ? Rat(0) : it->second;
    }
    Rat degree() const {
        Rat d(0);
        for (const auto& [id, r] : values) d += r;
        return d;
    }
    Rat sum_over(const std::vector<std::string>& V) const {
        Rat d(0);
        for (const auto& v : V) d += value(v);
        return d;
    }
    friend bool operator==(const Polarization&, const Polarization&) = default;
};

// Pseudo-divisor (E, D): a set E of edges of Γ together with a divisor on
// the subdivision Γ^E whose value on every exceptional vertex v@e is 1.
// The divisor keys every vertex of Γ^E explicitly (zeros included), which
// makes comparison and serialization total and deterministic.
struct PseudoDivisor {
    std::vector<std::string> edges;  // sorted, no duplicates
    Divisor divisor;

    PseudoDivisor() = default;
    PseudoDivisor(std::vector<std::string> edges_, Divisor divisor_);

    friend bool operator==(const PseudoDivisor&, const PseudoDivisor&) = default;
    friend bool operator<(const PseudoDivisor& a, const PseudoDivisor& b) {
        if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
        if (a.edges != b.edges) return a.edges < b.edges;
        return a.divisor < b.divisor;
    }
};

// Checks that pd is well-formed over g: edges exist, divisor keys are
// exactly V(Γ^E), and every exceptional value is 1.  Throws
// std::invalid_argument otherwise.
void validate_pseudo_divisor(const Graph& g, const PseudoDivisor& pd);

// beta(V) = D(V) - mu(V) + |E(V, V^c)| / 2 on the carrier graph.
Rat beta(const Graph& carrier, const Divisor& D, const Polarization& mu,
         const std::vector<std::string>& V);

// Canonical polarization: mu(v) = w(v) + loops(v) - 1 + (nonloop valence)/2.
// Its degree is g - 1, and on connected subgraph vertex sets it evaluates
// to g_V - 1 + delta_V / 2.
Polarization canonical_polarization(const Graph& g);

struct InducedPolarizations {
    Polarization up;    // on Γ^{E0}: original values, 0 on exceptional vertices
    Polarization down;  // on Γ_{E0}: mu(v) - val_{E0}(v)/2 (loops count twice)
};

InducedPolarizations induced_polarizations(const Graph& g, const Polarization& mu,
                                           const std::vector<std::string>& E0);

// (v0, mu)-quasistability of a pseudo-divisor: deg D = deg mu and beta >= 0
// on every hemisphere of Γ^E, strictly when v0 is not in it.  (Checking
// hemispheres only is equivalent to checking all subsets; the test suite
// verifies that equivalence against a brute-force oracle.)
bool is_quasistable(const Graph& g, const std::string& v0, const Polarization& mu,
                    const PseudoDivisor& pd);

// One elementary specialization: the exceptional vertex of `edge` is pushed
// into the end vertex `to`.
struct Specialization {
    std::string edge;
    std::string to_vertex;
    PseudoDivisor target;
};

// All elementary specializations of (E, D): two per non-loop edge of E
// (end 0 first), one per loop.  Ordered by (edge id, end).
std::vector<Specialization> elementary_specializations(const Graph& g, const PseudoDivisor& pd);

// Pushforward of a pseudo-divisor along a specialization map whose
// contracted edges avoid E: vertex values add up over fibers, exceptional
// values ride along.  Throws std::invalid_argument when E meets the
// contracted set.
PseudoDivisor pushforward(const SpecializationMap& m, const PseudoDivisor& pd);

// Pushforward of a polarization: mu'(v') = sum of mu over the fiber.
Polarization pushforward(const SpecializationMap& m, const Polarization& mu);

// Pushforward that also checks quasistability is preserved (it always is;
// a violation raises FalsifierError with the instance).
PseudoDivisor pushforward_checked(const SpecializationMap& m, const std::string& v0,
                                  const Polarization& mu, const PseudoDivisor& pd);

// Equivalence of pseudo-divisors on the same graph: equal values on V(Γ)
// and edge sets that differ by swapping members of special pairs.
bool equivalent_pseudo_divisors(const Graph& g, const PseudoDivisor& a, const PseudoDivisor& b);

}  // namespace qdp
