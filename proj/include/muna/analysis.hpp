#pragma once

// Symbolic decision procedures over presentations: backwards eternality,
// the residual finiteness / subalgebra separability / complete separability
// criteria, component classes, the direct-product rules and varieties.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "muna/presentation.hpp"

namespace muna {

enum class Property { RF, SS, CS };

enum class Rule {
    /// No target has two backwards-eternal preimages.
    CriterionSatisfied,
    TwoEternalPreimages,
    /// Every backwards-eternal element lies on a cycle.
    EternalOnlyOnCycles,
    BiEternal,
    NotResiduallyFinite,
    /// Every element has a bound on first-arrival path lengths.
    BoundedFirstArrival,
    UnboundedFirstArrival,
};

struct FailurePair {
    Element first;
    Element second;
    bool operator==(const FailurePair&) const = default;
};

struct FailureNode {
    Element node;
    bool operator==(const FailureNode&) const = default;
};

using Witness = std::variant<FailurePair, FailureNode>;

struct Verdict {
    Property property = Property::RF;
    bool holds = true;
    std::optional<Witness> witness;
    Rule reason = Rule::CriterionSatisfied;
};

std::string_view to_string(Property p) noexcept;
std::string_view to_string(Rule r) noexcept;

/// f^-n(x) non-empty for every n. Skeleton nodes are eternal iff they are on
/// a cycle, carry a ray or fan, or have an eternal skeleton predecessor.
bool backwards_eternal(const Presentation& p, Index x);
bool backwards_eternal(const Presentation& p, const Element& e);
std::vector<bool> backwards_eternal_nodes(const Presentation& p);

/// Largest n with f^-n(e) non-empty; nullopt when unbounded.
std::optional<std::uint64_t> backward_height(const Presentation& p, const Element& e);
/// Largest n with B_n(x) non-empty for a skeleton node; nullopt when unbounded.
std::optional<std::uint64_t> first_arrival_bound(const Presentation& p, Index x);

struct ComponentClass {
    enum class Kind { HasCycle, BiEternal, BackwardsBounded };
    Kind kind = Kind::BackwardsBounded;
    std::size_t cycle_length = 0;  // HasCycle only
    bool operator==(const ComponentClass&) const = default;
};

std::string to_string(const ComponentClass& c);

ComponentClass classify(const Presentation& p, std::size_t component);
bool is_backwards_bounded(const Presentation& p);
bool is_bi_eternal(const Presentation& p);

Verdict is_rf(const Presentation& p);
Verdict is_ss(const Presentation& p);
Verdict is_cs(const Presentation& p);

// A product has the property iff both factors do or either is backwards-bounded.
bool rf_product(const Presentation& a, const Presentation& b);
bool ss_product(const Presentation& a, const Presentation& b);
bool cs_product(const Presentation& a, const Presentation& b);
/// Arbitrary products: every factor RF, or some factor backwards-bounded.
bool rf_product_n(std::span<const Presentation> factors);

struct Variety {
    enum class Kind { V0, Vk, Vkd, VAll };
    Kind kind = Kind::VAll;
    std::uint64_t k = 0;
    std::uint64_t d = 0;
    bool operator==(const Variety&) const = default;
};

/// `V0`, `V_k`, `V_{k,d}` or `ALL`.
std::string to_string(const Variety& v);

/// Smallest variety in the lattice V0 < V_k < V_{k,d} < ALL containing p.
Variety classify_variety(const Presentation& p);

}  // namespace muna
