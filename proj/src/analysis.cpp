#include "muna/analysis.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

#include "muna/error.hpp"

namespace muna {

std::string_view to_string(Property p) noexcept {
    switch (p) {
        case Property::RF: return "RF";
        case Property::SS: return "SS";
        case Property::CS: return "CS";
    }
    return "?";
}

std::string_view to_string(Rule r) noexcept {
    switch (r) {
        case Rule::CriterionSatisfied: return "criterion-satisfied";
        case Rule::TwoEternalPreimages: return "two-eternal-preimages";
        case Rule::EternalOnlyOnCycles: return "eternal-only-on-cycles";
        case Rule::BiEternal: return "bi-eternal";
        case Rule::NotResiduallyFinite: return "not-residually-finite";
        case Rule::BoundedFirstArrival: return "bounded-first-arrival";
        case Rule::UnboundedFirstArrival: return "unbounded-first-arrival";
    }
    return "?";
}

std::string to_string(const ComponentClass& c) {
    switch (c.kind) {
        case ComponentClass::Kind::HasCycle: return "HasCycle(" + std::to_string(c.cycle_length) + ")";
        case ComponentClass::Kind::BiEternal: return "BiEternal";
        case ComponentClass::Kind::BackwardsBounded: return "BackwardsBounded";
    }
    return "?";
}

std::string to_string(const Variety& v) {
    switch (v.kind) {
        case Variety::Kind::V0: return "V0";
        case Variety::Kind::Vk: return "V_" + std::to_string(v.k);
        case Variety::Kind::Vkd: return "V_{" + std::to_string(v.k) + "," + std::to_string(v.d) + "}";
        case Variety::Kind::VAll: return "ALL";
    }
    return "?";
}

// ---------------------------------------------------------------- eternality

std::vector<bool> backwards_eternal_nodes(const Presentation& p) {
    const std::size_t n = p.skeleton_size();
    std::vector<bool> eternal(n, false);
    // Eternality flows forward: f^-n(x) shifted by one step lies in f^-(n+1)(f(x)).
    for (Index s = 0; s < n; ++s) {
        if (!(p.on_cycle(s) || p.rays(s) > 0 || p.has_fan(s))) continue;
        std::optional<Index> x = s;
        while (x && !eternal[*x]) {
            eternal[*x] = true;
            x = p.succ(*x);
        }
    }
    return eternal;
}

bool backwards_eternal(const Presentation& p, Index x) {
    if (x >= p.skeleton_size()) throw Error(ErrorKind::OutOfRange, "node " + std::to_string(x) + " not in skeleton");
    return backwards_eternal_nodes(p)[x];
}

bool backwards_eternal(const Presentation& p, const Element& e) {
    if (!p.contains(e)) throw Error(ErrorKind::OutOfRange, "element " + format_element(e) + " not in algebra");
    switch (e.kind) {
        case ElementKind::Skeleton:
        case ElementKind::Forward: return backwards_eternal(p, e.node);
        case ElementKind::Ray: return true;
        case ElementKind::Fan: return false;
    }
    return false;
}

namespace {

/// Skeleton heights; nullopt for eternal nodes. Non-eternal back-cones are
/// finite annotation-free trees, so a leaves-first sweep covers them.
std::vector<std::optional<std::uint64_t>> skeleton_heights(const Presentation& p) {
    const std::size_t n = p.skeleton_size();
    const auto eternal = backwards_eternal_nodes(p);
    std::vector<std::optional<std::uint64_t>> height(n);
    std::vector<std::size_t> pending(n, 0);
    std::vector<Index> ready;
    for (Index x = 0; x < n; ++x) {
        if (eternal[x]) continue;
        pending[x] = p.skeleton_predecessors(x).size();
        height[x] = 0;
        if (pending[x] == 0) ready.push_back(x);
    }
    while (!ready.empty()) {
        Index x = ready.back();
        ready.pop_back();
        if (auto s = p.succ(x); s && !eternal[*s]) {
            height[*s] = std::max(*height[*s], *height[x] + 1);
            if (--pending[*s] == 0) ready.push_back(*s);
        }
    }
    return height;
}

bool component_annotated(const Presentation& p, std::size_t c) {
    const auto& nodes = p.component_nodes(c);
    return std::any_of(nodes.begin(), nodes.end(), [&](Index x) { return p.rays(x) > 0 || p.has_fan(x); });
}

}  // namespace

std::optional<std::uint64_t> backward_height(const Presentation& p, const Element& e) {
    if (!p.contains(e)) throw Error(ErrorKind::OutOfRange, "element " + format_element(e) + " not in algebra");
    switch (e.kind) {
        case ElementKind::Skeleton: return skeleton_heights(p)[e.node];
        case ElementKind::Ray: return std::nullopt;
        case ElementKind::Fan: return e.family - e.depth;
        case ElementKind::Forward: {
            auto h = skeleton_heights(p)[e.node];
            if (!h) return std::nullopt;
            return *h + e.depth;
        }
    }
    return std::nullopt;
}

std::optional<std::uint64_t> first_arrival_bound(const Presentation& p, Index x) {
    if (x >= p.skeleton_size()) throw Error(ErrorKind::OutOfRange, "node " + std::to_string(x) + " not in skeleton");
    if (!p.on_cycle(x)) return skeleton_heights(p)[x];
    const std::size_t c = p.component(x);
    if (component_annotated(p, c)) return std::nullopt;
    // Every node of the component reaches x; first arrival = tail + cyclic offset.
    const auto& cyc = p.cycle_nodes(c);
    const std::size_t k = cyc.size();
    const std::size_t target = static_cast<std::size_t>(std::find(cyc.begin(), cyc.end(), x) - cyc.begin());
    std::uint64_t best = 0;
    for (Index y : p.component_nodes(c)) {
        const std::size_t tail = p.distance_to_terminal(y);
        Index entry = y;
        for (std::size_t i = 0; i < tail; ++i) entry = *p.succ(entry);
        const std::size_t at = static_cast<std::size_t>(std::find(cyc.begin(), cyc.end(), entry) - cyc.begin());
        best = std::max<std::uint64_t>(best, tail + (target + k - at) % k);
    }
    return best;
}

// ---------------------------------------------------------------- classes

ComponentClass classify(const Presentation& p, std::size_t component) {
    const TerminalKind t = p.terminal_kind(component);
    if (const auto* c = std::get_if<CycleTerminal>(&t)) return {ComponentClass::Kind::HasCycle, c->length};
    const auto eternal = backwards_eternal_nodes(p);
    const auto& nodes = p.component_nodes(component);
    // Ray and fan sites make their anchors eternal, so skeleton nodes decide.
    if (std::any_of(nodes.begin(), nodes.end(), [&](Index x) { return eternal[x]; })) {
        return {ComponentClass::Kind::BiEternal, 0};
    }
    return {ComponentClass::Kind::BackwardsBounded, 0};
}

bool is_backwards_bounded(const Presentation& p) {
    for (std::size_t c = 0; c < p.component_count(); ++c) {
        if (classify(p, c).kind != ComponentClass::Kind::BackwardsBounded) return false;
    }
    return true;
}

bool is_bi_eternal(const Presentation& p) {
    for (std::size_t c = 0; c < p.component_count(); ++c) {
        if (classify(p, c).kind == ComponentClass::Kind::BiEternal) return true;
    }
    return false;
}

// ---------------------------------------------------------------- criteria

Verdict is_rf(const Presentation& p) {
    const auto eternal = backwards_eternal_nodes(p);
    std::optional<FailurePair> best;
    for (Index v = 0; v < p.skeleton_size(); ++v) {
        std::vector<Element> eternal_preds;
        for (Index u : p.skeleton_predecessors(v)) {
            if (eternal[u]) eternal_preds.push_back(Element::skeleton(u));
        }
        for (std::size_t r = 0; r < p.rays(v) && eternal_preds.size() < 2; ++r) {
            eternal_preds.push_back(Element::ray(v, r, 1));
        }
        // Fan lines are finite and ray interiors have a single predecessor.
        if (eternal_preds.size() < 2) continue;
        FailurePair candidate{eternal_preds[0], eternal_preds[1]};
        if (!best || std::tie(candidate.first, candidate.second) < std::tie(best->first, best->second)) {
            best = candidate;
        }
    }
    if (best) return {Property::RF, false, Witness{*best}, Rule::TwoEternalPreimages};
    return {Property::RF, true, std::nullopt, Rule::CriterionSatisfied};
}

Verdict is_ss(const Presentation& p) {
    const auto eternal = backwards_eternal_nodes(p);
    std::optional<Element> offender;
    for (Index x = 0; x < p.skeleton_size() && !offender; ++x) {
        if (eternal[x] && !p.on_cycle(x)) offender = Element::skeleton(x);
    }
    for (Index x = 0; x < p.skeleton_size() && !offender; ++x) {
        if (p.rays(x) > 0) offender = Element::ray(x, 0, 1);
    }
    if (!offender) return {Property::SS, true, std::nullopt, Rule::EternalOnlyOnCycles};
    const bool cyclic = std::holds_alternative<CycleTerminal>(p.terminal_kind(p.component(offender->node)));
    return {Property::SS, false, Witness{FailureNode{*offender}}, cyclic ? Rule::NotResiduallyFinite : Rule::BiEternal};
}

Verdict is_cs(const Presentation& p) {
    // Unbounded first-arrival paths exist exactly downstream of ray and fan sites.
    std::vector<bool> unbounded(p.skeleton_size(), false);
    for (Index s = 0; s < p.skeleton_size(); ++s) {
        if (p.rays(s) == 0 && !p.has_fan(s)) continue;
        std::optional<Index> x = s;
        while (x && !unbounded[*x]) {
            unbounded[*x] = true;
            x = p.succ(*x);
        }
    }
    auto it = std::find(unbounded.begin(), unbounded.end(), true);
    if (it == unbounded.end()) return {Property::CS, true, std::nullopt, Rule::BoundedFirstArrival};
    const Index x = static_cast<Index>(it - unbounded.begin());
    return {Property::CS, false, Witness{FailureNode{Element::skeleton(x)}}, Rule::UnboundedFirstArrival};
}

// ---------------------------------------------------------------- products

bool rf_product(const Presentation& a, const Presentation& b) {
    return (is_rf(a).holds && is_rf(b).holds) || is_backwards_bounded(a) || is_backwards_bounded(b);
}

bool ss_product(const Presentation& a, const Presentation& b) {
    return (is_ss(a).holds && is_ss(b).holds) || is_backwards_bounded(a) || is_backwards_bounded(b);
}

bool cs_product(const Presentation& a, const Presentation& b) {
    return (is_cs(a).holds && is_cs(b).holds) || is_backwards_bounded(a) || is_backwards_bounded(b);
}

bool rf_product_n(std::span<const Presentation> factors) {
    const bool all_rf = std::all_of(factors.begin(), factors.end(), [](const auto& f) { return is_rf(f).holds; });
    return all_rf || std::any_of(factors.begin(), factors.end(), [](const auto& f) { return is_backwards_bounded(f); });
}

// ---------------------------------------------------------------- varieties

Variety classify_variety(const Presentation& p) {
    if (!p.annotation_free()) return {Variety::Kind::VAll, 0, 0};
    if (p.skeleton_size() <= 1) return {Variety::Kind::V0, 0, 0};

    std::uint64_t k = 0;
    for (Index x = 0; x < p.skeleton_size(); ++x) k = std::max<std::uint64_t>(k, p.distance_to_terminal(x));
    std::uint64_t d = 1;
    for (std::size_t c = 0; c < p.component_count(); ++c) {
        const std::uint64_t len = p.cycle_nodes(c).size();
        const std::uint64_t g = std::gcd(d, len);
        if (d / g > std::numeric_limits<std::uint64_t>::max() / len) {
            throw Error(ErrorKind::Overflow, "lcm of cycle lengths overflows");
        }
        d = d / g * len;
    }
    if (p.component_count() == 1 && d == 1) return {Variety::Kind::Vk, k, 0};
    return {Variety::Kind::Vkd, k, d};
}

}  // namespace muna
