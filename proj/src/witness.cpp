#include "muna/witness.hpp"

#include <algorithm>
#include <set>

#include "muna/analysis.hpp"
#include "muna/catalog.hpp"
#include "muna/error.hpp"

namespace muna {

// ---------------------------------------------------------------- rules

Index DepthRule::evaluate(std::uint64_t depth, std::size_t line) const {
    if (only_line && line != *only_line) return elsewhere;
    std::int64_t v = base + slope * static_cast<std::int64_t>(depth);
    if (floor && v < *floor) v = *floor;
    if (modulus != 0) {
        const auto m = static_cast<std::int64_t>(modulus);
        v = ((v % m) + m) % m;
    }
    if (v < 0) throw Error(ErrorKind::OutOfRange, "rule produced negative value " + std::to_string(v));
    return offset + static_cast<Index>(v);
}

std::vector<FamilyKey> families(const Presentation& p) {
    std::vector<FamilyKey> out;
    for (Index x = 0; x < p.skeleton_size(); ++x) {
        for (std::size_t r = 0; r < p.rays(x); ++r) out.push_back({FamilyKind::Ray, x, r});
        if (p.has_fan(x)) out.push_back({FamilyKind::Fan, x, 0});
        if (p.is_port(x)) out.push_back({FamilyKind::Forward, x, 0});
    }
    return out;
}

Index Homomorphism::at(const Element& e) const {
    auto rule = [&](FamilyKey key) -> const DepthRule& {
        auto it = family_rules.find(key);
        if (it == family_rules.end()) throw Error(ErrorKind::OutOfRange, "no rule for " + format_element(e));
        return it->second;
    };
    switch (e.kind) {
        case ElementKind::Skeleton:
            if (e.node >= skeleton_map.size()) throw Error(ErrorKind::OutOfRange, "no image for " + format_element(e));
            return skeleton_map[e.node];
        case ElementKind::Ray: return rule({FamilyKind::Ray, e.node, e.family}).evaluate(e.depth);
        case ElementKind::Fan: return rule({FamilyKind::Fan, e.node, 0}).evaluate(e.depth, e.family);
        case ElementKind::Forward: return rule({FamilyKind::Forward, e.node, 0}).evaluate(e.depth);
    }
    return 0;
}

std::string_view to_string(SeparationKind k) noexcept {
    switch (k) {
        case SeparationKind::PointPoint: return "point-point";
        case SeparationKind::PointSubalgebra: return "point-subalgebra";
        case SeparationKind::Complete: return "complete";
    }
    return "?";
}

// ---------------------------------------------------------------- helpers

std::optional<std::uint64_t> steps_between(const Presentation& p, const Element& from, const Element& to) {
    if (!p.contains(from) || !p.contains(to)) throw Error(ErrorKind::OutOfRange, "element not in algebra");
    Element cur = from;
    std::uint64_t steps = 0;
    while (cur.kind == ElementKind::Ray || cur.kind == ElementKind::Fan) {
        if (cur == to) return steps;
        cur = p.successor(cur);
        ++steps;
    }
    if (to.kind == ElementKind::Ray || to.kind == ElementKind::Fan) return std::nullopt;
    std::vector<bool> seen(p.skeleton_size(), false);
    while (cur.is_skeleton()) {
        if (cur == to) return steps;
        if (seen[cur.node]) return std::nullopt;
        seen[cur.node] = true;
        cur = p.successor(cur);
        ++steps;
    }
    if (to.kind == ElementKind::Forward && to.node == cur.node && to.depth >= cur.depth) {
        return steps + (to.depth - cur.depth);
    }
    return std::nullopt;
}

namespace {

std::size_t component_of(const Presentation& p, const Element& e) { return p.component(e.node); }

void require(const Presentation& p, const Element& e) {
    if (!p.contains(e)) throw Error(ErrorKind::OutOfRange, "element " + format_element(e) + " is not in the algebra");
}

/// Codomain `main`, plus one absorbing fixpoint when other components exist.
FiniteAlgebra with_sink(const FiniteAlgebra& main, bool need_sink) {
    return need_sink ? disjoint_union(main, trivial(1)) : main;
}

/// Sends every component other than `keep` to the constant `sink`.
void fill_other_components(const Presentation& p, std::size_t keep, Index sink, Homomorphism& h) {
    for (Index x = 0; x < p.skeleton_size(); ++x) {
        if (p.component(x) != keep) h.skeleton_map[x] = sink;
    }
    for (const FamilyKey& key : families(p)) {
        if (p.component(key.anchor) != keep) h.family_rules[key] = DepthRule::constant(sink);
    }
}

/// Signed position along the forward ray of an acyclic component: the port
/// sits at 0, fwd(port,k) at k, and every step of f adds one.
std::int64_t level(const Presentation& p, const Element& e) {
    switch (e.kind) {
        case ElementKind::Skeleton: return -static_cast<std::int64_t>(p.distance_to_terminal(e.node));
        case ElementKind::Ray:
        case ElementKind::Fan:
            return -static_cast<std::int64_t>(p.distance_to_terminal(e.node)) - static_cast<std::int64_t>(e.depth);
        case ElementKind::Forward: return static_cast<std::int64_t>(e.depth);
    }
    return 0;
}

std::int64_t floor_mod(std::int64_t v, std::int64_t m) { return ((v % m) + m) % m; }

SeparationCertificate point_point(Homomorphism h, const Element& x, const Element& y, std::string how) {
    return SeparationCertificate{std::move(h), SeparationKind::PointPoint, x, y, {}, std::move(how)};
}

/// Indicator of x's component into T_2.
Homomorphism component_indicator(const Presentation& p, std::size_t component) {
    Homomorphism h{trivial(2), std::vector<Index>(p.skeleton_size(), 1), {}};
    for (Index x = 0; x < p.skeleton_size(); ++x) {
        if (p.component(x) == component) h.skeleton_map[x] = 0;
    }
    for (const FamilyKey& key : families(p)) {
        h.family_rules[key] = DepthRule::constant(p.component(key.anchor) == component ? 0 : 1);
    }
    return h;
}

/// Composite of the signed-level map to Z with reduction mod m, centred on `ref`.
Homomorphism theta_sigma(const Presentation& p, const Element& ref, std::uint64_t m) {
    const std::size_t comp = component_of(p, ref);
    const std::int64_t origin = level(p, ref);
    const auto mod = static_cast<std::int64_t>(m);
    Homomorphism h{with_sink(cycle(m), p.component_count() > 1), std::vector<Index>(p.skeleton_size(), 0), {}};
    for (Index x : p.component_nodes(comp)) {
        h.skeleton_map[x] = static_cast<Index>(floor_mod(level(p, Element::skeleton(x)) - origin, mod));
    }
    for (const FamilyKey& key : families(p)) {
        if (p.component(key.anchor) != comp) continue;
        DepthRule rule;
        rule.modulus = m;
        if (key.kind == FamilyKind::Forward) {
            rule.base = -origin;
            rule.slope = 1;
        } else {
            rule.base = level(p, Element::skeleton(key.anchor)) - origin;
            rule.slope = -1;
        }
        h.family_rules[key] = rule;
    }
    fill_other_components(p, comp, m, h);
    return h;
}

}  // namespace

// ---------------------------------------------------------------- constructions

Homomorphism lambda_hom(const Presentation& p, const Element& a) {
    require(p, a);
    const auto height = backward_height(p, a);
    if (!height) {
        throw Error(ErrorKind::BackwardsEternal, format_element(a) + " is backwards eternal; no line quotient exists");
    }
    // f^-n(a) is empty for n = height + 1, so the codomain is L_{height+2}.
    Homomorphism h{line(*height + 2), std::vector<Index>(p.skeleton_size(), 0), {}};
    for (Index x = 0; x < p.skeleton_size(); ++x) {
        if (auto m = steps_between(p, Element::skeleton(x), a)) h.skeleton_map[x] = static_cast<Index>(*m + 1);
    }
    for (const FamilyKey& key : families(p)) h.family_rules[key] = DepthRule::constant(0);

    // Only families a sits on (or sits past) have elements in a's back-cone.
    if (a.kind == ElementKind::Fan) {
        DepthRule rule;
        rule.base = 1 - static_cast<std::int64_t>(a.depth);
        rule.slope = 1;
        rule.floor = 0;
        rule.only_line = a.family;
        rule.elsewhere = 0;
        h.family_rules[{FamilyKind::Fan, a.node, 0}] = rule;
    } else if (a.kind == ElementKind::Forward) {
        DepthRule rule;
        rule.base = static_cast<std::int64_t>(a.depth) + 1;
        rule.slope = -1;
        rule.floor = 0;
        h.family_rules[{FamilyKind::Forward, a.node, 0}] = rule;
    }
    return h;
}

Homomorphism cycle_hom(const Presentation& p, std::size_t component) {
    const TerminalKind t = p.terminal_kind(component);
    if (!std::holds_alternative<CycleTerminal>(t)) {
        throw Error(ErrorKind::NoCycle, "component " + std::to_string(component) + " ends in a forward ray");
    }
    const auto& cyc = p.cycle_nodes(component);
    const std::size_t k = cyc.size();
    Homomorphism h{with_sink(cycle(k), p.component_count() > 1), std::vector<Index>(p.skeleton_size(), 0), {}};
    for (Index x : p.component_nodes(component)) {
        const std::size_t tail = p.distance_to_terminal(x);
        Index entry = x;
        for (std::size_t i = 0; i < tail; ++i) entry = *p.succ(entry);
        const auto pos = static_cast<std::int64_t>(std::find(cyc.begin(), cyc.end(), entry) - cyc.begin());
        h.skeleton_map[x] = static_cast<Index>(floor_mod(pos - static_cast<std::int64_t>(tail), static_cast<std::int64_t>(k)));
    }
    for (const FamilyKey& key : families(p)) {
        if (p.component(key.anchor) != component) continue;
        DepthRule rule;
        rule.base = static_cast<std::int64_t>(h.skeleton_map[key.anchor]);
        rule.slope = -1;
        rule.modulus = k;
        h.family_rules[key] = rule;
    }
    fill_other_components(p, component, k, h);
    return h;
}

Element integer_element(std::int64_t n) {
    if (n == 0) return Element::skeleton(0);
    if (n < 0) return Element::ray(0, 0, static_cast<std::uint64_t>(-n));
    return Element::forward(0, static_cast<std::uint64_t>(n));
}

Homomorphism z_mod_hom(std::int64_t a, std::int64_t b) {
    if (a == b) throw Error(ErrorKind::EqualPoints, "z_mod_hom needs distinct integers");
    const std::uint64_t m = static_cast<std::uint64_t>(a > b ? a - b : b - a) + 1;
    Homomorphism h{cycle(m), {0}, {}};
    h.family_rules[{FamilyKind::Ray, 0, 0}] = DepthRule::affine(0, -1, m);
    h.family_rules[{FamilyKind::Forward, 0, 0}] = DepthRule::affine(0, 1, m);
    return h;
}

SeparationCertificate z_mod_certificate(std::int64_t a, std::int64_t b) {
    return point_point(z_mod_hom(a, b), integer_element(a), integer_element(b), "z-mod");
}

SeparationCertificate separate_points(const Presentation& p, const Element& x, const Element& y) {
    require(p, x);
    require(p, y);
    if (x == y) throw Error(ErrorKind::EqualPoints, "cannot separate " + format_element(x) + " from itself");
    if (const Verdict rf = is_rf(p); !rf.holds) {
        throw Error(ErrorKind::NotRF, "two backwards-eternal elements share an image; every finite quotient merges them");
    }
    const std::size_t cx = component_of(p, x);
    if (cx != component_of(p, y)) return point_point(component_indicator(p, cx), x, y, "component");

    const bool x_eternal = backwards_eternal(p, x);
    const bool y_eternal = backwards_eternal(p, y);
    const auto x_to_y = steps_between(p, x, y);
    const auto y_to_x = steps_between(p, y, x);

    if (!x_to_y && !y_to_x) {
        // Disjoint back-cones: one side is not eternal.
        if (!x_eternal) return point_point(lambda_hom(p, x), x, y, "lambda");
        if (!y_eternal) return point_point(lambda_hom(p, y), x, y, "lambda");
        throw Error(ErrorKind::Mismatch, "disjoint back-cones with both sides eternal under a holding RF criterion");
    }
    if (x.is_skeleton() && y.is_skeleton() && p.on_cycle(x.node) && p.on_cycle(y.node)) {
        return point_point(cycle_hom(p, cx), x, y, "cycle");
    }
    if (!x_eternal) return point_point(lambda_hom(p, x), x, y, "lambda");
    if (!y_eternal) return point_point(lambda_hom(p, y), x, y, "lambda");

    // Both eternal and forward-related in an acyclic component.
    const std::uint64_t steps = x_to_y ? *x_to_y : *y_to_x;
    return point_point(theta_sigma(p, y, steps + 1), x, y, "theta-sigma");
}

SeparationCertificate cs_separator(const Presentation& p, const Element& a) {
    require(p, a);
    if (const Verdict cs = is_cs(p); !cs.holds) {
        throw Error(ErrorKind::NotCS, "first-arrival path lengths are unbounded somewhere");
    }
    if (!(a.is_skeleton() && p.on_cycle(a.node))) {
        return SeparationCertificate{lambda_hom(p, a), SeparationKind::Complete, a, std::nullopt, {}, "lambda"};
    }

    // phi(B_n(a)) = n into ({0..N-1}, 0 -> k-1, y -> y-1), N least with B_N(a) empty.
    const std::size_t comp = p.component(a.node);
    const auto& cyc = p.cycle_nodes(comp);
    const std::size_t k = cyc.size();
    const std::uint64_t big_n = *first_arrival_bound(p, a.node) + 1;
    std::vector<Index> g(big_n);
    for (Index y = 0; y < big_n; ++y) g[y] = y == 0 ? k - 1 : y - 1;
    Homomorphism h{with_sink(FiniteAlgebra::make(std::move(g)), p.component_count() > 1),
                   std::vector<Index>(p.skeleton_size(), 0), {}};
    for (Index x : p.component_nodes(comp)) {
        h.skeleton_map[x] = static_cast<Index>(*steps_between(p, Element::skeleton(x), a));
    }
    fill_other_components(p, comp, big_n, h);
    return SeparationCertificate{std::move(h), SeparationKind::Complete, a, std::nullopt, {}, "first-arrival"};
}

SeparationCertificate separate_from_subalgebra(const Presentation& p, const Element& a,
                                               const std::vector<Element>& generators) {
    require(p, a);
    for (const Element& g : generators) {
        require(p, g);
        if (steps_between(p, g, a)) {
            throw Error(ErrorKind::NotSeparable, format_element(a) + " lies in the generated subalgebra");
        }
    }
    if (!is_ss(p).holds) throw Error(ErrorKind::NotSeparable, "presentation is not subalgebra separable");
    SeparationCertificate cert{{}, SeparationKind::PointSubalgebra, a, std::nullopt, generators, {}};
    if (!backwards_eternal(p, a)) {
        cert.hom = lambda_hom(p, a);
        cert.construction = "lambda";
    } else {
        // a is on a cycle, so no generator shares its component.
        cert.hom = component_indicator(p, component_of(p, a));
        cert.construction = "component";
    }
    return cert;
}

// ---------------------------------------------------------------- verification

void verify(const SeparationCertificate& cert, const Presentation& p, std::uint64_t depth) {
    const Homomorphism& h = cert.hom;
    const UnfoldMap u = unfold(p, depth);
    const FiniteAlgebra& g = h.codomain;
    auto value = [&](const Element& e) {
        const Index v = h.at(e);
        if (v >= g.size()) {
            throw Error(ErrorKind::BrokenHom, "image of " + format_element(e) + " is " + std::to_string(v) +
                                                  ", outside codomain of size " + std::to_string(g.size()));
        }
        return v;
    };

    std::vector<Index> images(u.origin.size());
    for (Index i = 0; i < u.origin.size(); ++i) {
        const Element& e = u.origin[i];
        images[i] = value(e);
        if (value(p.successor(e)) != g.succ(images[i])) {
            throw Error(ErrorKind::BrokenHom, "commuting condition fails at " + format_element(e));
        }
    }

    switch (cert.kind) {
        case SeparationKind::PointPoint:
            if (!cert.y || value(cert.x) == value(*cert.y)) {
                throw Error(ErrorKind::SeparationFailed, format_element(cert.x) + " and " +
                                                             (cert.y ? format_element(*cert.y) : "?") + " share an image");
            }
            break;
        case SeparationKind::PointSubalgebra: {
            const Index target = value(cert.x);
            // Forward orbits become periodic in the image within |skeleton| + depth + |F| steps.
            const std::uint64_t horizon = p.skeleton_size() + depth + g.size() + 1;
            for (const Element& start : cert.generators) {
                Element e = start;
                for (std::uint64_t s = 0; s <= horizon; ++s, e = p.successor(e)) {
                    if (value(e) == target) {
                        throw Error(ErrorKind::SeparationFailed,
                                    format_element(cert.x) + " collides with " + format_element(e) + " of the subalgebra");
                    }
                }
            }
            break;
        }
        case SeparationKind::Complete: {
            const Index target = value(cert.x);
            for (Index i = 0; i < u.origin.size(); ++i) {
                if (u.origin[i] != cert.x && images[i] == target) {
                    throw Error(ErrorKind::SeparationFailed,
                                format_element(cert.x) + " collides with " + format_element(u.origin[i]));
                }
            }
            break;
        }
    }
}

// ---------------------------------------------------------------- text form

void write_certificate(std::ostream& out, const SeparationCertificate& cert,
                       const std::function<std::string(Index)>& name) {
    auto nm = [&](Index x) { return name ? name(x) : std::to_string(x); };
    out << "certificate " << to_string(cert.kind) << " construction=" << cert.construction << '\n';
    out << "x: " << format_element(cert.x, name) << '\n';
    if (cert.y) out << "y: " << format_element(*cert.y, name) << '\n';
    if (!cert.generators.empty()) {
        out << "generators:";
        for (const Element& e : cert.generators) out << ' ' << format_element(e, name);
        out << '\n';
    }
    const FiniteAlgebra& g = cert.hom.codomain;
    out << "codomain " << g.size() << ':';
    for (Index v = 0; v < g.size(); ++v) out << ' ' << v << "->" << g.succ(v);
    out << '\n';
    out << "map:";
    for (Index x = 0; x < cert.hom.skeleton_map.size(); ++x) out << ' ' << nm(x) << '=' << cert.hom.skeleton_map[x];
    out << '\n';
    for (const auto& [key, rule] : cert.hom.family_rules) {
        out << "rule ";
        switch (key.kind) {
            case FamilyKind::Ray: out << "ray(" << nm(key.anchor) << ',' << key.number << ')'; break;
            case FamilyKind::Fan: out << "fan(" << nm(key.anchor) << ')'; break;
            case FamilyKind::Forward: out << "fwd(" << nm(key.anchor) << ')'; break;
        }
        out << ": base=" << rule.base << " slope=" << rule.slope << " mod=" << rule.modulus;
        if (rule.floor) out << " floor=" << *rule.floor;
        out << " offset=" << rule.offset;
        if (rule.only_line) out << " line=" << *rule.only_line << " elsewhere=" << rule.elsewhere;
        out << '\n';
    }
    if (cert.y) out << "values: " << cert.hom.at(cert.x) << " " << cert.hom.at(*cert.y) << '\n';
    else out << "value: " << cert.hom.at(cert.x) << '\n';
}

}  // namespace muna
