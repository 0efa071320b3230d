#pragma once

// Test-only reference computations. Everything here is derived from the
// definitions by brute iteration and never calls the library's shortcuts
// (tail/cycle tables, BFS preimages, symbolic rules).

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "muna/catalog.hpp"
#include "muna/core.hpp"
#include "muna/presentation.hpp"

namespace ref {

using muna::Element;
using muna::FiniteAlgebra;
using muna::Index;
using muna::Presentation;

inline Index walk(const FiniteAlgebra& a, Index x, std::uint64_t n) {
    for (std::uint64_t i = 0; i < n; ++i) x = a.succ(x);
    return x;
}

inline std::vector<Index> scan_preimage(const FiniteAlgebra& a, Index x, std::uint64_t n) {
    std::vector<Index> out;
    for (Index y = 0; y < a.size(); ++y) {
        if (walk(a, y, n) == x) out.push_back(y);
    }
    return out;
}

inline std::vector<Index> scan_first_arrival(const FiniteAlgebra& a, Index x, std::uint64_t n) {
    std::vector<Index> out;
    for (Index y = 0; y < a.size(); ++y) {
        std::uint64_t t = 0;
        Index z = y;
        while (t < n && z != x) {
            z = a.succ(z);
            ++t;
        }
        if (t == n && z == x) out.push_back(y);
    }
    return out;
}

inline bool returns_to_self(const FiniteAlgebra& a, Index x) {
    Index z = a.succ(x);
    for (std::size_t k = 0; k < a.size(); ++k, z = a.succ(z)) {
        if (z == x) return true;
    }
    return false;
}

inline bool is_hom(const FiniteAlgebra& from, const FiniteAlgebra& to, const std::vector<Index>& map) {
    for (Index x = 0; x < from.size(); ++x) {
        if (map[from.succ(x)] != to.succ(map[x])) return false;
    }
    return true;
}

inline std::vector<Index> sorted(std::vector<Index> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

/// Every succ table on n nodes, lexicographic.
inline std::vector<FiniteAlgebra> all_tables(std::size_t n) {
    std::vector<FiniteAlgebra> out;
    std::vector<Index> t(n, 0);
    for (;;) {
        out.push_back(FiniteAlgebra::make(t));
        std::size_t i = n;
        while (i > 0 && ++t[i - 1] == n) t[--i] = 0;
        if (i == 0) break;
    }
    return out;
}

/// All tables of sizes 1..n_max.
inline std::vector<FiniteAlgebra> all_small(std::size_t n_max) {
    std::vector<FiniteAlgebra> out;
    for (std::size_t n = 1; n <= n_max; ++n) {
        auto more = all_tables(n);
        out.insert(out.end(), more.begin(), more.end());
    }
    return out;
}

inline FiniteAlgebra random_algebra(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<Index> pick(0, n - 1);
    std::vector<Index> t(n);
    for (auto& v : t) v = pick(rng);
    return FiniteAlgebra::make(std::move(t));
}

/// A random valid presentation: a random functional graph in which some
/// components have one cycle edge cut into a port, decorated with rays and fans.
inline Presentation random_presentation(std::mt19937& rng, std::size_t max_nodes = 6) {
    std::uniform_int_distribution<std::size_t> size(1, max_nodes);
    const FiniteAlgebra g = random_algebra(rng, size(rng));
    std::bernoulli_distribution coin(0.5);
    std::bernoulli_distribution rare(0.2);
    muna::PresentationBuilder b(g.size());
    std::vector<bool> cut(g.size(), false);
    for (std::size_t c = 0; c < g.component_count(); ++c) {
        if (coin(rng)) cut[g.cycle_nodes(c).front()] = true;
    }
    for (Index x = 0; x < g.size(); ++x) {
        if (cut[x]) {
            b.port(x);
        } else {
            b.edge(x, g.succ(x));
        }
        if (rare(rng)) b.ray(x, rare(rng) ? 2 : 1);
        if (rare(rng)) b.fan(x);
    }
    return b.build();
}

struct Fixture {
    std::string name;
    Presentation p;
};

inline Presentation build_c4() { return Presentation::from_algebra(muna::cycle(4)); }
inline Presentation build_l4() { return Presentation::from_algebra(muna::line(4)); }

/// Integer spine a -> b -> c (port c) with a ray at a.
inline Presentation spine_with_ray() { return muna::PresentationBuilder(3).edge(0, 1).edge(1, 2).port(2).ray(0).build(); }
/// The spine plus a bounded leaf d -> b.
inline Presentation spine_with_leaf() {
    return muna::PresentationBuilder(4).edge(0, 1).edge(1, 2).port(2).ray(0).edge(3, 1).build();
}
/// C_4 with a tail 4 -> 5 -> 0.
inline Presentation cycle_with_tail() {
    return muna::PresentationBuilder(6).edge(0, 1).edge(1, 2).edge(2, 3).edge(3, 0).edge(4, 5).edge(5, 0).build();
}
/// Comb whose fan sits two steps before the port.
inline Presentation long_comb() { return muna::PresentationBuilder(3).edge(0, 1).edge(1, 2).port(2).fan(0).build(); }
/// 2-cycle with a fan on one node.
inline Presentation fanned_pair() { return muna::PresentationBuilder(2).edge(0, 1).edge(1, 0).fan(1).build(); }
/// Two components: Z and C_3.
inline Presentation z_and_triangle() {
    return muna::PresentationBuilder(4).port(0).ray(0).edge(1, 2).edge(2, 3).edge(3, 1).build();
}

/// Every named fixture used across the suites.
inline std::vector<Fixture> fixtures() {
    namespace cat = muna::catalog;
    return {
        {"Z", cat::integers()},
        {"N", cat::naturals_with_decrement()},
        {"Comb", cat::comb()},
        {"Merge", cat::merging_rays()},
        {"Glued", cat::glued_lines()},
        {"Forest", cat::forest_into_ray()},
        {"C4", build_c4()},
        {"L4", build_l4()},
        {"SpineRay", spine_with_ray()},
        {"SpineLeaf", spine_with_leaf()},
        {"CycleTail", cycle_with_tail()},
        {"LongComb", long_comb()},
        {"FannedPair", fanned_pair()},
        {"ZTriangle", z_and_triangle()},
    };
}

/// Backwards eternality by definition on a truncation deep enough that
/// bounded skeleton nodes run out of preimages: heights of non-eternal
/// skeleton nodes are below the skeleton size.
inline bool eternal_by_unfold(const Presentation& p, Index x) {
    const std::uint64_t s = p.skeleton_size();
    const muna::UnfoldMap u = muna::unfold(p, s + 1);
    return !scan_preimage(u.truncated, *u.index_of(Element::skeleton(x)), s).empty();
}

/// Whether some n <= depth has B_n(x) empty on the truncation.
inline bool arrival_bounded_by_unfold(const Presentation& p, Index x) {
    const std::uint64_t d = p.skeleton_size() + 2;
    const muna::UnfoldMap u = muna::unfold(p, d);
    const Index ix = *u.index_of(Element::skeleton(x));
    for (std::uint64_t n = 0; n <= d; ++n) {
        if (scan_first_arrival(u.truncated, ix, n).empty()) return true;
    }
    return false;
}

/// RF by definition: per target, count eternal members of f^-1(v). Ray
/// roots are eternal, fan line ends are not (each line is finite).
inline bool rf_by_definition(const Presentation& p) {
    for (Index v = 0; v < p.skeleton_size(); ++v) {
        std::size_t eternal = p.rays(v);
        for (Index u = 0; u < p.skeleton_size(); ++u) {
            if (p.succ(u) == v && eternal_by_unfold(p, u)) ++eternal;
        }
        if (eternal > 1) return false;
    }
    return true;
}

inline bool skeleton_on_cycle(const Presentation& p, Index x) {
    auto z = p.succ(x);
    for (std::size_t k = 0; k < p.skeleton_size() && z; ++k, z = p.succ(*z)) {
        if (*z == x) return true;
    }
    return false;
}

/// SS by definition: every eternal element on a cycle. Ray elements are
/// eternal and never cyclic; forward elements inherit their port's status.
inline bool ss_by_definition(const Presentation& p) {
    if (p.ray_count() > 0) return false;
    for (Index x = 0; x < p.skeleton_size(); ++x) {
        if (eternal_by_unfold(p, x) && !skeleton_on_cycle(p, x)) return false;
    }
    return true;
}

/// CS by definition: rays give every node unbounded first arrival; skeleton
/// nodes are read off the truncation.
inline bool cs_by_definition(const Presentation& p) {
    if (p.ray_count() > 0) return false;
    for (Index x = 0; x < p.skeleton_size(); ++x) {
        if (!arrival_bounded_by_unfold(p, x)) return false;
    }
    return true;
}

}  // namespace ref
