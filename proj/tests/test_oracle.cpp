#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <sstream>

#include "muna/analysis.hpp"
#include "muna/catalog.hpp"
#include "muna/error.hpp"
#include "muna/oracle.hpp"
#include "support.hpp"

using namespace muna;
using namespace muna::oracle;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorKind::Mismatch;
}

/// Every total map a -> f that commutes, by exhaustive odometer.
std::vector<std::vector<Index>> all_homs_by_scan(const FiniteAlgebra& a, const FiniteAlgebra& f) {
    std::vector<std::vector<Index>> out;
    if (a.size() == 0) return {{}};
    if (f.size() == 0) return out;
    std::vector<Index> m(a.size(), 0);
    for (;;) {
        if (ref::is_hom(a, f, m)) out.push_back(m);
        std::size_t i = m.size();
        while (i > 0 && ++m[i - 1] == f.size()) m[--i] = 0;
        if (i == 0) break;
    }
    return out;
}

std::vector<Index> table(const FiniteAlgebra& a) { return {a.table().begin(), a.table().end()}; }

}  // namespace

TEST(EnumerateHoms, Examples) {
    EXPECT_EQ(enumerate_homs(cycle(2), cycle(2)).size(), 2u);
    EXPECT_TRUE(enumerate_homs(cycle(3), cycle(2)).empty());
    const FiniteAlgebra f = FiniteAlgebra::make({0, 0, 2, 2, 1});
    EXPECT_EQ(enumerate_homs(trivial(1), f).size(), 2u);
    EXPECT_EQ(kind_of([] { enumerate_homs(cycle(3), cycle(9), Caps{64, 8}); }), ErrorKind::CapExceeded);
    EXPECT_EQ(kind_of([] { enumerate_homs(cycle(70), cycle(2), Caps{64, 8}); }), ErrorKind::CapExceeded);
}

TEST(EnumerateHoms, MatchesExhaustiveScan) {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 150; ++trial) {
        std::uniform_int_distribution<std::size_t> size(1, 5);
        const FiniteAlgebra a = ref::random_algebra(rng, size(rng));
        const FiniteAlgebra f = ref::random_algebra(rng, size(rng));
        EXPECT_EQ(enumerate_homs(a, f), all_homs_by_scan(a, f));
    }
}

TEST(Caps, Environment) {
    ::setenv("MUNA_CAP", "3", 1);
    EXPECT_EQ(Caps::from_env().codomain, 3u);
    ::setenv("MUNA_CAP", "junk", 1);
    EXPECT_EQ(Caps::from_env().codomain, 8u);
    ::unsetenv("MUNA_CAP");
    EXPECT_EQ(Caps::from_env().codomain, 8u);
}

TEST(Enumerate, Counts) {
    EXPECT_EQ(enumerate_algebras(1).size(), 1u);
    EXPECT_EQ(enumerate_algebras(2).size(), 4u);
    EXPECT_EQ(enumerate_algebras(3).size(), 27u);
    EXPECT_EQ(enumerate_algebras(4).size(), 256u);
    // Functional graphs up to isomorphism.
    const std::vector<std::size_t> classes{1, 3, 7, 19, 47};
    for (std::size_t n = 1; n <= classes.size(); ++n) EXPECT_EQ(enumerate_algebras(n, true).size(), classes[n - 1]);
    EXPECT_EQ(kind_of([] { enumerate_algebras(7); }), ErrorKind::CapExceeded);

    const auto two = enumerate_algebras(2, true);
    std::vector<std::vector<Index>> canon;
    for (const auto& a : two) canon.push_back(canonical_form(a));
    std::sort(canon.begin(), canon.end());
    EXPECT_EQ(canon, (std::vector<std::vector<Index>>{{0, 0}, {0, 1}, {1, 0}}));
}

TEST(Enumerate, CanonicalFormIsAnInvariant) {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const FiniteAlgebra a = ref::random_algebra(rng, 5);
        std::vector<Index> perm{0, 1, 2, 3, 4};
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Index> relabelled(5);
        for (Index x = 0; x < 5; ++x) relabelled[perm[x]] = perm[a.succ(x)];
        EXPECT_EQ(canonical_form(a), canonical_form(FiniteAlgebra::make(relabelled)));
    }
}

TEST(BruteSeparable, FiniteAlgebrasAreSeparable) {
    for (const FiniteAlgebra& a : ref::all_small(4)) {
        for (Index x = 0; x < a.size(); ++x) {
            for (Index y = x + 1; y < a.size(); ++y) {
                const auto w = brute_separable(a, x, y, 4);
                ASSERT_TRUE(w.has_value());
                EXPECT_TRUE(ref::is_hom(a, w->codomain, w->map));
                EXPECT_NE(w->map[x], w->map[y]);
            }
        }
    }
}

TEST(BruteSeparable, FirstWitnessIsLeast) {
    // On C_4, points 0 and 1 split in a 2-cycle; the least table is [1,0].
    const auto w = brute_separable(cycle(4), 0, 1, 4);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(table(w->codomain), (std::vector<Index>{1, 0}));
    EXPECT_EQ(w->map, (std::vector<Index>{0, 1, 0, 1}));
}

// Frozen values: a truncation of the merging rays is separable once the
// codomain can hold a line as long as the truncated rays, and not before.
TEST(BruteSeparable, MergingRaysTruncations) {
    const Presentation merge = catalog::merging_rays();
    auto roots = [](const UnfoldMap& u) {
        return std::pair{*u.index_of(Element::ray(0, 0, 1)), *u.index_of(Element::ray(0, 1, 1))};
    };
    const UnfoldMap d3 = unfold(merge, 3);
    const auto [a3, b3] = roots(d3);
    const auto w3 = brute_separable(d3.truncated, a3, b3, 4);
    ASSERT_TRUE(w3.has_value());
    EXPECT_EQ(table(w3->codomain), (std::vector<Index>{0, 0, 1, 2}));

    const UnfoldMap d5 = unfold(merge, 5);
    const auto [a5, b5] = roots(d5);
    EXPECT_FALSE(brute_separable(d5.truncated, a5, b5, 4).has_value());
    EXPECT_FALSE(brute_separable(d5.truncated, a5, b5, 5).has_value());
    const auto w5 = brute_separable(d5.truncated, a5, b5, 6);
    ASSERT_TRUE(w5.has_value());
    EXPECT_EQ(table(w5->codomain), (std::vector<Index>{0, 0, 1, 2, 3, 4}));
}

// The truncated forward ray ends in a fixpoint, so 0 and fwd(0,3) only come
// apart in codomains holding a 9-element path; the mod-4 map does not survive
// the truncation.
TEST(BruteSeparable, IntegersTruncation) {
    const UnfoldMap u = unfold(catalog::integers(), 4);
    const Index a = *u.index_of(Element::skeleton(0));
    const Index b = *u.index_of(Element::forward(0, 3));
    EXPECT_FALSE(brute_separable(u.truncated, a, b, 4).has_value());
    EXPECT_FALSE(brute_separable(u.truncated, a, b, 5).has_value());
    // Dropping the loop artefact, the mod-4 map is a hom on the rest.
    const Index c = *u.index_of(Element::ray(0, 0, 2));
    const auto w = brute_separable(u.truncated, c, a, 4);
    ASSERT_TRUE(w.has_value());
}

TEST(Lemmas, PreimageSuiteOnSmallAlgebras) {
    for (const FiniteAlgebra& a : ref::all_small(4)) {
        const Report r = preimage_lemmas(a, 6);
        EXPECT_TRUE(r.clean());
        EXPECT_FALSE(r.lines.empty());
    }
}

TEST(Lemmas, ProductSuiteOnSmallPairs) {
    const std::vector<FiniteAlgebra> small{cycle(2), cycle(3), line(3), line(4), trivial(2)};
    for (const auto& a : small) {
        for (const auto& b : small) {
            const Report r = product_lemmas(a, b, 6);
            std::ostringstream out;
            r.write(out);
            EXPECT_TRUE(r.clean()) << out.str();
        }
    }
}

TEST(Report, TextForm) {
    Report r;
    r.add(true, "preimage-i", "x=0 n=1");
    r.add(false, "preimage-ii", "x=1 n=2 m=3");
    std::ostringstream out;
    r.write(out);
    EXPECT_EQ(out.str(), "PASS preimage-i x=0 n=1\nFAIL preimage-ii x=1 n=2 m=3\nsummary: 2 checks, 1 failures\n");
    EXPECT_EQ(r.failures(), 1u);
}

TEST(CrossValidate, FixturesAreClean) {
    for (const auto& f : ref::fixtures()) {
        const Report r = cross_validate(f.p, 12, 6);
        std::ostringstream out;
        for (const auto& line : r.lines) {
            if (!line.pass) out << line.identity << ' ' << line.where << '\n';
        }
        EXPECT_TRUE(r.clean()) << f.name << '\n' << out.str();
    }
    EXPECT_EQ(kind_of([] { cross_validate(catalog::comb(), 8, 5); }), ErrorKind::InvalidArgument);
}

TEST(CrossValidate, RandomPresentationsAreClean) {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const Presentation p = ref::random_presentation(rng, 4);
        EXPECT_TRUE(cross_validate(p, 8, 4).clean());
    }
}

TEST(Symbolic, MergingRootsNeverSeparate) {
    const SymbolicSearch s =
        symbolic_separations(catalog::merging_rays(), Element::ray(0, 0, 1), Element::ray(0, 1, 1), 4);
    EXPECT_GT(s.homomorphisms, 0u);
    EXPECT_EQ(s.separating, 0u);
}

TEST(Symbolic, IntegersSeparate) {
    const SymbolicSearch s =
        symbolic_separations(catalog::integers(), Element::skeleton(0), Element::forward(0, 3), 4);
    EXPECT_GT(s.separating, 0u);
    EXPECT_LT(s.separating, s.homomorphisms);
}

TEST(Symbolic, NaturalsSiblingsNeverSeparate) {
    // The fixpoint and the ray root are both eternal preimages of the fixpoint.
    const SymbolicSearch s =
        symbolic_separations(catalog::naturals_with_decrement(), Element::skeleton(0), Element::ray(0, 0, 1), 3);
    EXPECT_GT(s.homomorphisms, 0u);
    EXPECT_EQ(s.separating, 0u);
}
