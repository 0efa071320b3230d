#pragma once

// Brute-force ground truth: exhaustive homomorphism search between small
// finite algebras, algebra enumeration, and truncation-based checks of the
// symbolic rules. Nothing here consults the analysis module's shortcuts
// except where a check compares against them.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "muna/core.hpp"
#include "muna/presentation.hpp"

namespace muna::oracle {

struct Caps {
    std::size_t domain = 64;
    std::size_t codomain = 8;

    /// Defaults, with MUNA_CAP (a positive integer) replacing the codomain cap.
    static Caps from_env();
};

/// Every homomorphism a -> f, in lexicographic order of the map. Throws
/// CapExceeded when either side is larger than its cap.
std::vector<std::vector<Index>> enumerate_homs(const FiniteAlgebra& a, const FiniteAlgebra& f,
                                               const Caps& caps = Caps::from_env());

struct BruteWitness {
    FiniteAlgebra codomain;
    std::vector<Index> map;
};

/// First homomorphism separating x and y into a codomain of size at most
/// `codomain_cap`, trying codomains by size and then by succ table.
std::optional<BruteWitness> brute_separable(const FiniteAlgebra& a, Index x, Index y, std::size_t codomain_cap,
                                            std::size_t domain_cap = Caps{}.domain);

/// Streams all n^n succ tables on n nodes in lexicographic order, or one
/// representative per isomorphism class when `dedupe` is set.
class AlgebraEnumerator {
public:
    explicit AlgebraEnumerator(std::size_t n, bool dedupe = false);
    std::optional<FiniteAlgebra> next();

private:
    std::size_t n_;
    bool dedupe_;
    bool done_ = false;
    std::vector<Index> table_;
};

std::vector<FiniteAlgebra> enumerate_algebras(std::size_t n, bool dedupe = false);

/// Lexicographically least relabelled succ table. Brute force over
/// permutations; throws CapExceeded above 6 nodes.
std::vector<Index> canonical_form(const FiniteAlgebra& a);

struct CheckLine {
    bool pass = true;
    std::string identity;
    std::string where;
};

struct Report {
    std::vector<CheckLine> lines;

    void add(bool pass, std::string identity, std::string where);
    void append(const Report& other);
    [[nodiscard]] std::size_t failures() const;
    [[nodiscard]] bool clean() const { return failures() == 0; }
    /// One `PASS|FAIL identity where` line per check, then a summary line.
    void write(std::ostream& out) const;
};

/// The five preimage lemmas at every node for n, m <= n_max.
Report preimage_lemmas(const FiniteAlgebra& a, std::uint64_t n_max);

/// Product preimage and product B_n identities at every pair, n <= n_max.
Report product_lemmas(const FiniteAlgebra& a, const FiniteAlgebra& b, std::uint64_t n_max);

/// Compares unfold(p, d) with the symbolic predictions for every skeleton
/// node and n <= n_max, then runs the lemma suites on the unfold and on its
/// products with C_3, L_4 and a shallow copy of itself. Throws
/// InvalidArgument unless 2 * n_max <= d.
Report cross_validate(const Presentation& p, std::uint64_t d, std::uint64_t n_max);

struct SymbolicSearch {
    std::uint64_t homomorphisms = 0;  // extendable assignments examined
    std::uint64_t separating = 0;     // of which phi(x) != phi(y)
};

/// Enumerates every homomorphism from p into every codomain of size at most
/// `cap`, restricted to the skeleton and ray prefixes of depth cap + 1. A ray
/// prefix counts only if its deepest value lies on a cycle, which is exactly
/// when it extends to the whole infinite ray; a fan only needs its anchor's
/// image to be backwards eternal in the codomain. x and y must be skeleton,
/// ray or forward elements within that depth.
SymbolicSearch symbolic_separations(const Presentation& p, const Element& x, const Element& y, std::size_t cap);

}  // namespace muna::oracle
