#pragma once

// Exact finite monounary algebras: a total self-map on {0..n-1}.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace muna {

using Index = std::size_t;

/// Sorted, duplicate-free set of node indices.
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(std::vector<Index> members);
    NodeSet(std::initializer_list<Index> members) : NodeSet(std::vector<Index>(members)) {}

    [[nodiscard]] bool contains(Index x) const;
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
    [[nodiscard]] const std::vector<Index>& members() const noexcept { return members_; }
    [[nodiscard]] auto begin() const noexcept { return members_.begin(); }
    [[nodiscard]] auto end() const noexcept { return members_.end(); }

    bool operator==(const NodeSet&) const = default;

private:
    std::vector<Index> members_;
};

NodeSet set_union(const NodeSet& a, const NodeSet& b);
NodeSet set_intersection(const NodeSet& a, const NodeSet& b);
NodeSet set_difference(const NodeSet& a, const NodeSet& b);

class FiniteAlgebra {
public:
    /// The empty algebra.
    FiniteAlgebra();

    /// Validating constructor; throws OutOfRange if an image is >= succ.size().
    static FiniteAlgebra make(std::vector<Index> succ);

    [[nodiscard]] std::size_t size() const noexcept { return succ_.size(); }
    [[nodiscard]] bool empty() const noexcept { return succ_.empty(); }
    [[nodiscard]] Index succ(Index x) const;
    [[nodiscard]] std::span<const Index> table() const noexcept { return succ_; }

    // Tail/cycle decomposition, computed once on first use and shared by copies.
    [[nodiscard]] bool on_cycle(Index x) const;
    /// Steps from x to the first cycle node on its orbit.
    [[nodiscard]] std::size_t tail_length(Index x) const;
    /// Length of the unique cycle in x's component.
    [[nodiscard]] std::size_t cycle_length(Index x) const;
    /// Component id; components are numbered by their lowest member.
    [[nodiscard]] std::size_t component(Index x) const;
    [[nodiscard]] std::size_t component_count() const;
    /// Nodes of component `c`'s cycle in f-order, starting at its lowest index.
    [[nodiscard]] std::span<const Index> cycle_nodes(std::size_t c) const;
    /// Position of x on its cycle (meaningful only when on_cycle(x)).
    [[nodiscard]] std::size_t cycle_position(Index x) const;
    /// Immediate predecessors f^-1(x), ascending.
    [[nodiscard]] std::span<const Index> predecessors(Index x) const;

    bool operator==(const FiniteAlgebra& other) const { return succ_ == other.succ_; }

private:
    struct Structure;
    struct Cache {
        std::once_flag once;
        std::unique_ptr<const Structure> data;
    };

    explicit FiniteAlgebra(std::vector<Index> succ);
    const Structure& structure() const;
    void check(Index x) const;

    std::vector<Index> succ_;
    std::shared_ptr<Cache> cache_;
};

FiniteAlgebra line(std::size_t n);
FiniteAlgebra cycle(std::size_t n);
FiniteAlgebra trivial(std::size_t n);
/// A on {0..|A|-1} followed by B shifted by |A|.
FiniteAlgebra disjoint_union(const FiniteAlgebra& a, const FiniteAlgebra& b);

/// f^n(x); n may be astronomically large.
Index image(const FiniteAlgebra& a, Index x, std::uint64_t n);
/// f^-n(x) = {b : f^n(b) = x}.
NodeSet preimage(const FiniteAlgebra& a, Index x, std::uint64_t n);
/// B_n(x): nodes whose first arrival at x happens after exactly n steps.
NodeSet bn_set(const FiniteAlgebra& a, Index x, std::uint64_t n);

/// Connected components, ordered by lowest member.
std::vector<NodeSet> components(const FiniteAlgebra& a);
/// The unique cycle of a (non-empty) component, in f-order from its lowest index.
std::vector<Index> cycle_of(const FiniteAlgebra& a, const NodeSet& component);
/// <S>: the smallest subalgebra containing S.
NodeSet generated(const FiniteAlgebra& a, const NodeSet& s);

struct ProductAlgebra {
    FiniteAlgebra algebra;
    std::size_t left_size = 0;
    std::size_t right_size = 0;

    [[nodiscard]] Index pair(Index a, Index b) const { return a * right_size + b; }
    [[nodiscard]] std::pair<Index, Index> split(Index i) const { return {i / right_size, i % right_size}; }
};

/// Direct product with pairing (a, b) <-> a*|B| + b.
ProductAlgebra product(const FiniteAlgebra& a, const FiniteAlgebra& b);

/// f^steps(from) = to.
struct ForwardRelated {
    Index from = 0;
    Index to = 0;
    std::uint64_t steps = 0;
    bool operator==(const ForwardRelated&) const = default;
};

/// f^left(a) = f^right(b) = meet, and neither node reaches the other.
struct DisjointBackcones {
    Index meet = 0;
    std::uint64_t left_steps = 0;
    std::uint64_t right_steps = 0;
    bool operator==(const DisjointBackcones&) const = default;
};

using Trichotomy = std::variant<ForwardRelated, DisjointBackcones>;

/// Classifies two distinct nodes of one component. Minimises the step count,
/// then (left+right), then left; direction ties go to the smaller index.
Trichotomy trichotomy(const FiniteAlgebra& a, Index x, Index y);

/// True iff map[f1(x)] == f2(map[x]) for every x.
bool is_homomorphism(const FiniteAlgebra& from, const FiniteAlgebra& to, std::span<const Index> map);

}  // namespace muna
