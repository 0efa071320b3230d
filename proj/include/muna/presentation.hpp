#pragma once

// Finite descriptions of possibly infinite monounary algebras.
//
// A presentation is a finite skeleton (a partial self-map) decorated with
//   * backward rays: infinite chains ... -> r2 -> r1 -> node,
//   * fans: one finite chain of every length 1, 2, 3, ... ending at a node,
//   * ports: skeleton nodes without a successor, continuing into a fresh
//     forward chain port -> w1 -> w2 -> ... forever.
// Annotation-free presentations are exactly finite algebras.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "muna/core.hpp"

namespace muna {

enum class ElementKind : std::uint8_t { Skeleton, Ray, Fan, Forward };

/// An element of the denoted algebra: a skeleton node or a node of one of the
/// virtual families hanging off the skeleton.
struct Element {
    ElementKind kind = ElementKind::Skeleton;
    Index node = 0;            // skeleton node, or the anchor/port of the family
    std::size_t family = 0;    // ray number (Ray) or line length (Fan)
    std::uint64_t depth = 0;   // distance to the anchor (Ray, Fan) or steps past the port (Forward)

    static Element skeleton(Index x) { return {ElementKind::Skeleton, x, 0, 0}; }
    static Element ray(Index anchor, std::size_t ray_number, std::uint64_t depth) {
        return {ElementKind::Ray, anchor, ray_number, depth};
    }
    static Element fan(Index anchor, std::size_t line_length, std::uint64_t depth) {
        return {ElementKind::Fan, anchor, line_length, depth};
    }
    static Element forward(Index port, std::uint64_t depth) { return {ElementKind::Forward, port, 0, depth}; }

    [[nodiscard]] bool is_skeleton() const noexcept { return kind == ElementKind::Skeleton; }

    auto operator<=>(const Element&) const = default;
};

/// Renders an element as `x`, `ray(x,r,j)`, `fan(x,L,j)` or `fwd(x,k)`; node
/// names come from `name` (decimal indices when empty).
std::string format_element(const Element& e, const std::function<std::string(Index)>& name = {});

struct CycleTerminal {
    std::size_t length = 0;
    bool operator==(const CycleTerminal&) const = default;
};
struct ForwardRayTerminal {
    Index port = 0;
    bool operator==(const ForwardRayTerminal&) const = default;
};
using TerminalKind = std::variant<CycleTerminal, ForwardRayTerminal>;

class Presentation;

/// Collects skeleton edges and annotations; build() validates.
class PresentationBuilder {
public:
    explicit PresentationBuilder(std::size_t nodes);

    PresentationBuilder& edge(Index from, Index to);
    PresentationBuilder& port(Index node);
    PresentationBuilder& ray(Index node, std::size_t count = 1);
    PresentationBuilder& fan(Index node);

    /// Throws OutOfRange for bad indices and DanglingPort when a node is both
    /// a port and has an edge, or has neither.
    [[nodiscard]] Presentation build() const;

private:
    friend class Presentation;
    std::size_t size_;
    std::vector<std::vector<Index>> out_;
    std::vector<Index> ports_;
    std::vector<std::pair<Index, std::size_t>> rays_;
    std::vector<Index> fans_;
};

class Presentation {
public:
    /// The empty presentation.
    Presentation() = default;
    static Presentation from_algebra(const FiniteAlgebra& a);

    [[nodiscard]] std::size_t skeleton_size() const noexcept { return succ_.size(); }
    [[nodiscard]] std::optional<Index> succ(Index x) const;
    [[nodiscard]] bool is_port(Index x) const;
    [[nodiscard]] std::size_t rays(Index x) const;
    [[nodiscard]] bool has_fan(Index x) const;

    [[nodiscard]] std::size_t ray_count() const noexcept;
    [[nodiscard]] std::size_t fan_count() const noexcept;
    [[nodiscard]] std::size_t port_count() const noexcept;
    [[nodiscard]] bool annotation_free() const noexcept;
    /// The skeleton as a finite algebra; only for annotation-free presentations.
    [[nodiscard]] FiniteAlgebra as_finite() const;

    [[nodiscard]] bool contains(const Element& e) const;
    /// The true successor in the denoted (possibly infinite) algebra.
    [[nodiscard]] Element successor(const Element& e) const;
    /// Immediate skeleton predecessors, ascending.
    [[nodiscard]] const std::vector<Index>& skeleton_predecessors(Index x) const;

    [[nodiscard]] std::size_t component_count() const noexcept { return components_.size(); }
    [[nodiscard]] std::size_t component(Index x) const;
    /// Skeleton nodes of component c, ascending; components ordered by lowest node.
    [[nodiscard]] const std::vector<Index>& component_nodes(std::size_t c) const;
    [[nodiscard]] TerminalKind terminal_kind(std::size_t c) const;
    [[nodiscard]] bool on_cycle(Index x) const;
    /// Skeleton steps from x to its cycle or to its port.
    [[nodiscard]] std::size_t distance_to_terminal(Index x) const;
    /// Cycle nodes of component c in f-order from the lowest index (empty for ray components).
    [[nodiscard]] const std::vector<Index>& cycle_nodes(std::size_t c) const;

    bool operator==(const Presentation& other) const {
        return succ_ == other.succ_ && rays_ == other.rays_ && fans_ == other.fans_;
    }

private:
    friend class PresentationBuilder;
    void analyse();
    void check(Index x) const;

    std::vector<std::optional<Index>> succ_;
    std::vector<std::size_t> rays_;
    std::vector<bool> fans_;

    std::vector<std::vector<Index>> preds_;
    std::vector<std::size_t> component_;
    std::vector<std::vector<Index>> components_;
    std::vector<std::vector<Index>> cycles_;  // per component
    std::vector<bool> on_cycle_;
    std::vector<std::size_t> distance_;
};

/// Checks a presentation's invariants; build() already does this.
void validate(const Presentation& p);

/// A depth-d truncation of a presentation, with provenance for every node.
struct UnfoldMap {
    FiniteAlgebra truncated;
    std::vector<Element> origin;
    std::uint64_t horizon = 0;

    [[nodiscard]] std::optional<Index> index_of(const Element& e) const;
    /// Last node of a truncated forward ray; its self-loop is an artefact.
    [[nodiscard]] bool is_truncation_boundary(Index i) const;

    std::map<Element, Index> lookup;
};

inline constexpr std::size_t kDefaultUnfoldCap = std::size_t{1} << 22;

/// Materialises rays as chains of length d, fans as lines of length 1..d and
/// forward rays as chains of length d ending in a self-loop.
UnfoldMap unfold(const Presentation& p, std::uint64_t depth, std::size_t cap = kDefaultUnfoldCap);

/// Size of unfold(p, depth) without building it; throws Overflow past `cap`.
std::size_t unfolded_size(const Presentation& p, std::uint64_t depth, std::size_t cap = kDefaultUnfoldCap);

}  // namespace muna
