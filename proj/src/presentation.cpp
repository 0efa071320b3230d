#include "muna/presentation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "muna/error.hpp"

namespace muna {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::string index_name(Index x, const std::function<std::string(Index)>& name) {
    return name ? name(x) : std::to_string(x);
}

}  // namespace

std::string format_element(const Element& e, const std::function<std::string(Index)>& name) {
    const std::string anchor = index_name(e.node, name);
    switch (e.kind) {
        case ElementKind::Skeleton: return anchor;
        case ElementKind::Ray:
            return "ray(" + anchor + "," + std::to_string(e.family) + "," + std::to_string(e.depth) + ")";
        case ElementKind::Fan:
            return "fan(" + anchor + "," + std::to_string(e.family) + "," + std::to_string(e.depth) + ")";
        case ElementKind::Forward: return "fwd(" + anchor + "," + std::to_string(e.depth) + ")";
    }
    return anchor;
}

// ---------------------------------------------------------------- builder

PresentationBuilder::PresentationBuilder(std::size_t nodes) : size_(nodes), out_(nodes) {}

PresentationBuilder& PresentationBuilder::edge(Index from, Index to) {
    if (from >= size_) {
        throw Error(ErrorKind::OutOfRange, "edge source " + std::to_string(from) + " outside skeleton of size " +
                                               std::to_string(size_));
    }
    out_[from].push_back(to);
    return *this;
}

PresentationBuilder& PresentationBuilder::port(Index node) {
    ports_.push_back(node);
    return *this;
}

PresentationBuilder& PresentationBuilder::ray(Index node, std::size_t count) {
    rays_.emplace_back(node, count);
    return *this;
}

PresentationBuilder& PresentationBuilder::fan(Index node) {
    fans_.push_back(node);
    return *this;
}

Presentation PresentationBuilder::build() const {
    auto range = [&](Index x, const char* what) {
        if (x >= size_) {
            throw Error(ErrorKind::OutOfRange, std::string(what) + " " + std::to_string(x) +
                                                   " outside skeleton of size " + std::to_string(size_));
        }
    };

    Presentation p;
    p.succ_.assign(size_, std::nullopt);
    p.rays_.assign(size_, 0);
    p.fans_.assign(size_, false);

    std::vector<bool> is_port(size_, false);
    for (Index x : ports_) {
        range(x, "port");
        is_port[x] = true;
    }
    for (Index x = 0; x < size_; ++x) {
        if (out_[x].size() > 1) {
            throw Error(ErrorKind::InvalidArgument, "node " + std::to_string(x) + " has more than one out-edge");
        }
        if (out_[x].size() == 1) {
            range(out_[x][0], "edge target");
            if (is_port[x]) {
                throw Error(ErrorKind::DanglingPort, "port " + std::to_string(x) + " also has an out-edge");
            }
            p.succ_[x] = out_[x][0];
        } else if (!is_port[x]) {
            throw Error(ErrorKind::DanglingPort,
                        "node " + std::to_string(x) + " has no out-edge and is not declared a port");
        }
    }
    for (auto [x, count] : rays_) {
        range(x, "ray anchor");
        p.rays_[x] += count;
    }
    for (Index x : fans_) {
        range(x, "fan anchor");
        p.fans_[x] = true;
    }
    p.analyse();
    return p;
}

// ---------------------------------------------------------------- Presentation

Presentation Presentation::from_algebra(const FiniteAlgebra& a) {
    PresentationBuilder b(a.size());
    for (Index x = 0; x < a.size(); ++x) b.edge(x, a.succ(x));
    return b.build();
}

void Presentation::analyse() {
    const std::size_t n = succ_.size();
    preds_.assign(n, {});
    for (Index x = 0; x < n; ++x) {
        if (succ_[x]) preds_[*succ_[x]].push_back(x);
    }

    // Union-find over skeleton edges.
    std::vector<Index> parent(n);
    std::iota(parent.begin(), parent.end(), Index{0});
    auto find = [&](Index x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Index x = 0; x < n; ++x) {
        if (succ_[x]) {
            Index a = find(x), b = find(*succ_[x]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    component_.assign(n, kNone);
    components_.clear();
    std::vector<std::size_t> root_id(n, kNone);
    for (Index x = 0; x < n; ++x) {
        Index r = find(x);
        if (root_id[r] == kNone) {
            root_id[r] = components_.size();
            components_.emplace_back();
        }
        component_[x] = root_id[r];
        components_[component_[x]].push_back(x);
    }

    // Cycles: walk each orbit until it revisits the current path or stops at a port.
    on_cycle_.assign(n, false);
    cycles_.assign(components_.size(), {});
    std::vector<std::uint8_t> state(n, 0);
    std::vector<Index> path;
    for (Index s = 0; s < n; ++s) {
        if (state[s] != 0) continue;
        path.clear();
        std::optional<Index> x = s;
        while (x && state[*x] == 0) {
            state[*x] = 1;
            path.push_back(*x);
            x = succ_[*x];
        }
        if (x && state[*x] == 1) {
            auto start = std::find(path.begin(), path.end(), *x);
            std::vector<Index> cyc(start, path.end());
            std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
            for (Index c : cyc) on_cycle_[c] = true;
            cycles_[component_[*x]] = std::move(cyc);
        }
        for (Index p : path) state[p] = 2;
    }

    // Distances to the terminal: BFS backwards from cycle nodes and ports.
    distance_.assign(n, kNone);
    std::vector<Index> frontier;
    for (Index x = 0; x < n; ++x) {
        if (on_cycle_[x] || !succ_[x]) {
            distance_[x] = 0;
            frontier.push_back(x);
        }
    }
    while (!frontier.empty()) {
        std::vector<Index> next;
        for (Index x : frontier) {
            for (Index p : preds_[x]) {
                if (distance_[p] == kNone) {
                    distance_[p] = distance_[x] + 1;
                    next.push_back(p);
                }
            }
        }
        frontier = std::move(next);
    }
}

void Presentation::check(Index x) const {
    if (x >= succ_.size()) {
        throw Error(ErrorKind::OutOfRange,
                    "node " + std::to_string(x) + " outside skeleton of size " + std::to_string(succ_.size()));
    }
}

std::optional<Index> Presentation::succ(Index x) const {
    check(x);
    return succ_[x];
}

bool Presentation::is_port(Index x) const {
    check(x);
    return !succ_[x].has_value();
}

std::size_t Presentation::rays(Index x) const {
    check(x);
    return rays_[x];
}

bool Presentation::has_fan(Index x) const {
    check(x);
    return fans_[x];
}

std::size_t Presentation::ray_count() const noexcept { return std::accumulate(rays_.begin(), rays_.end(), std::size_t{0}); }

std::size_t Presentation::fan_count() const noexcept {
    return static_cast<std::size_t>(std::count(fans_.begin(), fans_.end(), true));
}

std::size_t Presentation::port_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(succ_.begin(), succ_.end(), [](const auto& s) { return !s.has_value(); }));
}

bool Presentation::annotation_free() const noexcept { return ray_count() == 0 && fan_count() == 0 && port_count() == 0; }

FiniteAlgebra Presentation::as_finite() const {
    if (!annotation_free()) throw Error(ErrorKind::InvalidArgument, "presentation carries rays, fans or ports");
    std::vector<Index> succ(succ_.size());
    for (Index x = 0; x < succ_.size(); ++x) succ[x] = *succ_[x];
    return FiniteAlgebra::make(std::move(succ));
}

bool Presentation::contains(const Element& e) const {
    if (e.node >= succ_.size()) return false;
    switch (e.kind) {
        case ElementKind::Skeleton: return e.family == 0 && e.depth == 0;
        case ElementKind::Ray: return e.family < rays_[e.node] && e.depth >= 1;
        case ElementKind::Fan: return fans_[e.node] && e.depth >= 1 && e.depth <= e.family;
        case ElementKind::Forward: return !succ_[e.node] && e.family == 0 && e.depth >= 1;
    }
    return false;
}

Element Presentation::successor(const Element& e) const {
    if (!contains(e)) throw Error(ErrorKind::OutOfRange, "element " + format_element(e) + " is not in the algebra");
    switch (e.kind) {
        case ElementKind::Skeleton:
            return succ_[e.node] ? Element::skeleton(*succ_[e.node]) : Element::forward(e.node, 1);
        case ElementKind::Ray:
            return e.depth == 1 ? Element::skeleton(e.node) : Element::ray(e.node, e.family, e.depth - 1);
        case ElementKind::Fan:
            return e.depth == 1 ? Element::skeleton(e.node) : Element::fan(e.node, e.family, e.depth - 1);
        case ElementKind::Forward: return Element::forward(e.node, e.depth + 1);
    }
    return e;
}

const std::vector<Index>& Presentation::skeleton_predecessors(Index x) const {
    check(x);
    return preds_[x];
}

std::size_t Presentation::component(Index x) const {
    check(x);
    return component_[x];
}

const std::vector<Index>& Presentation::component_nodes(std::size_t c) const {
    if (c >= components_.size()) throw Error(ErrorKind::OutOfRange, "no component " + std::to_string(c));
    return components_[c];
}

TerminalKind Presentation::terminal_kind(std::size_t c) const {
    const auto& nodes = component_nodes(c);
    if (!cycles_[c].empty()) return CycleTerminal{cycles_[c].size()};
    for (Index x : nodes) {
        if (!succ_[x]) return ForwardRayTerminal{x};
    }
    throw Error(ErrorKind::DanglingPort, "component " + std::to_string(c) + " has neither cycle nor port");
}

bool Presentation::on_cycle(Index x) const {
    check(x);
    return on_cycle_[x];
}

std::size_t Presentation::distance_to_terminal(Index x) const {
    check(x);
    return distance_[x];
}

const std::vector<Index>& Presentation::cycle_nodes(std::size_t c) const {
    if (c >= components_.size()) throw Error(ErrorKind::OutOfRange, "no component " + std::to_string(c));
    return cycles_[c];
}

void validate(const Presentation& p) {
    const std::size_t n = p.skeleton_size();
    for (std::size_t c = 0; c < p.component_count(); ++c) {
        std::size_t ports = 0;
        for (Index x : p.component_nodes(c)) {
            if (auto s = p.succ(x); s && *s >= n) throw Error(ErrorKind::OutOfRange, "successor out of range");
            if (p.is_port(x)) ++ports;
        }
        const bool cyclic = !p.cycle_nodes(c).empty();
        // Each component ends in exactly one cycle or exactly one port.
        if ((cyclic && ports != 0) || (!cyclic && ports != 1)) {
            throw Error(ErrorKind::DanglingPort, "component " + std::to_string(c) + " has " + std::to_string(ports) +
                                                     " ports and " + (cyclic ? "a" : "no") + " cycle");
        }
    }
}

// ---------------------------------------------------------------- unfolding

std::optional<Index> UnfoldMap::index_of(const Element& e) const {
    auto it = lookup.find(e);
    if (it == lookup.end()) return std::nullopt;
    return it->second;
}

bool UnfoldMap::is_truncation_boundary(Index i) const {
    return origin.at(i).kind == ElementKind::Forward && origin[i].depth == horizon;
}

std::size_t unfolded_size(const Presentation& p, std::uint64_t depth, std::size_t cap) {
    auto overflow = [&] {
        throw Error(ErrorKind::Overflow, "unfolding at depth " + std::to_string(depth) + " exceeds cap " +
                                             std::to_string(cap));
    };
    auto mul = [&](std::uint64_t a, std::uint64_t b) {
        if (a != 0 && b > cap / a) overflow();
        return a * b;
    };
    std::uint64_t total = p.skeleton_size();
    const std::uint64_t triangle = depth % 2 == 0 ? mul(depth / 2, depth + 1) : mul(depth, (depth + 1) / 2);
    for (const std::uint64_t part : {mul(p.ray_count(), depth), mul(p.fan_count(), triangle),
                                     mul(p.port_count(), depth)}) {
        total += part;
        if (total > cap) overflow();
    }
    return static_cast<std::size_t>(total);
}

UnfoldMap unfold(const Presentation& p, std::uint64_t depth, std::size_t cap) {
    if (depth == 0) throw Error(ErrorKind::InvalidArgument, "unfold depth must be at least 1");
    const std::size_t total = unfolded_size(p, depth, cap);

    UnfoldMap out;
    out.horizon = depth;
    out.origin.reserve(total);
    for (Index x = 0; x < p.skeleton_size(); ++x) out.origin.push_back(Element::skeleton(x));
    for (Index x = 0; x < p.skeleton_size(); ++x) {
        for (std::size_t r = 0; r < p.rays(x); ++r) {
            for (std::uint64_t j = 1; j <= depth; ++j) out.origin.push_back(Element::ray(x, r, j));
        }
        if (p.has_fan(x)) {
            for (std::uint64_t len = 1; len <= depth; ++len) {
                for (std::uint64_t j = 1; j <= len; ++j) out.origin.push_back(Element::fan(x, len, j));
            }
        }
        if (p.is_port(x)) {
            for (std::uint64_t k = 1; k <= depth; ++k) out.origin.push_back(Element::forward(x, k));
        }
    }
    for (Index i = 0; i < out.origin.size(); ++i) out.lookup.emplace(out.origin[i], i);

    std::vector<Index> succ(out.origin.size());
    for (Index i = 0; i < out.origin.size(); ++i) {
        const Element& e = out.origin[i];
        if (e.kind == ElementKind::Forward && e.depth == depth) {
            succ[i] = i;
        } else {
            succ[i] = out.lookup.at(p.successor(e));
        }
    }
    out.truncated = FiniteAlgebra::make(std::move(succ));
    return out;
}

}  // namespace muna
