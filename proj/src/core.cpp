#include "muna/core.hpp"

#include <algorithm>
#include <deque>
#include <iterator>
#include <limits>
#include <numeric>
#include <string>

#include "muna/error.hpp"

namespace muna {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_node(const FiniteAlgebra& a, Index x) {
    if (x >= a.size()) {
        throw Error(ErrorKind::OutOfRange,
                    "node " + std::to_string(x) + " outside algebra of size " + std::to_string(a.size()));
    }
}

}  // namespace

// ---------------------------------------------------------------- NodeSet

NodeSet::NodeSet(std::vector<Index> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool NodeSet::contains(Index x) const { return std::binary_search(members_.begin(), members_.end(), x); }

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
    std::vector<Index> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NodeSet(std::move(out));
}

NodeSet set_intersection(const NodeSet& a, const NodeSet& b) {
    std::vector<Index> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NodeSet(std::move(out));
}

NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
    std::vector<Index> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NodeSet(std::move(out));
}

// ---------------------------------------------------------------- FiniteAlgebra

struct FiniteAlgebra::Structure {
    std::vector<std::size_t> component;
    std::vector<std::size_t> tail;
    std::vector<std::size_t> position;  // kNone off-cycle
    std::vector<std::vector<Index>> cycles;
    std::vector<std::size_t> pred_offsets;
    std::vector<Index> preds;

    explicit Structure(std::span<const Index> succ) {
        const std::size_t n = succ.size();

        pred_offsets.assign(n + 1, 0);
        for (Index x = 0; x < n; ++x) ++pred_offsets[succ[x] + 1];
        std::partial_sum(pred_offsets.begin(), pred_offsets.end(), pred_offsets.begin());
        preds.resize(n);
        std::vector<std::size_t> fill(pred_offsets.begin(), pred_offsets.end() - 1);
        for (Index x = 0; x < n; ++x) preds[fill[succ[x]]++] = x;

        // Cycle discovery by walking each orbit once.
        std::vector<std::uint8_t> state(n, 0);
        std::vector<std::vector<Index>> found;
        std::vector<Index> path;
        for (Index s = 0; s < n; ++s) {
            if (state[s] != 0) continue;
            path.clear();
            Index x = s;
            while (state[x] == 0) {
                state[x] = 1;
                path.push_back(x);
                x = succ[x];
            }
            if (state[x] == 1) {
                auto start = std::find(path.begin(), path.end(), x);
                std::vector<Index> cyc(start, path.end());
                std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
                found.push_back(std::move(cyc));
            }
            for (Index p : path) state[p] = 2;
        }

        // Reverse BFS from every cycle assigns components and tail lengths.
        std::vector<std::size_t> raw(n, kNone);
        tail.assign(n, 0);
        position.assign(n, kNone);
        std::deque<Index> queue;
        for (std::size_t c = 0; c < found.size(); ++c) {
            for (std::size_t i = 0; i < found[c].size(); ++i) {
                Index x = found[c][i];
                raw[x] = c;
                position[x] = i;
                queue.push_back(x);
            }
        }
        while (!queue.empty()) {
            Index x = queue.front();
            queue.pop_front();
            for (std::size_t k = pred_offsets[x]; k < pred_offsets[x + 1]; ++k) {
                Index p = preds[k];
                if (raw[p] != kNone) continue;
                raw[p] = raw[x];
                tail[p] = tail[x] + 1;
                queue.push_back(p);
            }
        }

        std::vector<Index> lowest(found.size(), kNone);
        for (Index x = 0; x < n; ++x) lowest[raw[x]] = std::min(lowest[raw[x]], x);
        std::vector<std::size_t> order(found.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lowest[a] < lowest[b]; });
        std::vector<std::size_t> rename(found.size());
        for (std::size_t i = 0; i < order.size(); ++i) rename[order[i]] = i;

        component.resize(n);
        for (Index x = 0; x < n; ++x) component[x] = rename[raw[x]];
        cycles.resize(found.size());
        for (std::size_t c = 0; c < found.size(); ++c) cycles[rename[c]] = std::move(found[c]);
    }
};

FiniteAlgebra::FiniteAlgebra() : cache_(std::make_shared<Cache>()) {}

FiniteAlgebra::FiniteAlgebra(std::vector<Index> succ) : succ_(std::move(succ)), cache_(std::make_shared<Cache>()) {}

FiniteAlgebra FiniteAlgebra::make(std::vector<Index> succ) {
    const std::size_t n = succ.size();
    for (std::size_t x = 0; x < n; ++x) {
        if (succ[x] >= n) {
            throw Error(ErrorKind::OutOfRange, "image of " + std::to_string(x) + " is " + std::to_string(succ[x]) +
                                                   ", outside {0.." + std::to_string(n) + "-1}");
        }
    }
    return FiniteAlgebra(std::move(succ));
}

const FiniteAlgebra::Structure& FiniteAlgebra::structure() const {
    std::call_once(cache_->once, [this] { cache_->data = std::make_unique<const Structure>(succ_); });
    return *cache_->data;
}

void FiniteAlgebra::check(Index x) const { require_node(*this, x); }

Index FiniteAlgebra::succ(Index x) const {
    check(x);
    return succ_[x];
}

bool FiniteAlgebra::on_cycle(Index x) const {
    check(x);
    return structure().position[x] != kNone;
}

std::size_t FiniteAlgebra::tail_length(Index x) const {
    check(x);
    return structure().tail[x];
}

std::size_t FiniteAlgebra::cycle_length(Index x) const {
    check(x);
    const auto& s = structure();
    return s.cycles[s.component[x]].size();
}

std::size_t FiniteAlgebra::component(Index x) const {
    check(x);
    return structure().component[x];
}

std::size_t FiniteAlgebra::component_count() const { return structure().cycles.size(); }

std::span<const Index> FiniteAlgebra::cycle_nodes(std::size_t c) const {
    const auto& s = structure();
    if (c >= s.cycles.size()) throw Error(ErrorKind::OutOfRange, "no component " + std::to_string(c));
    return s.cycles[c];
}

std::size_t FiniteAlgebra::cycle_position(Index x) const {
    check(x);
    return structure().position[x];
}

std::span<const Index> FiniteAlgebra::predecessors(Index x) const {
    check(x);
    const auto& s = structure();
    return std::span<const Index>(s.preds).subspan(s.pred_offsets[x], s.pred_offsets[x + 1] - s.pred_offsets[x]);
}

// ---------------------------------------------------------------- constructors

FiniteAlgebra line(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::BadArity, "line(0) is undefined");
    std::vector<Index> succ(n);
    for (Index x = 0; x < n; ++x) succ[x] = x == 0 ? 0 : x - 1;
    return FiniteAlgebra::make(std::move(succ));
}

FiniteAlgebra cycle(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::BadArity, "cycle(0) is undefined");
    std::vector<Index> succ(n);
    for (Index x = 0; x < n; ++x) succ[x] = (x + 1) % n;
    return FiniteAlgebra::make(std::move(succ));
}

FiniteAlgebra trivial(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::BadArity, "trivial(0) is undefined");
    std::vector<Index> succ(n);
    std::iota(succ.begin(), succ.end(), Index{0});
    return FiniteAlgebra::make(std::move(succ));
}

FiniteAlgebra disjoint_union(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    std::vector<Index> succ(a.table().begin(), a.table().end());
    for (Index y : b.table()) succ.push_back(y + a.size());
    return FiniteAlgebra::make(std::move(succ));
}

// ---------------------------------------------------------------- operations

Index image(const FiniteAlgebra& a, Index x, std::uint64_t n) {
    require_node(a, x);
    const std::size_t tail = a.tail_length(x);
    if (n <= tail) {
        for (std::uint64_t i = 0; i < n; ++i) x = a.succ(x);
        return x;
    }
    for (std::size_t i = 0; i < tail; ++i) x = a.succ(x);
    auto nodes = a.cycle_nodes(a.component(x));
    const std::uint64_t shift = (n - tail) % nodes.size();
    return nodes[(a.cycle_position(x) + shift) % nodes.size()];
}

NodeSet preimage(const FiniteAlgebra& a, Index x, std::uint64_t n) {
    require_node(a, x);
    // Beyond |A| steps the level sets are empty off-cycle and periodic on it.
    if (n > a.size()) {
        if (!a.on_cycle(x)) return {};
        n = a.size() + (n - a.size()) % a.cycle_length(x);
    }
    std::vector<Index> level{x};
    std::vector<std::uint8_t> mark(a.size(), 0);
    for (std::uint64_t step = 0; step < n && !level.empty(); ++step) {
        std::vector<Index> next;
        for (Index y : level) {
            for (Index p : a.predecessors(y)) {
                if (!mark[p]) {
                    mark[p] = 1;
                    next.push_back(p);
                }
            }
        }
        for (Index p : next) mark[p] = 0;
        level = std::move(next);
    }
    return NodeSet(std::move(level));
}

NodeSet bn_set(const FiniteAlgebra& a, Index x, std::uint64_t n) {
    require_node(a, x);
    if (n >= a.size()) return n == 0 ? NodeSet{x} : NodeSet{};
    // Breadth-first search on reversed edges yields first-arrival distances.
    std::vector<std::uint8_t> seen(a.size(), 0);
    std::vector<Index> level{x};
    seen[x] = 1;
    for (std::uint64_t step = 0; step < n && !level.empty(); ++step) {
        std::vector<Index> next;
        for (Index y : level) {
            for (Index p : a.predecessors(y)) {
                if (!seen[p]) {
                    seen[p] = 1;
                    next.push_back(p);
                }
            }
        }
        level = std::move(next);
    }
    return NodeSet(std::move(level));
}

std::vector<NodeSet> components(const FiniteAlgebra& a) {
    std::vector<std::vector<Index>> parts(a.component_count());
    for (Index x = 0; x < a.size(); ++x) parts[a.component(x)].push_back(x);
    std::vector<NodeSet> out;
    out.reserve(parts.size());
    for (auto& p : parts) out.emplace_back(std::move(p));
    return out;
}

std::vector<Index> cycle_of(const FiniteAlgebra& a, const NodeSet& component) {
    if (component.empty()) throw Error(ErrorKind::InvalidArgument, "cycle_of needs a non-empty component");
    auto nodes = a.cycle_nodes(a.component(*component.begin()));
    return {nodes.begin(), nodes.end()};
}

NodeSet generated(const FiniteAlgebra& a, const NodeSet& s) {
    std::vector<std::uint8_t> in(a.size(), 0);
    std::vector<Index> out;
    for (Index x : s) {
        require_node(a, x);
        while (!in[x]) {
            in[x] = 1;
            out.push_back(x);
            x = a.succ(x);
        }
    }
    return NodeSet(std::move(out));
}

ProductAlgebra product(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    std::vector<Index> succ(a.size() * b.size());
    for (Index x = 0; x < a.size(); ++x) {
        for (Index y = 0; y < b.size(); ++y) succ[x * b.size() + y] = a.succ(x) * b.size() + b.succ(y);
    }
    return ProductAlgebra{FiniteAlgebra::make(std::move(succ)), a.size(), b.size()};
}

Trichotomy trichotomy(const FiniteAlgebra& a, Index x, Index y) {
    require_node(a, x);
    require_node(a, y);
    if (x == y) throw Error(ErrorKind::InvalidArgument, "trichotomy needs distinct nodes");
    if (a.component(x) != a.component(y)) {
        throw Error(ErrorKind::NotConnected,
                    "nodes " + std::to_string(x) + " and " + std::to_string(y) + " lie in different components");
    }

    // Orbit prefixes long enough to cover tail plus one full lap of the cycle.
    auto orbit = [&](Index s) {
        std::vector<std::uint64_t> first(a.size(), std::numeric_limits<std::uint64_t>::max());
        std::vector<Index> seq;
        Index z = s;
        for (std::uint64_t i = 0; first[z] == std::numeric_limits<std::uint64_t>::max(); ++i) {
            first[z] = i;
            seq.push_back(z);
            z = a.succ(z);
        }
        return std::pair{std::move(first), std::move(seq)};
    };
    auto [first_x, seq_x] = orbit(x);
    auto [first_y, seq_y] = orbit(y);
    constexpr auto kMissing = std::numeric_limits<std::uint64_t>::max();

    const std::uint64_t x_to_y = first_x[y];
    const std::uint64_t y_to_x = first_y[x];
    if (x_to_y != kMissing || y_to_x != kMissing) {
        const bool take_x = x_to_y < y_to_x || (x_to_y == y_to_x && x < y);
        return take_x ? ForwardRelated{x, y, x_to_y} : ForwardRelated{y, x, y_to_x};
    }

    DisjointBackcones best{0, kMissing, kMissing};
    for (std::uint64_t i = 0; i < seq_x.size(); ++i) {
        const std::uint64_t j = first_y[seq_x[i]];
        if (j == kMissing) continue;
        const bool better = i + j < best.left_steps + best.right_steps ||
                            (i + j == best.left_steps + best.right_steps && i < best.left_steps);
        if (best.left_steps == kMissing || better) best = {seq_x[i], i, j};
    }
    return best;
}

bool is_homomorphism(const FiniteAlgebra& from, const FiniteAlgebra& to, std::span<const Index> map) {
    if (map.size() != from.size()) {
        throw Error(ErrorKind::OutOfRange, "map covers " + std::to_string(map.size()) + " of " +
                                               std::to_string(from.size()) + " nodes");
    }
    for (Index v : map) {
        if (v >= to.size()) throw Error(ErrorKind::OutOfRange, "map value " + std::to_string(v) + " outside codomain");
    }
    for (Index x = 0; x < from.size(); ++x) {
        if (map[from.succ(x)] != to.succ(map[x])) return false;
    }
    return true;
}

}  // namespace muna
