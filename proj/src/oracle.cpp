#include "muna/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

#include "muna/analysis.hpp"
#include "muna/error.hpp"

namespace muna::oracle {

Caps Caps::from_env() {
    Caps caps;
    if (const char* env = std::getenv("MUNA_CAP")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) caps.codomain = v;
    }
    return caps;
}

// ---------------------------------------------------------------- homomorphisms

namespace {

constexpr Index kUnset = static_cast<Index>(-1);

/// Backtracking over images of the nodes in `order`; each choice is pushed
/// forward along f until it meets an assigned node.
class HomSearch {
public:
    HomSearch(const FiniteAlgebra& a, const FiniteAlgebra& f) : a_(a), f_(f), map_(a.size(), kUnset) {
        // Sources first: their forward orbits force most of the map.
        for (Index x = 0; x < a.size(); ++x) {
            if (a.predecessors(x).empty()) order_.push_back(x);
        }
        for (Index x = 0; x < a.size(); ++x) {
            if (!a.predecessors(x).empty()) order_.push_back(x);
        }
    }

    template <typename Visit>
    void run(Visit&& visit) {
        if (f_.empty()) {
            if (a_.empty()) visit(map_);
            return;
        }
        descend(0, visit);
    }

private:
    template <typename Visit>
    void descend(std::size_t pos, Visit& visit) {
        while (pos < order_.size() && map_[order_[pos]] != kUnset) ++pos;
        if (pos == order_.size()) {
            visit(map_);
            return;
        }
        const Index x = order_[pos];
        for (Index v = 0; v < f_.size(); ++v) {
            const std::size_t mark = trail_.size();
            if (assign(x, v)) descend(pos + 1, visit);
            while (trail_.size() > mark) {
                map_[trail_.back()] = kUnset;
                trail_.pop_back();
            }
        }
    }

    bool assign(Index x, Index v) {
        while (map_[x] == kUnset) {
            map_[x] = v;
            trail_.push_back(x);
            x = a_.succ(x);
            v = f_.succ(v);
        }
        return map_[x] == v;
    }

    const FiniteAlgebra& a_;
    const FiniteAlgebra& f_;
    std::vector<Index> map_;
    std::vector<Index> order_;
    std::vector<Index> trail_;
};

void check_caps(const FiniteAlgebra& a, std::size_t domain_cap, std::size_t codomain_size, std::size_t codomain_cap) {
    if (a.size() > domain_cap) {
        throw Error(ErrorKind::CapExceeded,
                    "domain of size " + std::to_string(a.size()) + " exceeds cap " + std::to_string(domain_cap));
    }
    if (codomain_size > codomain_cap) {
        throw Error(ErrorKind::CapExceeded,
                    "codomain of size " + std::to_string(codomain_size) + " exceeds cap " + std::to_string(codomain_cap));
    }
}

/// Odometer over succ tables on n nodes, last entry fastest.
bool next_table(std::vector<Index>& t, std::size_t n) {
    for (std::size_t i = t.size(); i-- > 0;) {
        if (++t[i] < n) return true;
        t[i] = 0;
    }
    return false;
}

}  // namespace

std::vector<std::vector<Index>> enumerate_homs(const FiniteAlgebra& a, const FiniteAlgebra& f, const Caps& caps) {
    check_caps(a, caps.domain, f.size(), caps.codomain);
    std::vector<std::vector<Index>> out;
    HomSearch(a, f).run([&](const std::vector<Index>& m) { out.push_back(m); });
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<BruteWitness> brute_separable(const FiniteAlgebra& a, Index x, Index y, std::size_t codomain_cap,
                                            std::size_t domain_cap) {
    check_caps(a, domain_cap, 0, codomain_cap);
    if (x >= a.size() || y >= a.size()) throw Error(ErrorKind::OutOfRange, "node not in algebra");
    for (std::size_t s = 1; s <= codomain_cap; ++s) {
        std::vector<Index> table(s, 0);
        do {
            const FiniteAlgebra f = FiniteAlgebra::make(table);
            std::optional<std::vector<Index>> best;
            HomSearch(a, f).run([&](const std::vector<Index>& m) {
                if (m[x] != m[y] && (!best || m < *best)) best = m;
            });
            if (best) return BruteWitness{f, std::move(*best)};
        } while (next_table(table, s));
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- enumeration

std::vector<Index> canonical_form(const FiniteAlgebra& a) {
    const std::size_t n = a.size();
    if (n > 6) throw Error(ErrorKind::CapExceeded, "canonical form limited to 6 nodes");
    std::vector<Index> perm(n);
    std::iota(perm.begin(), perm.end(), Index{0});
    std::vector<Index> best(a.table().begin(), a.table().end());
    std::vector<Index> relabelled(n);
    do {
        for (Index i = 0; i < n; ++i) relabelled[perm[i]] = perm[a.succ(i)];
        if (relabelled < best) best = relabelled;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

AlgebraEnumerator::AlgebraEnumerator(std::size_t n, bool dedupe) : n_(n), dedupe_(dedupe), table_(n, 0) {
    if (n > 6) throw Error(ErrorKind::CapExceeded, "algebra enumeration limited to 6 nodes");
}

std::optional<FiniteAlgebra> AlgebraEnumerator::next() {
    while (!done_) {
        FiniteAlgebra a = FiniteAlgebra::make(table_);
        done_ = !next_table(table_, n_);
        // A canonical table is its own canonical form.
        if (!dedupe_ || canonical_form(a) == std::vector<Index>(a.table().begin(), a.table().end())) return a;
    }
    return std::nullopt;
}

std::vector<FiniteAlgebra> enumerate_algebras(std::size_t n, bool dedupe) {
    std::vector<FiniteAlgebra> out;
    AlgebraEnumerator e(n, dedupe);
    while (auto a = e.next()) out.push_back(std::move(*a));
    return out;
}

// ---------------------------------------------------------------- reports

void Report::add(bool pass, std::string identity, std::string where) {
    lines.push_back({pass, std::move(identity), std::move(where)});
}

void Report::append(const Report& other) { lines.insert(lines.end(), other.lines.begin(), other.lines.end()); }

std::size_t Report::failures() const {
    return static_cast<std::size_t>(std::count_if(lines.begin(), lines.end(), [](const CheckLine& l) { return !l.pass; }));
}

void Report::write(std::ostream& out) const {
    for (const CheckLine& l : lines) out << (l.pass ? "PASS " : "FAIL ") << l.identity << ' ' << l.where << '\n';
    out << "summary: " << lines.size() << " checks, " << failures() << " failures\n";
}

namespace {

std::string name_of(const std::function<std::string(Index)>& name, Index x) {
    return name ? name(x) : std::to_string(x);
}

/// f^-n(x) for n = 0..n_max by direct iteration of every node.
std::vector<NodeSet> scan_preimages(const FiniteAlgebra& a, Index x, std::uint64_t n_max) {
    std::vector<std::vector<Index>> sets(n_max + 1);
    for (Index y = 0; y < a.size(); ++y) {
        Index z = y;
        for (std::uint64_t n = 0; n <= n_max; ++n, z = a.succ(z)) {
            if (z == x) sets[n].push_back(y);
        }
    }
    std::vector<NodeSet> out;
    for (auto& s : sets) out.emplace_back(std::move(s));
    return out;
}

NodeSet image_set(const FiniteAlgebra& a, const NodeSet& s, std::uint64_t n) {
    std::vector<Index> out;
    for (Index y : s) out.push_back(image(a, y, n));
    return NodeSet(std::move(out));
}

std::string at(const std::string& x, std::uint64_t n, std::uint64_t m) {
    return "x=" + x + " n=" + std::to_string(n) + " m=" + std::to_string(m);
}

Report lemma_report(const FiniteAlgebra& a, std::uint64_t n_max, const std::function<std::string(Index)>& name) {
    Report r;
    for (Index x = 0; x < a.size(); ++x) {
        const std::string nx = name_of(name, x);
        const auto pre = scan_preimages(a, x, n_max + 1);
        std::optional<std::string> fail_core, fail_bn, fail_i, fail_ii, fail_iii, fail_iv, fail_v;
        NodeSet seen;
        for (std::uint64_t n = 0; n <= n_max; ++n) {
            if (!fail_core && preimage(a, x, n) != pre[n]) fail_core = at(nx, n, n);
            const NodeSet first = set_difference(pre[n], seen);
            if (!fail_bn && bn_set(a, x, n) != first) fail_bn = at(nx, n, n);
            seen = set_union(seen, pre[n]);
            if (!fail_iii && a.on_cycle(x) && pre[n].empty()) fail_iii = at(nx, n, n);
            for (Index y = 0; y < a.size() && !fail_v; ++y) {
                if (pre[n].contains(a.succ(y)) != pre[n + 1].contains(y)) fail_v = at(nx, n, n + 1) + " y=" + name_of(name, y);
            }
            for (std::uint64_t m = 0; m <= n_max; ++m) {
                const NodeSet moved = image_set(a, pre[m], n);
                const NodeSet bound = n >= m ? (pre[m].empty() ? NodeSet{} : NodeSet{image(a, x, n - m)}) : pre[m - n];
                if (!fail_i && set_difference(moved, bound).size() != 0) fail_i = at(nx, n, m);
                if (!fail_ii && n <= m && pre[n].empty() && !pre[m].empty()) fail_ii = at(nx, n, m);
                if (!fail_iv && !a.on_cycle(x) && n != m && !set_intersection(pre[n], pre[m]).empty()) {
                    fail_iv = at(nx, n, m);
                }
            }
        }
        const std::string all = "x=" + nx + " n,m<=" + std::to_string(n_max);
        auto emit = [&](const char* id, const std::optional<std::string>& fail) { r.add(!fail, id, fail ? *fail : all); };
        emit("preimage-scan", fail_core);
        emit("first-arrival-scan", fail_bn);
        emit("preimage-i", fail_i);
        emit("preimage-ii", fail_ii);
        emit("preimage-iii", fail_iii);
        emit("preimage-iv", fail_iv);
        emit("preimage-v", fail_v);
    }
    return r;
}

Report product_report(const FiniteAlgebra& a, const FiniteAlgebra& b, std::uint64_t n_max, const std::string& label) {
    Report r;
    const ProductAlgebra p = product(a, b);
    std::vector<std::vector<NodeSet>> pa, pb;
    for (Index x = 0; x < a.size(); ++x) pa.push_back(scan_preimages(a, x, n_max));
    for (Index y = 0; y < b.size(); ++y) pb.push_back(scan_preimages(b, y, n_max));
    auto pairs = [&](const NodeSet& s, const NodeSet& t) {
        std::vector<Index> out;
        for (Index u : s)
            for (Index v : t) out.push_back(p.pair(u, v));
        return NodeSet(std::move(out));
    };
    auto first = [](const std::vector<NodeSet>& pre, std::uint64_t n) {
        NodeSet earlier;
        for (std::uint64_t k = 0; k < n; ++k) earlier = set_union(earlier, pre[k]);
        return set_difference(pre[n], earlier);
    };
    // (u,v) first reaches (x,y) at the least common arrival time, by scanning.
    auto scanned_first = [&](Index x, Index y, std::uint64_t n) {
        std::vector<Index> out;
        for (Index u = 0; u < a.size(); ++u) {
            for (Index v = 0; v < b.size(); ++v) {
                std::uint64_t t = 0;
                while (t < n && !(pa[x][t].contains(u) && pb[y][t].contains(v))) ++t;
                if (t == n && pa[x][n].contains(u) && pb[y][n].contains(v)) out.push_back(p.pair(u, v));
            }
        }
        return NodeSet(std::move(out));
    };
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        std::optional<std::string> fail_pre, fail_sup, fail_eq, fail_scan;
        for (Index x = 0; x < a.size(); ++x) {
            for (Index y = 0; y < b.size(); ++y) {
                const Index xy = p.pair(x, y);
                const std::string where = "(" + std::to_string(x) + "," + std::to_string(y) + ") n=" + std::to_string(n);
                if (!fail_pre && preimage(p.algebra, xy, n) != pairs(pa[x][n], pb[y][n])) fail_pre = where;
                const NodeSet actual = bn_set(p.algebra, xy, n);
                const NodeSet stated =
                    set_union(pairs(first(pa[x], n), pb[y][n]), pairs(pa[x][n], first(pb[y], n)));
                if (!fail_sup && set_difference(stated, actual).size() != 0) fail_sup = where;
                // Equality needs one coordinate off its cycle; two cycles can
                // delay the joint arrival past both individual ones.
                const bool acyclic_coordinate = !a.on_cycle(x) || !b.on_cycle(y);
                if (!fail_eq && acyclic_coordinate && actual != stated) fail_eq = where;
                if (!fail_scan && actual != scanned_first(x, y, n)) fail_scan = where;
            }
        }
        const std::string all = label + " n=" + std::to_string(n) + " pairs=" + std::to_string(a.size() * b.size());
        auto emit = [&](const char* id, const std::optional<std::string>& fail) {
            r.add(!fail, id, fail ? label + " " + *fail : all);
        };
        emit("product-preimage", fail_pre);
        emit("product-first-arrival-superset", fail_sup);
        emit("product-first-arrival-acyclic-coordinate", fail_eq);
        emit("product-first-arrival-scan", fail_scan);
    }
    return r;
}

Element iterate(const Presentation& p, Element e, std::uint64_t n) {
    for (std::uint64_t i = 0; i < n; ++i) e = p.successor(e);
    return e;
}

}  // namespace

Report preimage_lemmas(const FiniteAlgebra& a, std::uint64_t n_max) { return lemma_report(a, n_max, {}); }

Report product_lemmas(const FiniteAlgebra& a, const FiniteAlgebra& b, std::uint64_t n_max) {
    return product_report(a, b, n_max, "A" + std::to_string(a.size()) + "xB" + std::to_string(b.size()));
}

Report cross_validate(const Presentation& p, std::uint64_t d, std::uint64_t n_max) {
    if (2 * n_max > d) throw Error(ErrorKind::InvalidArgument, "n_max must be at most half the depth");
    const UnfoldMap u = unfold(p, d);
    const FiniteAlgebra& t = u.truncated;
    Report r;
    bool all_bounded_somewhere = true;
    for (Index x = 0; x < p.skeleton_size(); ++x) {
        const Element ex = Element::skeleton(x);
        const Index ix = *u.index_of(ex);
        const auto height = backward_height(p, ex);
        const auto arrival = first_arrival_bound(p, x);
        const std::string nx = "x=" + std::to_string(x);
        for (std::uint64_t n = 0; n <= n_max; ++n) {
            const std::string where = nx + " n=" + std::to_string(n);
            const NodeSet pre = preimage(t, ix, n);
            r.add(pre.empty() == (height && *height < n), "preimage-emptiness", where);
            bool members_ok = true;
            for (Index i = 0; i < t.size() && members_ok; ++i) {
                members_ok = pre.contains(i) == (iterate(p, u.origin[i], n) == ex);
            }
            r.add(members_ok, "preimage-membership", where);
            r.add(bn_set(t, ix, n).empty() == (arrival && *arrival < n), "first-arrival-emptiness", where);
        }
        bool bounded = false;
        for (std::uint64_t n = 0; n <= d && !bounded; ++n) bounded = bn_set(t, ix, n).empty();
        all_bounded_somewhere = all_bounded_somewhere && bounded;
    }
    // Skeleton first-arrival depths stay below the skeleton size, so the
    // horizon suffices to see every bound.
    if (p.skeleton_size() <= d) {
        r.add(all_bounded_somewhere == is_cs(p).holds, "complete-separability-rule", "d=" + std::to_string(d));
    }

    auto name = [&](Index i) { return format_element(u.origin[i]); };
    r.append(lemma_report(t, n_max, name));
    r.append(product_report(t, cycle(3), n_max, "unfold x C_3"));
    r.append(product_report(t, line(4), n_max, "unfold x L_4"));
    std::uint64_t shallow = std::min<std::uint64_t>(d, 3);
    while (shallow > 1 && unfolded_size(p, shallow) > 24) --shallow;
    const FiniteAlgebra small = unfold(p, shallow).truncated;
    r.append(product_report(small, small, std::min<std::uint64_t>(n_max, 4), "unfold x unfold"));
    return r;
}

// ---------------------------------------------------------------- symbolic search

SymbolicSearch symbolic_separations(const Presentation& p, const Element& x, const Element& y, std::size_t cap) {
    const std::uint64_t depth = cap + 1;
    for (const Element& e : {x, y}) {
        if (!p.contains(e)) throw Error(ErrorKind::OutOfRange, "element " + format_element(e) + " not in algebra");
        if (e.kind == ElementKind::Fan || (e.kind == ElementKind::Ray && e.depth > depth)) {
            throw Error(ErrorKind::InvalidArgument, "element " + format_element(e) + " outside the searched prefix");
        }
    }
    struct RayFamily {
        Index anchor;
        std::size_t number;
    };
    std::vector<RayFamily> rays;
    for (Index v = 0; v < p.skeleton_size(); ++v) {
        for (std::size_t r = 0; r < p.rays(v); ++r) rays.push_back({v, r});
    }
    auto family_of = [&](const Element& e) -> std::optional<std::size_t> {
        if (e.kind != ElementKind::Ray) return std::nullopt;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (rays[i].anchor == e.node && rays[i].number == e.family) return i;
        }
        return std::nullopt;
    };
    std::vector<std::size_t> relevant;
    for (const Element& e : {x, y}) {
        if (auto f = family_of(e); f && std::find(relevant.begin(), relevant.end(), *f) == relevant.end()) {
            relevant.push_back(*f);
        }
    }

    SymbolicSearch out;
    const std::size_t k = p.skeleton_size();
    for (std::size_t s = 1; s <= cap; ++s) {
        std::vector<Index> table(s, 0);
        do {
            const FiniteAlgebra f = FiniteAlgebra::make(table);
            std::vector<bool> eternal(s);
            for (Index v = 0; v < s; ++v) eternal[v] = !preimage(f, v, s).empty();

            // Backward chains of length `depth` into w whose deepest value is cyclic.
            auto chains_into = [&](Index w) {
                std::vector<std::vector<Index>> found;
                std::vector<Index> chain;
                auto grow = [&](auto&& self, Index target) -> void {
                    if (chain.size() == depth) {
                        if (f.on_cycle(chain.back())) found.push_back(chain);
                        return;
                    }
                    for (Index c : f.predecessors(target)) {
                        chain.push_back(c);
                        self(self, c);
                        chain.pop_back();
                    }
                };
                grow(grow, w);
                return found;
            };

            std::vector<Index> phi(k, 0);
            auto consistent = [&](std::size_t upto) {
                for (Index v = 0; v < upto; ++v) {
                    if (auto w = p.succ(v); w && *w < upto && f.succ(phi[v]) != phi[*w]) return false;
                }
                return true;
            };
            auto visit = [&]() {
                for (Index v = 0; v < k; ++v) {
                    if (p.has_fan(v) && !eternal[phi[v]]) return;
                }
                std::vector<std::vector<std::vector<Index>>> options;
                for (const RayFamily& rf : rays) options.push_back(chains_into(phi[rf.anchor]));
                std::uint64_t rest = 1;
                for (std::size_t i = 0; i < rays.size(); ++i) {
                    if (std::find(relevant.begin(), relevant.end(), i) == relevant.end()) rest *= options[i].size();
                }
                if (rest == 0) return;
                auto value = [&](const Element& e, const std::vector<const std::vector<Index>*>& picked) -> Index {
                    switch (e.kind) {
                        case ElementKind::Skeleton: return phi[e.node];
                        case ElementKind::Forward: return image(f, phi[e.node], e.depth);
                        case ElementKind::Ray: {
                            const std::size_t fam = *family_of(e);
                            const std::size_t slot = static_cast<std::size_t>(
                                std::find(relevant.begin(), relevant.end(), fam) - relevant.begin());
                            return (*picked[slot])[e.depth - 1];
                        }
                        case ElementKind::Fan: break;
                    }
                    return 0;
                };
                std::vector<const std::vector<Index>*> picked(relevant.size());
                auto pick = [&](auto&& self, std::size_t i) -> void {
                    if (i == relevant.size()) {
                        out.homomorphisms += rest;
                        if (value(x, picked) != value(y, picked)) out.separating += rest;
                        return;
                    }
                    for (const auto& c : options[relevant[i]]) {
                        picked[i] = &c;
                        self(self, i + 1);
                    }
                };
                pick(pick, 0);
            };
            auto assign = [&](auto&& self, std::size_t v) -> void {
                if (v == k) {
                    visit();
                    return;
                }
                for (Index w = 0; w < s; ++w) {
                    phi[v] = w;
                    if (consistent(v + 1)) self(self, v + 1);
                }
            };
            assign(assign, 0);
        } while (next_table(table, s));
    }
    return out;
}

}  // namespace muna::oracle
