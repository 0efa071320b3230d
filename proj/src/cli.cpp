#include "muna/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "muna/analysis.hpp"
#include "muna/error.hpp"
#include "muna/oracle.hpp"
#include "muna/witness.hpp"

namespace muna::cli {

std::optional<Index> NamedPresentation::node(std::string_view n) const {
    auto it = std::find(node_names.begin(), node_names.end(), n);
    if (it == node_names.end()) return std::nullopt;
    return static_cast<Index>(it - node_names.begin());
}

const NamedPresentation& Document::find(std::string_view name) const {
    for (const auto& a : algebras) {
        if (a.name == name) return a;
    }
    throw Error(ErrorKind::UnknownName, "no algebra named '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- parsing

namespace {

const std::set<std::string, std::less<>> kVerbs = {"analyze", "witness", "product", "variety",
                                                   "unfold",  "oracle",  "print",   "dot"};

bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

std::uint64_t to_number(std::string_view s, const std::string& what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw Error(ErrorKind::SyntaxError, what + " expects a non-negative integer, got '" + std::string(s) + "'");
    }
    return v;
}

struct Position {
    std::size_t line = 1;
    std::size_t col = 1;
};

class Scanner {
public:
    explicit Scanner(std::string_view text) : text_(text) {}

    [[nodiscard]] bool done() const { return i_ >= text_.size(); }
    [[nodiscard]] char peek() const { return done() ? '\0' : text_[i_]; }
    [[nodiscard]] Position position() const { return pos_; }

    void advance() {
        if (done()) return;
        if (text_[i_] == '\n') {
            ++pos_.line;
            pos_.col = 1;
        } else {
            ++pos_.col;
        }
        ++i_;
    }

    /// Skips blanks and comments; newlines too when `newlines` is set.
    void skip(bool newlines) {
        while (!done()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
                advance();
            } else if (c == '#') {
                while (!done() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::string word() {
        skip(false);
        std::string out;
        while (is_word_char(peek())) {
            out.push_back(peek());
            advance();
        }
        if (out.empty()) fail(std::string("expected a name, found ") + describe());
        return out;
    }

    void expect(std::string_view token) {
        skip(false);
        for (char c : token) {
            if (peek() != c) fail("expected '" + std::string(token) + "', found " + describe());
            advance();
        }
    }

    /// Raw text to the end of the line, comment stripped.
    std::string rest_of_line() {
        std::string out;
        while (!done() && peek() != '\n' && peek() != '#') {
            out.push_back(peek());
            advance();
        }
        return out;
    }

    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

    [[noreturn]] static void fail_at(Position p, const std::string& msg) {
        throw Error(ErrorKind::SyntaxError,
                    "line " + std::to_string(p.line) + ", col " + std::to_string(p.col) + ": " + msg);
    }

    [[nodiscard]] std::string describe() const {
        if (done()) return "end of input";
        if (peek() == '\n') return "end of line";
        return "'" + std::string(1, peek()) + "'";
    }

private:
    std::string_view text_;
    std::size_t i_ = 0;
    Position pos_;
};

struct NodeRef {
    std::string name;
    Position at;
};

struct AlgebraSource {
    std::string name;
    Position at;
    std::vector<NodeRef> nodes;
    std::vector<std::pair<NodeRef, NodeRef>> edges;
    std::vector<std::pair<NodeRef, std::size_t>> rays;
    std::vector<NodeRef> fans;
    std::vector<NodeRef> ports;
};

bool at_statement_end(Scanner& s) {
    s.skip(false);
    return s.done() || s.peek() == ';' || s.peek() == '\n' || s.peek() == '}';
}

NodeRef node_ref(Scanner& s) {
    s.skip(false);
    const Position at = s.position();
    return {s.word(), at};
}

AlgebraSource parse_block(Scanner& s) {
    AlgebraSource src;
    s.skip(true);
    src.at = s.position();
    src.name = s.word();
    s.skip(true);
    s.expect("{");
    for (;;) {
        while (s.skip(true), s.peek() == ';') s.advance();
        if (s.done()) s.fail("unterminated algebra '" + src.name + "'");
        if (s.peek() == '}') {
            s.advance();
            return src;
        }
        const Position kw_at = s.position();
        const std::string kw = s.word();
        if (kw == "nodes") {
            s.expect(":");
            while (!at_statement_end(s)) src.nodes.push_back(node_ref(s));
        } else if (kw == "edges") {
            s.expect(":");
            while (!at_statement_end(s)) {
                NodeRef from = node_ref(s);
                s.expect("->");
                src.edges.emplace_back(std::move(from), node_ref(s));
            }
        } else if (kw == "ray") {
            if (s.word() != "at") Scanner::fail_at(kw_at, "expected 'ray at NODE'");
            NodeRef at = node_ref(s);
            std::size_t count = 1;
            if (!at_statement_end(s)) {
                const Position count_at = s.position();
                const std::string w = s.word();
                if (w.size() < 2 || w[0] != 'x') Scanner::fail_at(count_at, "expected a count like x2");
                count = to_number(std::string_view(w).substr(1), "ray count");
                if (count == 0) Scanner::fail_at(count_at, "ray count must be at least 1");
            }
            src.rays.emplace_back(std::move(at), count);
        } else if (kw == "fan") {
            if (s.word() != "at") Scanner::fail_at(kw_at, "expected 'fan at NODE'");
            src.fans.push_back(node_ref(s));
        } else if (kw == "port") {
            while (!at_statement_end(s)) src.ports.push_back(node_ref(s));
        } else {
            Scanner::fail_at(kw_at, "unknown statement '" + kw + "'");
        }
        if (!at_statement_end(s)) s.fail("expected ';' or end of line, found " + s.describe());
    }
}

std::string where(const NodeRef& r) {
    return "line " + std::to_string(r.at.line) + ", col " + std::to_string(r.at.col);
}

NamedPresentation build(const AlgebraSource& src) {
    NamedPresentation out;
    out.name = src.name;
    for (const NodeRef& n : src.nodes) {
        if (out.node(n.name)) {
            throw Error(ErrorKind::DuplicateName, where(n) + ": node '" + n.name + "' declared twice in " + src.name);
        }
        out.node_names.push_back(n.name);
    }
    auto index = [&](const NodeRef& r) {
        auto i = out.node(r.name);
        if (!i) throw Error(ErrorKind::UndefinedNode, where(r) + ": node '" + r.name + "' is not declared in " + src.name);
        return *i;
    };
    PresentationBuilder b(out.node_names.size());
    std::set<Index> has_edge;
    for (const auto& [from, to] : src.edges) {
        b.edge(index(from), index(to));
        has_edge.insert(index(from));
    }
    for (const NodeRef& p : src.ports) {
        if (has_edge.count(index(p))) {
            throw Error(ErrorKind::PortHasEdge, where(p) + ": port '" + p.name + "' also has an out-edge");
        }
        b.port(index(p));
    }
    for (const auto& [at, count] : src.rays) b.ray(index(at), count);
    for (const NodeRef& f : src.fans) b.fan(index(f));
    try {
        out.presentation = b.build();
    } catch (const Error& e) {
        throw Error(e.kind(), "in algebra " + src.name + ": " + e.detail());
    }
    return out;
}

void check_references(const Document& doc, const Command& c) {
    if (!kVerbs.count(c.verb)) throw Error(ErrorKind::SyntaxError, "unknown command '" + c.verb + "'");
    std::size_t names = 1;
    if (c.verb == "product") names = 2;
    if (c.verb == "print") names = std::min<std::size_t>(1, c.args.size());
    if (c.args.size() < names) throw Error(ErrorKind::SyntaxError, c.verb + " needs an algebra name");
    for (std::size_t i = 0; i < names; ++i) (void)doc.find(c.args[i]);
}

}  // namespace

Command parse_command(const std::vector<std::string>& words) {
    if (words.empty()) throw Error(ErrorKind::SyntaxError, "empty command");
    Command c;
    c.verb = words[0];
    for (std::size_t i = 1; i < words.size(); ++i) {
        const std::string& w = words[i];
        auto value = [&]() -> const std::string& {
            if (i + 1 >= words.size()) throw Error(ErrorKind::SyntaxError, w + " needs a value");
            return words[++i];
        };
        if (w == "--depth") {
            c.depth = to_number(value(), w);
        } else if (w == "--nmax") {
            c.nmax = to_number(value(), w);
        } else if (w == "--cap") {
            c.cap = to_number(value(), w);
        } else if (w == "--dot") {
            c.dot = value();
        } else if (w == "--from") {
            while (i + 1 < words.size() && words[i + 1].rfind("--", 0) != 0) c.from.push_back(words[++i]);
        } else if (w.rfind("--", 0) == 0) {
            throw Error(ErrorKind::SyntaxError, "unknown flag " + w);
        } else {
            c.args.push_back(w);
        }
    }
    return c;
}

Document parse(std::string_view text) {
    Document doc;
    Scanner s(text);
    std::vector<std::pair<Position, Command>> pending;
    for (;;) {
        s.skip(true);
        if (s.done()) break;
        const Position at = s.position();
        const std::string w = s.word();
        if (w == "algebra") {
            NamedPresentation a = build(parse_block(s));
            for (const auto& other : doc.algebras) {
                if (other.name == a.name) throw Error(ErrorKind::DuplicateName, "algebra '" + a.name + "' defined twice");
            }
            doc.algebras.push_back(std::move(a));
            s.skip(false);
            if (!s.done() && s.peek() != '\n') s.fail("expected end of line after algebra, found " + s.describe());
            continue;
        }
        std::istringstream line(w + s.rest_of_line());
        std::vector<std::string> words;
        for (std::string t; line >> t;) words.push_back(t);
        try {
            pending.emplace_back(at, parse_command(words));
        } catch (const Error& e) {
            Scanner::fail_at(at, e.detail());
        }
    }
    // Directives may name algebras defined further down.
    for (auto& [at, c] : pending) {
        try {
            check_references(doc, c);
        } catch (const Error& e) {
            throw Error(e.kind(), "line " + std::to_string(at.line) + ": " + e.detail());
        }
        doc.directives.push_back(std::move(c));
    }
    return doc;
}

Element parse_element(const NamedPresentation& a, std::string_view text) {
    auto node = [&](std::string_view n) {
        auto i = a.node(n);
        if (!i) throw Error(ErrorKind::UndefinedNode, "node '" + std::string(n) + "' is not declared in " + a.name);
        return *i;
    };
    const auto open = text.find('(');
    if (open == std::string_view::npos) return Element::skeleton(node(text));
    if (text.back() != ')') throw Error(ErrorKind::SyntaxError, "malformed element '" + std::string(text) + "'");
    const std::string_view head = text.substr(0, open);
    std::vector<std::string_view> parts;
    std::string_view inner = text.substr(open + 1, text.size() - open - 2);
    for (std::size_t start = 0;;) {
        const auto comma = inner.find(',', start);
        parts.push_back(inner.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    const std::string whole(text);
    Element e;
    if (head == "ray" && parts.size() == 3) {
        e = Element::ray(node(parts[0]), to_number(parts[1], whole), to_number(parts[2], whole));
    } else if (head == "fan" && parts.size() == 3) {
        e = Element::fan(node(parts[0]), to_number(parts[1], whole), to_number(parts[2], whole));
    } else if (head == "fwd" && parts.size() == 2) {
        e = Element::forward(node(parts[0]), to_number(parts[1], whole));
    } else {
        throw Error(ErrorKind::SyntaxError, "malformed element '" + whole + "'");
    }
    if (!a.presentation.contains(e)) throw Error(ErrorKind::OutOfRange, "element '" + whole + "' is not in " + a.name);
    return e;
}

// ---------------------------------------------------------------- printing

std::string print(const NamedPresentation& a) {
    const Presentation& p = a.presentation;
    std::ostringstream out;
    out << "algebra " << a.name << " {\n";
    if (!a.node_names.empty()) {
        out << "  nodes:";
        for (const auto& n : a.node_names) out << ' ' << n;
        out << '\n';
    }
    std::ostringstream edges;
    for (Index x = 0; x < p.skeleton_size(); ++x) {
        if (auto s = p.succ(x)) edges << ' ' << a.name_of(x) << "->" << a.name_of(*s);
    }
    if (!edges.str().empty()) out << "  edges:" << edges.str() << '\n';
    for (Index x = 0; x < p.skeleton_size(); ++x) {
        if (p.rays(x) == 1) out << "  ray at " << a.name_of(x) << '\n';
        if (p.rays(x) > 1) out << "  ray at " << a.name_of(x) << " x" << p.rays(x) << '\n';
    }
    for (Index x = 0; x < p.skeleton_size(); ++x) {
        if (p.has_fan(x)) out << "  fan at " << a.name_of(x) << '\n';
    }
    for (Index x = 0; x < p.skeleton_size(); ++x) {
        if (p.is_port(x)) out << "  port " << a.name_of(x) << '\n';
    }
    out << "}\n";
    return out.str();
}

std::string print(const Command& c) {
    std::ostringstream out;
    out << c.verb;
    for (const auto& a : c.args) out << ' ' << a;
    if (c.depth) out << " --depth " << *c.depth;
    if (c.nmax) out << " --nmax " << *c.nmax;
    if (c.cap) out << " --cap " << *c.cap;
    if (c.dot) out << " --dot " << *c.dot;
    if (!c.from.empty()) {
        out << " --from";
        for (const auto& g : c.from) out << ' ' << g;
    }
    return out.str();
}

std::string print(const Document& doc) {
    std::string out;
    for (const auto& a : doc.algebras) out += print(a) + "\n";
    for (const auto& c : doc.directives) out += print(c) + "\n";
    return out;
}

// ---------------------------------------------------------------- DOT

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out + "\"";
}

}  // namespace

std::string to_dot(const FiniteAlgebra& a, const std::string& name) {
    std::ostringstream out;
    out << "digraph " << quoted(name) << " {\n  node [shape=circle];\n";
    for (Index x = 0; x < a.size(); ++x) out << "  " << x << ";\n";
    for (Index x = 0; x < a.size(); ++x) out << "  " << x << " -> " << a.succ(x) << ";\n";
    out << "}\n";
    return out.str();
}

std::string to_dot(const NamedPresentation& a) {
    const Presentation& p = a.presentation;
    std::ostringstream out;
    out << "digraph " << quoted(a.name) << " {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (Index x = 0; x < p.skeleton_size(); ++x) out << "  " << quoted(a.name_of(x)) << ";\n";
    for (Index x = 0; x < p.skeleton_size(); ++x) {
        const std::string n = quoted(a.name_of(x));
        if (auto s = p.succ(x)) out << "  " << n << " -> " << quoted(a.name_of(*s)) << ";\n";
        for (std::size_t r = 0; r < p.rays(x); ++r) {
            const std::string id = quoted("ray:" + a.name_of(x) + ":" + std::to_string(r));
            out << "  " << id << " [shape=plaintext, label=\"...\"];\n";
            out << "  " << id << " -> " << n << " [style=dashed, label=\"ray\"];\n";
        }
        if (p.has_fan(x)) {
            const std::string id = quoted("fan:" + a.name_of(x));
            out << "  " << id << " [shape=plaintext, label=\"1,2,3,...\"];\n";
            out << "  " << id << " -> " << n << " [style=dashed, label=\"fan\"];\n";
        }
        if (p.is_port(x)) {
            const std::string id = quoted("fwd:" + a.name_of(x));
            out << "  " << id << " [shape=plaintext, label=\"...\"];\n";
            out << "  " << n << " -> " << id << " [style=dashed];\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string to_dot(const NamedPresentation& a, const UnfoldMap& u) {
    auto name = [&](Index x) { return a.name_of(x); };
    std::ostringstream out;
    out << "digraph " << quoted(a.name + "_unfold") << " {\n  node [shape=circle];\n";
    for (Index i = 0; i < u.truncated.size(); ++i) {
        const Element& e = u.origin[i];
        out << "  " << i << " [label=" << quoted(format_element(e, name));
        if (!e.is_skeleton()) out << ", shape=ellipse, style=dashed";
        out << "];\n";
    }
    for (Index i = 0; i < u.truncated.size(); ++i) out << "  " << i << " -> " << u.truncated.succ(i) << ";\n";
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------- commands

namespace {

std::string witness_text(const Witness& w, const NamedPresentation& a) {
    auto name = [&](Index x) { return a.name_of(x); };
    if (const auto* pair = std::get_if<FailurePair>(&w)) {
        return format_element(pair->first, name) + "," + format_element(pair->second, name);
    }
    return format_element(std::get<FailureNode>(w).node, name);
}

void write_verdict(std::ostream& out, const Verdict& v, const NamedPresentation& a) {
    out << to_string(v.property) << ": " << (v.holds ? "holds" : "fails");
    if (v.witness) out << " witness=" << witness_text(*v.witness, a);
    out << " (" << to_string(v.reason) << ")\n";
}

std::string variety_text(const Presentation& p) {
    const Variety v = classify_variety(p);
    // The full variety is also written V_{0,0}.
    return to_string(v) + (v.kind == Variety::Kind::VAll ? " (V_{0,0})" : "");
}

/// Components keyed by the alphabetically first node name they contain.
std::map<std::string, std::size_t> components_by_name(const NamedPresentation& a) {
    std::map<std::string, std::size_t> out;
    const Presentation& p = a.presentation;
    for (std::size_t c = 0; c < p.component_count(); ++c) {
        std::string best;
        for (Index x : p.component_nodes(c)) {
            if (best.empty() || a.name_of(x) < best) best = a.name_of(x);
        }
        out[best] = c;
    }
    return out;
}

std::vector<Index> nodes_by_name(const NamedPresentation& a) {
    std::vector<Index> out(a.node_names.size());
    for (Index i = 0; i < out.size(); ++i) out[i] = i;
    std::sort(out.begin(), out.end(), [&](Index l, Index r) { return a.node_names[l] < a.node_names[r]; });
    return out;
}

int cmd_analyze(const NamedPresentation& a, std::ostream& out) {
    const Presentation& p = a.presentation;
    out << "algebra: " << a.name << '\n';
    write_verdict(out, is_rf(p), a);
    write_verdict(out, is_ss(p), a);
    write_verdict(out, is_cs(p), a);
    const auto comps = components_by_name(a);
    if (comps.size() == 1) {
        out << "class: " << to_string(classify(p, 0)) << '\n';
    } else {
        for (const auto& [rep, c] : comps) out << "class[" << rep << "]: " << to_string(classify(p, c)) << '\n';
    }
    out << "backwards-bounded: " << (is_backwards_bounded(p) ? "yes" : "no") << '\n';
    out << "variety: " << variety_text(p) << '\n';
    return kExitOk;
}

int cmd_product(const NamedPresentation& a, const NamedPresentation& b, std::ostream& out) {
    const Presentation& pa = a.presentation;
    const Presentation& pb = b.presentation;
    out << "product: " << a.name << " x " << b.name << '\n';
    out << "RF: " << (rf_product(pa, pb) ? "holds" : "fails") << '\n';
    out << "SS: " << (ss_product(pa, pb) ? "holds" : "fails") << '\n';
    out << "CS: " << (cs_product(pa, pb) ? "holds" : "fails") << '\n';
    out << "backwards-bounded: " << a.name << '=' << (is_backwards_bounded(pa) ? "yes" : "no") << ' ' << b.name
        << '=' << (is_backwards_bounded(pb) ? "yes" : "no") << '\n';
    return kExitOk;
}

bool is_refusal(ErrorKind k) {
    return k == ErrorKind::NotRF || k == ErrorKind::NotCS || k == ErrorKind::NotSeparable ||
           k == ErrorKind::EqualPoints || k == ErrorKind::BackwardsEternal;
}

int cmd_witness(const NamedPresentation& a, const Command& c, std::ostream& out, std::ostream& err) {
    const Presentation& p = a.presentation;
    if (c.args.size() < 2 || c.args.size() > 3) {
        err << "usage: witness NAME x [y] [--from g...] [--depth d]\n";
        return kExitUsage;
    }
    const Element x = parse_element(a, c.args[1]);
    SeparationCertificate cert;
    try {
        if (!c.from.empty()) {
            std::vector<Element> gens;
            for (const auto& g : c.from) gens.push_back(parse_element(a, g));
            cert = separate_from_subalgebra(p, x, gens);
        } else if (c.args.size() == 3) {
            cert = separate_points(p, x, parse_element(a, c.args[2]));
        } else {
            cert = cs_separator(p, x);
        }
    } catch (const Error& e) {
        if (!is_refusal(e.kind())) throw;
        out << "refused: " << e.what() << '\n';
        return kExitOk;
    }
    write_certificate(out, cert, [&](Index i) { return a.name_of(i); });
    const std::vector<std::uint64_t> depths =
        c.depth ? std::vector<std::uint64_t>{*c.depth} : std::vector<std::uint64_t>{4, 8, 16};
    out << "verified:";
    for (std::uint64_t d : depths) {
        try {
            verify(cert, p, d);
        } catch (const Error& e) {
            out << '\n';
            err << "verification failed at depth " << d << ": " << e.what() << '\n';
            return kExitFailed;
        }
        out << " d=" << d;
    }
    out << '\n';
    return kExitOk;
}

int cmd_unfold(const NamedPresentation& a, const Command& c, std::ostream& out) {
    const std::uint64_t d = c.depth.value_or(4);
    const UnfoldMap u = unfold(a.presentation, d);
    auto name = [&](Index x) { return a.name_of(x); };
    out << "unfold: " << a.name << " depth=" << d << " nodes=" << u.truncated.size() << '\n';
    for (Index i = 0; i < u.truncated.size(); ++i) {
        out << i << ' ' << format_element(u.origin[i], name) << " -> " << u.truncated.succ(i) << '\n';
    }
    if (c.dot) {
        const std::string dot = to_dot(a, u);
        if (*c.dot == "-") {
            out << dot;
        } else {
            std::ofstream file(*c.dot);
            if (!(file << dot)) throw Error(ErrorKind::InvalidArgument, "cannot write " + *c.dot);
        }
    }
    return kExitOk;
}

std::size_t search_cap(const Command& c) {
    if (c.cap) return *c.cap;
    if (std::getenv("MUNA_CAP")) return oracle::Caps::from_env().codomain;
    return 4;
}

int cmd_oracle(const NamedPresentation& a, const Command& c, std::ostream& out) {
    const Presentation& p = a.presentation;
    const std::uint64_t d = c.depth.value_or(12);
    const std::uint64_t nmax = c.nmax.value_or(d / 2);
    auto name = [&](Index x) { return a.name_of(x); };
    oracle::Report report = oracle::cross_validate(p, d, nmax);

    const Verdict rf = is_rf(p);
    if (rf.holds) {
        const auto order = nodes_by_name(a);
        for (std::size_t i = 0; i < order.size(); ++i) {
            for (std::size_t j = i + 1; j < order.size(); ++j) {
                const Element x = Element::skeleton(order[i]);
                const Element y = Element::skeleton(order[j]);
                std::string where = "x=" + a.name_of(order[i]) + " y=" + a.name_of(order[j]);
                bool ok = true;
                try {
                    const SeparationCertificate cert = separate_points(p, x, y);
                    verify(cert, p, d);
                    where += " construction=" + cert.construction;
                } catch (const Error& e) {
                    ok = false;
                    where += std::string(" error=") + e.what();
                }
                report.add(ok, "separate-points", where);
            }
        }
    } else if (const auto* pair = std::get_if<FailurePair>(&*rf.witness)) {
        const std::string where = "x=" + format_element(pair->first, name) + " y=" + format_element(pair->second, name);
        bool refused = false;
        try {
            (void)separate_points(p, pair->first, pair->second);
        } catch (const Error& e) {
            refused = e.kind() == ErrorKind::NotRF;
        }
        report.add(refused, "certificate-refused", where);
        const std::size_t cap = search_cap(c);
        const auto search = oracle::symbolic_separations(p, pair->first, pair->second, cap);
        report.add(search.homomorphisms > 0 && search.separating == 0, "inseparable-eternal-pair",
                   where + " cap=" + std::to_string(cap) + " homs=" + std::to_string(search.homomorphisms) +
                       " separating=" + std::to_string(search.separating));
    }
    report.write(out);
    return report.clean() ? kExitOk : kExitFailed;
}

}  // namespace

int run(const Document& doc, const Command& cmd, std::ostream& out, std::ostream& err) {
    try {
        check_references(doc, cmd);
        if (cmd.verb == "print") {
            out << (cmd.args.empty() ? print(doc) : print(doc.find(cmd.args[0])));
            return kExitOk;
        }
        const NamedPresentation& a = doc.find(cmd.args[0]);
        if (cmd.verb == "analyze") return cmd_analyze(a, out);
        if (cmd.verb == "variety") {
            out << "variety: " << variety_text(a.presentation) << '\n';
            return kExitOk;
        }
        if (cmd.verb == "product") return cmd_product(a, doc.find(cmd.args[1]), out);
        if (cmd.verb == "witness") return cmd_witness(a, cmd, out, err);
        if (cmd.verb == "unfold") return cmd_unfold(a, cmd, out);
        if (cmd.verb == "oracle") return cmd_oracle(a, cmd, out);
        if (cmd.verb == "dot") {
            out << to_dot(a);
            return kExitOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::Mismatch || e.kind() == ErrorKind::BrokenHom ||
                       e.kind() == ErrorKind::SeparationFailed
                   ? kExitFailed
                   : kExitUsage;
    }
    return kExitUsage;
}

int run_all(const Document& doc, std::ostream& out, std::ostream& err) {
    int worst = kExitOk;
    for (const Command& c : doc.directives) {
        out << "> " << print(c) << '\n';
        worst = std::max(worst, run(doc, c, out, err));
    }
    return worst;
}

}  // namespace muna::cli
