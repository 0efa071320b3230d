#pragma once

// The presentation DSL, its printer, DOT export and the command runner
// behind the `muna` tool.
//
//   algebra NAME { nodes: a b c; edges: a->b b->c; ray at a x2; fan at b; port c }
//
// Statements end at `;` or a newline, `#` starts a comment, and any other
// top-level line is a directive such as `analyze NAME`.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "muna/core.hpp"
#include "muna/presentation.hpp"

namespace muna::cli {

struct NamedPresentation {
    std::string name;
    std::vector<std::string> node_names;  // index order = declaration order
    Presentation presentation;

    [[nodiscard]] std::optional<Index> node(std::string_view n) const;
    [[nodiscard]] std::string name_of(Index x) const { return node_names.at(x); }
    bool operator==(const NamedPresentation&) const = default;
};

struct Command {
    std::string verb;  // analyze witness product variety unfold oracle print dot
    std::vector<std::string> args;
    std::optional<std::uint64_t> depth;
    std::optional<std::uint64_t> nmax;
    std::optional<std::size_t> cap;
    std::optional<std::string> dot;
    std::vector<std::string> from;  // witness: generators of a subalgebra
    bool operator==(const Command&) const = default;
};

struct Document {
    std::vector<NamedPresentation> algebras;
    std::vector<Command> directives;

    /// Throws UnknownName.
    [[nodiscard]] const NamedPresentation& find(std::string_view name) const;
    bool operator==(const Document&) const = default;
};

/// Throws SyntaxError (with line:col), UndefinedNode, PortHasEdge,
/// DuplicateName, UnknownName, or the presentation's own validation errors.
Document parse(std::string_view text);

/// Parses `verb args... [--depth d] [--nmax k] [--cap c] [--dot FILE] [--from g...]`.
Command parse_command(const std::vector<std::string>& words);

/// Canonical text; parse(print(doc)) == doc.
std::string print(const Document& doc);
std::string print(const NamedPresentation& a);
std::string print(const Command& c);

/// `x`, `ray(x,r,j)`, `fan(x,L,j)` or `fwd(x,k)` with node names. Throws
/// SyntaxError or UndefinedNode.
Element parse_element(const NamedPresentation& a, std::string_view text);

std::string to_dot(const FiniteAlgebra& a, const std::string& name = "A");
std::string to_dot(const NamedPresentation& a);
/// The truncation with each node labelled by its origin.
std::string to_dot(const NamedPresentation& a, const UnfoldMap& u);

/// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // mismatch or failed verification
inline constexpr int kExitUsage = 2;   // syntax, naming or argument errors

/// Executes one command against the document.
int run(const Document& doc, const Command& cmd, std::ostream& out, std::ostream& err);
/// Executes every directive in order; the worst exit code wins.
int run_all(const Document& doc, std::ostream& out, std::ostream& err);

}  // namespace muna::cli
