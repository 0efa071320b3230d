#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include "CLI11.hpp"
#include "muna/cli.hpp"
#include "muna/error.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path);
    if (!in) throw muna::Error(muna::ErrorKind::InvalidArgument, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Separability analysis of monounary algebras given in the presentation DSL"};
    app.require_subcommand(1);
    std::string file = "-";
    app.add_option("-f,--file", file, "DSL input file ('-' reads stdin)");

    muna::cli::Command cmd;
    std::uint64_t depth = 0, nmax = 0;
    std::size_t cap = 0;
    std::string dot;
    std::string y;

    auto* analyze = app.add_subcommand("analyze", "RF/SS/CS verdicts, component classes and variety");
    analyze->add_option("name", cmd.args, "algebra")->required()->expected(1);

    auto* variety = app.add_subcommand("variety", "smallest variety containing the algebra");
    variety->add_option("name", cmd.args, "algebra")->required()->expected(1);

    auto* product = app.add_subcommand("product", "product verdicts from the factor properties");
    product->add_option("names", cmd.args, "two algebras")->required()->expected(2);

    auto* witness = app.add_subcommand("witness", "separating homomorphism for x and y, or a complete separator for x");
    witness->add_option("args", cmd.args, "NAME x [y]")->required()->expected(2, 3);
    witness->add_option("--from", cmd.from, "generators of a subalgebra to separate x from");
    auto* witness_depth = witness->add_option("--depth", depth, "verify at this depth only");

    auto* unfold = app.add_subcommand("unfold", "finite truncation of the presentation");
    unfold->add_option("name", cmd.args, "algebra")->required()->expected(1);
    auto* unfold_depth = unfold->add_option("--depth", depth, "truncation depth (default 4)");
    auto* unfold_dot = unfold->add_option("--dot", dot, "write DOT of the truncation ('-' for stdout)");

    auto* oracle = app.add_subcommand("oracle", "brute-force cross-validation of the symbolic rules");
    oracle->add_option("name", cmd.args, "algebra")->required()->expected(1);
    auto* oracle_depth = oracle->add_option("--depth", depth, "truncation depth (default 12)");
    auto* oracle_nmax = oracle->add_option("--nmax", nmax, "largest n checked (default depth/2)");
    auto* oracle_cap = oracle->add_option("--cap", cap, "codomain size cap for exhaustive search");

    auto* print = app.add_subcommand("print", "canonical form of the document or one algebra");
    print->add_option("name", cmd.args, "algebra");

    auto* dotcmd = app.add_subcommand("dot", "DOT graph of a presentation");
    dotcmd->add_option("name", cmd.args, "algebra")->required()->expected(1);

    auto* runcmd = app.add_subcommand("run", "execute the directives in the document");

    CLI11_PARSE(app, argc, argv);

    muna::cli::Document doc;
    try {
        doc = muna::cli::parse(read_input(file));
    } catch (const muna::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return muna::cli::kExitUsage;
    }
    if (runcmd->parsed()) return muna::cli::run_all(doc, std::cout, std::cerr);

    cmd.verb = app.get_subcommands().front()->get_name();
    if (witness_depth->count() || unfold_depth->count() || oracle_depth->count()) cmd.depth = depth;
    if (oracle_nmax->count()) cmd.nmax = nmax;
    if (oracle_cap->count()) cmd.cap = cap;
    if (unfold_dot->count()) cmd.dot = dot;
    return muna::cli::run(doc, cmd, std::cout, std::cerr);
}
