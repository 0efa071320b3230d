#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "muna/catalog.hpp"
#include "muna/cli.hpp"
#include "muna/error.hpp"
#include "support.hpp"

using namespace muna;
using namespace muna::cli;

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

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

struct Ran {
    int code;
    std::string out;
    std::string err;
};

Ran run_text(const std::string& text, const std::vector<std::string>& words) {
    const Document doc = parse(text);
    std::ostringstream out, err;
    const int code = run(doc, parse_command(words), out, err);
    return {code, out.str(), err.str()};
}

const char* kFixtures = R"(
algebra Z { nodes: o; port o; ray at o }
algebra N { nodes: z; edges: z->z; ray at z }
algebra Comb { nodes: o; port o; fan at o }
algebra Merge { nodes: o; port o; ray at o x2 }
algebra Glued { nodes: z; edges: z->z; fan at z }
algebra Forest { nodes: a b c; edges: a->c b->c; port c }
algebra C4 { nodes: c0 c1 c2 c3; edges: c0->c1 c1->c2 c2->c3 c3->c0 }
algebra L4 { nodes: l0 l1 l2 l3; edges: l0->l0 l1->l0 l2->l1 l3->l2 }
algebra Empty { }
)";

}  // namespace

TEST(Parse, SpecExamples) {
    const Document z = parse("algebra Z { nodes: o; port o; ray at o }");
    ASSERT_EQ(z.algebras.size(), 1u);
    EXPECT_EQ(z.algebras[0].presentation, catalog::integers());
    EXPECT_EQ(parse("algebra N { nodes: z; edges: z->z; ray at z }").algebras[0].presentation,
              catalog::naturals_with_decrement());
    EXPECT_EQ(parse("algebra Comb { nodes: o; port o; fan at o }").algebras[0].presentation, catalog::comb());
    EXPECT_EQ(parse("algebra M { nodes: o; port o; ray at o x2 }").algebras[0].presentation,
              catalog::merging_rays());
}

TEST(Parse, LayoutAndComments) {
    const Document d = parse(
        "# leading comment\n"
        "algebra C {\n"
        "  nodes: a b c   # three nodes\n"
        "  edges: a->b b->c\n"
        "  edges: c->a\n"
        "}\n"
        "analyze C\n"
        "unfold C --depth 3 --dot out.dot\n");
    ASSERT_EQ(d.algebras.size(), 1u);
    EXPECT_EQ(d.algebras[0].presentation, Presentation::from_algebra(cycle(3)));
    EXPECT_EQ(d.algebras[0].node("c"), std::optional<Index>(2));
    ASSERT_EQ(d.directives.size(), 2u);
    EXPECT_EQ(d.directives[1].verb, "unfold");
    EXPECT_EQ(d.directives[1].depth, std::optional<std::uint64_t>(3));
    EXPECT_EQ(d.directives[1].dot, std::optional<std::string>("out.dot"));
    // Directives may precede the algebra they name.
    EXPECT_NO_THROW(parse("analyze Z\nalgebra Z { nodes: o; port o }"));
}

TEST(Parse, Errors) {
    EXPECT_EQ(kind_of([] { parse("algebra A { nodes: a; edges: a->b }"); }), ErrorKind::UndefinedNode);
    EXPECT_EQ(kind_of([] { parse("algebra A { nodes: a; port a; edges: a->a }"); }), ErrorKind::PortHasEdge);
    EXPECT_EQ(kind_of([] { parse("algebra A { nodes: a a }"); }), ErrorKind::DuplicateName);
    EXPECT_EQ(kind_of([] { parse("algebra A { nodes: a; port a }\nalgebra A { nodes: b; port b }"); }),
              ErrorKind::DuplicateName);
    EXPECT_EQ(kind_of([] { parse("analyze Q"); }), ErrorKind::UnknownName);
    EXPECT_EQ(kind_of([] { parse("frobnicate"); }), ErrorKind::SyntaxError);
    EXPECT_EQ(kind_of([] { parse("algebra A { nodes: a b; edges: a->b }"); }), ErrorKind::DanglingPort);
    EXPECT_EQ(kind_of([] { parse("algebra A { nodes: a; port a"); }), ErrorKind::SyntaxError);
    EXPECT_EQ(kind_of([] { parse("algebra A { nodes: a; ray at a x0; port a }"); }), ErrorKind::SyntaxError);
    EXPECT_EQ(message_of([] { parse("algebra A {\n  nodes: a;\n  edges: a=>a }"); }),
              "SyntaxError: line 3, col 11: expected '->', found '='");
    EXPECT_EQ(kind_of([] { parse_command({"oracle", "Z", "--depth"}); }), ErrorKind::SyntaxError);
    EXPECT_EQ(kind_of([] { parse_command({"oracle", "Z", "--depth", "x"}); }), ErrorKind::SyntaxError);
}

TEST(Parse, Elements) {
    const Document d = parse(kFixtures);
    const NamedPresentation& z = d.find("Z");
    EXPECT_EQ(parse_element(z, "o"), Element::skeleton(0));
    EXPECT_EQ(parse_element(z, "ray(o,0,4)"), Element::ray(0, 0, 4));
    EXPECT_EQ(parse_element(z, "fwd(o,3)"), Element::forward(0, 3));
    EXPECT_EQ(parse_element(d.find("Comb"), "fan(o,3,2)"), Element::fan(0, 3, 2));
    EXPECT_EQ(kind_of([&] { parse_element(z, "q"); }), ErrorKind::UndefinedNode);
    EXPECT_EQ(kind_of([&] { parse_element(z, "ray(o,0"); }), ErrorKind::SyntaxError);
    EXPECT_EQ(kind_of([&] { (void)d.find("Nope"); }), ErrorKind::UnknownName);
}

TEST(Print, RoundTripsFixtures) {
    const Document d = parse(std::string(kFixtures) + "analyze Z\nwitness Z o fwd(o,3) --depth 8\n"
                                                      "oracle Comb --depth 10 --nmax 5 --cap 3\n"
                                                      "witness L4 l3 --from l2 l1\n");
    const std::string text = print(d);
    EXPECT_EQ(parse(text), d);
    EXPECT_EQ(print(parse(text)), text);
}

TEST(Print, RoundTripsRandomDocuments) {
    std::mt19937 rng(404);
    for (int trial = 0; trial < 100; ++trial) {
        Document d;
        const int count = 1 + trial % 3;
        for (int i = 0; i < count; ++i) {
            NamedPresentation a;
            a.name = "A" + std::to_string(i);
            a.presentation = ref::random_presentation(rng);
            for (Index x = 0; x < a.presentation.skeleton_size(); ++x) a.node_names.push_back("n" + std::to_string(x));
            d.algebras.push_back(a);
        }
        d.directives.push_back(parse_command({"analyze", "A0"}));
        EXPECT_EQ(parse(print(d)), d);
    }
}

TEST(Dot, Shapes) {
    const Document d = parse(kFixtures);
    const std::string c4 = to_dot(d.find("C4"));
    std::size_t edges = 0;
    for (std::size_t at = c4.find("->"); at != std::string::npos; at = c4.find("->", at + 1)) ++edges;
    EXPECT_EQ(edges, 4u);
    EXPECT_EQ(to_dot(cycle(4)).find("digraph"), 0u);

    const std::string z = to_dot(d.find("Z"));
    EXPECT_NE(z.find("style=dashed"), std::string::npos);
    EXPECT_NE(z.find("ray:o:0"), std::string::npos);
    EXPECT_NE(z.find("fwd:o"), std::string::npos);
    EXPECT_NE(to_dot(d.find("Comb")).find("1,2,3,..."), std::string::npos);

    const NamedPresentation& zp = d.find("Z");
    const std::string u = to_dot(zp, unfold(zp.presentation, 2));
    EXPECT_NE(u.find("fwd(o,2)"), std::string::npos);
}

TEST(Run, Analyze) {
    const Ran z = run_text(kFixtures, {"analyze", "Z"});
    EXPECT_EQ(z.code, kExitOk);
    EXPECT_EQ(z.out,
              "algebra: Z\n"
              "RF: holds (criterion-satisfied)\n"
              "SS: fails witness=o (bi-eternal)\n"
              "CS: fails witness=o (unbounded-first-arrival)\n"
              "class: BiEternal\n"
              "backwards-bounded: no\n"
              "variety: ALL (V_{0,0})\n");
    const Ran empty = run_text(kFixtures, {"analyze", "Empty"});
    EXPECT_NE(empty.out.find("variety: V0\n"), std::string::npos);
    const Ran merge = run_text(kFixtures, {"analyze", "Merge"});
    EXPECT_NE(merge.out.find("RF: fails witness=ray(o,0,1),ray(o,1,1)"), std::string::npos);
    const Ran glued = run_text(kFixtures, {"analyze", "Glued"});
    EXPECT_NE(glued.out.find("SS: holds"), std::string::npos);
    EXPECT_NE(glued.out.find("CS: fails witness=z"), std::string::npos);
}

TEST(Run, ProductAndVariety) {
    const Ran p = run_text(kFixtures, {"product", "Z", "N"});
    EXPECT_EQ(p.out, "product: Z x N\nRF: fails\nSS: fails\nCS: fails\nbackwards-bounded: Z=no N=no\n");
    const Ran f = run_text(kFixtures, {"product", "Z", "Forest"});
    EXPECT_NE(f.out.find("RF: holds\nSS: holds\nCS: holds"), std::string::npos);
    EXPECT_EQ(run_text(kFixtures, {"variety", "C4"}).out, "variety: V_{0,4}\n");
    EXPECT_EQ(run_text(kFixtures, {"variety", "L4"}).out, "variety: V_3\n");
}

TEST(Run, Witness) {
    const Ran z = run_text(kFixtures, {"witness", "Z", "o", "fwd(o,3)"});
    EXPECT_EQ(z.code, kExitOk);
    EXPECT_NE(z.out.find("certificate point-point construction=theta-sigma"), std::string::npos);
    EXPECT_NE(z.out.find("verified: d=4 d=8 d=16"), std::string::npos);

    const Ran refused = run_text(kFixtures, {"witness", "Merge", "ray(o,0,1)", "ray(o,1,1)"});
    EXPECT_EQ(refused.code, kExitOk);
    EXPECT_EQ(refused.out.rfind("refused: NotRF", 0), 0u);

    const Ran complete = run_text(kFixtures, {"witness", "C4", "c0"});
    EXPECT_NE(complete.out.find("construction=first-arrival"), std::string::npos);
    const Ran sub = run_text(kFixtures, {"witness", "L4", "l3", "--from", "l2"});
    EXPECT_NE(sub.out.find("certificate point-subalgebra"), std::string::npos);

    const Ran bad = run_text(kFixtures, {"witness", "Z", "q", "o"});
    EXPECT_EQ(bad.code, kExitUsage);
}

TEST(Run, Unfold) {
    const Ran u = run_text(kFixtures, {"unfold", "Z", "--depth", "2"});
    EXPECT_EQ(u.out,
              "unfold: Z depth=2 nodes=5\n"
              "0 o -> 3\n"
              "1 ray(o,0,1) -> 0\n"
              "2 ray(o,0,2) -> 1\n"
              "3 fwd(o,1) -> 4\n"
              "4 fwd(o,2) -> 4\n");
    const std::string path = ::testing::TempDir() + "muna_unfold.dot";
    const Ran w = run_text(kFixtures, {"unfold", "Comb", "--depth", "3", "--dot", path});
    EXPECT_EQ(w.code, kExitOk);
    std::ifstream in(path);
    std::stringstream body;
    body << in.rdbuf();
    EXPECT_EQ(body.str().find("digraph"), 0u);
}

TEST(Run, Oracle) {
    const Ran comb = run_text(kFixtures, {"oracle", "Comb", "--depth", "12", "--nmax", "6"});
    EXPECT_EQ(comb.code, kExitOk);
    EXPECT_NE(comb.out.find("summary: "), std::string::npos);
    EXPECT_NE(comb.out.find(", 0 failures"), std::string::npos);
    EXPECT_EQ(comb.out.find("FAIL"), std::string::npos);

    const Ran merge = run_text(kFixtures, {"oracle", "Merge", "--depth", "8", "--nmax", "4"});
    EXPECT_EQ(merge.code, kExitOk);
    EXPECT_NE(merge.out.find("PASS inseparable-eternal-pair"), std::string::npos);

    EXPECT_EQ(run_text(kFixtures, {"oracle", "Comb", "--depth", "8", "--nmax", "5"}).code, kExitUsage);
}

TEST(Run, AllDirectives) {
    const Document d = parse(std::string(kFixtures) + "analyze Z\nvariety C4\n");
    std::ostringstream out, err;
    EXPECT_EQ(run_all(d, out, err), kExitOk);
    EXPECT_EQ(out.str().rfind("> analyze Z\n", 0), 0u);
    EXPECT_NE(out.str().find("> variety C4\nvariety: V_{0,4}\n"), std::string::npos);
}
