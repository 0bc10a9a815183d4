#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "golden.hpp"
#include "spectopo/enumerate.hpp"
#include "spectopo/sst.hpp"
#include "structures.hpp"

using namespace spectopo;
using namespace spectopo::sst;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::filesystem::path> fixture_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(SPECTOPO_FIXTURES))
    if (e.path().extension() == ".sst") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

void expect_same_blocks(const Document& a, const Document& b) {
  ASSERT_EQ(a.blocks.size(), b.blocks.size());
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const Block& x = a.blocks[i];
    const Block& y = b.blocks[i];
    EXPECT_EQ(x.name, y.name);
    EXPECT_EQ(x.kind, y.kind);
    EXPECT_EQ(x.spec_poset, y.spec_poset);
    EXPECT_EQ(x.spec_semilattice, y.spec_semilattice);
    EXPECT_EQ(x.space, y.space);
    EXPECT_EQ(x.closure_poset.has_value(), y.closure_poset.has_value());
    if (x.closure_poset) {
      EXPECT_EQ(x.closure_poset->base, y.closure_poset->base);
      EXPECT_EQ(x.closure_poset->k, y.closure_poset->k);
    }
    EXPECT_EQ(x.map.send, y.map.send);
    EXPECT_EQ(x.map.send_sets, y.map.send_sets);
    if (x.sentence) { EXPECT_EQ(fo::print(*x.sentence), fo::print(*y.sentence)); }
  }
}

std::string document_message(const std::string& text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "no error";
}

}  // namespace

TEST(Document, DiamondEncoding) {
  const Document d = parse_document(
      "structure diamond\nkind spec-semilattice\nelements 0 a b 1\norder 0 < a, 0 < b, a < 1, b < 1\n"
      "spec a [= 0, b [= 0\noption close-spec false\nend\n");
  ASSERT_EQ(d.blocks.size(), 1u);
  const SpecSemilattice& s = *d.blocks[0].spec_semilattice;
  EXPECT_TRUE(s.sqle(1, 0));
  // Without a [= b this literal encoding is not transitive either (a [= 0 <= b);
  // the shipped fixture lists the full relation instead.
  EXPECT_FALSE(s.sqle(1, 2));
  const AxiomReport r = check_axioms(s);
  EXPECT_EQ(r.law(2).witness, (std::vector<Elem>{1, 0, 2}));
  EXPECT_FALSE(r.law(3).holds);
  EXPECT_EQ(r.law(3).witness, (std::vector<Elem>{1, 2, 0}));
}

TEST(Document, ShippedDiamondMatchesBuiltStructure) {
  const Document d = parse_document(slurp(std::string(SPECTOPO_FIXTURES) + "/diamond.sst"));
  EXPECT_EQ(*d.find("diamond")->spec_semilattice, fx::diamond());
  const Document e = parse_document(slurp(std::string(SPECTOPO_FIXTURES) + "/nonadditive.sst"));
  EXPECT_EQ(*e.find("nonadditive")->spec_semilattice, fx::nonadditive());
}

TEST(Document, SierpinskiAndComments) {
  const Document d = parse_document(
      "# a comment\nstructure sier   # trailing\n  kind   closure-space\n points 0 1\n closed {} {0} {0 1}\nend");
  EXPECT_EQ(d.blocks[0].space->closed(), (std::vector<Subset>{0, 1, 3}));
}

TEST(Document, CloseSpecDefaultsToTrue) {
  const Document d = parse_document(
      "structure c\nkind spec-semilattice\nelements 0 1 2\norder 0 < 1 < 2\nspec 2 [= 1, 1 [= 0\nend\n");
  const SpecSemilattice& s = *d.blocks[0].spec_semilattice;
  EXPECT_TRUE(s.sqle(2, 0));
  EXPECT_TRUE(check_axioms(s).axioms_hold());
}

TEST(Document, ExplicitJoinsAreChecked) {
  const std::string head = "structure d\nkind spec-semilattice\nelements 0 a b 1\norder 0 < a, 0 < b, a < 1, b < 1\n";
  EXPECT_NO_THROW(parse_document(head + "join a b = 1\nend\n"));
  EXPECT_THROW(parse_document(head + "join a b = a\nend\n"), DocumentError);
}

TEST(Document, MapsResolve) {
  const Document d = parse_document(slurp(std::string(SPECTOPO_FIXTURES) + "/maps.sst"));
  EXPECT_EQ(d.find("swap")->map.send, (std::vector<Elem>{1, 0}));
  EXPECT_EQ(d.find("fromdiscrete")->map.send, (std::vector<Elem>{1, 0}));
  EXPECT_EQ(d.find("chain3")->closure_poset->k, (std::vector<Elem>{0, 2, 2}));
}

TEST(Document, SentenceSpansLines) {
  const Document d = parse_document(slurp(std::string(SPECTOPO_FIXTURES) + "/sentences.sst"));
  EXPECT_EQ(fo::print(*d.find("union_closed")->sentence), fo::print(fo::builtin("union-closed")));
}

TEST(Document, RoundTripEveryFixture) {
  const auto files = fixture_files();
  ASSERT_GE(files.size(), 10u);
  for (const auto& f : files) {
    SCOPED_TRACE(f.filename().string());
    const Document d = parse_document(slurp(f));
    const std::string once = format_document(d);
    const Document back = parse_document(once);
    expect_same_blocks(d, back);
    EXPECT_EQ(format_document(back), once);
  }
}

TEST(Document, RoundTripEnumeratedStructures) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const SpecSemilattice& s : enum_spec_semilattices(n)) {
      const Document d = parse_document(format_spec_semilattice("s", s));
      ASSERT_EQ(*d.blocks[0].spec_semilattice, s);
    }
  for (std::size_t n = 1; n <= 3; ++n)
    for (const SpecPoset& s : enum_spec_posets(n)) {
      const Document d = parse_document(format_spec_poset("p", s));
      ASSERT_EQ(*d.blocks[0].spec_poset, s);
    }
  for (std::size_t m = 0; m <= 3; ++m)
    for (const ClosureSpace& x : enum_moore_families(m)) {
      const Document d = parse_document(format_space("x", x));
      ASSERT_EQ(*d.blocks[0].space, x);
    }
}

TEST(Document, ErrorsArePositioned) {
  try {
    parse_document("structure a\nkind spec-poset\nelements x y\n");
    FAIL();
  } catch (const DocumentError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_NE(std::string(e.what()).find("missing 'end'"), std::string::npos);
  }
}

TEST(Document, ErrorGoldenFile) {
  const auto diffs = golden::check(std::string(SPECTOPO_GOLDEN) + "/document_errors.txt", document_message);
  for (const auto& d : diffs) ADD_FAILURE() << d;
}
