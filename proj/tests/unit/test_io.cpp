#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "secluded/io.hpp"
#include "secluded/solvers.hpp"

using namespace secluded;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_domain(text);
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

std::string cnf_error_of(const std::string& text) {
  try {
    parse_cnf(text);
  } catch (const FormatError& e) {
    return e.what();
  }
  return "";
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

const char* kUnitSquare = "{\n  \"outer\": [[0,0],[1,0],[1,1],[0,1]],\n  \"holes\": []\n}\n";

}  // namespace

TEST(DomainIo, UnitSquareRoundTripsByteForByte) {
  const DomainFile f = parse_domain(kUnitSquare);
  EXPECT_EQ(f.domain.area(), 1);
  EXPECT_EQ(serialize_domain(f), kUnitSquare);
}

TEST(DomainIo, NormalizesOrientationStartAndWhitespace) {
  const std::string messy =
      R"({ "holes": [ [[3,1],[3,3],[1,3],[1,1]] ],
           "outer": [[4,4],[4,0],[0,0],[0,4]], "t": [0, 4], "s": [4,0] })";
  const DomainFile f = parse_domain(messy);
  const std::string norm = serialize_domain(f);
  EXPECT_EQ(norm,
            "{\n  \"outer\": [[0,0],[4,0],[4,4],[0,4]],\n  \"holes\": [[[1,1],[1,3],[3,3],[3,1]]],\n"
            "  \"s\": [4,0],\n  \"t\": [0,4]\n}\n");
  EXPECT_EQ(serialize_domain(parse_domain(norm)), norm);
  EXPECT_EQ(parse_domain(norm).domain.area(), 12);
}

TEST(DomainIo, RandomPolygonsRoundTrip) {
  std::mt19937 rng(3);
  for (int it = 0; it < 50; ++it) {
    const Ring r = secluded::testing::random_simple_polygon(rng, 4 + it % 12, 40);
    const std::string once = serialize_domain(PolygonalDomain::create(r));
    EXPECT_EQ(serialize_domain(parse_domain(once)), once);
    EXPECT_EQ(parse_domain(once).domain.area(), PolygonalDomain::create(r).area());
  }
}

TEST(DomainIo, AnnotationsKeptVerbatim) {
  const std::string text = R"({"outer":[[0,0],[2,0],[0,2]],"annotations":{"b":[1,2],"a":"x"}})";
  const DomainFile f = parse_domain(text);
  EXPECT_EQ(f.annotations["a"], "x");
  const std::string norm = serialize_domain(f);
  EXPECT_EQ(serialize_domain(parse_domain(norm)), norm);
}

TEST(DomainIo, DistinctDiagnostics) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"{\"outer\": [[0,0],[4,0],[4,4],[0,4]], \"holes\": [[[5,5],[6,5],[6,6]]]}", "hole not interior"},
      {"{\"outer\": [[0,0],[1,0]", "malformed JSON"},
      {"[1,2]", "domain file must be a JSON object"},
      {"{\"holes\": []}", "missing \"outer\""},
      {"{\"outer\": [[0,0],[1,0],[0,1]], \"colour\": 1}", "unknown key \"colour\""},
      {"{\"outer\": [[0,0],[1,0],[0]]}", "point must be [x, y]"},
      {"{\"outer\": [[0,0],[1.5,0],[0,1]]}", "coordinate is not an integer"},
      {"{\"outer\": [[0,0],[2000000000,0],[0,1]]}", "coordinate out of range"},
      {"{\"outer\": [[0,0],[1,0],[0,1]], \"holes\": 3}", "\"holes\" must be an array of rings"},
      {"{\"outer\": 7}", "ring must be an array of points"},
      {"{\"outer\": [[0,0],[2,2],[2,0],[0,2]]}", "outer ring not simple"},
      {"{\"outer\": [[0,0],[1,0]]}", "outer has fewer than 3 vertices"},
      {"{\"outer\": [[0,0],[9,0],[9,9],[0,9]], \"holes\": [[[1,1],[4,1],[4,4],[1,4]],[[3,3],[6,3],[6,6],[3,6]]]}",
       "holes overlap"},
      {"{\"outer\": [[0,0],[4,0],[0,4]], \"s\": [5,5]}", "s outside the domain"},
      {"{\"outer\": [[0,0],[4,0],[0,4]], \"t\": [5,5]}", "t outside the domain"},
  };
  std::set<std::string> seen;
  for (const auto& [text, want] : cases) {
    const std::string got = error_of(text);
    EXPECT_NE(got.find(want), std::string::npos) << text << " -> " << got;
    seen.insert(want);
  }
  EXPECT_EQ(seen.size(), cases.size());
}

TEST(CnfIo, PlainDimacs) {
  const EmbeddedCnf e = parse_cnf("p cnf 2 2\n1 2 0\n-1 -2 0\n");
  EXPECT_EQ(e.cnf.num_vars, 2u);
  ASSERT_EQ(e.cnf.clauses.size(), 2u);
  EXPECT_EQ(e.cnf.clauses[0], (Clause{{0, true}, {1, true}}));
  EXPECT_EQ(e.cnf.clauses[1], (Clause{{0, false}, {1, false}}));
  EXPECT_TRUE(e.v_cycle.empty());
  EXPECT_EQ(serialize_cnf(e), "p cnf 2 2\n1 2 0\n-1 -2 0\n");
}

TEST(CnfIo, CommentsAndClausesAcrossLines) {
  const EmbeddedCnf e = parse_cnf("c hello\nc\np cnf 3 2\n1\n -3 0 2 0\n%\n0\n");
  ASSERT_EQ(e.cnf.clauses.size(), 2u);
  EXPECT_EQ(e.cnf.clauses[0], (Clause{{0, true}, {2, false}}));
  EXPECT_EQ(e.cnf.clauses[1], (Clause{{1, true}}));
}

TEST(CnfIo, EmbeddingExtensionsRoundTrip) {
  const std::string text =
      "c v-cycle 2 1 3\nc vc-cycle v1 c1 v2 c2 v3\nc side 1 1 L\nc side 1 2 R\nc side 2 1 L\nc side 3 2 R\n"
      "p cnf 3 2\n1 2 0\n-1 3 0\n";
  const EmbeddedCnf e = parse_cnf(text);
  EXPECT_EQ(e.v_cycle, (std::vector<std::size_t>{1, 0, 2}));
  ASSERT_TRUE(e.vc_cycle.has_value());
  EXPECT_EQ(*e.vc_cycle, (std::vector<std::size_t>{0, 3, 1, 4, 2}));
  EXPECT_EQ(e.side.at({0, 1}), Side::Right);
  EXPECT_EQ(e.side.at({2, 1}), Side::Right);
  EXPECT_EQ(serialize_cnf(e), text);
  // sides listed out of order come back sorted
  const std::string shuffled =
      "c side 3 2 R\nc side 1 2 R\np cnf 3 2\nc side 2 1 L\nc side 1 1 L\n1 2 0\n-1 3 0\n"
      "c vc-cycle v1 c1 v2 c2 v3\nc v-cycle 2 1 3\n";
  EXPECT_EQ(serialize_cnf(parse_cnf(shuffled)), text);
}

TEST(CnfIo, RandomRoundTrip) {
  std::mt19937 rng(11);
  for (int it = 0; it < 200; ++it) {
    EmbeddedCnf e;
    e.cnf.num_vars = 1 + rng() % 8;
    const std::size_t m = rng() % 10;
    for (std::size_t c = 0; c < m; ++c) {
      Clause cl;
      for (std::size_t k = 0, len = 1 + rng() % 3; k < len; ++k) cl.push_back({rng() % e.cnf.num_vars, rng() % 2 == 0});
      for (const Literal& l : cl) e.side[{l.var, c}] = rng() % 2 ? Side::Left : Side::Right;
      e.cnf.clauses.push_back(cl);
    }
    for (std::size_t v = 0; v < e.cnf.num_vars; ++v) e.v_cycle.push_back(v);
    std::shuffle(e.v_cycle.begin(), e.v_cycle.end(), rng);
    const std::string once = serialize_cnf(e);
    const EmbeddedCnf back = parse_cnf(once);
    EXPECT_EQ(back.cnf.clauses, e.cnf.clauses);
    EXPECT_EQ(back.side, e.side);
    EXPECT_EQ(back.v_cycle, e.v_cycle);
    EXPECT_EQ(serialize_cnf(back), once);
  }
}

TEST(CnfIo, DistinctDiagnostics) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"1 2 0\n", "clause before p line"},
      {"p cnf 2\n", "malformed p line"},
      {"p cnf 2 1\np cnf 2 1\n", "duplicate p line"},
      {"p cnf 2 1\n1 3 0\n", "variable 3 out of range"},
      {"p cnf 2 1\n1 x 0\n", "bad literal \"x\""},
      {"p cnf 2 1\n0\n", "empty clause"},
      {"p cnf 2 1\n1 2\n", "unterminated clause"},
      {"p cnf 2 2\n1 2 0\n", "clause count mismatch"},
      {"c side 1 1\np cnf 2 1\n1 2 0\n", "side line needs"},
      {"c side 1 1 Q\np cnf 2 1\n1 2 0\n", "side must be L or R"},
      {"c side 5 1 L\np cnf 2 1\n1 2 0\n", "side refers to unknown variable"},
      {"c side 1 4 L\np cnf 2 1\n1 2 0\n", "side refers to unknown clause"},
      {"c side 1 1 L\nc side 1 1 R\np cnf 2 1\n1 2 0\n", "duplicate side entry"},
      {"c v-cycle 1 1\np cnf 2 1\n1 2 0\n", "v-cycle is not a permutation"},
      {"c vc-cycle v1 q2\np cnf 2 1\n1 2 0\n", "bad vc-cycle token"},
      {"c vc-cycle v1 v2 c3\np cnf 2 1\n1 2 0\n", "out of range"},
      {"c vc-cycle v1 v2\np cnf 2 1\n1 2 0\n", "vc-cycle is not a permutation"},
      {"", "missing p line"},
  };
  for (const auto& [text, want] : cases) {
    const std::string got = cnf_error_of(text);
    EXPECT_NE(got.find(want), std::string::npos) << text << " -> " << got;
  }
  EXPECT_NE(cnf_error_of("p cnf 2 1\n\n1 9 0\n").find("line 3"), std::string::npos);
}

TEST(Svg, EmptyOverlayDrawsOutlineOnly) {
  const std::string svg = render_svg(secluded::testing::square_with_hole());
  EXPECT_EQ(count(svg, "<path"), 0u);
  EXPECT_EQ(count(svg, "<polygon"), 3u);  // fill, outline, hole
  EXPECT_EQ(count(svg, "<circle"), 0u);
  EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
}

TEST(Svg, DeterministicAndFixedPrecision) {
  const auto d = secluded::testing::l_shape();
  SvgOverlay ov;
  ov.paths.push_back({PathPolyline{{Point(Rational(7, 4), Rational(3, 4)), Point(1, 1), Point(Rational(3, 4), Rational(7, 4))}},
                      "#000000", "a<b"});
  const std::string a = render_svg(d, ov), b = render_svg(d, ov);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("M1.7500,-0.7500 L1.0000,-1.0000 L0.7500,-1.7500"), std::string::npos);
  EXPECT_NE(a.find("<title>a&lt;b</title>"), std::string::npos);
}

TEST(Svg, PtasOverlayHasOnePath) {
  const auto d = secluded::testing::l_shape();
  const auto res = integral_secluded_ptas(d, Point(Rational(7, 4), Rational(1, 4)), Point(Rational(1, 4), Rational(7, 4)), 0.5);
  const WeightedSubdivision ws = build_weighted_subdivision(d, 0.5);
  SvgOverlay ov;
  ov.regions = ws.regions();
  ov.paths.push_back({res.path, "#1f4e9c", "ptas"});
  const std::string svg = render_svg(d, ov);
  EXPECT_EQ(count(svg, "<path"), 1u);
  EXPECT_EQ(count(svg, "<polygon"), 2 + ov.regions.size());
  EXPECT_EQ(svg, render_svg(d, ov));
}

TEST(Svg, LogScaleColors) {
  EXPECT_EQ(weight_color(1, 1, 100), "#fff7bc");
  EXPECT_EQ(weight_color(100, 1, 100), "#99000d");
  // geometric mean sits halfway on the ramp
  EXPECT_EQ(weight_color(10, 1, 100), weight_color(1000, 100, 10000));
  EXPECT_EQ(weight_color(10, 1, 100), "#cc7c65");
  EXPECT_EQ(weight_color(5, 5, 5), "#fff7bc");
}

TEST(LayoutIo, LayoutFileRoundTrips) {
  const Cnf f{2, {{{0, true}, {1, false}}, {{0, false}, {1, false}}}};
  const ReductionLayout L = build_christmas_tree(f);
  const DomainFile file = layout_file(L, f);
  const std::string text = serialize_domain(file);
  const DomainFile back = parse_domain(text);
  EXPECT_EQ(back.domain.area(), L.domain.area());
  EXPECT_EQ(*back.s, L.s);
  EXPECT_EQ(*back.t, L.t);
  EXPECT_EQ(back.annotations["literal_corridors"].size(), 3u);  // x1, !x1, !x2
  EXPECT_EQ(back.annotations["clause_gadgets"][1]["clause"], "!x1|!x2");
  EXPECT_EQ(serialize_domain(back), text);
}
