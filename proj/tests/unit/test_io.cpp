#include <gtest/gtest.h>

#include <random>

#include "cli_runner.hpp"
#include "csrstat/io.hpp"
#include "csrstat/svg.hpp"

using namespace csrstat;

TEST(Format, ShortestRoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) * std::pow(10.0, (i % 20) - 10);
    EXPECT_EQ(parse_double(fmt_exact(x), "x"), x);
  }
  EXPECT_EQ(fmt_exact(0.25), "0.25");
  EXPECT_EQ(fmt(1.0 / 3.0), "0.333333333333");
}

TEST(ParseDouble, RejectsGarbage) {
  EXPECT_EQ(parse_double(" 2.5 ", "x"), 2.5);
  EXPECT_THROW(parse_double("2.5x", "x"), InputError);
  EXPECT_THROW(parse_double("", "x"), InputError);
  EXPECT_THROW(parse_double("nan", "x"), InputError);
}

TEST(GridText, RoundTrip) {
  std::mt19937_64 rng(2);
  std::exponential_distribution<double> e(0.3);
  for (const auto& w : {Window({7, 5}, 0.5), Window({3, 4, 2}, 2.0)}) {
    std::vector<double> v(w.voxel_count());
    for (double& x : v) x = e(rng);
    const VoxelGrid g(w, v);
    const auto raw = parse_raw_grid(format_grid(g));
    EXPECT_EQ(raw.window, w);
    EXPECT_EQ(raw.values, v);
  }
}

TEST(GridText, MaskRoundTrip) {
  const Window w({3, 2}, 1.0);
  const VoxelGrid g(w, {1, 2, 3, 4, 5, 6}, std::vector<std::uint8_t>{1, 1, 0, 1, 0, 1});
  const auto mask = parse_mask(format_mask(g), w);
  EXPECT_EQ(mask, g.mask());
}

TEST(GridText, Errors) {
  EXPECT_THROW(parse_raw_grid("not json\n1 2"), InputError);
  EXPECT_THROW(parse_raw_grid(R"({"dim":2,"extent":[2,2],"voxel_len":1})"
                              "\n1 2 3"),
               InputError);
  EXPECT_THROW(parse_raw_grid(R"({"dim":3,"extent":[2,2],"voxel_len":1})"
                              "\n1 2 3 4"),
               InputError);
  EXPECT_THROW(parse_raw_grid(R"({"dim":2,"extent":[2,2],"voxel_len":1})"
                              "\n1 2 x 4"),
               InputError);
  EXPECT_THROW(parse_mask(R"({"dim":2,"extent":[2,1],"voxel_len":1})"
                          "\n1 0.5",
                          Window({2, 1}, 1.0)),
               InputError);
  EXPECT_THROW(read_grid("/nonexistent/grid.txt"), InputError);
}

TEST(PointText, RoundTripAndErrors) {
  const Window w({10, 10}, 1.0);
  const PointSample s(w, {{1.25, 3.5, 0}, {9.875, 0.125, 0}});
  const auto back = parse_points(format_points(s), w);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.points()[1], s.points()[1]);
  EXPECT_THROW(parse_points("x,y\n1,2,3\n", w), InputError);
  EXPECT_THROW(parse_points("a,b\n1,2\n", w), InputError);
  EXPECT_THROW(parse_points("x,y\n11,2\n", w), InputError);
  const Window w3({4, 4, 4}, 1.0);
  EXPECT_EQ(parse_points("x,y,z\n1,2,3\n", w3).size(), 1u);
}

TEST(DeltaTable, RoundTrip) {
  cli::TempDir dir("io");
  const std::vector<DeltaRecord> recs{{"c1", "Arhgdia", MoleculeKind::mRNA, 2, 0.5},
                                      {"c2", "Arhgdia", MoleculeKind::Protein, 3, 1.25}};
  write_text(dir / "d.csv", format_deltas(recs));
  const auto back = read_deltas(dir / "d.csv");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].id, "c2");
  EXPECT_EQ(back[1].kind, MoleculeKind::Protein);
  EXPECT_EQ(back[1].delta, 1.25);
  write_text(dir / "bad.csv", "id,species\nc1,A\n");
  EXPECT_THROW(read_deltas(dir / "bad.csv"), InputError);
}

TEST(Json, ModelSerialisation) {
  const auto g = to_json(GammaParams{2.0, 0.5});
  EXPECT_EQ(g["kind"], "gamma");
  EXPECT_EQ(g["a"], 2.0);
  const auto w = to_json(WSPParams{{1, 2}, {0.5, 0.25}});
  EXPECT_EQ(w["kind"], "wsp");
  EXPECT_EQ(w["alphas"][1], 0.25);
}

TEST(Json, ConfigEcho) {
  TestConfig c;
  c.null_spec.kind = NullKind::WSPFit;
  const auto j = config_json(c);
  EXPECT_EQ(j["null"], "wsp");
  EXPECT_EQ(j["trials"], 99);
  EXPECT_EQ(j["radii"].size(), 11u);
  EXPECT_TRUE(j.contains("wsp_weights"));
}

TEST(Svg, ChartsAreWellFormed) {
  const auto line = svg_hstar_chart({{"a<b", {0, 1, 2}, {0, 2, -1}}}, "H* & co");
  EXPECT_EQ(line.rfind("<svg", 0), 0u);
  EXPECT_NE(line.find("</svg>"), std::string::npos);
  EXPECT_EQ(line.find("a<b"), std::string::npos);
  EXPECT_NE(line.find("a&lt;b"), std::string::npos);
  const auto bars = svg_bar_chart({"x", "y"}, {1.0, 2.0}, "deltas");
  EXPECT_NE(bars.find("<rect"), std::string::npos);
}
