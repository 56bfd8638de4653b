#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lorentzfd/pipeline.hpp"

using namespace lorentzfd;
namespace fs = std::filesystem;

namespace {

Polyhedron tetrahedron() {
  Polyhedron p;
  p.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  p.faces.resize(4);
  p.faces[0].loop = {0, 2, 1};
  p.faces[1].loop = {0, 1, 3};
  p.faces[2].loop = {1, 2, 3};
  p.faces[3].loop = {0, 3, 2};
  p.edge_count = 6;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("lorentzfd_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Off, Tetrahedron) {
  const auto text = write_off(tetrahedron());
  EXPECT_EQ(text.substr(0, 10), "OFF\n4 4 6\n");
  const auto m = parse_off(text);
  EXPECT_EQ(m.vertices.size(), 4u);
  ASSERT_EQ(m.faces.size(), 4u);
  EXPECT_EQ(m.faces[2], (std::vector<int>{1, 2, 3}));
}

TEST(Off, RejectsGarbage) {
  EXPECT_THROW(parse_off("PLY\n"), Error);
  EXPECT_THROW(parse_off("OFF\n4 4 6\n0 0 0\n"), Error);
}

TEST(Obj, SameMeshAsOff) {
  const auto& poly = build_domain(Series::E, 2, PReading::Tri, RunConfig{}).polyhedron;
  const auto a = parse_off(write_off(poly));
  const auto b = parse_obj(write_obj(poly));
  ASSERT_EQ(a.vertices.size(), b.vertices.size());
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    EXPECT_EQ(distance(a.vertices[i], b.vertices[i]), 0.0);
    EXPECT_EQ(distance(a.vertices[i], poly.vertices[i]), 0.0);
  }
  EXPECT_EQ(a.faces, b.faces);
  const auto order = export_face_order(poly);
  EXPECT_TRUE(poly.faces[order[order.size() - 1]].slab);
  EXPECT_TRUE(poly.faces[order[order.size() - 2]].slab);
}

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_g17(-0.0), "0");
  EXPECT_EQ(std::stod(format_g17(0.1)), 0.1);
}

TEST(Run, WritesArtifactsMatchingReport) {
  RunConfig cfg;
  cfg.samples = 500;
  cfg.output_dir = scratch_dir("run");
  cfg.formats = {"off", "obj", "json", "svg"};
  const auto res = run(cfg);
  ASSERT_EQ(res.written.size(), 4u);
  for (const auto& p : res.written) EXPECT_TRUE(fs::exists(p)) << p;
  const auto json = nlohmann::json::parse(slurp(cfg.output_dir / "fund_E_k2.json"));
  EXPECT_EQ(json, res.report);
  EXPECT_EQ(json["schema_version"], kSchemaVersion);
  EXPECT_EQ(json["p_reading"], "tri");
  EXPECT_TRUE(json["reduction"]["holds"].get<bool>());
  const auto mesh = parse_off(slurp(cfg.output_dir / "fund_E_k2.off"));
  EXPECT_EQ(mesh.vertices.size(), json["counts"]["vertices"].get<std::size_t>());
  EXPECT_EQ(mesh.faces.size(), json["counts"]["faces"].get<std::size_t>());
  const auto svg = slurp(cfg.output_dir / "fund_E_k2.svg");
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("#505050"), std::string::npos);
  EXPECT_FALSE(fs::exists(cfg.output_dir / "fund_E_k2.off.tmp"));
}

TEST(Run, Deterministic) {
  RunConfig cfg;
  cfg.series = Series::Z;
  cfg.k = 1;
  cfg.samples = 300;
  cfg.output_dir = scratch_dir("det_a");
  run(cfg);
  RunConfig again = cfg;
  again.output_dir = scratch_dir("det_b");
  run(again);
  for (const char* name : {"fund_Z_k1.off", "fund_Z_k1.json"}) {
    EXPECT_EQ(slurp(cfg.output_dir / name), slurp(again.output_dir / name)) << name;
  }
}

TEST(Run, RejectsBadConfig) {
  RunConfig cfg;
  cfg.k = 3;
  try {
    run(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("k divisible by 3"), std::string::npos);
    const auto j = error_json(e);
    EXPECT_EQ(j["error"], std::string(to_string(e.code())));
  }
  cfg.k = 2;
  cfg.formats = {"stl"};
  EXPECT_THROW(run(cfg), Error);
  EXPECT_THROW(parse_reading("both"), Error);
}

TEST(Run, LcmReadingIsRejected) {
  for (Series s : {Series::E, Series::Z}) {
    for (int k : {1, 2, 4}) {
      EXPECT_THROW(build_domain(s, k, PReading::Lcm, RunConfig{}), Error) << to_string(s) << k;
    }
  }
  RunConfig cfg;
  cfg.samples = 0;
  cfg.formats = {};
  const auto res = run(cfg);
  EXPECT_EQ(res.report["p_reading"], "tri");
  EXPECT_EQ(res.report["rejected_readings"], "");
}
