#pragma once

// OFF / OBJ meshes, SVG disc pictures and atomic file output.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lorentzfd/disc.hpp"
#include "lorentzfd/polyhedron.hpp"

namespace lorentzfd {

inline std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

/// Face indices with slab faces moved to the end, otherwise in stored order.
inline std::vector<std::size_t> export_face_order(const Polyhedron& poly) {
  std::vector<std::size_t> order;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < poly.faces.size(); ++i) {
      if (poly.faces[i].slab == (pass == 1)) order.push_back(i);
    }
  }
  return order;
}

inline std::string write_off(const Polyhedron& poly, bool comments = false) {
  std::ostringstream out;
  out << "OFF\n";
  out << poly.vertices.size() << ' ' << poly.faces.size() << ' ' << poly.edge_count << '\n';
  for (const auto& v : poly.vertices) {
    out << format_g17(v.x) << ' ' << format_g17(v.y) << ' ' << format_g17(v.z) << '\n';
  }
  for (std::size_t i : export_face_order(poly)) {
    const auto& loop = poly.faces[i].loop;
    out << loop.size();
    for (int v : loop) out << ' ' << v;
    out << '\n';
  }
  if (comments) out << "# slab\n";
  return out.str();
}

inline std::string write_obj(const Polyhedron& poly) {
  std::ostringstream out;
  for (const auto& v : poly.vertices) {
    out << "v " << format_g17(v.x) << ' ' << format_g17(v.y) << ' ' << format_g17(v.z) << '\n';
  }
  for (std::size_t i : export_face_order(poly)) {
    out << 'f';
    for (int v : poly.faces[i].loop) out << ' ' << v + 1;
    out << '\n';
  }
  return out.str();
}

struct ParsedMesh {
  std::vector<Vec3> vertices;
  std::vector<std::vector<int>> faces;
};

inline ParsedMesh parse_off(const std::string& text) {
  std::istringstream in(text);
  std::string magic;
  in >> magic;
  if (magic != "OFF") throw Error(ErrorCode::InvalidArgument, "not an OFF file");
  std::size_t nv = 0, ne = 0, nf = 0;
  in >> nv >> nf >> ne;
  ParsedMesh m;
  (void)ne;
  m.vertices.resize(nv);
  for (auto& v : m.vertices) in >> v.x >> v.y >> v.z;
  m.faces.resize(nf);
  for (auto& f : m.faces) {
    std::size_t n = 0;
    in >> n;
    f.resize(n);
    for (auto& i : f) in >> i;
  }
  if (!in) throw Error(ErrorCode::InvalidArgument, "truncated OFF file");
  return m;
}

inline ParsedMesh parse_obj(const std::string& text) {
  std::istringstream in(text);
  ParsedMesh m;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      Vec3 v;
      ls >> v.x >> v.y >> v.z;
      m.vertices.push_back(v);
    } else if (tag == "f") {
      std::vector<int> f;
      int i;
      while (ls >> i) f.push_back(i - 1);
      m.faces.push_back(f);
    }
  }
  return m;
}

/// Writes via a temporary file in the same directory and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw Error(ErrorCode::InvalidArgument, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace detail {

// Geodesic polygon in the Poincare disc, sampled through the Klein model
// where geodesics are straight.
inline std::string svg_polygon(const std::vector<Complex>& verts, double scale, double centre,
                               const char* fill, const char* stroke) {
  std::ostringstream out;
  out << "<path d=\"";
  char buf[64];
  const int steps = 16;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const Complex a = klein_of(verts[i]);
    const Complex b = klein_of(verts[(i + 1) % verts.size()]);
    for (int s = 0; s < steps; ++s) {
      const Complex p = poincare_of_klein(a + (b - a) * (static_cast<double>(s) / steps));
      std::snprintf(buf, sizeof buf, "%s%.3f %.3f ", (i == 0 && s == 0) ? "M" : "L",
                    centre + scale * p.real(), centre - scale * p.imag());
      out << buf;
    }
  }
  out << "Z\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"0.8\"/>\n";
  return out.str();
}

}  // namespace detail

/// Disc picture: unit circle of radius 512 px, the Dirichlet region of u dark
/// and the regions of the edge corona lighter.
inline std::string write_svg(const TriangleGroupData& group) {
  const double scale = 512.0, centre = 520.0;
  const auto region = dirichlet_region(group, group.u);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1040\" height=\"1040\" "
         "viewBox=\"0 0 1040 1040\">\n";
  out << "<circle cx=\"520\" cy=\"520\" r=\"512\" fill=\"white\" stroke=\"black\" "
         "stroke-width=\"1.5\"/>\n";
  for (const auto& g : edge_corona_elements(group)) {
    std::vector<Complex> img;
    for (const auto& v : region.vertices) img.push_back(mobius_apply(g, v));
    out << detail::svg_polygon(img, scale, centre, "#c8c8c8", "#404040");
  }
  out << detail::svg_polygon(region.vertices, scale, centre, "#505050", "#000000");
  char buf[128];
  for (const auto& x : edge_corona(group)) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"3\" fill=\"#b00000\"/>\n",
                  centre + scale * x.real(), centre - scale * x.imag());
    out << buf;
  }
  out << "<circle cx=\"520\" cy=\"520\" r=\"3\" fill=\"#b00000\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace lorentzfd
