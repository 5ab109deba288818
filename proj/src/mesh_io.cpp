// Copyright 2026 The simpeval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "simpeval/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "simpeval/error.hpp"

namespace simpeval {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

double to_double(std::string_view tok, std::size_t line) {
  // from_chars rejects a leading '+'.
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("expected a number, got '" + std::string(tok) + "'", line);
  }
  return v;
}

long long to_int(std::string_view tok, std::size_t line) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("expected an integer, got '" + std::string(tok) + "'", line);
  }
  return v;
}

// Line reader that strips '#' comments and skips blank lines.
class LineSource {
 public:
  explicit LineSource(std::istream& in, bool strip_comments = true)
      : in_(in), strip_(strip_comments) {}

  bool next(std::vector<std::string_view>& tokens) {
    while (std::getline(in_, buf_)) {
      ++line_;
      if (strip_) {
        if (auto pos = buf_.find('#'); pos != std::string::npos) buf_.resize(pos);
      }
      tokens = split_ws(buf_);
      if (!tokens.empty()) return true;
    }
    return false;
  }
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  bool strip_;
  std::string buf_;
  std::size_t line_ = 0;
};

void add_polygon(TriMesh& mesh, const std::vector<long long>& idx,
                 std::size_t line) {
  if (idx.size() < 3) throw ParseError("face with fewer than 3 vertices", line);
  for (auto i : idx) {
    if (i < 0 || static_cast<std::size_t>(i) >= mesh.vertices.size()) {
      throw ParseError("face index " + std::to_string(i) + " out of range (" +
                           std::to_string(mesh.vertices.size()) + " vertices)",
                       line);
    }
  }
  for (std::size_t k = 1; k + 1 < idx.size(); ++k) {
    mesh.faces.push_back({static_cast<std::uint32_t>(idx[0]),
                          static_cast<std::uint32_t>(idx[k]),
                          static_cast<std::uint32_t>(idx[k + 1])});
  }
}

TriMesh finish(TriMesh mesh) {
  if (mesh.vertices.empty() || mesh.faces.empty()) {
    throw ParseError("empty mesh", 0);
  }
  validate(mesh);
  return mesh;
}

}  // namespace

std::optional<MeshFormat> parse_mesh_format(std::string_view name) {
  const auto n = lower(name);
  if (n == "off") return MeshFormat::kOff;
  if (n == "obj") return MeshFormat::kObj;
  if (n == "ply" || n == "ply-ascii") return MeshFormat::kPly;
  return std::nullopt;
}

std::optional<MeshFormat> format_from_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  if (ext.empty()) return std::nullopt;
  return parse_mesh_format(std::string_view(ext).substr(1));
}

TriMesh read_off(std::istream& in, std::string label) {
  TriMesh mesh;
  mesh.label = std::move(label);
  LineSource src(in);
  std::vector<std::string_view> tok;
  if (!src.next(tok)) throw ParseError("empty mesh", src.line());

  // Header may be "OFF" alone or "OFF nv nf ne".
  if (tok[0] != "OFF") {
    throw ParseError("missing OFF header", src.line());
  }
  tok.erase(tok.begin());
  if (tok.empty() && !src.next(tok)) throw ParseError("missing counts", src.line());
  if (tok.size() < 2) throw ParseError("expected vertex and face counts", src.line());
  const auto nv = to_int(tok[0], src.line());
  const auto nf = to_int(tok[1], src.line());
  if (nv < 0 || nf < 0) throw ParseError("negative element count", src.line());

  mesh.vertices.reserve(static_cast<std::size_t>(nv));
  for (long long i = 0; i < nv; ++i) {
    if (!src.next(tok)) throw ParseError("unexpected end of file in vertices", src.line());
    if (tok.size() < 3) throw ParseError("vertex needs 3 coordinates", src.line());
    mesh.vertices.emplace_back(to_double(tok[0], src.line()),
                               to_double(tok[1], src.line()),
                               to_double(tok[2], src.line()));
  }
  std::vector<long long> idx;
  for (long long i = 0; i < nf; ++i) {
    if (!src.next(tok)) throw ParseError("unexpected end of file in faces", src.line());
    const auto k = to_int(tok[0], src.line());
    if (k < 0 || static_cast<std::size_t>(k) + 1 > tok.size()) {
      throw ParseError("face vertex count does not match its indices", src.line());
    }
    idx.clear();
    for (long long j = 0; j < k; ++j) idx.push_back(to_int(tok[j + 1], src.line()));
    add_polygon(mesh, idx, src.line());
  }
  return finish(std::move(mesh));
}

TriMesh read_obj(std::istream& in, std::string label) {
  TriMesh mesh;
  mesh.label = std::move(label);
  LineSource src(in);
  std::vector<std::string_view> tok;
  std::vector<long long> idx;
  while (src.next(tok)) {
    if (tok[0] == "v") {
      if (tok.size() < 4) throw ParseError("vertex needs 3 coordinates", src.line());
      mesh.vertices.emplace_back(to_double(tok[1], src.line()),
                                 to_double(tok[2], src.line()),
                                 to_double(tok[3], src.line()));
    } else if (tok[0] == "f") {
      idx.clear();
      for (std::size_t j = 1; j < tok.size(); ++j) {
        auto t = tok[j];
        t = t.substr(0, t.find('/'));
        auto i = to_int(t, src.line());
        // 1-based; negative indices count back from the latest vertex.
        if (i < 0) {
          i = static_cast<long long>(mesh.vertices.size()) + i;
        } else if (i == 0) {
          throw ParseError("OBJ index 0 is invalid", src.line());
        } else {
          i -= 1;
        }
        idx.push_back(i);
      }
      add_polygon(mesh, idx, src.line());
    }
  }
  return finish(std::move(mesh));
}

TriMesh read_ply(std::istream& in, std::string label) {
  TriMesh mesh;
  mesh.label = std::move(label);
  LineSource src(in, /*strip_comments=*/false);
  std::vector<std::string_view> tok;
  if (!src.next(tok) || tok[0] != "ply") throw ParseError("missing ply magic", src.line());

  struct Element {
    std::string name;
    long long count = 0;
    std::vector<std::string> props;  // "list" for list properties
  };
  std::vector<Element> elements;
  bool ascii = false;
  for (;;) {
    if (!src.next(tok)) throw ParseError("unterminated PLY header", src.line());
    if (tok[0] == "end_header") break;
    if (tok[0] == "format") {
      if (tok.size() < 2) throw ParseError("bad format line", src.line());
      ascii = tok[1] == "ascii";
      if (!ascii) throw ParseError("only ASCII PLY is supported", src.line());
    } else if (tok[0] == "element") {
      if (tok.size() < 3) throw ParseError("bad element line", src.line());
      elements.push_back({std::string(tok[1]), to_int(tok[2], src.line()), {}});
    } else if (tok[0] == "property") {
      if (elements.empty()) throw ParseError("property before element", src.line());
      if (tok.size() >= 5 && tok[1] == "list") {
        elements.back().props.emplace_back("list:" + std::string(tok[4]));
      } else if (tok.size() >= 3) {
        elements.back().props.emplace_back(tok[2]);
      } else {
        throw ParseError("bad property line", src.line());
      }
    }
  }
  if (!ascii) throw ParseError("PLY format line missing", src.line());

  std::vector<long long> idx;
  for (const auto& el : elements) {
    int px = -1, py = -1, pz = -1;
    for (std::size_t p = 0; p < el.props.size(); ++p) {
      if (el.props[p] == "x") px = static_cast<int>(p);
      if (el.props[p] == "y") py = static_cast<int>(p);
      if (el.props[p] == "z") pz = static_cast<int>(p);
    }
    for (long long i = 0; i < el.count; ++i) {
      if (!src.next(tok)) throw ParseError("unexpected end of PLY body", src.line());
      if (el.name == "vertex") {
        if (px < 0 || py < 0 || pz < 0) throw ParseError("vertex lacks x/y/z", src.line());
        const auto need = static_cast<std::size_t>(std::max({px, py, pz})) + 1;
        if (tok.size() < need) throw ParseError("short vertex record", src.line());
        mesh.vertices.emplace_back(to_double(tok[px], src.line()),
                                   to_double(tok[py], src.line()),
                                   to_double(tok[pz], src.line()));
      } else if (el.name == "face") {
        // The index list is taken from the first list property.
        std::size_t pos = 0;
        bool done = false;
        for (const auto& prop : el.props) {
          if (pos >= tok.size()) throw ParseError("short face record", src.line());
          if (prop.rfind("list:", 0) == 0) {
            const auto k = to_int(tok[pos], src.line());
            if (k < 0 || pos + 1 + static_cast<std::size_t>(k) > tok.size()) {
              throw ParseError("face list length mismatch", src.line());
            }
            if (!done) {
              idx.clear();
              for (long long j = 0; j < k; ++j) idx.push_back(to_int(tok[pos + 1 + j], src.line()));
              add_polygon(mesh, idx, src.line());
              done = true;
            }
            pos += 1 + static_cast<std::size_t>(k);
          } else {
            pos += 1;
          }
        }
        if (!done) throw ParseError("face element without index list", src.line());
      }
    }
  }
  return finish(std::move(mesh));
}

TriMesh load_mesh(const std::filesystem::path& path, MeshFormat format) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mesh file " + path.string());
  auto label = path.stem().string();
  try {
    switch (format) {
      case MeshFormat::kOff: return read_off(in, label);
      case MeshFormat::kObj: return read_obj(in, label);
      case MeshFormat::kPly: return read_ply(in, label);
    }
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
  throw InvalidArgument("unknown mesh format");
}

TriMesh load_mesh(const std::filesystem::path& path) {
  auto fmt = format_from_path(path);
  if (!fmt) throw InvalidArgument("cannot infer mesh format from " + path.string());
  return load_mesh(path, *fmt);
}

void write_off(std::ostream& out, const TriMesh& mesh) {
  out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.faces.size() << " 0\n";
  char buf[64];
  for (const auto& v : mesh.vertices) {
    for (int k = 0; k < 3; ++k) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v[k]);
      out.write(buf, ptr - buf);
      out.put(k < 2 ? ' ' : '\n');
    }
  }
  for (const auto& f : mesh.faces) {
    out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  }
}

void save_off(const std::filesystem::path& path, const TriMesh& mesh) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_off(out, mesh);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace simpeval
