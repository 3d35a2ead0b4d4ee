#include "bfred/cli/workspace.hpp"

#include <fstream>
#include <sstream>

#include "bfred/spectral/language.hpp"

namespace bfred::cli {

using exact::ExactMatrix;
using exact::GaussianRational;
using exact::Vector;
using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) { throw ParseError(message, path); }

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t k) { return path + "/" + std::to_string(k); }

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

GaussianRational scalar(const json& v, const std::string& path) {
  if (v.is_number_integer()) return GaussianRational(v.get<long>());
  if (v.is_number_float()) fail(path, "floating point literals are not exact; write a fraction string");
  if (!v.is_string()) fail(path, "expected an exact scalar");
  try {
    return GaussianRational::parse(v.get<std::string>());
  } catch (const Error& e) {
    fail(path, std::string("bad scalar literal: ") + e.what());
  }
}

ExactMatrix matrix(const json& v, const std::string& path, std::size_t rows, std::size_t cols) {
  if (!v.is_array() || v.size() != rows)
    fail(path, "expected " + std::to_string(rows) + " rows of length " + std::to_string(cols));
  ExactMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = v[r];
    if (!row.is_array() || row.size() != cols)
      fail(at(path, r), "expected a row of length " + std::to_string(cols) + " (matrices must be square " +
                            std::to_string(rows) + " x " + std::to_string(cols) + ")");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar(row[c], at(at(path, r), c));
  }
  return m;
}

std::size_t count(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) fail(path, "expected a positive integer");
  return v.get<std::size_t>();
}

const json& section(const json& doc, const char* key) {
  static const json empty = json::object();
  auto it = doc.find(key);
  if (it == doc.end()) return empty;
  if (!it->is_object()) fail(std::string("/") + key, "expected an object of named entries");
  return *it;
}

std::string position_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + " col " + std::to_string(col);
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const char* what) {
  auto it = m.find(name);
  if (it == m.end()) throw ResolutionError(std::string("unknown ") + what + " '" + name + "'");
  return it->second;
}

}  // namespace

const AlgebraPtr& Workspace::algebra(const std::string& name) const { return lookup(algebras, name, "algebra"); }
const Homomorphism& Workspace::homomorphism(const std::string& name) const {
  return lookup(homomorphisms, name, "homomorphism");
}
const Element& Workspace::element(const std::string& name) const { return lookup(elements, name, "element").element; }
const spectral::DiagonalElement& Workspace::diagonal(const std::string& name) const {
  return lookup(diagonal_elements, name, "diagonal element");
}

Workspace parse_workspace(std::string_view source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON", position_of(source, e.byte));
  }
  if (!doc.is_object()) fail("/", "expected a workspace object");
  Workspace ws;
  for (const auto& [name, v] : section(doc, "algebras").items()) {
    const std::string path = at("/algebras", name);
    const std::size_t n = count(field(v, path, "ambient_dim"), at(path, "ambient_dim"));
    const json& basis = field(v, path, "basis");
    if (!basis.is_array() || basis.empty()) fail(at(path, "basis"), "expected a nonempty list of matrices");
    std::vector<ExactMatrix> mats;
    for (std::size_t k = 0; k < basis.size(); ++k) mats.push_back(matrix(basis[k], at(at(path, "basis"), k), n, n));
    try {
      ws.algebras.emplace(name, algebra::FiniteAlgebra::create(n, std::move(mats)));
    } catch (const VerificationError& e) {
      fail(path, e.what());
    }
  }
  for (const auto& [name, v] : section(doc, "homomorphisms").items()) {
    const std::string path = at("/homomorphisms", name);
    const std::string src = text(field(v, path, "source"), at(path, "source"));
    const std::string dst = text(field(v, path, "target"), at(path, "target"));
    if (!ws.algebras.count(src)) fail(at(path, "source"), "unknown algebra '" + src + "'");
    if (!ws.algebras.count(dst)) fail(at(path, "target"), "unknown algebra '" + dst + "'");
    const AlgebraPtr& s = ws.algebras.at(src);
    const AlgebraPtr& t = ws.algebras.at(dst);
    ExactMatrix m = matrix(field(v, path, "map"), at(path, "map"), t->dim(), s->dim());
    try {
      ws.homomorphisms.emplace(name, Homomorphism(s, t, std::move(m)));
    } catch (const VerificationError& e) {
      fail(path, e.what());
    }
  }
  for (const auto& [name, v] : section(doc, "elements").items()) {
    const std::string path = at("/elements", name);
    const std::string alg = text(field(v, path, "algebra"), at(path, "algebra"));
    if (!ws.algebras.count(alg)) fail(at(path, "algebra"), "unknown algebra '" + alg + "'");
    const AlgebraPtr& a = ws.algebras.at(alg);
    const json& coords = field(v, path, "coords");
    if (!coords.is_array() || coords.size() != a->dim())
      fail(at(path, "coords"), "expected " + std::to_string(a->dim()) + " coordinates");
    Vector c;
    for (std::size_t k = 0; k < coords.size(); ++k) c.push_back(scalar(coords[k], at(at(path, "coords"), k)));
    ws.elements.emplace(name, NamedElement{alg, a->from_coords(std::move(c))});
  }
  for (const auto& [name, v] : section(doc, "diagonal_elements").items()) {
    const std::string path = at("/diagonal_elements", name);
    try {
      ws.diagonal_elements.emplace(name, spectral::parse_diagonal(text(v, path)));
    } catch (const ParseError& e) {
      fail(path, e.what());
    }
  }
  return ws;
}

Workspace load_workspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResolutionError("cannot open workspace '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_workspace(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.what(), path);
  }
}

nlohmann::ordered_json scalar_json(const GaussianRational& z) {
  if (z.is_real() && z.re().get_den() == 1 && z.re().get_num().fits_slong_p()) return z.re().get_num().get_si();
  return z.to_string();
}

nlohmann::ordered_json matrix_json(const ExactMatrix& m) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

nlohmann::ordered_json to_json(const Workspace& ws) {
  nlohmann::ordered_json out;
  out["algebras"] = nlohmann::ordered_json::object();
  for (const auto& [name, a] : ws.algebras) {
    nlohmann::ordered_json basis = nlohmann::ordered_json::array();
    for (const auto& b : a->basis()) basis.push_back(matrix_json(b));
    out["algebras"][name] = {{"ambient_dim", a->ambient_dim()}, {"basis", basis}};
  }
  out["homomorphisms"] = nlohmann::ordered_json::object();
  for (const auto& [name, h] : ws.homomorphisms) {
    std::string src, dst;
    for (const auto& [n, a] : ws.algebras) {
      if (a == h.source()) src = n;
      if (a == h.target()) dst = n;
    }
    out["homomorphisms"][name] = {{"source", src}, {"target", dst}, {"map", matrix_json(h.map_matrix())}};
  }
  out["elements"] = nlohmann::ordered_json::object();
  for (const auto& [name, e] : ws.elements) {
    nlohmann::ordered_json coords = nlohmann::ordered_json::array();
    for (const auto& c : e.element.coords()) coords.push_back(scalar_json(c));
    out["elements"][name] = {{"algebra", e.algebra}, {"coords", coords}};
  }
  out["diagonal_elements"] = nlohmann::ordered_json::object();
  for (const auto& [name, d] : ws.diagonal_elements) out["diagonal_elements"][name] = d.to_string();
  return out;
}

}  // namespace bfred::cli
