#pragma once

#include <map>
#include <string>
#include <string_view>

#include "bfred/algebra/algebra.hpp"
#include "bfred/error.hpp"
#include "bfred/spectral/diagonal.hpp"
#include "json.hpp"

namespace bfred::cli {

using algebra::AlgebraPtr;
using algebra::Element;
using algebra::Homomorphism;

/// A name that does not resolve in the workspace.
class ResolutionError : public Error {
 public:
  explicit ResolutionError(const std::string& message) : Error(message) {}
};

struct NamedElement {
  std::string algebra;
  Element element;
};

/// JSON workspace:
///   algebras:          name -> {ambient_dim, basis: [matrix...]}
///   homomorphisms:     name -> {source, target, map: target dim x source dim}
///   elements:          name -> {algebra, coords}
///   diagonal_elements: name -> mini-language string
/// Scalars are integers or strings such as "3/2" or "1-2*i"; floats are
/// rejected. Diagnostics carry the JSON path of the offending value.
struct Workspace {
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, Homomorphism> homomorphisms;
  std::map<std::string, NamedElement> elements;
  std::map<std::string, spectral::DiagonalElement> diagonal_elements;

  const AlgebraPtr& algebra(const std::string& name) const;
  const Homomorphism& homomorphism(const std::string& name) const;
  const Element& element(const std::string& name) const;
  const spectral::DiagonalElement& diagonal(const std::string& name) const;
};

Workspace parse_workspace(std::string_view text);
Workspace load_workspace(const std::string& path);
nlohmann::ordered_json to_json(const Workspace& ws);

/// Scalar literal as written in workspace files.
nlohmann::ordered_json scalar_json(const exact::GaussianRational& z);
nlohmann::ordered_json matrix_json(const exact::ExactMatrix& m);

}  // namespace bfred::cli
