#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bfred/spectral/spectral_set.hpp"

namespace bfred::spectral {

/// Items of the description language, separated by ';':
///
///   empty
///   finite [e, ...]
///   tail EXPR [-> LIMIT] [from K] [except [k, ...]]
///   family EXPR [from K1, K2]
///   disk(C, R)   circle(C, R)   (R a number or sqrt(q))
///   segment(A, B)
///   const c      (diagonal elements only)
///
/// Tail rules are written in n, family rules in m and n. A bare n stands for
/// the harmonic node 1/n; (r)^n, r^-n and (r)^(k*n) use the geometric node.
/// Exponents of the node must end up nonnegative.
struct ConstantItem {
  GaussianRational value;
};

/// Values as written, repeats kept.
struct FiniteItem {
  std::vector<GaussianRational> values;
};

using LanguageItem = std::variant<FiniteItem, ConstantItem, Tail, TailFamily, Disk, Circle, Segment>;

/// Throws ParseError with a "col N" position.
std::vector<LanguageItem> parse_items(std::string_view text, bool allow_constants);
SpectralSet parse_spectral_set(std::string_view text);

/// Polynomial in `var` with exact coefficients, e.g. "z^2 - 2*z + 1/2".
ExactPolynomial parse_polynomial(std::string_view text, std::string_view var = "z");
/// Exact constant such as "3", "-5/2", "1+2i", "(1/2)^3".
GaussianRational parse_constant(std::string_view text);

std::string format_value(const GaussianRational& z);
std::string format_tail_rule(const Node& node, const ExactPolynomial& rule);
std::string format_family_rule(const Node& node_m, const Node& node_n, const Bivariate& rule);
std::string format_primitive(const Primitive& p);
std::string format_item(const LanguageItem& item);

}  // namespace bfred::spectral
