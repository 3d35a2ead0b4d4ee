#pragma once

#include <string>
#include <vector>

#include "bfred/cli/workspace.hpp"

namespace bfred::cli {

/// Machine-readable reports; render_text prints them for people.
nlohmann::ordered_json classify_report(const Homomorphism& hom, const Element& a, unsigned trials, std::uint64_t seed);
nlohmann::ordered_json drazin_report(const Element& a);
nlohmann::ordered_json spectra_report(const Homomorphism& hom, const Element& a, std::uint64_t seed);
nlohmann::ordered_json diag_report(const spectral::DiagonalElement& d);

/// "key: value" lines, nested objects indented.
std::string render_text(const nlohmann::ordered_json& report);

}  // namespace bfred::cli
