#include "bfred/cli/report.hpp"

#include <sstream>

#include "bfred/fredholm/spectra.hpp"
#include "bfred/geninv/drazin.hpp"
#include "bfred/spectral/language.hpp"

namespace bfred::cli {

using ojson = nlohmann::ordered_json;

namespace {

ojson witness(const std::optional<fredholm::Decomposition>& d) {
  if (!d) return nullptr;
  return {{"b", matrix_json(d->b.matrix())}, {"c", matrix_json(d->c.matrix())}};
}

ojson degrees(const fredholm::DegreeSet& s) {
  ojson found = ojson::array();
  for (unsigned k : s.degrees()) found.push_back(k);
  return {{"found", found}, {"completeness", s.witnesses_only ? "witnesses-only" : "complete"}};
}

std::string scalar_text(const ojson& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void render(std::ostringstream& os, const ojson& v, const std::string& indent) {
  for (const auto& [key, value] : v.items()) {
    os << indent << key << ":";
    if (value.is_object()) {
      os << "\n";
      render(os, value, indent + "  ");
    } else {
      os << " " << scalar_text(value) << "\n";
    }
  }
}

}  // namespace

ojson classify_report(const Homomorphism& hom, const Element& a, unsigned trials, std::uint64_t seed) {
  const auto r = fredholm::classify(hom, a, trials, seed);
  ojson out;
  out["element"] = matrix_json(a.matrix());
  out["fredholm"] = r.fredholm;
  out["weyl"] = {{"member", r.weyl.member}, {"witness", witness(r.weyl.witness)}};
  out["browder"] = {{"member", r.browder.member}, {"witness", witness(r.browder.witness)}};
  out["bfredholm"] = {{"member", r.bfredholm}, {"degree", r.bfredholm_degree}};
  out["bweyl"] = degrees(r.bweyl);
  out["bbrowder"] = degrees(r.bbrowder);
  out["gbf"] = r.gbf;
  out["gbw"] = r.gbw;
  out["gbb"] = r.gbb;
  out["riesz"] = r.riesz;
  out["t_nilpotent"] = r.t_nilpotent;
  return out;
}

ojson drazin_report(const Element& a) {
  const auto d = geninv::drazin_inverse(a);
  ojson out;
  out["element"] = matrix_json(a.matrix());
  out["inverse"] = matrix_json(d.inverse.matrix());
  out["index"] = d.index;
  out["spectral_idempotent"] = matrix_json(d.spectral_idempotent.matrix());
  return out;
}

ojson spectra_report(const Homomorphism& hom, const Element& a, std::uint64_t seed) {
  const auto b = fredholm::b_spectra(hom, a);
  ojson out;
  out["element"] = matrix_json(a.matrix());
  out["sigma"] = fredholm::spectrum(a).to_string();
  out["sigma_F"] = fredholm::fredholm_spectrum(hom, a).to_string();
  out["sigma_W"] = fredholm::weyl_spectrum(hom, a, seed).to_string();
  out["sigma_B"] = fredholm::browder_spectrum(hom, a, seed).to_string();
  out["sigma_BF"] = b.bf.to_string();
  out["sigma_BW"] = b.bw.to_string();
  out["sigma_BB"] = b.bb.to_string();
  out["sigma_GBF"] = b.gbf.to_string();
  out["sigma_GBW"] = b.gbw.to_string();
  out["sigma_GBB"] = b.gbb.to_string();
  return out;
}

ojson diag_report(const spectral::DiagonalElement& d) {
  const auto r = spectral::diag_classify(d);
  ojson out;
  out["element"] = d.to_string();
  out["sigma"] = r.sigma.to_string();
  out["sigma_F"] = r.sigma_F.to_string();
  out["sigma_BF"] = r.sigma_BF.to_string();
  out["sigma_GBF"] = r.sigma_GBF.to_string();
  out["fredholm"] = r.fredholm_at_0;
  out["bfredholm"] = r.bfredholm_at_0;
  out["riesz"] = r.riesz;
  out["t_algebraic"] = r.t_algebraic;
  return out;
}

std::string render_text(const ojson& report) {
  std::ostringstream os;
  render(os, report, "");
  return os.str();
}

}  // namespace bfred::cli
