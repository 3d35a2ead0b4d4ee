#include "bfred/spectral/diagonal.hpp"

#include <algorithm>

#include "bfred/error.hpp"
#include "bfred/spectral/language.hpp"

namespace bfred::spectral {

namespace {

GaussianRational apply(const GaussianRational& x, const GaussianRational& y, DiagOp op) {
  return op == DiagOp::Add ? x + y : x * y;
}

ExactPolynomial apply(const ExactPolynomial& x, const ExactPolynomial& y, DiagOp op) {
  return op == DiagOp::Add ? x + y : x * y;
}

Bivariate apply(const Bivariate& x, const Bivariate& y, DiagOp op) { return op == DiagOp::Add ? x + y : x * y; }

Atom tail_atom(Tail t) {
  if (t.rule.degree() < 1) return ConstantAtom{t.rule.coefficient(0)};
  return t;
}

Atom family_atom(TailFamily f) {
  if (f.rule.is_zero() || (f.rule.degree_s() < 1 && f.rule.degree_t() < 1)) return ConstantAtom{f.rule.coefficient(0, 0)};
  if (f.rule.degree_s() < 1 || f.rule.degree_t() < 1)
    throw Unsupported("combined family depends on one index only");
  return f;
}

/// Atom op constant c, entrywise.
Atom with_constant(const Atom& a, const GaussianRational& c, DiagOp op, bool constant_first) {
  auto combine = [&](const GaussianRational& v) { return constant_first ? apply(c, v, op) : apply(v, c, op); };
  if (auto* f = std::get_if<FiniteAtom>(&a)) return FiniteAtom{combine(f->value), f->multiplicity};
  if (auto* k = std::get_if<ConstantAtom>(&a)) return ConstantAtom{combine(k->value)};
  if (auto* t = std::get_if<Tail>(&a)) {
    Tail r = *t;
    r.rule = apply(t->rule, ExactPolynomial(c), op);
    return tail_atom(std::move(r));
  }
  TailFamily r = std::get<TailFamily>(a);
  r.rule = apply(r.rule, Bivariate::constant(c), op);
  return family_atom(std::move(r));
}

Atom pair_atoms(const Atom& x, const Atom& y, DiagOp op) {
  if (auto* k = std::get_if<ConstantAtom>(&y); k && !std::holds_alternative<FiniteAtom>(x))
    return with_constant(x, k->value, op, false);
  if (auto* k = std::get_if<ConstantAtom>(&x); k && !std::holds_alternative<FiniteAtom>(y))
    return with_constant(y, k->value, op, true);
  if (auto* f = std::get_if<FiniteAtom>(&x)) {
    auto* g = std::get_if<FiniteAtom>(&y);
    if (!g || g->multiplicity != f->multiplicity) throw ShapeError("finite atoms must pair with finite atoms of equal multiplicity");
    return FiniteAtom{apply(f->value, g->value, op), f->multiplicity};
  }
  if (auto* t = std::get_if<Tail>(&x)) {
    auto* u = std::get_if<Tail>(&y);
    if (!u || !(u->node == t->node) || u->start != t->start || u->excluded != t->excluded)
      throw ShapeError("tails must share node and index range");
    Tail r = *t;
    r.rule = apply(t->rule, u->rule, op);
    return tail_atom(std::move(r));
  }
  const auto& f = std::get<TailFamily>(x);
  auto* g = std::get_if<TailFamily>(&y);
  if (!g || !(g->node_m == f.node_m) || !(g->node_n == f.node_n) || g->start_m != f.start_m || g->start_n != f.start_n)
    throw ShapeError("families must share nodes and index ranges");
  TailFamily r = f;
  r.rule = apply(f.rule, g->rule, op);
  return family_atom(std::move(r));
}

/// Lambda with its isolated points removed, computed from iso.
SpectralSet without_poles(const SpectralSet& lambda) {
  const IsolatedPoints isolated = iso(lambda);
  std::vector<Primitive> out;
  for (const auto& p : lambda.primitives()) {
    if (auto* f = std::get_if<FinitePoints>(&p)) {
      FinitePoints kept;
      for (const auto& z : f->points)
        if (!std::binary_search(isolated.points.begin(), isolated.points.end(), z)) kept.points.push_back(z);
      if (!kept.points.empty()) out.emplace_back(std::move(kept));
    } else if (auto* t = std::get_if<Tail>(&p)) {
      FinitePoints kept{{t->limit()}};
      auto it = std::find_if(isolated.tails.begin(), isolated.tails.end(), [&](const Tail& u) {
        return u.node == t->node && u.rule == t->rule && u.start == t->start;
      });
      if (it == isolated.tails.end()) {
        // all but finitely many terms accumulate
        Tail rest = *t;
        for (const auto& z : isolated.points)
          for (Index n : t->indices_with_value(z)) rest.excluded.insert(n);
        out.emplace_back(std::move(rest));
      } else {
        for (Index n : it->excluded)
          if (t->has_index(n)) kept.points.push_back(t->term(n));
      }
      std::sort(kept.points.begin(), kept.points.end());
      kept.points.erase(std::unique(kept.points.begin(), kept.points.end()), kept.points.end());
      out.emplace_back(std::move(kept));
    } else if (auto* fam = std::get_if<TailFamily>(&p)) {
      const SpectralSet fa = family_accumulation(*fam, false);
      for (const auto& q : fa.primitives()) out.push_back(q);
    } else {
      out.push_back(p);
    }
  }
  return SpectralSet(std::move(out));
}

}  // namespace

DiagonalElement parse_diagonal(std::string_view text) {
  DiagonalElement d;
  for (auto& item : parse_items(text, true)) {
    if (auto* f = std::get_if<FiniteItem>(&item)) {
      std::vector<FiniteAtom> atoms;
      for (const auto& v : f->values) {
        auto it = std::find_if(atoms.begin(), atoms.end(), [&](const FiniteAtom& a) { return a.value == v; });
        if (it == atoms.end())
          atoms.push_back({v, 1});
        else
          ++it->multiplicity;
      }
      for (auto& a : atoms) d.atoms.emplace_back(std::move(a));
    } else if (auto* c = std::get_if<ConstantItem>(&item)) {
      d.atoms.emplace_back(ConstantAtom{c->value});
    } else if (auto* t = std::get_if<Tail>(&item)) {
      d.atoms.emplace_back(std::move(*t));
    } else if (auto* fam = std::get_if<TailFamily>(&item)) {
      d.atoms.emplace_back(std::move(*fam));
    } else {
      throw ParseError("diagonal elements take finite, const, tail and family items", "col 1");
    }
  }
  return d;
}

std::string DiagonalElement::to_string() const {
  if (atoms.empty()) return "empty";
  std::string out;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (k) out += " ; ";
    const Atom& a = atoms[k];
    if (auto* f = std::get_if<FiniteAtom>(&a))
      out += format_item(FiniteItem{std::vector<GaussianRational>(f->multiplicity, f->value)});
    else if (auto* c = std::get_if<ConstantAtom>(&a))
      out += format_item(ConstantItem{c->value});
    else if (auto* t = std::get_if<Tail>(&a))
      out += format_primitive(*t);
    else
      out += format_primitive(std::get<TailFamily>(a));
  }
  return out;
}

SpectralSet diag_spectrum(const DiagonalElement& d) {
  std::vector<Primitive> out;
  FinitePoints pts;
  for (const auto& a : d.atoms) {
    if (auto* f = std::get_if<FiniteAtom>(&a))
      pts.points.push_back(f->value);
    else if (auto* c = std::get_if<ConstantAtom>(&a))
      pts.points.push_back(c->value);
    else if (auto* t = std::get_if<Tail>(&a))
      out.emplace_back(*t);
    else
      out.emplace_back(std::get<TailFamily>(a));
  }
  std::sort(pts.points.begin(), pts.points.end());
  pts.points.erase(std::unique(pts.points.begin(), pts.points.end()), pts.points.end());
  if (!pts.points.empty()) out.emplace_back(std::move(pts));
  return SpectralSet(std::move(out));
}

SpectralSet essential_values(const DiagonalElement& d) {
  std::vector<Primitive> out;
  for (const auto& a : d.atoms) {
    if (auto* c = std::get_if<ConstantAtom>(&a)) {
      out.emplace_back(FinitePoints{{c->value}});
    } else if (auto* t = std::get_if<Tail>(&a)) {
      out.emplace_back(FinitePoints{{t->limit()}});
    } else if (auto* f = std::get_if<TailFamily>(&a)) {
      const SpectralSet fa = family_accumulation(*f, true);
      for (const auto& q : fa.primitives()) out.push_back(q);
    }
  }
  return SpectralSet(std::move(out));
}

DiagonalReport diag_classify(const DiagonalElement& d) {
  DiagonalReport r;
  r.sigma = diag_spectrum(d);
  r.sigma_F = essential_values(d);
  r.sigma_GBF = sigma_KD(SpectralElement::make(r.sigma_F, std::nullopt));
  r.sigma_BF = without_poles(r.sigma_F);
  if (equals(r.sigma_BF, r.sigma_GBF) == Tri::False)
    throw DefectError("B-Fredholm and generalized B-Fredholm spectra differ in the diagonal model");
  const GaussianRational zero;
  r.fredholm_at_0 = !r.sigma_F.contains(zero);
  r.bfredholm_at_0 = !r.sigma_BF.contains(zero);
  r.riesz = subset(r.sigma_F, SpectralSet::points({zero})) == Tri::True;
  r.t_algebraic = std::all_of(r.sigma_F.primitives().begin(), r.sigma_F.primitives().end(),
                              [](const Primitive& p) { return std::holds_alternative<FinitePoints>(p); });
  return r;
}

DiagonalElement diag_arith(const DiagonalElement& a, const DiagonalElement& b, DiagOp op) {
  auto scalar = [](const DiagonalElement& x) -> const ConstantAtom* {
    return x.atoms.size() == 1 ? std::get_if<ConstantAtom>(&x.atoms[0]) : nullptr;
  };
  DiagonalElement out;
  if (const ConstantAtom* c = scalar(b)) {
    for (const auto& x : a.atoms) out.atoms.push_back(with_constant(x, c->value, op, false));
    return out;
  }
  if (const ConstantAtom* c = scalar(a)) {
    for (const auto& y : b.atoms) out.atoms.push_back(with_constant(y, c->value, op, true));
    return out;
  }
  if (a.atoms.size() != b.atoms.size()) throw ShapeError("diagonal elements have different atom counts");
  for (std::size_t k = 0; k < a.atoms.size(); ++k) out.atoms.push_back(pair_atoms(a.atoms[k], b.atoms[k], op));
  return out;
}

}  // namespace bfred::spectral
