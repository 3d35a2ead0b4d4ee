#include "bfred/spectral/language.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "bfred/error.hpp"

namespace bfred::spectral {

using exact::Integer;

namespace {

constexpr long kMaxExponent = 1000;

enum class Tok { Number, Imag, Ident, LParen, RParen, LBracket, RBracket, Plus, Minus, Star, Slash, Caret, Comma, Semi, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t col;
};

std::string col(std::size_t c) { return "col " + std::to_string(c); }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < s.size()) {
    const char ch = s[k];
    const std::size_t c = k + 1;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++k;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t e = k;
      while (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) ++e;
      std::string digits(s.substr(k, e - k));
      if (e < s.size() && s[e] == 'i' && (e + 1 == s.size() || !std::isalnum(static_cast<unsigned char>(s[e + 1])))) {
        out.push_back({Tok::Imag, digits, c});
        k = e + 1;
      } else {
        out.push_back({Tok::Number, digits, c});
        k = e;
      }
    } else if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t e = k;
      while (e < s.size() && std::isalpha(static_cast<unsigned char>(s[e]))) ++e;
      out.push_back({Tok::Ident, std::string(s.substr(k, e - k)), c});
      k = e;
    } else if (ch == '-' && k + 1 < s.size() && s[k + 1] == '>') {
      out.push_back({Tok::Arrow, "->", c});
      k += 2;
    } else {
      Tok t;
      switch (ch) {
        case '(': t = Tok::LParen; break;
        case ')': t = Tok::RParen; break;
        case '[': t = Tok::LBracket; break;
        case ']': t = Tok::RBracket; break;
        case '+': t = Tok::Plus; break;
        case '-': t = Tok::Minus; break;
        case '*': t = Tok::Star; break;
        case '/': t = Tok::Slash; break;
        case '^': t = Tok::Caret; break;
        case ',': t = Tok::Comma; break;
        case ';': t = Tok::Semi; break;
        default: throw ParseError(std::string("unexpected character '") + ch + "'", col(c));
      }
      out.push_back({t, std::string(1, ch), c});
      ++k;
    }
  }
  out.push_back({Tok::End, "", s.size() + 1});
  return out;
}

/// Laurent polynomial in two index axes; an axis with a node stands for its
/// node value, a plain axis for a free variable.
struct Sym {
  std::map<std::pair<int, int>, GaussianRational> terms;
  std::optional<Node> node[2];

  static Sym constant(const GaussianRational& c) {
    Sym s;
    if (!c.is_zero()) s.terms[{0, 0}] = c;
    return s;
  }
  bool is_constant() const { return terms.empty() || (terms.size() == 1 && terms.begin()->first == std::pair{0, 0}); }
  GaussianRational constant_value() const { return terms.empty() ? GaussianRational(0) : terms.begin()->second; }
};

enum class Mode { Constant, Plain, Tail, Family };

class Parser {
 public:
  Parser(std::string_view text, bool allow_constants) : toks_(lex(text)), allow_constants_(allow_constants) {}

  std::vector<LanguageItem> items() {
    std::vector<LanguageItem> out;
    if (peek().kind == Tok::End) throw ParseError("empty description", col(peek().col));
    bool saw_empty = false;
    while (true) {
      const Token& head = peek();
      if (head.kind == Tok::Ident && head.text == "empty") {
        next();
        saw_empty = true;
      } else {
        out.push_back(item());
      }
      if (peek().kind == Tok::End) break;
      expect(Tok::Semi, "';'");
      if (peek().kind == Tok::End) break;
    }
    if (saw_empty && !out.empty()) throw ParseError("'empty' cannot be combined with other items", col(1));
    return out;
  }

  Sym full_expression(Mode mode, std::string plain_var = {}) {
    mode_ = mode;
    plain_var_ = std::move(plain_var);
    Sym s = expr();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", col(peek().col));
    return s;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  bool accept_word(const char* w) {
    if (peek().kind != Tok::Ident || peek().text != w) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k)
      throw ParseError("expected " + what + (peek().kind == Tok::End ? " at end of input" : ", found '" + peek().text + "'"),
                       col(peek().col));
    return next();
  }

  Index index_literal() {
    const Token& t = expect(Tok::Number, "an index");
    Integer z(t.text);
    if (z < 1 || !z.fits_ulong_p()) throw ParseError("index out of range", col(t.col));
    return z.get_ui();
  }

  GaussianRational constant() {
    Mode saved = mode_;
    mode_ = Mode::Constant;
    Sym s = expr();
    mode_ = saved;
    return s.constant_value();
  }

  LanguageItem item() {
    const Token& head = expect(Tok::Ident, "an item keyword");
    const std::size_t c = head.col;
    const std::string w = head.text;
    if (w == "finite") {
      expect(Tok::LBracket, "'['");
      FiniteItem f;
      if (!accept(Tok::RBracket)) {
        do f.values.push_back(constant());
        while (accept(Tok::Comma));
        expect(Tok::RBracket, "']'");
      }
      return f;
    }
    if (w == "const") {
      if (!allow_constants_) throw ParseError("'const' is only meaningful for diagonal elements", col(c));
      return ConstantItem{constant()};
    }
    if (w == "tail") return tail(c);
    if (w == "family") return family(c);
    if (w == "disk" || w == "circle") {
      expect(Tok::LParen, "'('");
      GaussianRational center = constant();
      expect(Tok::Comma, "','");
      Rational rsq = radius_sq();
      expect(Tok::RParen, "')'");
      if (w == "disk") return checked(Disk{center, rsq}, c);
      return checked(Circle{center, rsq}, c);
    }
    if (w == "segment") {
      expect(Tok::LParen, "'('");
      GaussianRational a = constant();
      expect(Tok::Comma, "','");
      GaussianRational b = constant();
      expect(Tok::RParen, "')'");
      return checked(Segment{a, b}, c);
    }
    throw ParseError("unknown item '" + w + "'", col(c));
  }

  template <class P>
  LanguageItem checked(P p, std::size_t c) {
    try {
      SpectralSet({Primitive(p)});
    } catch (const ShapeError& e) {
      throw ParseError(e.what(), col(c));
    }
    return p;
  }

  Rational radius_sq() {
    const std::size_t c = peek().col;
    if (accept_word("sqrt")) {
      expect(Tok::LParen, "'('");
      GaussianRational q = constant();
      expect(Tok::RParen, "')'");
      if (!q.is_real() || q.re() <= 0) throw ParseError("radius must be positive", col(c));
      return q.re();
    }
    GaussianRational r = constant();
    if (!r.is_real() || r.re() <= 0) throw ParseError("radius must be positive", col(c));
    return r.re() * r.re();
  }

  LanguageItem tail(std::size_t c) {
    const std::size_t rule_col = peek().col;
    mode_ = Mode::Tail;
    Sym s = expr();
    mode_ = Mode::Constant;
    Tail t;
    std::vector<GaussianRational> coeffs;
    for (const auto& [e, v] : s.terms) {
      if (e.first < 0) throw ParseError("tail rule is unbounded in n", col(rule_col));
      if (coeffs.size() <= static_cast<std::size_t>(e.first)) coeffs.resize(e.first + 1);
      coeffs[e.first] = v;
    }
    t.rule = ExactPolynomial(coeffs);
    if (t.rule.degree() < 1) throw ParseError("tail rule must depend on n", col(rule_col));
    t.node = *s.node[0];
    if (peek().kind == Tok::Arrow) {
      const std::size_t lc = next().col;
      if (constant() != t.limit())
        throw ParseError("stated limit differs from the rule's limit " + t.limit().to_string(), col(lc));
    }
    if (accept_word("from")) t.start = index_literal();
    if (accept_word("except")) {
      expect(Tok::LBracket, "'['");
      if (!accept(Tok::RBracket)) {
        do t.excluded.insert(index_literal());
        while (accept(Tok::Comma));
        expect(Tok::RBracket, "']'");
      }
    }
    return checked(t, c);
  }

  LanguageItem family(std::size_t c) {
    const std::size_t rule_col = peek().col;
    mode_ = Mode::Family;
    Sym s = expr();
    mode_ = Mode::Constant;
    TailFamily f;
    Bivariate::Terms terms;
    for (const auto& [e, v] : s.terms) {
      if (e.first < 0 || e.second < 0) throw ParseError("family rule is unbounded", col(rule_col));
      terms[{static_cast<unsigned>(e.first), static_cast<unsigned>(e.second)}] = v;
    }
    f.rule = Bivariate(terms);
    if (f.rule.degree_s() < 1 || f.rule.degree_t() < 1) throw ParseError("family rule must involve both m and n", col(rule_col));
    f.node_m = *s.node[0];
    f.node_n = *s.node[1];
    if (accept_word("from")) {
      f.start_m = index_literal();
      expect(Tok::Comma, "','");
      f.start_n = index_literal();
    }
    return checked(f, c);
  }

  // expression grammar

  Sym expr() {
    Sym s = term();
    while (true) {
      if (accept(Tok::Plus))
        s = add(s, term(), toks_[pos_ - 1].col);
      else if (accept(Tok::Minus))
        s = add(s, negate(term()), toks_[pos_ - 1].col);
      else
        return s;
    }
  }

  Sym term() {
    Sym s = factor();
    while (true) {
      if (accept(Tok::Star)) {
        const std::size_t c = toks_[pos_ - 1].col;
        s = mul(s, factor(), c);
      } else if (accept(Tok::Slash)) {
        const std::size_t c = toks_[pos_ - 1].col;
        s = div(s, factor(), c);
      } else {
        return s;
      }
    }
  }

  Sym factor() {
    if (accept(Tok::Minus)) return negate(factor());
    if (accept(Tok::Plus)) return factor();
    Sym base = primary();
    if (!accept(Tok::Caret)) return base;
    const std::size_t c = toks_[pos_ - 1].col;
    auto [k, axis] = exponent();
    if (!axis) return power(base, k, c);
    return geometric(base, k, *axis, c);
  }

  std::optional<int> axis_of(const std::string& name) const {
    switch (mode_) {
      case Mode::Tail:
        if (name == "n") return 0;
        break;
      case Mode::Family:
        if (name == "m") return 0;
        if (name == "n") return 1;
        break;
      case Mode::Plain:
        if (name == plain_var_) return 0;
        break;
      case Mode::Constant:
        break;
    }
    return std::nullopt;
  }

  std::pair<long, std::optional<int>> exponent() {
    long sign = 1;
    if (accept(Tok::Minus)) sign = -1;
    if (peek().kind == Tok::Number) return {sign * small_integer(next()), std::nullopt};
    if (peek().kind == Tok::Ident && mode_ != Mode::Plain) {
      const Token& t = next();
      auto axis = axis_of(t.text);
      if (!axis) throw ParseError("unknown exponent '" + t.text + "'", col(t.col));
      return {sign, axis};
    }
    expect(Tok::LParen, "an exponent");
    if (accept(Tok::Minus)) sign = -sign;
    std::optional<int> axis;
    long k = 1;
    if (peek().kind == Tok::Number) {
      k = small_integer(next());
      if (accept(Tok::Star)) {
        const Token& t = expect(Tok::Ident, "an index name");
        axis = axis_of(t.text);
        if (!axis || mode_ == Mode::Plain) throw ParseError("unknown exponent '" + t.text + "'", col(t.col));
      }
    } else {
      const Token& t = expect(Tok::Ident, "an exponent");
      axis = axis_of(t.text);
      if (!axis || mode_ == Mode::Plain) throw ParseError("unknown exponent '" + t.text + "'", col(t.col));
    }
    expect(Tok::RParen, "')'");
    return {sign * k, axis};
  }

  long small_integer(const Token& t) {
    Integer z(t.text);
    if (z > kMaxExponent) throw ParseError("exponent too large", col(t.col));
    return z.get_si();
  }

  Sym primary() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Number:
        return Sym::constant(GaussianRational(Rational(Integer(t.text))));
      case Tok::Imag:
        return Sym::constant(GaussianRational(Rational(0), Rational(Integer(t.text))));
      case Tok::LParen: {
        Sym s = expr();
        expect(Tok::RParen, "')'");
        return s;
      }
      case Tok::Ident: {
        if (t.text == "i") return Sym::constant(GaussianRational::i());
        auto axis = axis_of(t.text);
        if (!axis) throw ParseError("unknown name '" + t.text + "'", col(t.col));
        Sym s;
        if (mode_ == Mode::Plain) {
          s.terms[{1, 0}] = GaussianRational(1);
        } else {
          s.terms[*axis == 0 ? std::pair{-1, 0} : std::pair{0, -1}] = GaussianRational(1);
          s.node[*axis] = Node::harmonic();
        }
        return s;
      }
      default:
        throw ParseError(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'", col(t.col));
    }
  }

  static void merge_nodes(Sym& into, const Sym& from, std::size_t c) {
    for (int a = 0; a < 2; ++a) {
      if (!from.node[a]) continue;
      if (into.node[a] && !(*into.node[a] == *from.node[a]))
        throw ParseError("one index cannot mix harmonic and geometric terms or different ratios", col(c));
      into.node[a] = from.node[a];
    }
  }

  static Sym add(Sym a, const Sym& b, std::size_t c) {
    merge_nodes(a, b, c);
    for (const auto& [e, v] : b.terms) {
      GaussianRational w = a.terms.count(e) ? a.terms[e] + v : v;
      if (w.is_zero())
        a.terms.erase(e);
      else
        a.terms[e] = w;
    }
    return a;
  }

  static Sym negate(Sym a) {
    for (auto& [e, v] : a.terms) v = -v;
    return a;
  }

  static Sym mul(const Sym& a, const Sym& b, std::size_t c) {
    Sym r;
    r.node[0] = a.node[0];
    r.node[1] = a.node[1];
    merge_nodes(r, b, c);
    for (const auto& [ea, va] : a.terms)
      for (const auto& [eb, vb] : b.terms) {
        std::pair<int, int> e{ea.first + eb.first, ea.second + eb.second};
        GaussianRational w = r.terms.count(e) ? r.terms[e] + va * vb : va * vb;
        if (w.is_zero())
          r.terms.erase(e);
        else
          r.terms[e] = w;
      }
    return r;
  }

  static Sym invert_monomial(const Sym& b, std::size_t c) {
    if (b.terms.empty()) throw ParseError("division by zero", col(c));
    if (b.terms.size() != 1) throw ParseError("division is only supported by a single term", col(c));
    const auto& [e, v] = *b.terms.begin();
    Sym r;
    r.node[0] = b.node[0];
    r.node[1] = b.node[1];
    r.terms[{-e.first, -e.second}] = v.inverse();
    return r;
  }

  static Sym div(const Sym& a, const Sym& b, std::size_t c) { return mul(a, invert_monomial(b, c), c); }

  static Sym power(const Sym& base, long k, std::size_t c) {
    Sym b = k < 0 ? invert_monomial(base, c) : base;
    Sym r = Sym::constant(GaussianRational(1));
    r.node[0] = b.node[0];
    r.node[1] = b.node[1];
    for (long j = 0; j < (k < 0 ? -k : k); ++j) r = mul(r, b, c);
    return r;
  }

  static Sym geometric(const Sym& base, long k, int axis, std::size_t c) {
    if (!base.is_constant() || !base.constant_value().is_real())
      throw ParseError("base of an index power must be a real constant", col(c));
    Rational r = base.constant_value().re();
    if (r == 0 || abs(r) == 1) throw ParseError("base of an index power must satisfy 0 < |r| != 1", col(c));
    if (abs(r) > 1) {
      r = 1 / r;
      k = -k;
    }
    Sym s;
    s.node[axis] = Node::geometric(r);
    s.terms[axis == 0 ? std::pair{static_cast<int>(k), 0} : std::pair{0, static_cast<int>(k)}] = GaussianRational(1);
    return s;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool allow_constants_;
  Mode mode_ = Mode::Constant;
  std::string plain_var_;
};

bool is_perfect_square(const Rational& q) {
  return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

Rational exact_sqrt(const Rational& q) {
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return Rational(n, d);
}

std::string radius_text(const Rational& rsq) {
  if (is_perfect_square(rsq)) return exact::format_rational(exact_sqrt(rsq));
  return "sqrt(" + exact::format_rational(rsq) + ")";
}

std::string power_text(const std::string& base, unsigned e) {
  return e == 1 ? base : base + "^" + std::to_string(e);
}

std::string geometric_text(const Node& node, unsigned e, const std::string& var) {
  std::string r = "(" + exact::format_rational(node.ratio()) + ")^";
  return e == 1 ? r + var : r + "(" + std::to_string(e) + "*" + var + ")";
}

/// One monomial c * s^j * t^k, with the sign of a real c pulled out.
std::pair<bool, std::string> monomial_text(const GaussianRational& c, const std::vector<unsigned>& exps,
                                           const std::vector<const Node*>& nodes, const std::vector<std::string>& vars) {
  bool negative = false;
  std::string numer;
  Integer den(1);
  if (c.is_real()) {
    Rational a = c.re();
    if (a < 0) {
      negative = true;
      a = -a;
    }
    numer = a.get_num().get_str();
    den = a.get_den();
  } else {
    numer = "(" + c.to_string() + ")";
  }
  std::vector<std::string> geo, below;
  if (den != 1) below.push_back(den.get_str());
  for (std::size_t a = 0; a < exps.size(); ++a) {
    if (exps[a] == 0) continue;
    if (nodes[a]->is_harmonic())
      below.push_back(power_text(vars[a], exps[a]));
    else
      geo.push_back(geometric_text(*nodes[a], exps[a], vars[a]));
  }
  std::string text = numer;
  if (!geo.empty()) {
    text = numer == "1" ? "" : numer + "*";
    for (std::size_t g = 0; g < geo.size(); ++g) text += (g ? "*" : "") + geo[g];
  }
  if (below.size() == 1) {
    text += "/" + below[0];
  } else if (below.size() > 1) {
    text += "/(";
    for (std::size_t b = 0; b < below.size(); ++b) text += (b ? "*" : "") + below[b];
    text += ")";
  }
  return {negative, text};
}

std::string join_terms(const std::vector<std::pair<bool, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (k == 0)
      out = (terms[k].first ? "-" : "") + terms[k].second;
    else
      out += (terms[k].first ? " - " : " + ") + terms[k].second;
  }
  return out;
}

std::string values_text(const std::vector<GaussianRational>& values) {
  std::string out = "[";
  for (std::size_t k = 0; k < values.size(); ++k) out += (k ? ", " : "") + values[k].to_string();
  return out + "]";
}

std::string tail_text(const Tail& t) {
  std::string out = "tail " + format_tail_rule(t.node, t.rule) + " -> " + t.limit().to_string();
  if (t.start != 1) out += " from " + std::to_string(t.start);
  if (!t.excluded.empty()) {
    out += " except [";
    bool first = true;
    for (Index n : t.excluded) {
      out += (first ? "" : ", ") + std::to_string(n);
      first = false;
    }
    out += "]";
  }
  return out;
}

}  // namespace

std::vector<LanguageItem> parse_items(std::string_view text, bool allow_constants) {
  return Parser(text, allow_constants).items();
}

SpectralSet parse_spectral_set(std::string_view text) {
  std::vector<Primitive> prims;
  for (auto& item : parse_items(text, false)) {
    std::visit(
        [&](auto&& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, FiniteItem>) {
            std::vector<GaussianRational> v = x.values;
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
            if (!v.empty()) prims.emplace_back(FinitePoints{std::move(v)});
          } else if constexpr (!std::is_same_v<T, ConstantItem>) {
            prims.emplace_back(std::move(x));
          }
        },
        item);
  }
  return SpectralSet(std::move(prims));
}

ExactPolynomial parse_polynomial(std::string_view text, std::string_view var) {
  Sym s = Parser(text, false).full_expression(Mode::Plain, std::string(var));
  std::vector<GaussianRational> coeffs;
  for (const auto& [e, v] : s.terms) {
    if (e.first < 0) throw ParseError("negative power of " + std::string(var), col(1));
    if (coeffs.size() <= static_cast<std::size_t>(e.first)) coeffs.resize(e.first + 1);
    coeffs[e.first] = v;
  }
  return ExactPolynomial(coeffs);
}

GaussianRational parse_constant(std::string_view text) {
  return Parser(text, false).full_expression(Mode::Constant).constant_value();
}

std::string format_value(const GaussianRational& z) { return z.to_string(); }

std::string format_tail_rule(const Node& node, const ExactPolynomial& rule) {
  std::vector<std::pair<bool, std::string>> terms;
  for (int k = 0; k <= rule.degree(); ++k) {
    const GaussianRational c = rule.coefficient(k);
    if (c.is_zero()) continue;
    terms.push_back(monomial_text(c, {static_cast<unsigned>(k)}, {&node}, {"n"}));
  }
  return join_terms(terms);
}

std::string format_family_rule(const Node& node_m, const Node& node_n, const Bivariate& rule) {
  std::vector<std::pair<bool, std::string>> terms;
  std::vector<std::pair<std::pair<unsigned, unsigned>, GaussianRational>> sorted(rule.terms().begin(), rule.terms().end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    const unsigned dx = x.first.first + x.first.second, dy = y.first.first + y.first.second;
    return dx != dy ? dx < dy : x.first.first > y.first.first;
  });
  for (const auto& [e, c] : sorted) terms.push_back(monomial_text(c, {e.first, e.second}, {&node_m, &node_n}, {"m", "n"}));
  return join_terms(terms);
}

std::string format_primitive(const Primitive& p) {
  if (auto* f = std::get_if<FinitePoints>(&p)) return "finite " + values_text(f->points);
  if (auto* t = std::get_if<Tail>(&p)) return tail_text(*t);
  if (auto* f = std::get_if<TailFamily>(&p)) {
    std::string out = "family " + format_family_rule(f->node_m, f->node_n, f->rule);
    if (f->start_m != 1 || f->start_n != 1) out += " from " + std::to_string(f->start_m) + ", " + std::to_string(f->start_n);
    return out;
  }
  if (auto* d = std::get_if<Disk>(&p)) return "disk(" + d->center.to_string() + ", " + radius_text(d->radius_sq) + ")";
  if (auto* c = std::get_if<Circle>(&p)) return "circle(" + c->center.to_string() + ", " + radius_text(c->radius_sq) + ")";
  const auto& s = std::get<Segment>(p);
  return "segment(" + s.a.to_string() + ", " + s.b.to_string() + ")";
}

std::string format_item(const LanguageItem& item) {
  if (auto* f = std::get_if<FiniteItem>(&item)) return "finite " + values_text(f->values);
  if (auto* c = std::get_if<ConstantItem>(&item)) return "const " + c->value.to_string();
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FiniteItem> || std::is_same_v<T, ConstantItem>)
          return {};
        else
          return format_primitive(Primitive(x));
      },
      item);
}

std::string SpectralSet::to_string() const {
  if (primitives_.empty()) return "empty";
  std::string out;
  for (std::size_t k = 0; k < primitives_.size(); ++k) out += (k ? " ; " : "") + format_primitive(primitives_[k]);
  return out;
}

}  // namespace bfred::spectral
