#include "bfred/exact/gaussian.hpp"

#include <cctype>
#include <ostream>

#include "bfred/error.hpp"

namespace bfred::exact {

namespace {

bool is_digit_string(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string trim(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = trim(text);
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!is_digit_string(num) || !is_digit_string(den))
    throw ParseError("malformed rational literal '" + std::string(text) + "'", "");
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", "");
  Rational q(negative ? Integer(-n) : n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) { return q.get_str(10); }

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw ParseError("empty scalar literal", "");
  // Split into signed terms at '+'/'-' that are not the first character.
  GaussianRational out;
  std::size_t start = 0;
  bool seen_re = false, seen_im = false;
  for (std::size_t pos = 1; pos <= s.size(); ++pos) {
    if (pos != s.size() && s[pos] != '+' && s[pos] != '-') continue;
    std::string term = s.substr(start, pos - start);
    start = pos;
    bool imaginary = !term.empty() && term.back() == 'i';
    if (imaginary) {
      term.pop_back();
      if (!term.empty() && term.back() == '*') term.pop_back();
      if (term.empty() || term == "+") term += "1";
      if (term == "-") term += "1";
      if (seen_im) throw ParseError("duplicate imaginary part in '" + std::string(text) + "'", "");
      seen_im = true;
      out.im_ = parse_rational(term);
    } else {
      if (seen_re) throw ParseError("duplicate real part in '" + std::string(text) + "'", "");
      seen_re = true;
      out.re_ = parse_rational(term);
    }
  }
  return out;
}

Rational GaussianRational::abs_lower() const {
  Rational a = abs(re_), b = abs(im_);
  return a > b ? a : b;
}

GaussianRational GaussianRational::inverse() const {
  Rational n = norm();
  if (sgn(n) == 0) throw std::domain_error("division by zero in Q(i)");
  return {Rational(re_ / n), Rational(-im_ / n)};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (sgn(o.im_) == 0) {
    if (sgn(o.re_) == 0) throw std::domain_error("division by zero in Q(i)");
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return format_rational(re_);
  std::string im_part;
  if (im_ == 1)
    im_part = "i";
  else if (im_ == -1)
    im_part = "-i";
  else
    im_part = format_rational(im_) + "*i";
  if (sgn(re_) == 0) return im_part;
  std::string out = format_rational(re_);
  if (sgn(im_) > 0) out += "+";
  return out + im_part;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

GaussianRational pow(const GaussianRational& z, unsigned n) {
  GaussianRational result(1), base = z;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

}  // namespace bfred::exact
