#include "curve_spec.hpp"

#include <cctype>
#include <charconv>
#include <optional>

#include <fmt/format.h>

namespace hartogs::app {
namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

struct Monomial {
  std::complex<double> coeff{1, 0};
  Exponent exp{0, 0, 0};
  std::string text;
};

class Parser {
public:
  explicit Parser(std::string_view s) : s_(s) {}

  std::vector<Monomial> sum() {
    std::vector<Monomial> out;
    skip();
    if (pos_ == s_.size()) fail("empty polynomial");
    double sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = take() == '-' ? -1 : 1;
    }
    for (;;) {
      Monomial m = term();
      m.coeff *= sign;
      out.push_back(std::move(m));
      skip();
      if (pos_ == s_.size()) break;
      const char c = take();
      if (c != '+' && c != '-') fail(fmt::format("unexpected '{}' at position {}", c, pos_ - 1));
      sign = c == '-' ? -1 : 1;
    }
    return out;
  }

private:
  Monomial term() {
    skip();
    const std::size_t start = pos_;
    Monomial m;
    for (bool first = true;; first = false) {
      if (!first) {
        skip();
        if (peek() != '*') break;
        take();
      }
      factor(m);
    }
    m.text = trim(s_.substr(start, pos_ - start));
    return m;
  }

  void factor(Monomial& m) {
    skip();
    const char c = peek();
    if (c == 'z') {
      take();
      const char d = take();
      if (d < '1' || d > '3') fail(fmt::format("unknown variable 'z{}' at position {}", d, pos_ - 2));
      int power = 1;
      skip();
      if (peek() == '^') {
        take();
        skip();
        power = integer();
      }
      m.exp[d - '1'] += power;
    } else if (c == '(') {
      take();
      m.coeff *= complex_literal();
      skip();
      if (take() != ')') fail(fmt::format("expected ')' at position {}", pos_ - 1));
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'i') {
      m.coeff *= number();
    } else {
      fail(pos_ < s_.size() ? fmt::format("unexpected '{}' at position {}", c, pos_) : std::string("unexpected end of input"));
    }
  }

  std::complex<double> complex_literal() {
    std::complex<double> acc(0);
    skip();
    double sign = 1;
    if (peek() == '+' || peek() == '-') sign = take() == '-' ? -1 : 1;
    for (;;) {
      skip();
      if (peek() == 'z') fail(fmt::format("parentheses hold complex literals only; found a variable at position {}", pos_));
      acc += sign * number();
      skip();
      if (peek() != '+' && peek() != '-') break;
      sign = take() == '-' ? -1 : 1;
      skip();
    }
    return acc;
  }

  // Real literal with optional trailing 'i'; a bare 'i' is the imaginary unit.
  std::complex<double> number() {
    skip();
    double value = 1;
    if (peek() != 'i') {
      const char* begin = s_.data() + pos_;
      const auto [end, ec] = std::from_chars(begin, s_.data() + s_.size(), value);
      if (ec != std::errc()) fail(fmt::format("malformed number at position {}", pos_));
      pos_ += static_cast<std::size_t>(end - begin);
    }
    if (peek() == 'i') {
      take();
      return {0, value};
    }
    return {value, 0};
  }

  int integer() {
    const char* begin = s_.data() + pos_;
    int v = 0;
    const auto [end, ec] = std::from_chars(begin, s_.data() + s_.size(), v);
    if (ec != std::errc() || v < 0) fail(fmt::format("expected a nonnegative integer exponent at position {}", pos_));
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  static std::string trim(std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return std::string(v);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char take() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }

  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace

HomogeneousPolynomiald parse_polynomial(std::string_view spec) {
  const auto monomials = Parser(spec).sum();
  const auto degree_of = [](const Monomial& m) { return m.exp[0] + m.exp[1] + m.exp[2]; };
  const int degree = degree_of(monomials.front());
  HomogeneousPolynomiald q(degree);
  for (const auto& m : monomials) {
    if (!std::isfinite(m.coeff.real()) || !std::isfinite(m.coeff.imag())) {
      fail(fmt::format("monomial '{}' has a non-finite coefficient", m.text));
    }
    if (degree_of(m) != degree) {
      fail(fmt::format("inhomogeneous polynomial: monomial '{}' has degree {}, but '{}' has degree {}", m.text,
                       degree_of(m), monomials.front().text, degree));
    }
    q.add_term(m.exp, m.coeff);
  }
  return q;
}

FunctionElementd parse_function(std::string_view spec, const DiscFamilyConfigd& family, const Tolerances& tol) {
  if (spec == "@constant") return FunctionElementd::constant(1.0);
  if (spec == "@pole-crossing") return pole_crossing_element<double>(family, 0.5, 0.6, tol);
  if (!spec.empty() && spec.front() == '@') fail(fmt::format("unknown function preset '{}'", spec));

  int depth = 0;
  std::optional<std::size_t> slash;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (spec[i] == '(') ++depth;
    if (spec[i] == ')') --depth;
    if (spec[i] == '/' && depth == 0) {
      if (slash) fail("function spec has more than one top-level '/'");
      slash = i;
    }
  }
  if (!slash) fail("function spec must have the form N/D");
  auto num = parse_polynomial(spec.substr(0, *slash));
  auto den = parse_polynomial(spec.substr(*slash + 1));
  if (num.degree() != den.degree()) {
    fail(fmt::format("numerator degree {} differs from denominator degree {}", num.degree(), den.degree()));
  }
  if (den.is_zero()) fail("denominator is the zero polynomial");
  return FunctionElementd(std::move(num), std::move(den));
}

std::string format_polynomial(const HomogeneousPolynomiald& q) {
  if (q.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : q.terms()) {
    if (!out.empty()) out += " + ";
    out += fmt::format("({:.17g}{:+.17g}i)", c.real(), c.imag());
    for (int i = 0; i < 3; ++i) {
      if (e[i] == 1) out += fmt::format("*z{}", i + 1);
      if (e[i] > 1) out += fmt::format("*z{}^{}", i + 1, e[i]);
    }
  }
  return out;
}

HomogeneousPolynomiald random_polynomial(int degree, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  HomogeneousPolynomiald q(degree);
  for (int i = degree; i >= 0; --i) {
    for (int j = degree - i; j >= 0; --j) {
      const double re = normal(rng);
      const double im = normal(rng);
      q.add_term({i, j, degree - i - j}, {re, im});
    }
  }
  return q;
}

} // namespace hartogs::app
