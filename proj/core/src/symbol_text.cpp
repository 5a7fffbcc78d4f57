#include "bsq/symbol_text.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

#include "bsq/errors.hpp"

namespace bsq {

namespace {

// Exponent pairs add under multiplication for both symbol classes:
// (Fourier index, power of I) on the circle, (power of x, power of xi) on the plane.
using Key = std::pair<int, int>;
using TermMap = std::map<Key, cplx>;

constexpr int kMaxExponent = 16;

TermMap multiply(const TermMap& a, const TermMap& b) {
  TermMap out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) out[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
  return out;
}

void add_into(TermMap& acc, const TermMap& t, double sign) {
  for (const auto& [k, c] : t) acc[k] += sign * c;
}

enum class Mode { circle, plane };

class Parser {
 public:
  Parser(std::string_view text, std::size_t offset, Mode mode) : text_(text), base_(offset), mode_(mode) {}

  TermMap parse_all() {
    TermMap t = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, base_ + pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  int integer() {
    skip_ws();
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc{}) fail("expected an integer");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  double number() {
    skip_ws();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc{}) fail("malformed number");
    if (!std::isfinite(v)) fail("non-finite number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  TermMap expression() {
    TermMap acc;
    double sign = 1.0;
    if (accept('-')) sign = -1.0;
    else accept('+');
    add_into(acc, term(), sign);
    for (;;) {
      if (accept('+')) add_into(acc, term(), 1.0);
      else if (accept('-')) add_into(acc, term(), -1.0);
      else break;
    }
    return acc;
  }

  TermMap term() {
    TermMap t = factor();
    while (accept('*')) t = multiply(t, factor());
    return t;
  }

  TermMap factor() {
    TermMap base = primary();
    if (!accept('^')) return base;
    const int e = integer();
    if (e < 0 || e > kMaxExponent) fail("exponent out of range");
    TermMap r{{{0, 0}, cplx{1.0, 0.0}}};
    for (int k = 0; k < e; ++k) r = multiply(r, base);
    return r;
  }

  TermMap primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      TermMap t = expression();
      expect(')');
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return {{{0, 0}, cplx{number(), 0.0}}};
    const std::size_t start = pos_;
    const std::string id = identifier();
    if (id.empty()) fail(std::string("unexpected character '") + c + "'");
    if (mode_ == Mode::circle) {
      if (id == "I") return {{{0, 1}, cplx{1.0, 0.0}}};
      if (id == "cos" || id == "sin") {
        const int k = trig_argument();
        if (id == "cos") return {{{k, 0}, cplx{0.5, 0.0}}, {{-k, 0}, cplx{0.5, 0.0}}};
        return {{{k, 0}, cplx{0.0, -0.5}}, {{-k, 0}, cplx{0.0, 0.5}}};
      }
      if (id == "theta") {
        pos_ = start;
        fail("theta may only appear inside cos(...) or sin(...)");
      }
    } else {
      if (id == "x") return {{{1, 0}, cplx{1.0, 0.0}}};
      if (id == "xi") return {{{0, 1}, cplx{1.0, 0.0}}};
    }
    pos_ = start;
    fail("unknown identifier '" + id + "'");
  }

  // "(theta)" or "(k*theta)" with k a positive integer.
  int trig_argument() {
    expect('(');
    int k = 1;
    skip_ws();
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      k = integer();
      expect('*');
    }
    if (k <= 0) fail("Fourier index must be positive");
    if (identifier() != "theta") fail("expected 'theta'");
    expect(')');
    return k;
  }

  std::string_view text_;
  std::size_t base_;
  Mode mode_;
  std::size_t pos_ = 0;
};

struct SplitText {
  std::string_view f;
  std::size_t f_offset;
  std::string_view q;
  std::size_t q_offset;
  bool has_f;
};

SplitText split(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) return {{}, 0, text, 0, false};
  if (text.find(';', semi + 1) != std::string_view::npos) throw ParseError("more than one ';'", semi);
  return {text.substr(0, semi), 0, text.substr(semi + 1), semi + 1, true};
}

bool blank(std::string_view s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

TermMap parse_part(std::string_view text, std::size_t offset, Mode mode) {
  if (blank(text)) return {};
  return Parser(text, offset, mode).parse_all();
}

std::string format_coeff(double c) { return fmt::format("{}", c); }

std::string join_terms(const std::vector<std::pair<double, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& [c, body] = terms[i];
    const bool neg = std::signbit(c);
    if (i == 0) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    out += format_coeff(std::abs(c));
    if (!body.empty()) out += "*" + body;
  }
  return out;
}

std::string power(const char* var, int n) {
  if (n == 0) return {};
  return n == 1 ? std::string(var) : fmt::format("{}^{}", var, n);
}

std::string product(std::string a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "*" + b;
}

}  // namespace

CircleSymbol parse_circle_symbol(std::string_view text) {
  const SplitText parts = split(text);
  Polynomial f = Polynomial::monomial(1);
  if (parts.has_f) {
    const TermMap ft = parse_part(parts.f, parts.f_offset, Mode::circle);
    std::vector<double> coeffs;
    for (const auto& [key, c] : ft) {
      if (c == cplx{}) continue;
      if (key.first != 0) throw ConfigError("f must not depend on theta");
      if (c.imag() != 0.0) throw ConfigError("f must be real-valued");
      const auto n = static_cast<std::size_t>(key.second);
      if (coeffs.size() <= n) coeffs.resize(n + 1, 0.0);
      coeffs[n] += c.real();
    }
    f = Polynomial(std::move(coeffs));
  }
  const TermMap qt = parse_part(parts.q, parts.q_offset, Mode::circle);
  return CircleSymbol(std::move(f), CircleSymbol::Terms(qt.begin(), qt.end()));
}

PlaneSymbol parse_plane_symbol(std::string_view text, double epsilon) {
  const SplitText parts = split(text);
  auto to_real = [](const TermMap& t) {
    PlaneSymbol::Terms out;
    for (const auto& [key, c] : t) {
      if (c.imag() != 0.0) throw ConfigError("plane symbol coefficients must be real");
      out[key] = c.real();
    }
    return out;
  };
  PlaneSymbol::Terms f = PlaneSymbol::harmonic_oscillator();
  if (parts.has_f) f = to_real(parse_part(parts.f, parts.f_offset, Mode::plane));
  return PlaneSymbol(std::move(f), to_real(parse_part(parts.q, parts.q_offset, Mode::plane)), epsilon);
}

std::string to_text(const CircleSymbol& sym) {
  std::vector<std::pair<double, std::string>> f_terms;
  const auto& fc = sym.f().coefficients();
  for (std::size_t n = 0; n < fc.size(); ++n)
    if (fc[n] != 0.0) f_terms.emplace_back(fc[n], power("I", static_cast<int>(n)));

  std::vector<std::pair<double, std::string>> q_terms;
  for (const auto& [key, c] : sym.q()) {
    const auto [m, n] = key;
    if (m < 0) continue;
    const std::string in = power("I", n);
    if (m == 0) {
      q_terms.emplace_back(c.real(), in);
      continue;
    }
    const std::string arg = m == 1 ? "theta" : fmt::format("{}*theta", m);
    // c e^{im theta} + conj(c) e^{-im theta} = 2 Re(c) cos(m theta) - 2 Im(c) sin(m theta)
    if (c.real() != 0.0) q_terms.emplace_back(2.0 * c.real(), product("cos(" + arg + ")", in));
    if (c.imag() != 0.0) q_terms.emplace_back(-2.0 * c.imag(), product("sin(" + arg + ")", in));
  }
  return join_terms(f_terms) + " ; " + join_terms(q_terms);
}

std::string to_text(const PlaneSymbol& sym) {
  auto terms = [](const PlaneSymbol::Terms& t) {
    std::vector<std::pair<double, std::string>> out;
    for (const auto& [key, c] : t) out.emplace_back(c, product(power("x", key.first), power("xi", key.second)));
    return out;
  };
  return join_terms(terms(sym.f())) + " ; " + join_terms(terms(sym.q()));
}

}  // namespace bsq
