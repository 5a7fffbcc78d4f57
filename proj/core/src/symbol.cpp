#include "bsq/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bsq/errors.hpp"

namespace bsq {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(cplx z, const char* what) {
  if (!finite(z)) throw DomainError(std::string("non-finite ") + what);
}

// Integer power of a complex number by repeated multiplication, so that
// real arguments stay exactly real.
cplx ipow(cplx z, int n) {
  cplx r{1.0, 0.0};
  for (int k = 0; k < n; ++k) r *= z;
  return r;
}

double double_factorial(int n) {
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

struct PlaneValue {
  cplx value;
  cplx d_dx;
  cplx d_dxi;
};

cplx sum_terms(const PlaneSymbol::Terms& terms, cplx x, cplx xi) {
  cplx s{};
  for (const auto& [key, c] : terms) s += c * ipow(x, key.first) * ipow(xi, key.second);
  return s;
}

PlaneValue plane_value_and_gradient(const PlaneSymbol& sym, cplx x, cplx xi) {
  const cplx ie{0.0, sym.epsilon()};
  PlaneValue out{};
  auto accumulate = [&](const PlaneSymbol::Terms& terms, cplx scale) {
    for (const auto& [key, c] : terms) {
      const auto [m, n] = key;
      out.value += scale * c * ipow(x, m) * ipow(xi, n);
      if (m > 0) out.d_dx += scale * c * static_cast<double>(m) * ipow(x, m - 1) * ipow(xi, n);
      if (n > 0) out.d_dxi += scale * c * static_cast<double>(n) * ipow(x, m) * ipow(xi, n - 1);
    }
  };
  accumulate(sym.f(), 1.0);
  if (sym.epsilon() != 0.0) accumulate(sym.q(), ie);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw DomainError("non-finite polynomial coefficient");
  trim();
}

Polynomial Polynomial::monomial(int power, double coeff) {
  std::vector<double> c(static_cast<std::size_t>(power) + 1, 0.0);
  c.back() = coeff;
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double x) const {
  double r = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
  return r;
}

cplx Polynomial::operator()(cplx x) const {
  cplx r{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
  return r;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

// -------------------------------------------------------------- CircleSymbol

CircleSymbol::CircleSymbol(Polynomial f, Terms q) : f_(std::move(f)) {
  for (const auto& [key, c] : q) {
    if (!finite(c)) throw DomainError("non-finite coefficient in q");
    if (key.second < 0) throw ConfigError("negative power of I in q");
    if (c != cplx{}) q_.emplace(key, c);
  }
  for (const auto& [key, c] : q_) {
    const auto it = q_.find({-key.first, key.second});
    const cplx partner = it == q_.end() ? cplx{} : it->second;
    const double scale = std::max(std::abs(c), 1.0);
    if (std::abs(partner - std::conj(c)) > 1e-14 * scale)
      throw ConfigError("q is not real-valued: coefficients of e^{+-i m theta} are not conjugate");
  }
}

int CircleSymbol::max_fourier_index() const noexcept {
  int m = 0;
  for (const auto& [key, c] : q_) m = std::max(m, std::abs(key.first));
  return m;
}

int CircleSymbol::degree_in_action() const noexcept {
  int n = std::max(f_.degree(), 0);
  for (const auto& [key, c] : q_) n = std::max(n, key.second);
  return n;
}

// --------------------------------------------------------------- PlaneSymbol

PlaneSymbol::PlaneSymbol(Terms f, Terms q, double epsilon) : epsilon_(epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) throw ConfigError("epsilon must be finite and >= 0");
  auto clean = [](const Terms& in, const char* name) {
    Terms out;
    for (const auto& [key, c] : in) {
      if (!std::isfinite(c)) throw DomainError(std::string("non-finite coefficient in ") + name);
      if (key.first < 0 || key.second < 0) throw ConfigError(std::string("negative power in ") + name);
      if (key.first > kMaxDegree || key.second > kMaxDegree)
        throw ConfigError(std::string("degree above ") + std::to_string(kMaxDegree) + " in " + name);
      if (c != 0.0) out.emplace(key, c);
    }
    return out;
  };
  f_ = clean(f, "f");
  q_ = clean(q, "q");
  if (f_ != harmonic_oscillator()) throw ConfigError("plane symbols require f = x^2 + xi^2");
}

int PlaneSymbol::total_degree() const noexcept {
  int d = 0;
  for (const auto& [key, c] : f_) d = std::max(d, key.first + key.second);
  for (const auto& [key, c] : q_) d = std::max(d, key.first + key.second);
  return d;
}

// ------------------------------------------------------------- EpsilonPolicy

double EpsilonPolicy::resolve(double hbar) const {
  if (!std::isfinite(value)) throw ConfigError("epsilon policy value must be finite");
  double eps = 0.0;
  if (mode == Mode::fixed) {
    eps = value;
  } else {
    if (!(hbar > 0.0)) throw ConfigError("hbar must be > 0");
    eps = std::pow(hbar, value);
  }
  if (!std::isfinite(eps) || eps < 0.0) throw ConfigError("epsilon must be finite and >= 0");
  return eps;
}

std::optional<std::string> EpsilonPolicy::warning(double eps) {
  if (eps >= 0.5) return "epsilon = " + std::to_string(eps) + " is not small; predictions may be inaccurate";
  return std::nullopt;
}

// ---------------------------------------------------------------- evaluation

cplx eval_circle(const CircleSymbol& sym, cplx theta, cplx action, double eps) {
  require_finite(theta, "theta");
  require_finite(action, "I");
  if (!std::isfinite(eps)) throw DomainError("non-finite epsilon");
  cplx q{};
  for (const auto& [key, c] : sym.q()) {
    const auto [m, n] = key;
    q += c * std::exp(cplx{0.0, static_cast<double>(m)} * theta) * ipow(action, n);
  }
  return sym.f()(action) + cplx{0.0, eps} * q;
}

cplx eval_plane(const PlaneSymbol& sym, cplx x, cplx xi) {
  require_finite(x, "x");
  require_finite(xi, "xi");
  return sum_terms(sym.f(), x, xi) + cplx{0.0, sym.epsilon()} * sum_terms(sym.q(), x, xi);
}

Polynomial theta_average(const CircleSymbol& sym) {
  std::vector<double> c(static_cast<std::size_t>(sym.degree_in_action()) + 1, 0.0);
  for (const auto& [key, coeff] : sym.q())
    if (key.first == 0) c[static_cast<std::size_t>(key.second)] += coeff.real();
  return Polynomial(std::move(c));
}

bool pt_symmetry_check(const PlaneSymbol& sym) {
  // conj(p(-x, xi)) = p(x, xi) as polynomials with real coefficients:
  // f must be even in x and q odd in x.
  for (const auto& [key, c] : sym.f())
    if (key.first % 2 != 0) return false;
  if (sym.epsilon() == 0.0) return true;
  for (const auto& [key, c] : sym.q())
    if (key.first % 2 == 0) return false;
  return true;
}

// ------------------------------------------------------------ CylinderSymbol

CylinderSymbol::CylinderSymbol(std::variant<CircleSymbol, PlaneSymbol> source, double eps,
                               Polynomial unperturbed, Polynomial averaged_q)
    : source_(std::move(source)),
      eps_(eps),
      unperturbed_(std::move(unperturbed)),
      averaged_q_(std::move(averaged_q)) {}

CylinderSymbol CylinderSymbol::circle(CircleSymbol sym, double eps) {
  if (!std::isfinite(eps) || eps < 0.0) throw ConfigError("epsilon must be finite and >= 0");
  Polynomial f = sym.f();
  Polynomial avg = theta_average(sym);
  return CylinderSymbol(std::move(sym), eps, std::move(f), std::move(avg));
}

CylinderSymbol pullback_action_angle(const PlaneSymbol& sym) {
  // <cos^m sin^n> over a period is (m-1)!!(n-1)!!/(m+n)!! for even m, n and
  // vanishes otherwise; xi carries a factor (-1)^n which is +1 when n is even.
  std::vector<double> avg(static_cast<std::size_t>(sym.total_degree() / 2) + 1, 0.0);
  for (const auto& [key, c] : sym.q()) {
    const auto [m, n] = key;
    if (m % 2 != 0 || n % 2 != 0) continue;
    const int half = (m + n) / 2;
    avg[static_cast<std::size_t>(half)] +=
        c * std::pow(2.0, half) * double_factorial(m - 1) * double_factorial(n - 1) / double_factorial(m + n);
  }
  return CylinderSymbol(sym, sym.epsilon(), Polynomial::monomial(1, 2.0), Polynomial(std::move(avg)));
}

namespace {

cplx pullback_radius(cplx action) {
  if (action.imag() == 0.0 && action.real() <= 0.0)
    throw BranchError("action-angle pullback undefined for I on (-inf, 0]");
  return std::sqrt(2.0 * action);
}

}  // namespace

cplx CylinderSymbol::value(cplx theta, cplx action) const {
  if (const auto* c = std::get_if<CircleSymbol>(&source_)) return eval_circle(*c, theta, action, eps_);
  const auto& plane = std::get<PlaneSymbol>(source_);
  require_finite(theta, "theta");
  require_finite(action, "I");
  const cplx r = pullback_radius(action);
  return eval_plane(plane, r * std::cos(theta), -r * std::sin(theta));
}

cplx CylinderSymbol::d_daction(cplx theta, cplx action) const {
  require_finite(theta, "theta");
  require_finite(action, "I");
  if (const auto* c = std::get_if<CircleSymbol>(&source_)) {
    cplx dq{};
    for (const auto& [key, coeff] : c->q()) {
      const auto [m, n] = key;
      if (n == 0) continue;
      dq += coeff * static_cast<double>(n) * std::exp(cplx{0.0, static_cast<double>(m)} * theta) *
            ipow(action, n - 1);
    }
    return c->f().derivative()(action) + cplx{0.0, eps_} * dq;
  }
  const auto& plane = std::get<PlaneSymbol>(source_);
  const cplx r = pullback_radius(action);
  const cplx cs = std::cos(theta);
  const cplx sn = std::sin(theta);
  const PlaneValue v = plane_value_and_gradient(plane, r * cs, -r * sn);
  // dx/dI = cos(theta)/r, dxi/dI = -sin(theta)/r
  return (v.d_dx * cs - v.d_dxi * sn) / r;
}

}  // namespace bsq
