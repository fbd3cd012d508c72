#include "sextic/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sextic {

PrecisionContext::PrecisionContext(unsigned target_digits, unsigned guard_digits)
    : target_(target_digits), guard_(guard_digits) {
  if (target_digits == 0) {
    throw std::invalid_argument("target_digits must be positive");
  }
  if (guard_digits < kMinGuard) {
    throw std::invalid_argument("guard_digits must be at least " + std::to_string(kMinGuard));
  }
}

PrecisionContext PrecisionContext::for_order(unsigned target_digits, std::size_t max_index,
                                             double digits_per_index) {
  const auto scaled = static_cast<unsigned>(std::ceil(digits_per_index * static_cast<double>(max_index)));
  return PrecisionContext(target_digits, std::max(kDefaultGuard, scaled));
}

BigReal PrecisionContext::pow10_neg(int exponent) {
  return boost::multiprecision::pow(BigReal(10), -exponent);
}

PrecisionScope::PrecisionScope(const PrecisionContext& ctx) : saved_(BigReal::default_precision()) {
  BigReal::default_precision(ctx.working_digits());
}

PrecisionScope::~PrecisionScope() { BigReal::default_precision(saved_); }

BigReal parse_decimal(std::string_view text) {
  std::string s(text);
  // mpfr_set_str accepts these forms too, but reject them explicitly so a
  // typo cannot silently become NaN or infinity.
  if (s.empty() || s.find_first_not_of("0123456789+-.eE") != std::string::npos) {
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  }
  try {
    return BigReal(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  }
}

std::string to_decimal(const BigReal& x, unsigned significant) {
  if (x == 0) return "0";
  const unsigned after_point = significant > 1 ? significant - 1 : 0;
  return x.str(static_cast<std::streamsize>(after_point), std::ios_base::scientific);
}

// ---------------------------------------------------------------------------
// Polynomial

namespace {

unsigned current_digits() { return BigReal::default_precision(); }

void require_same_precision(const Polynomial& a, const Polynomial& b) {
  if (a.digits() != b.digits()) {
    throw ContractViolation("polynomial operands built at different precisions (" +
                            std::to_string(a.digits()) + " vs " + std::to_string(b.digits()) +
                            " digits)");
  }
}

}  // namespace

Polynomial::Polynomial() : digits_(current_digits()) {}

Polynomial::Polynomial(std::vector<BigReal> coeffs)
    : coeffs_(std::move(coeffs)), digits_(current_digits()) {}

Polynomial::Polynomial(std::initializer_list<BigReal> coeffs)
    : coeffs_(coeffs), digits_(current_digits()) {}

Polynomial Polynomial::monomial(std::size_t degree, const BigReal& coeff) {
  std::vector<BigReal> c(degree + 1, BigReal(0));
  c[degree] = coeff;
  return Polynomial(std::move(c));
}

BigReal Polynomial::operator[](std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : BigReal(0);
}

Polynomial Polynomial::derivative() const {
  Polynomial out;
  out.digits_ = digits_;
  if (coeffs_.size() <= 1) {
    out.coeffs_.assign(1, BigReal(0));
    return out;
  }
  out.coeffs_.reserve(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    out.coeffs_.push_back(coeffs_[k] * static_cast<unsigned long>(k));
  }
  return out;
}

BigReal Polynomial::evaluate(const BigReal& x) const {
  BigReal acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

BigReal Polynomial::max_abs_coeff() const {
  BigReal m(0);
  for (const auto& c : coeffs_) {
    BigReal a = abs(c);
    if (a > m) m = a;
  }
  return m;
}

Polynomial Polynomial::shifted(std::size_t k) const {
  std::vector<BigReal> c(k, BigReal(0));
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  Polynomial out(std::move(c));
  out.digits_ = digits_;
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same_precision(a, b);
  std::vector<BigReal> c(std::max(a.size(), b.size()), BigReal(0));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
  Polynomial out(std::move(c));
  out.digits_ = a.digits_;
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  require_same_precision(a, b);
  std::vector<BigReal> c(std::max(a.size(), b.size()), BigReal(0));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
  Polynomial out(std::move(c));
  out.digits_ = a.digits_;
  return out;
}

Polynomial operator-(const Polynomial& p) {
  Polynomial out = p;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_precision(a, b);
  if (a.coeffs_.empty() || b.coeffs_.empty()) {
    Polynomial z;
    z.digits_ = a.digits_;
    return z;
  }
  std::vector<BigReal> c(a.size() + b.size() - 1, BigReal(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  Polynomial out(std::move(c));
  out.digits_ = a.digits_;
  return out;
}

Polynomial operator*(const BigReal& s, const Polynomial& p) {
  Polynomial out = p;
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op) {
  switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
  }
  throw std::invalid_argument("unknown polynomial operation");
}

// ---------------------------------------------------------------------------
// Tanh-sinh quadrature on [0, L].
//
// x(t) = L / (1 + exp(-pi sinh t)),  x'(t) = L pi cosh t q / (1 + q)^2 with
// q = exp(-pi |sinh t|). Both endpoints are approached double-exponentially,
// and the small-q form keeps abscissae near either end accurate.

namespace {

struct Node {
  BigReal x;
  BigReal weight;
};

Node tanh_sinh_node(const BigReal& t, const BigReal& length, const BigReal& pi) {
  const BigReal s = pi * sinh(t);
  const BigReal q = exp(-abs(s));
  const BigReal one_plus_q = 1 + q;
  Node node;
  node.x = t >= 0 ? length / one_plus_q : length * q / one_plus_q;
  node.weight = length * pi * cosh(t) * q / (one_plus_q * one_plus_q);
  return node;
}

}  // namespace

BigReal de_quadrature(const Integrand& f, const PrecisionContext& ctx,
                      const QuadratureOptions& options) {
  PrecisionScope scope(ctx);
  const BigReal length = options.upper;
  if (!(length > 0)) {
    throw std::invalid_argument("quadrature upper limit must be positive");
  }
  const BigReal pi = boost::math::constants::pi<BigReal>();
  const int tol_exp = static_cast<int>(ctx.working_digits()) - 5;
  const BigReal tol = PrecisionContext::pow10_neg(tol_exp);

  // Beyond t_max the weights fall below 10^-(working + 10).
  const double t_max =
      std::asinh((static_cast<double>(ctx.working_digits()) + 10.0) * std::log(10.0) / M_PI);

  auto add_nodes = [&](const BigReal& h, long first, long stride, BigReal& sum) {
    const long count = static_cast<long>(std::floor(t_max / h.convert_to<double>()));
    for (long j = first; j <= count; j += stride) {
      const BigReal t = h * j;
      if (j == 0) {
        const Node n0 = tanh_sinh_node(t, length, pi);
        sum += n0.weight * f(n0.x);
        continue;
      }
      const Node plus = tanh_sinh_node(t, length, pi);
      const Node minus = tanh_sinh_node(-t, length, pi);
      sum += plus.weight * f(plus.x) + minus.weight * f(minus.x);
    }
  };

  BigReal h(1);
  BigReal sum(0);
  add_nodes(h, 0, 1, sum);
  BigReal estimate = h * sum;
  BigReal previous = estimate;
  for (unsigned level = 1; level <= options.max_level; ++level) {
    h /= 2;
    add_nodes(h, 1, 2, sum);
    previous = estimate;
    estimate = h * sum;
    if (level >= 2 && abs(estimate - previous) < tol) {
      return estimate;
    }
  }
  throw QuadratureFailure("tanh-sinh quadrature did not converge within " +
                              std::to_string(options.max_level) + " levels",
                          previous, estimate);
}

}  // namespace sextic
