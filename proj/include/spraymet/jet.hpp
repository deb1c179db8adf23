#ifndef SPRAYMET_JET_HPP
#define SPRAYMET_JET_HPP

// Truncated multivariate Taylor arithmetic ("jets"): a jet stores the
// coefficients f_beta = (d^beta f)/beta! at an expansion point, for all
// multi-indices |beta| <= order.  Arithmetic propagates them exactly, so
// every derivative extracted downstream is rounding-limited, never
// finite-difference-limited.
//
// Coefficients are stored densely in graded-lex order.  Multi-indices of
// degree <= k-1 form a prefix of the degree <= k enumeration, so lowering
// the order is a prefix copy and differentiating is an index shift.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "spraymet/errors.hpp"

namespace spraymet {

inline constexpr int kMaxJetVars = 12;
inline constexpr int kMaxJetOrder = 5;

using MultiIndex = std::array<std::uint8_t, kMaxJetVars>;

struct JetProductTerm {
  std::int32_t lhs;
  std::int32_t rhs;
  std::int32_t out;
};

// Shared, immutable description of one (vars, order) coefficient space.
// Instances are interned: pointers are stable and comparable.
class JetLayout {
 public:
  static const JetLayout* get(int vars, int order);

  int vars() const { return vars_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(exponents_.size()); }

  const std::vector<MultiIndex>& exponents() const { return exponents_; }
  double factorial(int idx) const { return factorials_[idx]; }
  const std::vector<JetProductTerm>& products() const { return products_; }

  // Index of a multi-index in this layout, or -1 if |beta| > order.
  int index_of(const MultiIndex& beta) const;

  // Layout with the same variables and one order less (nullptr at order 0).
  const JetLayout* lowered() const { return lowered_; }

  // For i indexing the lowered layout: index here of beta_i + e_var.
  int shift_index(int var, int lowered_idx) const {
    return deriv_index_[static_cast<std::size_t>(var) * lowered_size_ + lowered_idx];
  }

 private:
  JetLayout(int vars, int order, const JetLayout* lowered);

  static std::uint64_t pack(const MultiIndex& beta, int vars);

  int vars_ = 0;
  int order_ = 0;
  std::size_t lowered_size_ = 0;
  const JetLayout* lowered_ = nullptr;
  std::vector<MultiIndex> exponents_;
  std::vector<double> factorials_;
  std::vector<JetProductTerm> products_;
  std::vector<std::int32_t> deriv_index_;
  std::unordered_map<std::uint64_t, std::int32_t> index_map_;
};

inline double zero_like(double) { return 0.0; }
inline double one_like(double) { return 1.0; }
inline double scalar_value(double x) { return x; }

template <typename S>
class JetT;

template <typename S>
JetT<S> zero_like(const JetT<S>& j);
template <typename S>
JetT<S> one_like(const JetT<S>& j);
template <typename S>
double scalar_value(const JetT<S>& j);

template <typename S>
class JetT {
 public:
  JetT() = default;

  JetT(const JetLayout* layout, std::vector<S> coef) : layout_(layout), coef_(std::move(coef)) {
    if (!layout_ || static_cast<int>(coef_.size()) != layout_->size()) {
      throw Error("jet coefficient count does not match layout");
    }
  }

  static JetT constant(const JetLayout* layout, const S& v) {
    std::vector<S> c(static_cast<std::size_t>(layout->size()), zero_like(v));
    c[0] = v;
    return JetT(layout, std::move(c));
  }

  static JetT variable(const JetLayout* layout, int var, const S& v) {
    if (var < 0 || var >= layout->vars()) throw Error("jet variable slot out of range");
    std::vector<S> c(static_cast<std::size_t>(layout->size()), zero_like(v));
    c[0] = v;
    if (layout->order() >= 1) {
      MultiIndex beta{};
      beta[static_cast<std::size_t>(var)] = 1;
      c[static_cast<std::size_t>(layout->index_of(beta))] = one_like(v);
    }
    return JetT(layout, std::move(c));
  }

  const JetLayout* layout() const { return layout_; }
  int order() const { return layout_->order(); }
  int vars() const { return layout_->vars(); }

  const S& coef(int idx) const { return coef_[static_cast<std::size_t>(idx)]; }
  S& coef_mut(int idx) { return coef_[static_cast<std::size_t>(idx)]; }
  const std::vector<S>& coefficients() const { return coef_; }

  const S& value() const { return coef_[0]; }

  // True partial derivative d^beta f (the stored coefficient times beta!).
  S partial(const MultiIndex& beta) const {
    int idx = layout_->index_of(beta);
    if (idx < 0) throw OrderError("requested partial exceeds jet truncation order");
    return coef_[static_cast<std::size_t>(idx)] * layout_->factorial(idx);
  }

  S partial1(int var) const {
    MultiIndex beta{};
    beta[static_cast<std::size_t>(var)] = 1;
    return partial(beta);
  }

  S partial2(int va, int vb) const {
    MultiIndex beta{};
    beta[static_cast<std::size_t>(va)]++;
    beta[static_cast<std::size_t>(vb)]++;
    return partial(beta);
  }

  JetT truncated(int new_order) const {
    if (new_order > order()) throw OrderError("cannot raise jet order by truncation");
    if (new_order == order()) return *this;
    const JetLayout* lay = JetLayout::get(vars(), new_order);
    std::vector<S> c(coef_.begin(), coef_.begin() + lay->size());
    return JetT(lay, std::move(c));
  }

  // Jet of df/dvar, one order lower (the standard coefficient shift).
  JetT derivative(int var) const {
    if (order() == 0) throw OrderError("cannot differentiate an order-0 jet");
    const JetLayout* lower = layout_->lowered();
    std::vector<S> c(static_cast<std::size_t>(lower->size()), zero_like(coef_[0]));
    for (int i = 0; i < lower->size(); ++i) {
      int src = layout_->shift_index(var, i);
      double mult = lower->exponents()[static_cast<std::size_t>(i)][static_cast<std::size_t>(var)] + 1.0;
      c[static_cast<std::size_t>(i)] = coef_[static_cast<std::size_t>(src)] * mult;
    }
    return JetT(lower, std::move(c));
  }

 private:
  const JetLayout* layout_ = nullptr;
  std::vector<S> coef_;
};

using Jet = JetT<double>;

template <typename S>
JetT<S> zero_like(const JetT<S>& j) {
  return JetT<S>::constant(j.layout(), zero_like(j.value()));
}

template <typename S>
JetT<S> one_like(const JetT<S>& j) {
  return JetT<S>::constant(j.layout(), one_like(j.value()));
}

template <typename S>
double scalar_value(const JetT<S>& j) {
  return scalar_value(j.value());
}

namespace detail {

// Truncates the deeper operand so both share a layout.
template <typename S>
void align(JetT<S>& a, JetT<S>& b) {
  if (a.layout() == b.layout()) return;
  if (a.vars() != b.vars()) throw Error("jet variable counts differ");
  if (a.order() > b.order()) {
    a = a.truncated(b.order());
  } else {
    b = b.truncated(a.order());
  }
}

}  // namespace detail

template <typename S>
JetT<S> operator+(JetT<S> a, JetT<S> b) {
  detail::align(a, b);
  for (int i = 0; i < a.layout()->size(); ++i) a.coef_mut(i) = a.coef(i) + b.coef(i);
  return a;
}

template <typename S>
JetT<S> operator-(JetT<S> a, JetT<S> b) {
  detail::align(a, b);
  for (int i = 0; i < a.layout()->size(); ++i) a.coef_mut(i) = a.coef(i) - b.coef(i);
  return a;
}

template <typename S>
JetT<S> operator-(JetT<S> a) {
  for (int i = 0; i < a.layout()->size(); ++i) a.coef_mut(i) = -a.coef(i);
  return a;
}

template <typename S>
JetT<S> operator+(JetT<S> a, double x) {
  a.coef_mut(0) = a.coef(0) + x;
  return a;
}

template <typename S>
JetT<S> operator+(double x, JetT<S> a) {
  return std::move(a) + x;
}

template <typename S>
JetT<S> operator-(JetT<S> a, double x) {
  return std::move(a) + (-x);
}

template <typename S>
JetT<S> operator-(double x, JetT<S> a) {
  return -std::move(a) + x;
}

template <typename S>
JetT<S> operator*(JetT<S> a, double x) {
  for (int i = 0; i < a.layout()->size(); ++i) a.coef_mut(i) = a.coef(i) * x;
  return a;
}

template <typename S>
JetT<S> operator*(double x, JetT<S> a) {
  return std::move(a) * x;
}

template <typename S>
JetT<S> operator/(JetT<S> a, double x) {
  if (x == 0.0) throw DomainError("division by zero");
  return std::move(a) * (1.0 / x);
}

template <typename S>
JetT<S> operator*(JetT<S> a, JetT<S> b) {
  detail::align(a, b);
  std::vector<S> c(static_cast<std::size_t>(a.layout()->size()), zero_like(a.coef(0)));
  for (const JetProductTerm& t : a.layout()->products()) {
    c[static_cast<std::size_t>(t.out)] =
        c[static_cast<std::size_t>(t.out)] + a.coef(t.lhs) * b.coef(t.rhs);
  }
  return JetT<S>(a.layout(), std::move(c));
}

namespace detail {

// result = sum_j c[j] * (u - u0)^j, truncated; c[j] = f^(j)(u0)/j!.
template <typename S>
JetT<S> compose_series(const JetT<S>& u, const std::vector<S>& c) {
  JetT<S> w = u;
  w.coef_mut(0) = zero_like(u.value());
  JetT<S> r = JetT<S>::constant(u.layout(), c.back());
  for (int j = static_cast<int>(c.size()) - 2; j >= 0; --j) {
    r = r * w;
    r.coef_mut(0) = r.coef(0) + c[static_cast<std::size_t>(j)];
  }
  return r;
}

template <typename S>
S recip_scalar(const S& v) {
  return one_like(v) / v;
}

inline double recip_scalar(double v) { return 1.0 / v; }

// Integer power by repeated squaring.  The same operation sequence runs
// for doubles and for jets, so order-0 jet evaluation stays bit-identical
// to plain real evaluation.
template <typename T>
T powi(const T& u, long e) {
  T base = u;
  if (e < 0) {
    base = recip_scalar(u);
    e = -e;
  }
  T acc = one_like(u);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

inline double recip_scalar_checked(double v) {
  if (v == 0.0) throw DomainError("division by zero");
  return 1.0 / v;
}

}  // namespace detail

template <typename S>
JetT<S> operator/(JetT<S> a, JetT<S> b) {
  detail::align(a, b);
  if (scalar_value(b.value()) == 0.0) throw DomainError("division by zero-valued jet");
  S quotient0 = a.value() / b.value();
  int k = b.order();
  S r = detail::recip_scalar(b.value());
  std::vector<S> c(static_cast<std::size_t>(k) + 1, r);
  for (int j = 1; j <= k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] * r * (-1.0);
  JetT<S> out = a * detail::compose_series(b, c);
  out.coef_mut(0) = quotient0;  // exact at order zero
  return out;
}

template <typename S>
JetT<S> operator/(double x, const JetT<S>& a) {
  return JetT<S>::constant(a.layout(), one_like(a.value()) * x) / a;
}

template <typename S>
JetT<S> exp(const JetT<S>& u) {
  using std::exp;
  int k = u.order();
  std::vector<S> c(static_cast<std::size_t>(k) + 1, exp(u.value()));
  for (int j = 1; j <= k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] / static_cast<double>(j);
  return detail::compose_series(u, c);
}

template <typename S>
JetT<S> log(const JetT<S>& u) {
  using std::log;
  if (scalar_value(u.value()) <= 0.0) throw DomainError("log of non-positive value");
  int k = u.order();
  std::vector<S> c;
  c.reserve(static_cast<std::size_t>(k) + 1);
  c.push_back(log(u.value()));
  if (k >= 1) {
    S r = detail::recip_scalar(u.value());
    c.push_back(r);
    for (int j = 2; j <= k; ++j) {
      c.push_back(c.back() * r * (-static_cast<double>(j - 1) / static_cast<double>(j)));
    }
  }
  return detail::compose_series(u, c);
}

// Real constant exponent; integer exponents are evaluated by repeated
// multiplication so negative bases stay exact.
template <typename S>
JetT<S> pow(const JetT<S>& u, double a) {
  double v0 = scalar_value(u.value());
  double rounded = std::nearbyint(a);
  if (rounded == a && std::abs(a) <= 64.0) {
    long e = static_cast<long>(rounded);
    if (v0 == 0.0 && e < 0) throw DomainError("negative integer power of zero");
    return detail::powi(u, e);
  }
  using std::pow;
  if (v0 < 0.0) throw DomainError("non-integer power of negative value");
  if (v0 == 0.0) {
    if (u.order() == 0 && a > 0.0) return JetT<S>::constant(u.layout(), zero_like(u.value()));
    throw DomainError("non-integer power singular at zero");
  }
  int k = u.order();
  std::vector<S> c;
  c.reserve(static_cast<std::size_t>(k) + 1);
  c.push_back(pow(u.value(), a));
  if (k >= 1) {
    S r = detail::recip_scalar(u.value());
    for (int j = 1; j <= k; ++j) {
      c.push_back(c.back() * r * ((a - static_cast<double>(j - 1)) / static_cast<double>(j)));
    }
  }
  return detail::compose_series(u, c);
}

template <typename S>
JetT<S> sqrt(const JetT<S>& u) {
  using std::sqrt;
  double v0 = scalar_value(u.value());
  if (v0 < 0.0) throw DomainError("sqrt of negative value");
  if (v0 == 0.0) {
    if (u.order() == 0) return JetT<S>::constant(u.layout(), zero_like(u.value()));
    throw DomainError("sqrt derivative singular at zero");
  }
  int k = u.order();
  std::vector<S> c;
  c.reserve(static_cast<std::size_t>(k) + 1);
  c.push_back(sqrt(u.value()));
  if (k >= 1) {
    S r = detail::recip_scalar(u.value());
    for (int j = 1; j <= k; ++j) {
      c.push_back(c.back() * r * ((0.5 - static_cast<double>(j - 1)) / static_cast<double>(j)));
    }
  }
  return detail::compose_series(u, c);
}

template <typename S>
JetT<S> sin(const JetT<S>& u) {
  using std::cos;
  using std::sin;
  int k = u.order();
  S s = sin(u.value());
  S co = cos(u.value());
  std::vector<S> c;
  c.reserve(static_cast<std::size_t>(k) + 1);
  double fact = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) fact *= j;
    switch (j % 4) {
      case 0: c.push_back(s * (1.0 / fact)); break;
      case 1: c.push_back(co * (1.0 / fact)); break;
      case 2: c.push_back(s * (-1.0 / fact)); break;
      default: c.push_back(co * (-1.0 / fact)); break;
    }
  }
  return detail::compose_series(u, c);
}

template <typename S>
JetT<S> cos(const JetT<S>& u) {
  using std::cos;
  using std::sin;
  int k = u.order();
  S s = sin(u.value());
  S co = cos(u.value());
  std::vector<S> c;
  c.reserve(static_cast<std::size_t>(k) + 1);
  double fact = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) fact *= j;
    switch (j % 4) {
      case 0: c.push_back(co * (1.0 / fact)); break;
      case 1: c.push_back(s * (-1.0 / fact)); break;
      case 2: c.push_back(co * (-1.0 / fact)); break;
      default: c.push_back(s * (1.0 / fact)); break;
    }
  }
  return detail::compose_series(u, c);
}

// Sign frozen from the order-0 part; sign(0) is taken as +1.
template <typename S>
JetT<S> abs(const JetT<S>& u) {
  return scalar_value(u.value()) < 0.0 ? -u : u;
}

// Seed jets for the 2n phase coordinates at (x, y): slot i carries x^i,
// slot n+j carries y^j.
std::vector<Jet> lift_point(std::span<const double> x, std::span<const double> y, int order);

}  // namespace spraymet

#endif  // SPRAYMET_JET_HPP
