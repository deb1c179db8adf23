#ifndef SPRAYMET_SPRAY_HPP
#define SPRAYMET_SPRAY_HPP

// Sprays: homogeneous second-order ODE systems x'' + 2 G(x, x') = 0,
// represented by their coefficient functions G^i(x, y) on the slit
// tangent space.  Coefficients come from parsed expressions or are
// derived (projective deformations); both expose exact jets.

#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "spraymet/errors.hpp"
#include "spraymet/expression.hpp"
#include "spraymet/jet.hpp"

namespace spraymet {

struct PhasePoint {
  std::vector<double> x;
  std::vector<double> y;

  PhasePoint() = default;
  PhasePoint(std::vector<double> bx, std::vector<double> by) : x(std::move(bx)), y(std::move(by)) {}

  int dimension() const { return static_cast<int>(x.size()); }

  double y_norm() const {
    double s = 0.0;
    for (double v : y) s += v * v;
    return std::sqrt(s);
  }
};

// Supplies the n coefficient functions G^i as jets of a requested order.
class CoefficientSource {
 public:
  virtual ~CoefficientSource() = default;
  virtual int dimension() const = 0;
  virtual std::vector<Jet> coefficient_jets(const PhasePoint& p, int order) const = 0;
  virtual std::string describe() const = 0;
};

// G^i given directly as parsed expressions.
class ExpressionSource final : public CoefficientSource {
 public:
  explicit ExpressionSource(std::vector<Expression> g);

  int dimension() const override { return n_; }
  std::vector<Jet> coefficient_jets(const PhasePoint& p, int order) const override;
  std::string describe() const override;

  const std::vector<Expression>& expressions() const { return g_; }

 private:
  std::vector<Expression> g_;
  int n_;
};

class Spray {
 public:
  Spray(std::shared_ptr<const CoefficientSource> source, std::vector<Expression> domain_predicates = {});

  static Spray from_expressions(std::vector<Expression> g, std::vector<Expression> domain_predicates = {});

  int dimension() const { return source_->dimension(); }

  // |y| > 0 plus every declared predicate strictly positive.
  bool admitted(const PhasePoint& p) const;

  std::vector<Jet> coefficient_jets(const PhasePoint& p, int order) const {
    return source_->coefficient_jets(p, order);
  }

  std::vector<double> coefficients(const PhasePoint& p) const;

  const CoefficientSource& source() const { return *source_; }
  const std::vector<Expression>& domain_predicates() const { return predicates_; }

 private:
  std::shared_ptr<const CoefficientSource> source_;
  std::vector<Expression> predicates_;
};

// max_i |C(G^i) - 2 G^i| / (1 + |G^i|): zero for positively 2-homogeneous
// coefficients by Euler's theorem.
double homogeneity_residual(const Spray& s, const PhasePoint& p);

}  // namespace spraymet

#endif  // SPRAYMET_SPRAY_HPP
