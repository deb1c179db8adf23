#include "spraymet/spray.hpp"

#include <algorithm>

namespace spraymet {

ExpressionSource::ExpressionSource(std::vector<Expression> g) : g_(std::move(g)) {
  if (g_.empty()) throw Error("spray needs at least one coefficient");
  n_ = g_.front().dimension();
  for (const Expression& e : g_) {
    if (e.empty() || e.dimension() != n_) {
      throw Error("spray coefficient dimensions are inconsistent");
    }
  }
  if (static_cast<int>(g_.size()) != n_) {
    throw Error("spray needs exactly n coefficient expressions");
  }
}

std::vector<Jet> ExpressionSource::coefficient_jets(const PhasePoint& p, int order) const {
  std::vector<Jet> seeds = lift_point(p.x, p.y, order);
  std::span<const Jet> xs(seeds.data(), static_cast<std::size_t>(n_));
  std::span<const Jet> ys(seeds.data() + n_, static_cast<std::size_t>(n_));
  std::vector<Jet> out;
  out.reserve(g_.size());
  for (const Expression& e : g_) out.push_back(e.evaluate<Jet>(xs, ys));
  return out;
}

std::string ExpressionSource::describe() const {
  std::string s = "spray[";
  for (std::size_t i = 0; i < g_.size(); ++i) {
    if (i) s += "; ";
    s += g_[i].to_string();
  }
  return s + "]";
}

Spray::Spray(std::shared_ptr<const CoefficientSource> source, std::vector<Expression> domain_predicates)
    : source_(std::move(source)), predicates_(std::move(domain_predicates)) {
  if (!source_) throw Error("spray needs a coefficient source");
  if (source_->dimension() < 2) throw Error("spray dimension must be at least 2");
}

Spray Spray::from_expressions(std::vector<Expression> g, std::vector<Expression> domain_predicates) {
  return Spray(std::make_shared<ExpressionSource>(std::move(g)), std::move(domain_predicates));
}

bool Spray::admitted(const PhasePoint& p) const {
  if (p.dimension() != dimension() || static_cast<int>(p.y.size()) != dimension()) return false;
  if (p.y_norm() <= 0.0) return false;
  for (const Expression& pred : predicates_) {
    double v;
    try {
      v = pred.evaluate<double>(p.x, p.y);
    } catch (const DomainError&) {
      return false;
    }
    if (!(v > 0.0)) return false;
  }
  return true;
}

std::vector<double> Spray::coefficients(const PhasePoint& p) const {
  std::vector<Jet> jets = coefficient_jets(p, 0);
  std::vector<double> out;
  out.reserve(jets.size());
  for (const Jet& j : jets) out.push_back(j.value());
  return out;
}

double homogeneity_residual(const Spray& s, const PhasePoint& p) {
  int n = s.dimension();
  std::vector<Jet> g = s.coefficient_jets(p, 1);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double euler = 0.0;
    for (int j = 0; j < n; ++j) {
      euler += p.y[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(i)].partial1(n + j);
    }
    double gi = g[static_cast<std::size_t>(i)].value();
    worst = std::max(worst, std::abs(euler - 2.0 * gi) / (1.0 + std::abs(gi)));
  }
  return worst;
}

}  // namespace spraymet
