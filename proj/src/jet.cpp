#include "spraymet/jet.hpp"

#include <algorithm>
#include <utility>

namespace spraymet {

namespace {

void enumerate_degree(int vars, int degree, int var, MultiIndex& scratch,
                      std::vector<MultiIndex>& out) {
  if (var == vars - 1) {
    scratch[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(degree);
    out.push_back(scratch);
    scratch[static_cast<std::size_t>(var)] = 0;
    return;
  }
  for (int d = 0; d <= degree; ++d) {
    scratch[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(d);
    enumerate_degree(vars, degree - d, var + 1, scratch, out);
  }
  scratch[static_cast<std::size_t>(var)] = 0;
}

int degree_of(const MultiIndex& beta, int vars) {
  int d = 0;
  for (int v = 0; v < vars; ++v) d += beta[static_cast<std::size_t>(v)];
  return d;
}

double factorial_of(const MultiIndex& beta, int vars) {
  double f = 1.0;
  for (int v = 0; v < vars; ++v) {
    for (int j = 2; j <= beta[static_cast<std::size_t>(v)]; ++j) f *= j;
  }
  return f;
}

}  // namespace

std::uint64_t JetLayout::pack(const MultiIndex& beta, int vars) {
  std::uint64_t key = 0;
  for (int v = 0; v < vars; ++v) {
    key = (key << 5) | beta[static_cast<std::size_t>(v)];
  }
  return key;
}

JetLayout::JetLayout(int vars, int order, const JetLayout* lowered)
    : vars_(vars), order_(order), lowered_(lowered) {
  MultiIndex scratch{};
  for (int d = 0; d <= order; ++d) {
    enumerate_degree(vars, d, 0, scratch, exponents_);
  }
  factorials_.reserve(exponents_.size());
  index_map_.reserve(exponents_.size() * 2);
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    factorials_.push_back(factorial_of(exponents_[i], vars));
    index_map_.emplace(pack(exponents_[i], vars), static_cast<std::int32_t>(i));
  }

  for (std::size_t a = 0; a < exponents_.size(); ++a) {
    int da = degree_of(exponents_[a], vars);
    for (std::size_t b = 0; b < exponents_.size(); ++b) {
      if (da + degree_of(exponents_[b], vars) > order) continue;
      MultiIndex sum{};
      for (int v = 0; v < vars; ++v) {
        sum[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(
            exponents_[a][static_cast<std::size_t>(v)] + exponents_[b][static_cast<std::size_t>(v)]);
      }
      auto it = index_map_.find(pack(sum, vars));
      products_.push_back({static_cast<std::int32_t>(a), static_cast<std::int32_t>(b), it->second});
    }
  }

  if (order > 0) {
    lowered_size_ = static_cast<std::size_t>(lowered_->size());
    deriv_index_.resize(static_cast<std::size_t>(vars) * lowered_size_);
    for (int v = 0; v < vars; ++v) {
      for (std::size_t i = 0; i < lowered_size_; ++i) {
        MultiIndex shifted = lowered_->exponents()[i];
        shifted[static_cast<std::size_t>(v)]++;
        deriv_index_[static_cast<std::size_t>(v) * lowered_size_ + i] =
            index_map_.at(pack(shifted, vars));
      }
    }
  }
}

int JetLayout::index_of(const MultiIndex& beta) const {
  auto it = index_map_.find(pack(beta, vars_));
  return it == index_map_.end() ? -1 : it->second;
}

const JetLayout* JetLayout::get(int vars, int order) {
  if (vars < 1 || vars > kMaxJetVars) throw Error("jet variable count out of range");
  if (order < 0 || order > kMaxJetOrder) {
    throw OrderError("jet order " + std::to_string(order) + " out of supported range");
  }
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<JetLayout>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const JetLayout* prev = nullptr;
  for (int k = 0; k <= order; ++k) {
    auto key = std::make_pair(vars, k);
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, std::unique_ptr<JetLayout>(new JetLayout(vars, k, prev))).first;
    }
    prev = it->second.get();
  }
  return prev;
}

std::vector<Jet> lift_point(std::span<const double> x, std::span<const double> y, int order) {
  int n = static_cast<int>(x.size());
  if (static_cast<int>(y.size()) != n) throw Error("lift_point: x and y sizes differ");
  const JetLayout* layout = JetLayout::get(2 * n, order);
  std::vector<Jet> seeds;
  seeds.reserve(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) seeds.push_back(Jet::variable(layout, i, x[static_cast<std::size_t>(i)]));
  for (int j = 0; j < n; ++j) seeds.push_back(Jet::variable(layout, n + j, y[static_cast<std::size_t>(j)]));
  return seeds;
}

}  // namespace spraymet
