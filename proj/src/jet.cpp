#include "qale/jet.hpp"

#include "qale/error.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace qale {

namespace {

void enumerate(int nvars, int remaining, std::vector<int>& current, int var,
               std::vector<std::vector<int>>& out) {
  if (var == nvars) {
    out.push_back(current);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    current[static_cast<std::size_t>(var)] = e;
    enumerate(nvars, remaining - e, current, var + 1, out);
  }
  current[static_cast<std::size_t>(var)] = 0;
}

double factorial_of(std::span<const int> alpha) {
  double f = 1.0;
  for (int e : alpha)
    for (int k = 2; k <= e; ++k) f *= k;
  return f;
}

}  // namespace

JetSpace::JetSpace(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 1 || order < 0) throw std::invalid_argument("JetSpace: bad dimensions");
  for (int deg = 0; deg <= order; ++deg) {
    std::vector<std::vector<int>> level;
    std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
    enumerate(nvars, order, cur, 0, level);
    for (auto& e : level) {
      int s = 0;
      for (int x : e) s += x;
      if (s == deg) {
        exponents_.push_back(e);
        degree_.push_back(deg);
      }
    }
  }
  var_index_.assign(static_cast<std::size_t>(nvars), size());
  for (int v = 0; v < nvars; ++v) {
    std::vector<int> e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(v)] = 1;
    var_index_[static_cast<std::size_t>(v)] = index_of(e);
  }

  std::vector<int> sum(static_cast<std::size_t>(nvars));
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b) {
      if (degree_[a] + degree_[b] > order) continue;
      for (std::size_t v = 0; v < sum.size(); ++v) sum[v] = exponents_[a][v] + exponents_[b][v];
      products_.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                           static_cast<std::uint32_t>(index_of(sum))});
    }

  deriv_.resize(static_cast<std::size_t>(nvars));
  if (order == 0) return;
  const JetSpace& lower = get(nvars, order - 1);
  for (int v = 0; v < nvars; ++v) {
    for (std::size_t k = 0; k < size(); ++k) {
      const int ev = exponents_[k][static_cast<std::size_t>(v)];
      if (ev == 0) continue;
      std::vector<int> e = exponents_[k];
      --e[static_cast<std::size_t>(v)];
      deriv_[static_cast<std::size_t>(v)].push_back(
          {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(lower.index_of(e)),
           static_cast<double>(ev)});
    }
  }
}

const JetSpace& JetSpace::get(int nvars, int order) {
  static std::recursive_mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<JetSpace>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(nvars, order);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  std::unique_ptr<JetSpace> space(new JetSpace(nvars, order));
  auto& slot = cache[key];
  slot = std::move(space);
  return *slot;
}

std::size_t JetSpace::index_of(std::span<const int> alpha) const {
  int deg = 0;
  for (int e : alpha) deg += e;
  if (deg > order_ || static_cast<int>(alpha.size()) != nvars_) return size();
  // Degree blocks are contiguous; search within the block.
  std::size_t lo = 0;
  while (lo < size() && degree_[lo] < deg) ++lo;
  for (std::size_t k = lo; k < size() && degree_[k] == deg; ++k) {
    bool eq = true;
    for (std::size_t v = 0; v < alpha.size() && eq; ++v) eq = exponents_[k][v] == alpha[v];
    if (eq) return k;
  }
  return size();
}

// ---------------------------------------------------------------------------

Jet::Jet(const JetSpace& space, double value) : space_(&space), c_(space.size(), 0.0) {
  c_[0] = value;
}

Jet Jet::variable(const JetSpace& space, int var, double value) {
  Jet j(space, value);
  if (space.order() >= 1) j.c_[space.variable_index(var)] = 1.0;
  return j;
}

std::vector<Jet> Jet::variables(const JetSpace& space, std::span<const double> point) {
  std::vector<Jet> out;
  out.reserve(point.size());
  for (std::size_t v = 0; v < point.size(); ++v)
    out.push_back(variable(space, static_cast<int>(v), point[v]));
  return out;
}

double Jet::derivative(std::span<const int> alpha) const {
  const std::size_t k = space_->index_of(alpha);
  if (k == space_->size()) throw std::out_of_range("Jet::derivative beyond truncation order");
  return factorial_of(alpha) * c_[k];
}

double Jet::d(int i) const {
  std::vector<int> a(static_cast<std::size_t>(space_->nvars()), 0);
  ++a[static_cast<std::size_t>(i)];
  return derivative(a);
}

double Jet::d(int i, int j) const {
  std::vector<int> a(static_cast<std::size_t>(space_->nvars()), 0);
  ++a[static_cast<std::size_t>(i)];
  ++a[static_cast<std::size_t>(j)];
  return derivative(a);
}

Jet Jet::partial(int var) const {
  if (order() == 0) throw std::out_of_range("Jet::partial of an order-0 jet");
  Jet out(JetSpace::get(space_->nvars(), order() - 1), 0.0);
  for (const auto& t : space_->derivative_terms(var)) out.c_[t.dst] += t.factor * c_[t.src];
  return out;
}

Jet Jet::truncated(int order) const {
  if (order >= this->order()) return *this;
  Jet out(JetSpace::get(space_->nvars(), order), 0.0);
  for (std::size_t k = 0; k < out.c_.size(); ++k) out.c_[k] = c_[k];
  return out;
}

Jet Jet::compose(std::span<const double> derivs) const {
  const int p = order();
  if (static_cast<int>(derivs.size()) < p + 1)
    throw std::invalid_argument("Jet::compose needs order()+1 derivatives");
  Jet h = *this;
  h.c_[0] = 0.0;
  Jet out(*space_, derivs[0]);
  if (p == 0) return out;
  Jet power = h;
  double inv_fact = 1.0;
  for (int k = 1; k <= p; ++k) {
    inv_fact /= k;
    const double coef = derivs[static_cast<std::size_t>(k)] * inv_fact;
    for (std::size_t i = 1; i < c_.size(); ++i) out.c_[i] += coef * power.c_[i];
    if (k < p) power *= h;
  }
  return out;
}

namespace {

void require_same_space(const JetSpace* a, const JetSpace* b) {
  if (a != b) throw std::invalid_argument("jet arithmetic across different jet spaces");
}

}  // namespace

Jet& Jet::operator+=(const Jet& o) {
  require_same_space(space_, o.space_);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  require_same_space(space_, o.space_);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  require_same_space(space_, o.space_);
  std::vector<double> r(c_.size(), 0.0);
  for (const auto& p : space_->products()) r[p.c] += c_[p.a] * o.c_[p.b];
  c_ = std::move(r);
  return *this;
}

Jet& Jet::operator/=(const Jet& o) { return *this *= (1.0 / o); }

Jet& Jet::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (double& x : out.c_) x = -x;
  return out;
}

Jet operator/(double s, const Jet& a) {
  const double x = a.value();
  if (x == 0.0) fail(ErrorKind::DomainError, "division by a jet with zero value");
  std::vector<double> d(static_cast<std::size_t>(a.order()) + 1);
  double xinv = 1.0 / x, term = s * xinv;
  for (std::size_t k = 0; k < d.size(); ++k) {
    d[k] = term;  // s (-1)^k k! / x^{k+1}
    term *= -static_cast<double>(k + 1) * xinv;
  }
  return a.compose(d);
}

Jet square(const Jet& a) { return a * a; }

Jet exp(const Jet& a) {
  std::vector<double> d(static_cast<std::size_t>(a.order()) + 1, std::exp(a.value()));
  return a.compose(d);
}

Jet log(const Jet& a) {
  const double x = a.value();
  if (!(x > 0.0)) fail(ErrorKind::DomainError, "log of a nonpositive jet");
  std::vector<double> d(static_cast<std::size_t>(a.order()) + 1);
  d[0] = std::log(x);
  double term = 1.0 / x;
  for (std::size_t k = 1; k < d.size(); ++k) {
    d[k] = term;  // (-1)^{k-1} (k-1)! / x^k
    term *= -static_cast<double>(k) / x;
  }
  return a.compose(d);
}

Jet log1p(const Jet& a) {
  const double x = a.value();
  if (!(x > -1.0)) fail(ErrorKind::DomainError, "log1p argument <= -1");
  std::vector<double> d(static_cast<std::size_t>(a.order()) + 1);
  d[0] = std::log1p(x);
  const double y = 1.0 + x;
  double term = 1.0 / y;
  for (std::size_t k = 1; k < d.size(); ++k) {
    d[k] = term;
    term *= -static_cast<double>(k) / y;
  }
  return a.compose(d);
}

Jet pow(const Jet& a, double p) {
  const double x = a.value();
  if (!(x > 0.0)) fail(ErrorKind::DomainError, "pow of a nonpositive jet");
  std::vector<double> d(static_cast<std::size_t>(a.order()) + 1);
  double coef = 1.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    d[k] = coef * std::pow(x, p - static_cast<double>(k));
    coef *= p - static_cast<double>(k);
  }
  return a.compose(d);
}

Jet sqrt(const Jet& a) { return pow(a, 0.5); }

}  // namespace qale
