#include "vortlab/rearrange.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "vortlab/error.hpp"
#include "vortlab/io.hpp"

namespace vortlab {

MonotoneProfile::MonotoneProfile(std::vector<double> s, std::vector<double> v, Direction direction)
    : direction_(direction) {
  if (s.empty() || s.size() != v.size()) {
    throw Error(ErrorCode::EmptyDistribution, "profile needs matching, nonempty columns");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i]) || !std::isfinite(v[i])) {
      throw Error(ErrorCode::NonFiniteValue, "profile point is not finite");
    }
    if (i > 0 && s[i] < s[i - 1]) throw Error(ErrorCode::BadParams, "profile abscissae must be sorted");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s_.empty() && s_.back() == s[i]) {
      v_.back() = v[i];
    } else {
      s_.push_back(s[i]);
      v_.push_back(v[i]);
    }
  }
  for (std::size_t i = 1; i < v_.size(); ++i) {
    const bool ok = direction == Direction::Increasing ? v_[i] >= v_[i - 1] : v_[i] <= v_[i - 1];
    if (!ok) throw Error(ErrorCode::BadParams, "profile values are not monotone");
  }
}

double MonotoneProfile::operator()(double x) const {
  if (x <= s_.front()) return v_.front();
  if (x >= s_.back()) return v_.back();
  const auto it = std::upper_bound(s_.begin(), s_.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - s_.begin());
  const double t = (x - s_[j - 1]) / (s_[j] - s_[j - 1]);
  return v_[j - 1] + t * (v_[j] - v_[j - 1]);
}

void MonotoneProfile::save_csv(const std::filesystem::path& path) const {
  vortlab::save_csv(path, s_, v_, "s,value");
}

DistributionFunction::DistributionFunction(const ScalarField& field)
    : sorted_(field.vector()), total_(field.grid().measure()), cell_(field.grid().cell_area()) {
  std::sort(sorted_.begin(), sorted_.end());
  std::size_t count = 0;
  for (std::size_t i = 0; i < sorted_.size(); ++i) {
    ++count;
    if (i + 1 == sorted_.size() || sorted_[i + 1] != sorted_[i]) {
      t_.push_back(sorted_[i]);
      m_.push_back(static_cast<double>(i + 1) * cell_);
      plateau_.push_back(count > 1);
      count = 0;
    }
  }
}

double DistributionFunction::operator()(double t) const {
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  if (it == t_.begin()) return 0.0;
  return m_[static_cast<std::size_t>(it - t_.begin()) - 1];
}

double DistributionFunction::linearized(double t) const {
  if (t < t_.front()) return 0.0;
  if (t >= t_.back()) return total_;
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - t_.begin());
  const double w = (t - t_[j - 1]) / (t_[j] - t_[j - 1]);
  return m_[j - 1] + w * (m_[j] - m_[j - 1]);
}

MonotoneProfile DistributionFunction::as_profile() const {
  return MonotoneProfile(t_, m_, Direction::Increasing);
}

void DistributionFunction::save_csv(const std::filesystem::path& path) const {
  vortlab::save_csv(path, t_, m_, "t,measure");
}

MonotoneProfile left_inverse(const DistributionFunction& d) {
  const auto& v = d.sorted_values();
  if (v.empty()) throw Error(ErrorCode::EmptyDistribution, "no values");
  std::vector<double> s(v.size() + 1), val(v.size() + 1);
  s[0] = 0.0;
  val[0] = v[0];
  for (std::size_t k = 0; k < v.size(); ++k) {
    s[k + 1] = static_cast<double>(k + 1) * d.cell_area();
    val[k + 1] = v[k];
  }
  return MonotoneProfile(std::move(s), std::move(val), Direction::Increasing);
}

std::vector<std::size_t> ranking(const ScalarField& psi) {
  std::vector<std::size_t> order(psi.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return psi[a] < psi[b] || (psi[a] == psi[b] && a < b);
  });
  return order;
}

ScalarField rearrange_along(const ScalarField& omega0, const ScalarField& psi, Direction direction) {
  require_same_grid(omega0, psi);
  std::vector<double> values = omega0.vector();
  std::sort(values.begin(), values.end());
  if (direction == Direction::Decreasing) std::reverse(values.begin(), values.end());
  const auto order = ranking(psi);
  std::vector<double> out(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) out[order[r]] = values[r];
  return ScalarField(omega0.grid_ptr(), std::move(out));
}

ScalarField symmetric_increasing_rearrangement(const ScalarField& u) {
  const Grid& g = u.grid();
  if (!g.domain().is_disk()) throw Error(ErrorCode::NotADisk, "domain is not a disk");
  if (u.min() < 0.0) throw Error(ErrorCode::NegativeField, "field takes negative values");
  const Point c = g.domain().center();
  std::vector<double> radius(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Point d = g.node(k) - c;
    radius[k] = dot(d, d);
  }
  return rearrange_along(u, ScalarField(u.grid_ptr(), std::move(radius)), Direction::Increasing);
}

namespace {

double pairwise_max(const std::vector<double>& s, const std::vector<double>& v, double beta) {
  double best = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const double ds = s[j] - s[i];
      if (ds <= 0.0) continue;
      best = std::max(best, std::abs(v[j] - v[i]) / std::pow(ds, beta));
    }
  }
  return best;
}

void check_holder_args(double beta, double a, double b) {
  if (!(beta > 0.0 && beta <= 1.0)) throw Error(ErrorCode::BadParams, "exponent must lie in (0, 1]");
  if (!(b > a)) throw Error(ErrorCode::EmptyInterval, "interval is empty");
}

}  // namespace

double holder_seminorm(const MonotoneProfile& p, double beta, double a, double b) {
  check_holder_args(beta, a, b);
  std::vector<double> s{a}, v{p(a)};
  for (double x : p.abscissae()) {
    if (x > a && x < b) {
      s.push_back(x);
      v.push_back(p(x));
    }
  }
  s.push_back(b);
  v.push_back(p(b));
  return pairwise_max(s, v, beta);
}

double holder_seminorm_sampled(const MonotoneProfile& p, double beta, double a, double b,
                               int samples) {
  check_holder_args(beta, a, b);
  if (samples < 2) throw Error(ErrorCode::BadParams, "need at least two samples");
  std::vector<double> s(static_cast<std::size_t>(samples)), v(s.size());
  for (int i = 0; i < samples; ++i) {
    s[i] = a + (b - a) * i / (samples - 1);
    v[i] = p(s[i]);
  }
  return pairwise_max(s, v, beta);
}

bool same_distribution(const ScalarField& a, const ScalarField& b) {
  if (!a.grid().same_as(b.grid())) return false;
  auto bits = [](const ScalarField& f) {
    std::vector<std::uint64_t> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = std::bit_cast<std::uint64_t>(f[k]);
    std::sort(out.begin(), out.end());
    return out;
  };
  return bits(a) == bits(b);
}

}  // namespace vortlab
