#include "effham/potential.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "effham/errors.hpp"

namespace effham {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_unit(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

Wavevector negate(const Wavevector& k) {
  Wavevector m(k.size());
  std::transform(k.begin(), k.end(), m.begin(), [](int c) { return -c; });
  return m;
}

bool is_zero_vector(const Wavevector& k) {
  return std::all_of(k.begin(), k.end(), [](int c) { return c == 0; });
}

}  // namespace

// ---------------------------------------------------------------------------
// PiecewiseLinearPotential

PiecewiseLinearPotential::PiecewiseLinearPotential(std::vector<double> breakpoints,
                                                   std::vector<double> values)
    : x_(std::move(breakpoints)), v_(std::move(values)) {
  if (x_.size() < 2 || x_.size() != v_.size())
    throw precondition_error("piecewise potential needs >= 2 breakpoints with matching values");
  if (x_.front() != 0.0 || x_.back() != 1.0)
    throw precondition_error("piecewise potential breakpoints must start at 0 and end at 1");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1]))
      throw precondition_error("piecewise potential breakpoints must be strictly increasing");
  if (std::abs(v_.front() - v_.back()) > 1e-12)
    throw precondition_error("piecewise potential must close periodically (v_0 == v_M)");
  v_.back() = v_.front();
}

PiecewiseLinearPotential PiecewiseLinearPotential::from_points(
    const std::vector<std::pair<double, double>>& points) {
  std::vector<double> x, v;
  x.reserve(points.size());
  v.reserve(points.size());
  for (auto [px, pv] : points) {
    x.push_back(px);
    v.push_back(pv);
  }
  return {std::move(x), std::move(v)};
}

PiecewiseLinearPotential PiecewiseLinearPotential::zero() { return {{0.0, 1.0}, {0.0, 0.0}}; }

double PiecewiseLinearPotential::operator()(double x) const {
  const double y = wrap_unit(x);
  auto it = std::upper_bound(x_.begin(), x_.end(), y);
  std::size_t j = static_cast<std::size_t>(it - x_.begin());
  if (j == 0) j = 1;
  if (j >= x_.size()) j = x_.size() - 1;
  const double x0 = x_[j - 1], x1 = x_[j];
  const double t = (y - x0) / (x1 - x0);
  return v_[j - 1] + t * (v_[j] - v_[j - 1]);
}

double PiecewiseLinearPotential::min() const { return *std::min_element(v_.begin(), v_.end()); }
double PiecewiseLinearPotential::max() const { return *std::max_element(v_.begin(), v_.end()); }

double PiecewiseLinearPotential::mean() const {
  double s = 0.0;
  for (std::size_t i = 1; i < x_.size(); ++i) s += 0.5 * (v_[i] + v_[i - 1]) * (x_[i] - x_[i - 1]);
  return s;
}

// ---------------------------------------------------------------------------
// FourierPotential

FourierPotential::FourierPotential(int dim) : dim_(dim) {
  if (dim < 1) throw precondition_error("Fourier potential dimension must be >= 1");
}

FourierPotential::FourierPotential(int dim, Spectrum coefficients)
    : dim_(dim), c_(std::move(coefficients)) {
  if (dim < 1) throw precondition_error("Fourier potential dimension must be >= 1");
  double scale = 0.0;
  for (auto& [k, a] : c_) {
    if (static_cast<int>(k.size()) != dim_)
      throw precondition_error("wavevector length does not match the dimension");
    scale = std::max(scale, std::abs(a));
  }
  const double tol = 1e-12 * std::max(1.0, scale);
  for (auto& [k, a] : c_) {
    if (is_zero_vector(k)) {
      if (std::abs(a.imag()) > tol) throw precondition_error("mean coefficient must be real");
      continue;
    }
    if (std::abs(std::conj(a) - coefficient(negate(k))) > tol)
      throw precondition_error("spectrum is not Hermitian; V would be complex-valued");
  }
}

FourierPotential FourierPotential::cosine(Wavevector k, double amplitude) {
  const int n = static_cast<int>(k.size());
  Spectrum c;
  if (is_zero_vector(k)) {
    c[k] = amplitude;
  } else {
    c[negate(k)] = 0.5 * amplitude;
    c[std::move(k)] = 0.5 * amplitude;
  }
  return {n, std::move(c)};
}

FourierPotential FourierPotential::sine(Wavevector k, double amplitude) {
  const int n = static_cast<int>(k.size());
  Spectrum c;
  if (!is_zero_vector(k)) {
    // sin(t) = (e^{it} - e^{-it}) / (2i)
    c[negate(k)] = std::complex<double>(0.0, 0.5 * amplitude);
    c[std::move(k)] = std::complex<double>(0.0, -0.5 * amplitude);
  }
  return {n, std::move(c)};
}

std::complex<double> FourierPotential::coefficient(const Wavevector& k) const {
  auto it = c_.find(k);
  return it == c_.end() ? std::complex<double>{} : it->second;
}

double FourierPotential::mean() const { return coefficient(Wavevector(dim_, 0)).real(); }

int FourierPotential::max_order() const {
  int m = 0;
  for (auto& [k, a] : c_) {
    if (a == std::complex<double>{}) continue;
    for (int c : k) m = std::max(m, std::abs(c));
  }
  return m;
}

double FourierPotential::operator()(std::span<const double> x) const {
  assert(static_cast<int>(x.size()) == dim_);
  std::complex<double> s{};
  for (auto& [k, a] : c_) {
    double phase = 0.0;
    for (int i = 0; i < dim_; ++i) phase += k[i] * x[i];
    s += a * std::polar(1.0, kTwoPi * phase);
  }
  return s.real();
}

double FourierPotential::operator()(double x) const {
  if (dim_ != 1) throw precondition_error("scalar evaluation needs a 1-dimensional potential");
  return (*this)(std::span<const double>(&x, 1));
}

FourierPotential FourierPotential::operator+(const FourierPotential& other) const {
  if (other.dim_ != dim_) throw precondition_error("dimension mismatch in potential sum");
  Spectrum c = c_;
  for (auto& [k, a] : other.c_) c[k] += a;
  return {dim_, std::move(c)};
}

FourierPotential FourierPotential::operator*(double factor) const {
  Spectrum c = c_;
  for (auto& [k, a] : c) a *= factor;
  return {dim_, std::move(c)};
}

// ---------------------------------------------------------------------------
// Potential

Potential::Potential(PiecewiseLinearPotential v) : rep_(std::move(v)) {
  const auto& pl = std::get<PiecewiseLinearPotential>(rep_);
  min_ = pl.min();
  max_ = pl.max();
  mean_ = pl.mean();
  auto xs = pl.breakpoints();
  auto vs = pl.values();
  const std::size_t M = pl.segments();
  for (std::size_t i = 0; i < M; ++i) {
    const double prev = vs[i == 0 ? M - 1 : i - 1];
    const double next = vs[i + 1];
    if (vs[i] >= prev && vs[i] >= next && (vs[i] > prev || vs[i] > next)) maxima_.push_back(xs[i]);
  }
}

Potential::Potential(FourierPotential v) : rep_(std::move(v)) {
  const auto& f = std::get<FourierPotential>(rep_);
  if (f.dim() != 1) throw precondition_error("1-dimensional potential required");
  mean_ = f.mean();
  const int n = std::max(2048, 64 * f.max_order());
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) s[i] = f(static_cast<double>(i) / n);
  auto refine = [&](int i, bool maximize) {
    const double h = 1.0 / n;
    const double xi = static_cast<double>(i) / n;
    auto obj = [&](double x) { return maximize ? -f(x) : f(x); };
    auto r = boost::math::tools::brent_find_minima(obj, xi - h, xi + h, 52);
    return std::pair{wrap_unit(r.first), maximize ? -r.second : r.second};
  };
  if (f.max_order() == 0) {
    min_ = max_ = mean_;
    return;
  }
  const double smax = *std::max_element(s.begin(), s.end());
  const double smin = *std::min_element(s.begin(), s.end());
  min_ = smin;
  max_ = smax;
  const double range = smax - smin;
  for (int i = 0; i < n; ++i) {
    const double a = s[(i + n - 1) % n], b = s[(i + 1) % n];
    if (s[i] >= a && s[i] > b) {
      auto [xm, vm] = refine(i, true);
      maxima_.push_back(xm);
      max_ = std::max(max_, vm);
    }
    if (s[i] <= a && s[i] < b && s[i] < smin + 0.5 * range) min_ = std::min(min_, refine(i, false).second);
  }
  std::sort(maxima_.begin(), maxima_.end());
}

double Potential::operator()(double x) const {
  return std::visit([x](const auto& v) { return v(x); }, rep_);
}

const PiecewiseLinearPotential* Potential::piecewise() const {
  return std::get_if<PiecewiseLinearPotential>(&rep_);
}

const FourierPotential* Potential::fourier() const { return std::get_if<FourierPotential>(&rep_); }

// ---------------------------------------------------------------------------
// DistributionFunction

DistributionFunction::DistributionFunction(std::vector<CdfKnot> knots) : knots_(std::move(knots)) {
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (knots_[i].t < knots_[i - 1].t || knots_[i].F < knots_[i - 1].F - 1e-15)
      throw precondition_error("distribution knots must be nondecreasing in t and F");
  }
}

double DistributionFunction::operator()(double t) const {
  if (knots_.empty() || t < knots_.front().t) return 0.0;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                             [](double a, const CdfKnot& k) { return a < k.t; });
  if (it == knots_.end()) return knots_.back().F;
  const CdfKnot& hi = *it;
  const CdfKnot& lo = *(it - 1);
  return lo.F + (hi.F - lo.F) * (t - lo.t) / (hi.t - lo.t);
}

double DistributionFunction::left_limit(double t) const {
  auto it = std::lower_bound(knots_.begin(), knots_.end(), t,
                             [](const CdfKnot& k, double a) { return k.t < a; });
  if (it == knots_.begin()) return 0.0;
  if (it == knots_.end()) return knots_.back().F;
  const CdfKnot& hi = *it;
  const CdfKnot& lo = *(it - 1);
  if (hi.t == t) return hi.F;
  return lo.F + (hi.F - lo.F) * (t - lo.t) / (hi.t - lo.t);
}

// ---------------------------------------------------------------------------
// operations

double eval_periodic(const Potential& v, double x) { return v(x); }

PiecewiseLinearPotential make_sawtooth(double s) {
  if (!(s > 0.0 && s < 1.0)) throw domain_error("sawtooth parameter s must lie in (0,1)");
  return {{0.0, s, 1.0}, {0.0, -1.0, 0.0}};
}

PiecewiseLinearPotential make_multiwell(const std::vector<double>& a, const std::vector<double>& c) {
  if (a.size() < 2 || c.size() + 1 != a.size())
    throw shape_error("multiwell needs m >= 2 zeros a_i and m-1 minima c_i");
  if (a.front() != 0.0 || a.back() != 1.0) throw shape_error("multiwell zeros must start at 0 and end at 1");
  std::vector<double> x, v;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (!(a[i] < c[i] && c[i] < a[i + 1])) throw shape_error("multiwell requires a_i < c_i < a_{i+1}");
    x.insert(x.end(), {a[i], c[i]});
    v.insert(v.end(), {0.0, -1.0});
  }
  x.push_back(1.0);
  v.push_back(0.0);
  return {std::move(x), std::move(v)};
}

PiecewiseLinearPotential make_vhat2() {
  return {{0.0, 1.0 / 6.0, 1.0 / 3.0, 11.0 / 30.0, 2.0 / 3.0, 29.0 / 30.0, 1.0},
          {0.0, -0.4, 0.0, -0.4, -1.0, -0.4, 0.0}};
}

namespace {

enum class SegmentClass { any, decreasing, increasing };

// |{x in segments of the given class : V(x) < t}| (strict) or <= t.
double sublevel_measure(const PiecewiseLinearPotential& v, double t, bool strict, SegmentClass cls) {
  auto xs = v.breakpoints();
  auto vs = v.values();
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double len = xs[i + 1] - xs[i];
    const double va = vs[i], vb = vs[i + 1];
    if (cls == SegmentClass::decreasing && !(vb < va)) continue;
    if (cls == SegmentClass::increasing && !(vb > va)) continue;
    if (va == vb) {
      if (strict ? va < t : va <= t) m += len;
      continue;
    }
    const double lo = std::min(va, vb), hi = std::max(va, vb);
    m += len * std::clamp((t - lo) / (hi - lo), 0.0, 1.0);
  }
  return m;
}

DistributionFunction exact_cdf(const PiecewiseLinearPotential& v, SegmentClass cls) {
  std::vector<double> levels(v.values().begin(), v.values().end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<CdfKnot> knots;
  for (double u : levels) {
    const double left = sublevel_measure(v, u, true, cls);
    const double right = sublevel_measure(v, u, false, cls);
    if (right > left) knots.push_back({u, left});
    knots.push_back({u, right});
  }
  return DistributionFunction(std::move(knots));
}

void require_zero_minus_one_oscillation(const PiecewiseLinearPotential& v) {
  if (std::abs(v.max()) > 1e-12 || std::abs(v.min() + 1.0) > 1e-12)
    throw shape_error("potential must oscillate between 0 and -1");
  auto vs = v.values();
  for (std::size_t i = 0; i + 1 < vs.size(); ++i)
    if (vs[i] == vs[i + 1]) throw shape_error("flat segment: monotone pieces must be strictly monotone");
}

}  // namespace

DistributionFunction cdf(const PiecewiseLinearPotential& v) { return exact_cdf(v, SegmentClass::any); }

DistributionFunction cdf(const Potential& v, std::size_t resolution) {
  if (resolution < 2) throw precondition_error("cdf resolution must be >= 2");
  if (const auto* pl = v.piecewise()) return cdf(*pl);
  const auto& f = *v.fourier();
  std::vector<double> s(resolution);
  for (std::size_t i = 0; i < resolution; ++i) s[i] = f((i + 0.5) / static_cast<double>(resolution));
  std::sort(s.begin(), s.end());
  std::vector<CdfKnot> knots;
  knots.reserve(2 * resolution);
  const double w = 1.0 / static_cast<double>(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    if (i > 0 && s[i] == s[i - 1]) {
      knots.back().F = (i + 1) * w;
      continue;
    }
    knots.push_back({s[i], i * w});
    knots.push_back({s[i], (i + 1) * w});
  }
  return DistributionFunction(std::move(knots));
}

double cdf_distance(const DistributionFunction& f1, const DistributionFunction& f2) {
  double d = 0.0;
  auto scan = [&](const DistributionFunction& f) {
    for (const auto& k : f.knots()) {
      d = std::max(d, std::abs(f1(k.t) - f2(k.t)));
      d = std::max(d, std::abs(f1.left_limit(k.t) - f2.left_limit(k.t)));
    }
  };
  scan(f1);
  scan(f2);
  return d;
}

MonotonePieces monotone_piece_cdfs(const PiecewiseLinearPotential& v) {
  require_zero_minus_one_oscillation(v);
  return {exact_cdf(v, SegmentClass::decreasing), exact_cdf(v, SegmentClass::increasing)};
}

std::pair<double, double> balance_totals(const PiecewiseLinearPotential& v) {
  require_zero_minus_one_oscillation(v);
  auto xs = v.breakpoints();
  auto vs = v.values();
  double dec = 0.0, inc = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) (vs[i + 1] < vs[i] ? dec : inc) += xs[i + 1] - xs[i];
  return {dec, inc};
}

FourierPotential fourier_coefficients(const PiecewiseLinearPotential& v, int K) {
  if (K < 1) throw precondition_error("Fourier truncation K must be >= 1");
  // Integrating by parts twice, periodicity and continuity leave only the slope jumps:
  // lambda_k = -(1/omega^2) sum_j m_j (e^{-i omega a_j} - e^{-i omega b_j}), omega = 2 pi k.
  auto xs = v.breakpoints();
  auto vs = v.values();
  FourierPotential::Spectrum c;
  c[{0}] = v.mean();
  for (int k = 1; k <= K; ++k) {
    const double omega = kTwoPi * k;
    std::complex<double> acc{};
    for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
      const double slope = (vs[j + 1] - vs[j]) / (xs[j + 1] - xs[j]);
      acc += slope * (std::polar(1.0, -omega * xs[j]) - std::polar(1.0, -omega * xs[j + 1]));
    }
    const std::complex<double> lam = -acc / (omega * omega);
    c[{k}] = lam;
    c[{-k}] = std::conj(lam);
  }
  return {1, std::move(c)};
}

// ---------------------------------------------------------------------------
// transforms

PiecewiseLinearPotential translate(const PiecewiseLinearPotential& v, double shift) {
  std::set<double> pts{0.0, 1.0};
  for (double x : v.breakpoints()) pts.insert(wrap_unit(x - shift));
  std::vector<double> xs(pts.begin(), pts.end()), vs;
  // drop near-duplicates produced by rounding in the wrap
  std::vector<double> clean;
  for (double x : xs)
    if (clean.empty() || x - clean.back() > 1e-14) clean.push_back(x);
  clean.back() = 1.0;
  for (double x : clean) vs.push_back(v(x + shift));
  vs.back() = vs.front();
  return {std::move(clean), std::move(vs)};
}

PiecewiseLinearPotential reflect(const PiecewiseLinearPotential& v) {
  auto xs = v.breakpoints();
  auto vs = v.values();
  std::vector<double> x, y;
  for (std::size_t i = xs.size(); i-- > 0;) {
    x.push_back(1.0 - xs[i]);
    y.push_back(vs[i]);
  }
  x.front() = 0.0;
  x.back() = 1.0;
  return {std::move(x), std::move(y)};
}

PiecewiseLinearPotential compress(const PiecewiseLinearPotential& v, int m) {
  if (m < 1) throw precondition_error("compression factor must be >= 1");
  auto xs = v.breakpoints();
  auto vs = v.values();
  std::vector<double> x, y;
  for (int j = 0; j < m; ++j)
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      x.push_back((j + xs[i]) / m);
      y.push_back(vs[i]);
    }
  x.push_back(1.0);
  y.push_back(vs.back());
  return {std::move(x), std::move(y)};
}

Potential translate(const Potential& v, double shift) {
  if (const auto* pl = v.piecewise()) return translate(*pl, shift);
  FourierPotential::Spectrum c;
  for (auto& [k, a] : v.fourier()->coefficients()) c[k] = a * std::polar(1.0, kTwoPi * k[0] * shift);
  return FourierPotential(1, std::move(c));
}

Potential reflect(const Potential& v) {
  if (const auto* pl = v.piecewise()) return reflect(*pl);
  FourierPotential::Spectrum c;
  for (auto& [k, a] : v.fourier()->coefficients()) c[k] = std::conj(a);
  return FourierPotential(1, std::move(c));
}

Potential compress(const Potential& v, int m) {
  if (const auto* pl = v.piecewise()) return compress(*pl, m);
  if (m < 1) throw precondition_error("compression factor must be >= 1");
  FourierPotential::Spectrum c;
  for (auto& [k, a] : v.fourier()->coefficients()) c[{k[0] * m}] = a;
  return FourierPotential(1, std::move(c));
}

Potential add_constant(const Potential& v, double shift) {
  if (const auto* pl = v.piecewise()) {
    std::vector<double> vs(pl->values().begin(), pl->values().end());
    for (double& y : vs) y += shift;
    return PiecewiseLinearPotential({pl->breakpoints().begin(), pl->breakpoints().end()}, std::move(vs));
  }
  FourierPotential::Spectrum c = v.fourier()->coefficients();
  c[{0}] += shift;
  return FourierPotential(1, std::move(c));
}

Potential scale(const Potential& v, double factor) {
  if (const auto* pl = v.piecewise()) {
    std::vector<double> vs(pl->values().begin(), pl->values().end());
    for (double& y : vs) y *= factor;
    return PiecewiseLinearPotential({pl->breakpoints().begin(), pl->breakpoints().end()}, std::move(vs));
  }
  return (*v.fourier()) * factor;
}

}  // namespace effham
