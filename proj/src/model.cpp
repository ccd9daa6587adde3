#include "giep/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "giep/error.hpp"

namespace giep {

Spectrum::Spectrum(std::vector<ConjugatePair> pairs, std::vector<double> reals)
    : pairs_(std::move(pairs)), reals_(std::move(reals)) {
  for (const auto& p : pairs_) {
    if (!std::isfinite(p.re) || !std::isfinite(p.im))
      throw Error(ErrorKind::InvalidArgument, "spectrum value is not finite");
    if (!(p.im > 0.0))
      throw Error(ErrorKind::InvalidArgument,
                  "conjugate pair needs a positive imaginary part, got " + std::to_string(p.im));
  }
  for (double g : reals_)
    if (!std::isfinite(g)) throw Error(ErrorKind::InvalidArgument, "spectrum value is not finite");
  if (n() == 0) throw Error(ErrorKind::InvalidArgument, "spectrum is empty");

  const ComplexVector v = values();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] == v[j])
        throw Error(ErrorKind::DegenerateSpectrum,
                    "repeated target eigenvalue (" + std::to_string(v[i].real()) + ", " +
                        std::to_string(v[i].imag()) + ")");
}

ComplexVector Spectrum::values() const {
  ComplexVector v;
  v.reserve(n());
  for (const auto& p : pairs_) {
    v.emplace_back(p.re, p.im);
    v.emplace_back(p.re, -p.im);
  }
  for (double g : reals_) v.emplace_back(g, 0.0);
  return v;
}

double Spectrum::max_abs() const noexcept {
  double r = 0.0;
  for (const auto& p : pairs_) r = std::max(r, std::hypot(p.re, p.im));
  for (double g : reals_) r = std::max(r, std::abs(g));
  return r;
}

DiscSystem disc_radius(const Spectrum& s) {
  const ComplexVector v = s.values();
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) gap = std::min(gap, std::abs(v[i] - v[j]));
  if (gap == 0.0) throw Error(ErrorKind::DegenerateSpectrum, "spectrum has repeated values");

  double radius = gap / 3.0;
  for (const auto& p : s.pairs()) radius = std::min(radius, p.im / 2.0);
  if (!std::isfinite(radius)) radius = 1.0;

  DiscSystem d{radius, {}, s.reals()};
  for (const auto& p : s.pairs()) d.plus_centers.emplace_back(p.re, p.im);
  return d;
}

// ---------------------------------------------------------------------------

Pattern::Pattern(std::size_t n, std::size_t k, std::vector<Slot> slots)
    : n_(n), k_(k), slots_(std::move(slots)) {
  if (2 * k_ > n_) throw Error(ErrorKind::DimensionMismatch, "pattern needs 2k <= n");
  std::vector<char> used(n_ * n_, 0);
  auto claim = [&](std::size_t i, std::size_t j) {
    if (used[i * n_ + j])
      throw Error(ErrorKind::InvalidArgument, "pattern position (" + std::to_string(i + 1) +
                                                  "," + std::to_string(j + 1) + ") used twice");
    used[i * n_ + j] = 1;
  };
  for (const Slot& s : slots_) {
    if (s.row >= n_ || s.col >= n_)
      throw Error(ErrorKind::InvalidArgument, "slot out of range");
    if (s.row == s.col) throw Error(ErrorKind::InvalidArgument, "slot on the diagonal");
    if (s.row / 2 == s.col / 2 && s.row < 2 * k_ && s.col < 2 * k_)
      throw Error(ErrorKind::InvalidArgument, "slot inside a matched block");
    claim(s.row, s.col);
    if (s.bidirected) claim(s.col, s.row);
  }
}

bool Pattern::all_bidirected() const noexcept {
  return std::all_of(slots_.begin(), slots_.end(), [](const Slot& s) { return s.bidirected; });
}

ParameterPoint seed_point(const Spectrum& s, std::size_t slot_count) {
  ParameterPoint t;
  for (const auto& p : s.pairs()) {
    t.x.push_back(p.re);
    t.y.push_back(p.im);
  }
  t.z = s.reals();
  t.u.assign(slot_count, 0.0);
  t.omega.assign(slot_count, 0.0);
  return t;
}

RealVector LabeledValue::flatten() const {
  RealVector out;
  out.reserve(lambda.size() + mu.size() + gamma.size());
  out.insert(out.end(), lambda.begin(), lambda.end());
  out.insert(out.end(), mu.begin(), mu.end());
  out.insert(out.end(), gamma.begin(), gamma.end());
  return out;
}

LabeledValue target_coordinates(const Spectrum& s) {
  LabeledValue v;
  for (const auto& p : s.pairs()) {
    v.lambda.push_back(p.re);
    v.mu.push_back(p.im);
  }
  v.gamma = s.reals();
  return v;
}

DenseMatrix build_seed(const Spectrum& s) {
  const std::size_t n = s.n();
  DenseMatrix a(n, n);
  for (std::size_t j = 0; j < s.k(); ++j) {
    const auto& p = s.pairs()[j];
    a(2 * j, 2 * j) = p.re;
    a(2 * j + 1, 2 * j + 1) = p.re;
    a(2 * j, 2 * j + 1) = p.im;
    a(2 * j + 1, 2 * j) = -p.im;
  }
  for (std::size_t j = 0; j < s.l(); ++j) a(2 * s.k() + j, 2 * s.k() + j) = s.reals()[j];
  return a;
}

DenseMatrix assemble(const Pattern& p, const ParameterPoint& theta) {
  if (theta.x.size() != p.k() || theta.y.size() != p.k() || theta.z.size() != p.l() ||
      theta.u.size() != p.m() || theta.omega.size() != p.m()) {
    throw Error(ErrorKind::DimensionMismatch, "parameter point does not match the pattern");
  }
  DenseMatrix a(p.n(), p.n());
  for (std::size_t j = 0; j < p.k(); ++j) {
    a(2 * j, 2 * j) = theta.x[j];
    a(2 * j + 1, 2 * j + 1) = theta.x[j];
    a(2 * j, 2 * j + 1) = theta.y[j];
    a(2 * j + 1, 2 * j) = -theta.y[j];
  }
  for (std::size_t j = 0; j < p.l(); ++j) a(2 * p.k() + j, 2 * p.k() + j) = theta.z[j];
  for (std::size_t r = 0; r < p.m(); ++r) {
    const Slot& s = p.slots()[r];
    a(s.row, s.col) = theta.u[r];
    if (s.bidirected) a(s.col, s.row) = theta.omega[r];
  }
  for (double v : a.entries())
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "parameter is not finite");
  return a;
}

// ---------------------------------------------------------------------------

DiscAssignment assign_to_discs(const ComplexVector& eigs, const DiscSystem& d) {
  const std::size_t k = d.plus_centers.size();
  const std::size_t l = d.real_centers.size();
  if (eigs.size() != 2 * k + l)
    throw Error(ErrorKind::DimensionMismatch, "eigenvalue count does not match disc system");

  // Centers: plus discs [0, k), minus discs [k, 2k), real discs [2k, 2k + l).
  ComplexVector centers;
  for (const Complex& c : d.plus_centers) centers.push_back(c);
  for (const Complex& c : d.plus_centers) centers.push_back(std::conj(c));
  for (double g : d.real_centers) centers.emplace_back(g, 0.0);

  std::vector<int> count(centers.size(), 0);
  DiscAssignment out{ComplexVector(k), std::vector<double>(l)};
  for (const Complex& e : eigs) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    double second = best_dist;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      const double dist = std::abs(e - centers[c]);
      if (dist < best_dist) {
        second = best_dist;
        best_dist = dist;
        best = c;
      } else if (dist < second) {
        second = dist;
      }
    }
    auto where = [&] {
      return "eigenvalue (" + std::to_string(e.real()) + ", " + std::to_string(e.imag()) + ")";
    };
    if (!(best_dist < d.radius))
      throw Error(ErrorKind::DiscViolation, where() + " lies in no disc");
    if (best_dist == second)
      throw Error(ErrorKind::DiscViolation, where() + " is equidistant from two centers");
    if (best >= 2 * k && e.imag() != 0.0)
      throw Error(ErrorKind::DiscViolation, where() + " is non-real inside a real interval");
    if (++count[best] > 1)
      throw Error(ErrorKind::DiscViolation, where() + " shares its disc with another eigenvalue");
    if (best < k) out.plus[best] = e;
    if (best >= 2 * k) out.reals[best - 2 * k] = e.real();
  }
  // Pigeonhole: n eigenvalues, n discs, none doubled, so every disc is hit.
  return out;
}

LabeledValue label_eigenvalues(const ComplexVector& eigs, const DiscSystem& d) {
  const DiscAssignment a = assign_to_discs(eigs, d);
  LabeledValue v;
  for (const Complex& z : a.plus) {
    v.lambda.push_back(z.real());
    v.mu.push_back(z.imag());
  }
  v.gamma = a.reals;
  return v;
}

double spectrum_error(const ComplexVector& eigs, const Spectrum& s) {
  ComplexVector pool = eigs;
  const ComplexVector targets = s.values();
  if (pool.size() != targets.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const Complex& t : targets) {
    auto it = std::min_element(pool.begin(), pool.end(), [&](const Complex& a, const Complex& b) {
      return std::abs(a - t) < std::abs(b - t);
    });
    worst = std::max(worst, std::abs(*it - t));
    pool.erase(it);
  }
  return worst;
}

}  // namespace giep
