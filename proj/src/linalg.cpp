#include "giep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "giep/error.hpp"

namespace giep {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::InvalidArgument, "matrix entry is not finite");
    }
  }
}

void require_square(const DenseMatrix& m, const char* what) {
  if (!m.square() || m.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": matrix must be square and non-empty");
  }
}

}  // namespace

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::BadFormat: return "BadFormat";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::MatchingTooSmall: return "MatchingTooSmall";
    case ErrorKind::ModeMismatch: return "ModeMismatch";
    case ErrorKind::RepeatedEigenvalues: return "RepeatedEigenvalues";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::DiscViolation: return "DiscViolation";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// DenseMatrix

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorKind::DimensionMismatch,
                "entry count does not match matrix shape");
  }
  require_finite(data_);
}

DenseMatrix::DenseMatrix(
    std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::frobenius_norm() const noexcept { return norm2(data_); }

double DenseMatrix::max_abs() const noexcept {
  double r = 0.0;
  for (double v : data_) r = std::max(r, std::abs(v));
  return r;
}

double DenseMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::DimensionMismatch, "matrix sum shape mismatch");
  DenseMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  return a + (-1.0) * b;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= s;
  return c;
}

RealVector operator*(const DenseMatrix& a, std::span<const double> x) {
  if (x.size() != a.cols())
    throw Error(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
  RealVector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    y[i] = std::inner_product(r.begin(), r.end(), x.begin(), 0.0);
  }
  return y;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double norm2(std::span<const double> v) noexcept {
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x / scale) * (x / scale);
  return scale * std::sqrt(s);
}

double norm2(std::span<const Complex> v) noexcept {
  double scale = 0.0;
  for (const Complex& x : v)
    scale = std::max({scale, std::abs(x.real()), std::abs(x.imag())});
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (const Complex& x : v) s += std::norm(x / scale);
  return scale * std::sqrt(s);
}

double norm_inf(std::span<const double> v) noexcept {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

// ---------------------------------------------------------------------------
// Eigenvalues: Hessenberg reduction + Francis double-shift QR

namespace {

/// In-place Householder reduction of a (row-major, n x n) to upper
/// Hessenberg form. Entries below the first subdiagonal are set to zero.
void reduce_to_hessenberg(std::vector<double>& a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  std::vector<double> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double scale = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) scale += std::abs(at(i, k));
    if (scale == 0.0) continue;

    double sigma = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = at(i, k) / scale;
      sigma += v[i] * v[i];
    }
    const double norm = std::sqrt(sigma);
    const double alpha = v[k + 1] > 0 ? -norm : norm;
    v[k + 1] -= alpha;
    double vv = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vv += v[i] * v[i];
    if (vv == 0.0) continue;
    const double beta = 2.0 / vv;

    // H <- (I - beta v v^T) H
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += v[i] * at(i, j);
      s *= beta;
      for (std::size_t i = k + 1; i < n; ++i) at(i, j) -= s * v[i];
    }
    // H <- H (I - beta v v^T)
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += at(i, j) * v[j];
      s *= beta;
      for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= s * v[j];
    }
    at(k + 1, k) = alpha * scale;
    for (std::size_t i = k + 2; i < n; ++i) at(i, k) = 0.0;
  }
}

double sign_of(double magnitude, double sign) {
  return sign >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

/// Francis double-shift QR on an upper Hessenberg matrix (row-major).
/// Eigenvalues only; the matrix is destroyed.
ComplexVector hessenberg_qr(std::vector<double>& a, std::size_t n_sz) {
  const int n = static_cast<int>(n_sz);
  auto at = [&](int i, int j) -> double& { return a[i * n + j]; };

  std::vector<double> wr(n, 0.0), wi(n, 0.0);
  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(at(i, j));

  const int budget = 30 * n;
  int total = 0;
  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      // Look for a single small subdiagonal element.
      for (l = nn; l >= 1; --l) {
        double s = std::abs(at(l - 1, l - 1)) + std::abs(at(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(at(l, l - 1)) <= kEps * s) {
          at(l, l - 1) = 0.0;
          break;
        }
      }
      double x = at(nn, nn);
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn] = 0.0;
        --nn;
      } else {
        double y = at(nn - 1, nn - 1);
        double w = at(nn, nn - 1) * at(nn - 1, nn);
        if (l == nn - 1) {
          const double p = 0.5 * (y - x);
          const double q = p * p + w;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0.0) wr[nn] = x - w / z;
            wi[nn - 1] = wi[nn] = 0.0;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
            wi[nn - 1] = z;
            wi[nn] = -z;
          }
          nn -= 2;
        } else {
          if (total >= budget) {
            throw Error(ErrorKind::NonConvergence,
                        "QR iteration exceeded " + std::to_string(budget) +
                            " sweeps");
          }
          if (its == 10 || its == 20) {
            // Exceptional shift.
            t += x;
            for (int i = 0; i <= nn; ++i) at(i, i) -= x;
            const double s = std::abs(at(nn, nn - 1)) + std::abs(at(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          ++total;

          double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
          int m = nn - 2;
          for (; m >= l; --m) {
            z = at(m, m);
            r = x - z;
            double s = y - z;
            p = (r * s - w) / at(m + 1, m) + at(m, m + 1);
            q = at(m + 1, m + 1) - z - r - s;
            r = at(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(at(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v =
                std::abs(p) * (std::abs(at(m - 1, m - 1)) + std::abs(z) +
                               std::abs(at(m + 1, m + 1)));
            if (u <= kEps * v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            at(i, i - 2) = 0.0;
            if (i != m + 2) at(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = at(k, k - 1);
              q = at(k + 1, k - 1);
              r = (k != nn - 1) ? at(k + 2, k - 1) : 0.0;
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) at(k, k - 1) = -at(k, k - 1);
            } else {
              at(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              double pp = at(k, j) + q * at(k + 1, j);
              if (k != nn - 1) {
                pp += r * at(k + 2, j);
                at(k + 2, j) -= pp * z;
              }
              at(k + 1, j) -= pp * y;
              at(k, j) -= pp * x;
            }
            const int mmin = std::min(nn, k + 3);
            for (int i = l; i <= mmin; ++i) {
              double pp = x * at(i, k) + y * at(i, k + 1);
              if (k != nn - 1) {
                pp += z * at(i, k + 2);
                at(i, k + 2) -= pp * r;
              }
              at(i, k + 1) -= pp * q;
              at(i, k) -= pp;
            }
          }
        }
      }
    } while (nn >= 0 && l < nn - 1);
  }

  ComplexVector out(n);
  for (int i = 0; i < n; ++i) out[i] = Complex(wr[i], wi[i]);
  return out;
}

}  // namespace

ComplexVector eig_all(const DenseMatrix& m) {
  require_square(m, "eig_all");
  const std::size_t n = m.rows();
  const double amax = m.max_abs();
  if (amax == 0.0) return ComplexVector(n, Complex(0.0, 0.0));

  // Power-of-two scaling keeps the rescaled eigenvalues exact images.
  int exponent = 0;
  std::frexp(amax, &exponent);
  std::vector<double> a(m.entries().begin(), m.entries().end());
  for (double& v : a) v = std::ldexp(v, -exponent);

  reduce_to_hessenberg(a, n);
  ComplexVector values = hessenberg_qr(a, n);
  for (Complex& z : values)
    z = Complex(std::ldexp(z.real(), exponent), std::ldexp(z.imag(), exponent));
  return values;
}

// ---------------------------------------------------------------------------
// Eigenvectors by two-sided inverse iteration

namespace {

/// Complex LU with partial pivoting. Tiny pivots are replaced by `floor` so
/// that shifting by an exact eigenvalue still yields a usable solve.
class ComplexLu {
 public:
  ComplexLu(const DenseMatrix& m, Complex shift, double floor)
      : n_(m.rows()), lu_(n_ * n_), perm_(n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) lu_[i * n_ + j] = m(i, j);
      lu_[i * n_ + i] -= shift;
    }
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    for (std::size_t k = 0; k < n_; ++k) {
      std::size_t piv = k;
      double best = std::abs(at(k, k));
      for (std::size_t i = k + 1; i < n_; ++i) {
        if (std::abs(at(i, k)) > best) {
          best = std::abs(at(i, k));
          piv = i;
        }
      }
      if (piv != k) {
        for (std::size_t j = 0; j < n_; ++j) std::swap(at(k, j), at(piv, j));
        std::swap(perm_[k], perm_[piv]);
      }
      if (std::abs(at(k, k)) < floor) at(k, k) = Complex(floor, 0.0);
      for (std::size_t i = k + 1; i < n_; ++i) {
        const Complex f = at(i, k) / at(k, k);
        at(i, k) = f;
        if (f == Complex(0.0, 0.0)) continue;
        for (std::size_t j = k + 1; j < n_; ++j) at(i, j) -= f * at(k, j);
      }
    }
  }

  /// Solves (m - shift I) x = b.
  ComplexVector solve(const ComplexVector& b) const {
    ComplexVector x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < i; ++j) x[i] -= at(i, j) * x[j];
    for (std::size_t i = n_; i-- > 0;) {
      for (std::size_t j = i + 1; j < n_; ++j) x[i] -= at(i, j) * x[j];
      x[i] /= at(i, i);
    }
    return x;
  }

  /// Solves (m - shift I)^T x = b.
  ComplexVector solve_transposed(const ComplexVector& b) const {
    // P A = L U  =>  A^T = U^T L^T P.
    ComplexVector y = b;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < i; ++j) y[i] -= at(j, i) * y[j];
      y[i] /= at(i, i);
    }
    for (std::size_t i = n_; i-- > 0;)
      for (std::size_t j = i + 1; j < n_; ++j) y[i] -= at(j, i) * y[j];
    ComplexVector x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[perm_[i]] = y[i];
    return x;
  }

 private:
  Complex& at(std::size_t i, std::size_t j) { return lu_[i * n_ + j]; }
  const Complex& at(std::size_t i, std::size_t j) const { return lu_[i * n_ + j]; }

  std::size_t n_;
  std::vector<Complex> lu_;
  std::vector<std::size_t> perm_;
};

ComplexVector seed_vector(std::size_t n) {
  // Golden-ratio low-discrepancy entries: deterministic and generic.
  ComplexVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double frac = std::fmod(0.6180339887498949 * double(i + 1), 1.0);
    v[i] = Complex(0.5 + frac, 0.0);
  }
  return v;
}

void normalize(ComplexVector& v) {
  const double nrm = norm2(v);
  if (nrm == 0.0 || !std::isfinite(nrm)) {
    throw Error(ErrorKind::NonConvergence, "inverse iteration produced a null vector");
  }
  for (Complex& c : v) c /= nrm;
}

void fix_phase(ComplexVector& v, bool real) {
  const double threshold = 0.5 / std::sqrt(double(v.size()));
  for (const Complex& c : v) {
    const double mag = std::abs(c);
    if (mag > threshold) {
      const Complex rot = std::conj(c) / mag;
      for (Complex& e : v) e *= rot;
      break;
    }
  }
  if (real)
    for (Complex& e : v) e = Complex(e.real(), 0.0);
}

ComplexVector mat_vec(const DenseMatrix& m, const ComplexVector& v) {
  ComplexVector out(m.rows(), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

ComplexVector vec_mat(const ComplexVector& w, const DenseMatrix& m) {
  ComplexVector out(m.cols(), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += w[i] * m(i, j);
  return out;
}

Complex dot_t(const ComplexVector& a, const ComplexVector& b) {
  Complex s(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double residual(const ComplexVector& mv, const ComplexVector& v, Complex lambda) {
  ComplexVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = mv[i] - lambda * v[i];
  return norm2(r);
}

}  // namespace

EigenTriple eigen_triple(const DenseMatrix& m, Complex approx,
                         const EigenTolerances& tol) {
  require_square(m, "eigen_triple");
  const std::size_t n = m.rows();
  const double mnorm = m.frobenius_norm();
  const double tol_res = tol.residual_rel * std::max(mnorm, 1e-300);
  const bool real = approx.imag() == 0.0;

  if (n == 1) {
    EigenTriple t{Complex(m(0, 0), 0.0), {Complex(1.0, 0.0)}, {Complex(1.0, 0.0)},
                  Complex(1.0, 0.0)};
    return t;
  }

  const double floor = kEps * std::max(mnorm, 1e-300);
  ComplexVector v = seed_vector(n);
  ComplexVector w = seed_vector(n);
  Complex shift = approx;
  Complex lambda = approx;
  double res_right = 0.0, res_left = 0.0;

  for (int it = 0; it < tol.max_inverse_iterations; ++it) {
    const ComplexLu lu(m, shift, floor);
    v = lu.solve(v);
    w = lu.solve_transposed(w);
    normalize(v);
    normalize(w);

    const ComplexVector mv = mat_vec(m, v);
    const ComplexVector wm = vec_mat(w, m);
    const Complex wv = dot_t(w, v);
    if (std::abs(wv) < tol.orthogonality) {
      // Could be a transient of the seed; only fatal once converged.
      lambda = shift;
    } else {
      lambda = dot_t(w, mv) / wv;
    }
    if (real) lambda = Complex(lambda.real(), 0.0);
    res_right = residual(mv, v, lambda);
    res_left = residual(wm, w, lambda);
    if (res_right <= tol_res && res_left <= tol_res) {
      fix_phase(v, real);
      fix_phase(w, real);
      const Complex wv_final = dot_t(w, v);
      if (std::abs(wv_final) < tol.orthogonality) {
        throw Error(ErrorKind::IllConditioned,
                    "left/right eigenvectors nearly orthogonal (|w^T v| = " +
                        std::to_string(std::abs(wv_final)) + ")");
      }
      return EigenTriple{lambda, std::move(v), std::move(w), wv_final};
    }
    shift = lambda;
  }
  throw Error(ErrorKind::NonConvergence,
              "inverse iteration stalled: residuals " + std::to_string(res_right) +
                  ", " + std::to_string(res_left));
}

// ---------------------------------------------------------------------------
// Real LU

LuFactorization::LuFactorization(const DenseMatrix& a, double pivot_rel)
    : n_(a.rows()), lu_(a.entries().begin(), a.entries().end()), perm_(n_) {
  require_square(a, "LU factorization");
  const double threshold = pivot_rel * a.max_abs();
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  auto at = [&](std::size_t i, std::size_t j) -> double& { return lu_[i * n_ + j]; };
  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n_; ++i)
      if (std::abs(at(i, k)) > std::abs(at(piv, k))) piv = i;
    if (piv != k) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(at(k, j), at(piv, j));
      std::swap(perm_[k], perm_[piv]);
      sign_ = -sign_;
    }
    const double pivot = at(k, k);
    if (pivot == 0.0 || std::abs(pivot) < threshold) {
      throw Error(ErrorKind::SingularSystem,
                  "pivot " + std::to_string(std::abs(pivot)) + " at column " +
                      std::to_string(k) + " below threshold");
    }
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double f = at(i, k) / pivot;
      at(i, k) = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n_; ++j) at(i, j) -= f * at(k, j);
    }
  }
}

RealVector LuFactorization::solve(std::span<const double> rhs) const {
  if (rhs.size() != n_)
    throw Error(ErrorKind::DimensionMismatch, "right-hand side length mismatch");
  RealVector x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = rhs[perm_[i]];
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_[i * n_ + j] * x[j];
  for (std::size_t i = n_; i-- > 0;) {
    for (std::size_t j = i + 1; j < n_; ++j) x[i] -= lu_[i * n_ + j] * x[j];
    x[i] /= lu_[i * n_ + i];
  }
  return x;
}

double LuFactorization::determinant() const noexcept {
  double d = sign_;
  for (std::size_t i = 0; i < n_; ++i) d *= lu_[i * n_ + i];
  return d;
}

RealVector solve_linear(const DenseMatrix& a, std::span<const double> rhs) {
  const LuFactorization lu(a);
  RealVector s = lu.solve(rhs);
  RealVector r = a * s;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = rhs[i] - r[i];
  if (norm2(r) > 1e-12 * norm2(rhs)) {
    const RealVector ds = lu.solve(r);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += ds[i];
  }
  return s;
}

double determinant(const DenseMatrix& a) {
  try {
    return LuFactorization(a, 0.0).determinant();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SingularSystem) return 0.0;
    throw;
  }
}

}  // namespace giep
