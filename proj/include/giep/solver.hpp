#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "giep/linalg.hpp"
#include "giep/model.hpp"

namespace giep {

/// How slot values are tied together while ramping.
///  - Generic: u and omega ramp independently.
///  - Symmetric: omega = u; with no conjugate pairs the result is symmetric.
///  - Skew: omega = -u; the off-diagonal part is skew-symmetric.
enum class Mode { Generic, Symmetric, Skew };

std::string_view to_string(Mode mode) noexcept;
/// Accepts "generic", "symmetric", "skew"; throws InvalidArgument otherwise.
Mode parse_mode(std::string_view text);

/// One coordinate direction of the parameterised family and its
/// perturbation matrix B (dM/dparameter).
struct BasisDirection {
  enum class Kind { X, Y, Z, U, Omega };
  Kind kind;
  std::size_t index;

  DenseMatrix matrix(const Pattern& p) const;
  /// w^T B v without forming B.
  Complex bilinear(std::span<const Complex> w, std::span<const Complex> v,
                   const Pattern& p) const;
};

/// First-order eigenvalue sensitivity w^T B v / w^T v. Re is the rate of the
/// real part, Im the rate of the imaginary part. Throws IllConditioned when
/// |w^T v| < tol_ortho.
Complex eigen_derivative(const EigenTriple& triple, const DenseMatrix& b,
                         double tol_ortho = 1e-8);
Complex eigen_derivative(const EigenTriple& triple, const BasisDirection& dir,
                         const Pattern& p, double tol_ortho = 1e-8);

/// Eigen-triples for every labeled eigenvalue of m: plus discs first, then
/// real intervals, each seeded with the eigenvalue found in that disc.
std::vector<EigenTriple> tracked_triples(const DenseMatrix& m, const DiscAssignment& a,
                                         const EigenTolerances& tol = {});

/// Square Jacobian of the labeled coordinates with respect to (x, y, z).
/// Rows: lambda_1..k, mu_1..k, gamma_1..l. Columns: X(1..k), Y(1..k), Z(1..l).
DenseMatrix jacobian_xyz(const Pattern& p, std::span<const EigenTriple> triples,
                         double tol_ortho = 1e-8);

struct Evaluation {
  DenseMatrix matrix;
  ComplexVector eigenvalues;
  DiscAssignment assignment;
  LabeledValue value;
};

/// Assembles M(theta), computes its spectrum and labels it against d.
Evaluation evaluate(const Pattern& p, const ParameterPoint& theta, const DiscSystem& d);
LabeledValue evaluate_f(const Pattern& p, const ParameterPoint& theta, const DiscSystem& d);

struct NewtonResult {
  ParameterPoint theta;
  int iterations = 0;
  double residual = 0.0;  // max-norm of f(theta) - target
  Evaluation evaluation;  // at the returned point
};

/// Corrects (x, y, z) with u and omega held fixed until
/// ||f(theta) - target||_inf <= tol. Throws NonConvergence after max_iter
/// linear solves, SingularSystem, or DiscViolation when an iterate leaves
/// the discs.
NewtonResult newton_correct(const Pattern& p, const DiscSystem& d, ParameterPoint theta,
                            const LabeledValue& target, int max_iter, double tol);

struct SolverConfig {
  double fill_scale = 0.1;      // default |u*|, |omega*| as a multiple of the disc radius
  double tol_final_rel = 1e-8;  // times (1 + max|target|)
  double tol_newton_rel = 1e-11;
  int max_newton_iterations = 25;
  int max_steps = 100000;
  double step_min = 1e-6;
  double initial_step = 0.25;
  double max_step = 0.25;
  int easy_iterations = 3;  // an accept needing at most this many is "easy"
  std::uint64_t rng_seed = 0;  // reserved for randomized tie-breaks; none are used
};

struct SlotTargets {
  RealVector u;
  RealVector omega;
};

/// u*_r = fill_scale * radius; omega* follows the mode (equal, negated, or
/// equal for generic). One-way slots get omega* = 0.
SlotTargets default_targets(const Pattern& p, const DiscSystem& d, Mode mode,
                            double fill_scale);

struct StepRecord {
  double t;
  double residual;
  int newton_iterations;
};

struct ContinuationState {
  double t = 0.0;
  ParameterPoint theta;
  double step = 0.0;
  std::vector<EigenTriple> triples;
  std::vector<StepRecord> history;
};

/// Called after every accepted state with its eigenvalues.
using StateObserver =
    std::function<void(const ContinuationState&, const ComplexVector& eigenvalues)>;

struct SolveReport {
  DenseMatrix matrix;
  double residual = 0.0;  // spectrum_error of matrix against the target
  int steps = 0;
  int rejected_steps = 0;
  int newton_iterations_total = 0;
  Mode mode = Mode::Generic;
  double radius = 0.0;
  ParameterPoint theta;
  std::vector<StepRecord> history;
};

/// Ramps (u, omega) = t (u*, omega*) from t = 0 to 1, re-solving for
/// (x, y, z) with Newton at each accepted t. The step halves on a rejected
/// trial and doubles after two consecutive easy accepts, within
/// [step_min, max_step]. The matrix is returned in pattern labels.
///
/// Throws StepUnderflowError when the step falls below step_min,
/// ModeMismatch when the mode cannot hold for this spectrum/pattern,
/// InvalidArgument for zero or mis-sized targets, NonConvergence if the
/// final matrix misses the spectrum tolerance.
SolveReport continuation_solve(const Spectrum& s, const Pattern& p,
                               const SlotTargets& targets, Mode mode,
                               const SolverConfig& cfg = {},
                               const StateObserver& observer = {});

}  // namespace giep
