#include "giep/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "giep/error.hpp"

namespace giep {

std::string_view to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::Generic: return "generic";
    case Mode::Symmetric: return "symmetric";
    case Mode::Skew: return "skew";
  }
  return "generic";
}

Mode parse_mode(std::string_view text) {
  if (text == "generic") return Mode::Generic;
  if (text == "symmetric") return Mode::Symmetric;
  if (text == "skew") return Mode::Skew;
  throw Error(ErrorKind::InvalidArgument,
              "unknown mode '" + std::string(text) + "' (expected generic, symmetric or skew)");
}

// ---------------------------------------------------------------------------
// Perturbation directions

DenseMatrix BasisDirection::matrix(const Pattern& p) const {
  DenseMatrix b(p.n(), p.n());
  switch (kind) {
    case Kind::X:
      b(2 * index, 2 * index) = 1.0;
      b(2 * index + 1, 2 * index + 1) = 1.0;
      break;
    case Kind::Y:
      b(2 * index, 2 * index + 1) = 1.0;
      b(2 * index + 1, 2 * index) = -1.0;
      break;
    case Kind::Z:
      b(2 * p.k() + index, 2 * p.k() + index) = 1.0;
      break;
    case Kind::U: {
      const Slot& s = p.slots().at(index);
      b(s.row, s.col) = 1.0;
      break;
    }
    case Kind::Omega: {
      const Slot& s = p.slots().at(index);
      if (s.bidirected) b(s.col, s.row) = 1.0;
      break;
    }
  }
  return b;
}

Complex BasisDirection::bilinear(std::span<const Complex> w, std::span<const Complex> v,
                                 const Pattern& p) const {
  switch (kind) {
    case Kind::X: {
      const std::size_t a = 2 * index, b = a + 1;
      return w[a] * v[a] + w[b] * v[b];
    }
    case Kind::Y: {
      const std::size_t a = 2 * index, b = a + 1;
      return w[a] * v[b] - w[b] * v[a];
    }
    case Kind::Z: {
      const std::size_t a = 2 * p.k() + index;
      return w[a] * v[a];
    }
    case Kind::U: {
      const Slot& s = p.slots().at(index);
      return w[s.row] * v[s.col];
    }
    case Kind::Omega: {
      const Slot& s = p.slots().at(index);
      return s.bidirected ? w[s.col] * v[s.row] : Complex(0.0, 0.0);
    }
  }
  return {};
}

namespace {

void require_conditioned(const EigenTriple& t, double tol_ortho) {
  if (std::abs(t.left_dot_right) < tol_ortho) {
    throw Error(ErrorKind::IllConditioned,
                "|w^T v| = " + std::to_string(std::abs(t.left_dot_right)) +
                    " below tolerance; eigenvalue is nearly defective");
  }
}

}  // namespace

Complex eigen_derivative(const EigenTriple& triple, const DenseMatrix& b, double tol_ortho) {
  require_conditioned(triple, tol_ortho);
  const std::size_t n = triple.right.size();
  if (b.rows() != n || b.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "direction matrix size differs from eigenvector");
  Complex num(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    Complex bv(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) bv += b(i, j) * triple.right[j];
    num += triple.left[i] * bv;
  }
  return num / triple.left_dot_right;
}

Complex eigen_derivative(const EigenTriple& triple, const BasisDirection& dir, const Pattern& p,
                         double tol_ortho) {
  require_conditioned(triple, tol_ortho);
  return dir.bilinear(triple.left, triple.right, p) / triple.left_dot_right;
}

std::vector<EigenTriple> tracked_triples(const DenseMatrix& m, const DiscAssignment& a,
                                         const EigenTolerances& tol) {
  std::vector<EigenTriple> out;
  out.reserve(a.plus.size() + a.reals.size());
  for (const Complex& z : a.plus) out.push_back(eigen_triple(m, z, tol));
  for (double g : a.reals) out.push_back(eigen_triple(m, Complex(g, 0.0), tol));
  return out;
}

DenseMatrix jacobian_xyz(const Pattern& p, std::span<const EigenTriple> triples,
                         double tol_ortho) {
  const std::size_t k = p.k(), l = p.l(), dim = 2 * k + l;
  if (triples.size() != k + l)
    throw Error(ErrorKind::DimensionMismatch, "need one triple per plus disc and real interval");

  std::vector<BasisDirection> columns;
  for (std::size_t j = 0; j < k; ++j) columns.push_back({BasisDirection::Kind::X, j});
  for (std::size_t j = 0; j < k; ++j) columns.push_back({BasisDirection::Kind::Y, j});
  for (std::size_t j = 0; j < l; ++j) columns.push_back({BasisDirection::Kind::Z, j});

  DenseMatrix jac(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t j = 0; j < k; ++j) {
      const Complex zeta = eigen_derivative(triples[j], columns[c], p, tol_ortho);
      jac(j, c) = zeta.real();
      jac(k + j, c) = zeta.imag();
    }
    for (std::size_t j = 0; j < l; ++j)
      jac(2 * k + j, c) = eigen_derivative(triples[k + j], columns[c], p, tol_ortho).real();
  }
  return jac;
}

// ---------------------------------------------------------------------------
// f and its Newton corrector

Evaluation evaluate(const Pattern& p, const ParameterPoint& theta, const DiscSystem& d) {
  Evaluation e;
  e.matrix = assemble(p, theta);
  e.eigenvalues = eig_all(e.matrix);
  e.assignment = assign_to_discs(e.eigenvalues, d);
  for (const Complex& z : e.assignment.plus) {
    e.value.lambda.push_back(z.real());
    e.value.mu.push_back(z.imag());
  }
  e.value.gamma = e.assignment.reals;
  return e;
}

LabeledValue evaluate_f(const Pattern& p, const ParameterPoint& theta, const DiscSystem& d) {
  return evaluate(p, theta, d).value;
}

NewtonResult newton_correct(const Pattern& p, const DiscSystem& d, ParameterPoint theta,
                            const LabeledValue& target, int max_iter, double tol) {
  const RealVector goal = target.flatten();
  const std::size_t k = p.k();
  NewtonResult result;
  for (int iter = 0;; ++iter) {
    Evaluation e = evaluate(p, theta, d);
    RealVector rhs = e.value.flatten();
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = goal[i] - rhs[i];
    const double residual = norm_inf(rhs);
    if (residual <= tol) {
      result.theta = std::move(theta);
      result.iterations = iter;
      result.residual = residual;
      result.evaluation = std::move(e);
      return result;
    }
    if (iter >= max_iter) {
      throw Error(ErrorKind::NonConvergence, "Newton did not converge in " +
                                                 std::to_string(max_iter) +
                                                 " iterations (residual " +
                                                 std::to_string(residual) + ")");
    }
    const auto triples = tracked_triples(e.matrix, e.assignment);
    const RealVector delta = solve_linear(jacobian_xyz(p, triples), rhs);
    for (std::size_t j = 0; j < k; ++j) {
      theta.x[j] += delta[j];
      theta.y[j] += delta[k + j];
    }
    for (std::size_t j = 0; j < p.l(); ++j) theta.z[j] += delta[2 * k + j];
  }
}

// ---------------------------------------------------------------------------
// Continuation

SlotTargets default_targets(const Pattern& p, const DiscSystem& d, Mode mode,
                            double fill_scale) {
  SlotTargets t;
  const double magnitude = fill_scale * d.radius;
  for (const Slot& s : p.slots()) {
    t.u.push_back(magnitude);
    if (!s.bidirected)
      t.omega.push_back(0.0);
    else
      t.omega.push_back(mode == Mode::Skew ? -magnitude : magnitude);
  }
  return t;
}

namespace {

void check_targets(const Spectrum& s, const Pattern& p, const SlotTargets& targets, Mode mode) {
  if (p.n() != s.n() || p.k() != s.k())
    throw Error(ErrorKind::DimensionMismatch,
                "pattern sizes (n=" + std::to_string(p.n()) + ", k=" + std::to_string(p.k()) +
                    ") do not match the spectrum (n=" + std::to_string(s.n()) +
                    ", k=" + std::to_string(s.k()) + ")");
  if (targets.u.size() != p.m() || targets.omega.size() != p.m())
    throw Error(ErrorKind::DimensionMismatch, "slot targets do not match the pattern");
  for (std::size_t r = 0; r < p.m(); ++r) {
    const bool bidir = p.slots()[r].bidirected;
    if (!std::isfinite(targets.u[r]) || !std::isfinite(targets.omega[r]) || targets.u[r] == 0.0 ||
        (bidir && targets.omega[r] == 0.0))
      throw Error(ErrorKind::InvalidArgument,
                  "slot " + std::to_string(r + 1) + " needs finite nonzero targets");
  }
  if (mode == Mode::Generic) return;
  if (!p.all_bidirected())
    throw Error(ErrorKind::ModeMismatch,
                std::string(to_string(mode)) + " mode needs every edge in both directions");
  if (mode == Mode::Symmetric && s.k() != 0)
    throw Error(ErrorKind::ModeMismatch, "symmetric mode needs an all-real spectrum");
  for (std::size_t r = 0; r < p.m(); ++r) {
    const double want = mode == Mode::Symmetric ? targets.u[r] : -targets.u[r];
    if (targets.omega[r] != want)
      throw Error(ErrorKind::ModeMismatch,
                  std::string(to_string(mode)) + " mode ties omega* to " +
                      (mode == Mode::Symmetric ? "u*" : "-u*"));
  }
}

bool is_step_rejection(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DiscViolation:
    case ErrorKind::NonConvergence:
    case ErrorKind::SingularSystem:
    case ErrorKind::IllConditioned:
      return true;
    default:
      return false;
  }
}

}  // namespace

SolveReport continuation_solve(const Spectrum& s, const Pattern& p, const SlotTargets& targets,
                               Mode mode, const SolverConfig& cfg,
                               const StateObserver& observer) {
  check_targets(s, p, targets, mode);
  const DiscSystem discs = disc_radius(s);
  const LabeledValue goal = target_coordinates(s);
  const double scale = 1.0 + s.max_abs();
  const double tol_newton = cfg.tol_newton_rel * scale;
  const double tol_final = cfg.tol_final_rel * scale;

  SolveReport report;
  report.mode = mode;
  report.radius = discs.radius;

  ContinuationState state;
  state.theta = seed_point(s, p.m());
  state.step = std::min(cfg.initial_step, cfg.max_step);
  {
    NewtonResult start = newton_correct(p, discs, state.theta, goal, cfg.max_newton_iterations,
                                        tol_newton);
    state.theta = std::move(start.theta);
    state.triples = tracked_triples(start.evaluation.matrix, start.evaluation.assignment);
    state.history.push_back({0.0, start.residual, start.iterations});
    report.newton_iterations_total += start.iterations;
    if (observer) observer(state, start.evaluation.eigenvalues);
  }

  int easy_streak = 0;
  while (p.m() > 0 && state.t < 1.0) {
    if (report.steps + report.rejected_steps >= cfg.max_steps) {
      throw StepUnderflowError(state.t, "continuation step budget exhausted at t = " +
                                            std::to_string(state.t));
    }
    const double t_try = std::min(1.0, state.t + state.step);
    ParameterPoint trial = state.theta;
    for (std::size_t r = 0; r < p.m(); ++r) {
      trial.u[r] = t_try * targets.u[r];
      trial.omega[r] = p.slots()[r].bidirected ? t_try * targets.omega[r] : 0.0;
    }

    NewtonResult accepted;
    std::vector<EigenTriple> triples;
    try {
      accepted = newton_correct(p, discs, std::move(trial), goal, cfg.max_newton_iterations,
                                tol_newton);
      triples = tracked_triples(accepted.evaluation.matrix, accepted.evaluation.assignment);
    } catch (const Error& e) {
      if (!is_step_rejection(e.kind())) throw;
      ++report.rejected_steps;
      easy_streak = 0;
      state.step /= 2.0;
      if (state.step < cfg.step_min) {
        throw StepUnderflowError(
            state.t, "continuation step fell below " + std::to_string(cfg.step_min) +
                         " at t = " + std::to_string(state.t) + " (last failure: " +
                         std::string(to_string(e.kind())) + ": " + e.what() + ")");
      }
      continue;
    }

    state.t = t_try;
    state.theta = std::move(accepted.theta);
    state.triples = std::move(triples);
    state.history.push_back({state.t, accepted.residual, accepted.iterations});
    report.newton_iterations_total += accepted.iterations;
    ++report.steps;
    if (accepted.iterations <= cfg.easy_iterations) {
      if (++easy_streak >= 2) {
        state.step = std::min(2.0 * state.step, cfg.max_step);
        easy_streak = 0;
      }
    } else {
      easy_streak = 0;
    }
    if (observer) observer(state, accepted.evaluation.eigenvalues);
  }

  report.matrix = assemble(p, state.theta);
  report.residual = spectrum_error(eig_all(report.matrix), s);
  report.theta = state.theta;
  report.history = std::move(state.history);
  if (!(report.residual <= tol_final)) {
    throw Error(ErrorKind::NonConvergence,
                "final spectrum error " + std::to_string(report.residual) +
                    " exceeds tolerance " + std::to_string(tol_final));
  }
  for (double y : report.theta.y) {
    if (y == 0.0)
      throw Error(ErrorKind::NonConvergence, "a matched-block entry converged to zero");
  }
  return report;
}

}  // namespace giep
