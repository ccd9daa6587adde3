#include <cmath>
#include <random>

#include "doctest.h"
#include "giep/error.hpp"
#include "giep/instance.hpp"
#include "giep/solver.hpp"
#include "test_support.hpp"

using namespace giep;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::InvalidArgument;
}

const Spectrum kPairAndReal({{1, 2}}, {3});

// Path 1-2-3 after relabeling: block on (0,1), one bidirected slot at (1,2).
const Pattern kPathPattern(3, 1, {{1, 2, true}});

ParameterPoint with_fill(const Spectrum& s, const Pattern& p, double u, double omega) {
  ParameterPoint t = seed_point(s, p.m());
  for (std::size_t r = 0; r < p.m(); ++r) {
    t.u[r] = u;
    t.omega[r] = p.slots()[r].bidirected ? omega : 0.0;
  }
  return t;
}

// Central differences of the labeled coordinates along matrix direction b.
RealVector fd_rates(const DenseMatrix& m, const DenseMatrix& b, const DiscSystem& d, double h) {
  const RealVector plus = label_eigenvalues(eig_all(m + h * b), d).flatten();
  const RealVector minus = label_eigenvalues(eig_all(m - h * b), d).flatten();
  RealVector out(plus.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (plus[i] - minus[i]) / (2 * h);
  return out;
}

}  // namespace

TEST_CASE("eigen_derivative at the seed matches the basis cases") {
  const DenseMatrix a = build_seed(kPairAndReal);
  const EigenTriple t = eigen_triple(a, Complex(1, 2));
  const DenseMatrix x_dir{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}};
  const DenseMatrix y_dir{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}};
  const DenseMatrix z_dir{{0, 0, 0}, {0, 0, 0}, {0, 0, 1}};
  CHECK(std::abs(eigen_derivative(t, x_dir) - Complex(1, 0)) < 1e-14);
  CHECK(std::abs(eigen_derivative(t, y_dir) - Complex(0, 1)) < 1e-14);
  CHECK(std::abs(eigen_derivative(t, z_dir)) < 1e-14);

  const Pattern p(3, 1, {});
  CHECK(BasisDirection{BasisDirection::Kind::X, 0}.matrix(p) == x_dir);
  CHECK(BasisDirection{BasisDirection::Kind::Y, 0}.matrix(p) == y_dir);
  CHECK(BasisDirection{BasisDirection::Kind::Z, 0}.matrix(p) == z_dir);
}

TEST_CASE("sparse and dense derivative forms agree") {
  std::mt19937_64 rng(8);
  const Pattern p(5, 1, {{1, 2, true}, {3, 0, false}, {2, 4, true}});
  const Spectrum s({{0.5, 1.5}}, {-2, 1, 3});
  const ParameterPoint theta = with_fill(s, p, 0.2, -0.15);
  const DenseMatrix m = assemble(p, theta);
  const auto a = assign_to_discs(eig_all(m), disc_radius(s));
  for (const EigenTriple& t : tracked_triples(m, a)) {
    using K = BasisDirection::Kind;
    for (K kind : {K::X, K::Y, K::Z, K::U, K::Omega}) {
      const std::size_t count = kind == K::Z ? 3 : (kind == K::U || kind == K::Omega) ? 3 : 1;
      for (std::size_t i = 0; i < count; ++i) {
        const BasisDirection dir{kind, i};
        CHECK(std::abs(eigen_derivative(t, dir, p) - eigen_derivative(t, dir.matrix(p))) < 1e-13);
      }
    }
  }
}

TEST_CASE("eigen_derivative rejects nearly orthogonal eigenvectors") {
  EigenTriple t{Complex(1, 0), {1, 0}, {0, 1}, Complex(1e-12, 0)};
  CHECK(kind_of([&] { eigen_derivative(t, DenseMatrix::identity(2)); }) ==
        ErrorKind::IllConditioned);
}

TEST_CASE("jacobian_xyz is the identity at the seed") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = trial % 5, l = (trial / 5) % 5 + (k == 0);
    const Spectrum s = random_spectrum(k, l, rng);
    const Pattern p(s.n(), k, {});
    const DenseMatrix a = build_seed(s);
    const auto triples = tracked_triples(a, assign_to_discs(eig_all(a), disc_radius(s)));
    const DenseMatrix jac = jacobian_xyz(p, triples);
    CHECK((jac - DenseMatrix::identity(s.n())).max_abs() <= 1e-9);
  }
  SUBCASE("decoupled diagonal") {
    const Spectrum s({}, {4, 9});
    const DenseMatrix a{{4, 0}, {0, 9}};
    const auto triples = tracked_triples(a, assign_to_discs(eig_all(a), disc_radius(s)));
    CHECK((jacobian_xyz(Pattern(2, 0, {}), triples) - DenseMatrix::identity(2)).max_abs() < 1e-15);
  }
}

TEST_CASE("analytic Jacobian matches central differences away from the seed") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> fill(-1.0, 1.0);
  const double h = 1e-6;
  for (int trial = 0; trial < 30; ++trial) {
    InstanceOptions opt;
    opt.n = 3 + trial % 5;
    opt.k = trial % (opt.n / 2 + 1);
    opt.edge_prob = 0.5;
    const Instance inst = random_instance(opt, rng);
    const RelabelPlan plan = plan_relabeling(inst.graph, max_matching(inst.graph), opt.k);
    const Pattern p(opt.n, opt.k, plan.slots);
    const DiscSystem d = disc_radius(inst.spectrum);
    ParameterPoint theta = seed_point(inst.spectrum, p.m());
    for (std::size_t r = 0; r < p.m(); ++r) {
      theta.u[r] = 0.1 * d.radius * fill(rng);
      theta.omega[r] = p.slots()[r].bidirected ? 0.1 * d.radius * fill(rng) : 0.0;
    }
    const DenseMatrix m = assemble(p, theta);
    const auto triples = tracked_triples(m, assign_to_discs(eig_all(m), d));
    const DenseMatrix jac = jacobian_xyz(p, triples);

    using K = BasisDirection::Kind;
    std::vector<BasisDirection> cols;
    for (std::size_t j = 0; j < p.k(); ++j) cols.push_back({K::X, j});
    for (std::size_t j = 0; j < p.k(); ++j) cols.push_back({K::Y, j});
    for (std::size_t j = 0; j < p.l(); ++j) cols.push_back({K::Z, j});
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const RealVector fd = fd_rates(m, cols[c].matrix(p), d, h);
      for (std::size_t row = 0; row < fd.size(); ++row)
        CHECK(std::abs(jac(row, c) - fd[row]) <= 1e-5);
    }
  }
}

TEST_CASE("evaluate_f") {
  const DiscSystem d = disc_radius(kPairAndReal);
  CHECK(evaluate_f(kPathPattern, seed_point(kPairAndReal, 1), d) ==
        target_coordinates(kPairAndReal));

  const Spectrum single({}, {7});
  CHECK(evaluate_f(Pattern(1, 0, {}), seed_point(single, 0), disc_radius(single)).gamma ==
        RealVector{7});

  SUBCASE("second-order drift on the path instance") {
    // Rayleigh-Schroedinger second order: the real eigenvalue 3 moves by
    // u*omega * sum_j v_j[1] w_j[1] / (3 - lambda_j) = u*omega * Re(1/(2-2i)) = u*omega/4.
    const LabeledValue f = evaluate_f(kPathPattern, with_fill(kPairAndReal, kPathPattern, 0.01, 0.01), d);
    CHECK(std::abs((f.gamma[0] - 3.0) - 0.01 * 0.01 / 4) < 1e-7);
    CHECK(std::abs(f.lambda[0] - 1.0) > 1e-6);
    CHECK(std::abs(f.lambda[0] - 1.0) < 1e-3);
  }
}

TEST_CASE("newton_correct") {
  const DiscSystem d = disc_radius(kPairAndReal);
  const LabeledValue goal = target_coordinates(kPairAndReal);

  SUBCASE("exact point needs no iterations") {
    const ParameterPoint theta = seed_point(kPairAndReal, 1);
    const NewtonResult r = newton_correct(kPathPattern, d, theta, goal, 25, 1e-11);
    CHECK(r.iterations == 0);
    CHECK(r.theta.x == theta.x);
    CHECK(r.theta.y == theta.y);
    CHECK(r.theta.z == theta.z);
  }
  SUBCASE("path instance converges quickly and keeps the slots") {
    const ParameterPoint theta = with_fill(kPairAndReal, kPathPattern, 0.05, 0.05);
    const NewtonResult r = newton_correct(kPathPattern, d, theta, goal, 25, 1e-11 * 4);
    CHECK(r.iterations <= 5);
    CHECK(r.residual <= 1e-10);
    CHECK(r.theta.u == theta.u);
    CHECK(r.theta.omega == theta.omega);
    CHECK(spectrum_error(eig_all(assemble(kPathPattern, r.theta)), kPairAndReal) <= 1e-10);
  }
  SUBCASE("far outside the discs") {
    ParameterPoint theta = seed_point(kPairAndReal, 1);
    theta.z[0] = 10.0;
    CHECK(kind_of([&] { newton_correct(kPathPattern, d, theta, goal, 25, 1e-11); }) ==
          ErrorKind::DiscViolation);
  }
  SUBCASE("iteration cap") {
    const ParameterPoint theta = with_fill(kPairAndReal, kPathPattern, 0.05, 0.05);
    CHECK(kind_of([&] { newton_correct(kPathPattern, d, theta, goal, 0, 1e-11); }) ==
          ErrorKind::NonConvergence);
  }
}

TEST_CASE("continuation_solve without slots returns the seed") {
  const Spectrum s({{1, 1}, {-1, 2}}, {});
  const Pattern p(4, 2, {});
  const SolveReport r = continuation_solve(s, p, {}, Mode::Generic);
  CHECK(r.steps == 0);
  CHECK(r.matrix == build_seed(s));
}

TEST_CASE("continuation_solve on the path instance") {
  const SlotTargets targets{{0.1}, {0.1}};
  int observed = 0;
  const DiscSystem d = disc_radius(kPairAndReal);
  const SolveReport r = continuation_solve(
      kPairAndReal, kPathPattern, targets, Mode::Generic, {},
      [&](const ContinuationState& st, const ComplexVector& eigs) {
        ++observed;
        CHECK_NOTHROW(assign_to_discs(eigs, d));
        CHECK(st.triples.size() == 2);
      });
  CHECK(observed == r.steps + 1);
  CHECK(r.matrix(1, 2) == 0.1);
  CHECK(r.matrix(2, 1) == 0.1);
  CHECK(r.matrix(0, 2) == 0.0);
  CHECK(r.matrix(2, 0) == 0.0);
  CHECK(r.matrix(0, 1) != 0.0);
  CHECK(r.matrix(1, 0) != 0.0);
  CHECK(spectrum_error(eig_all(r.matrix), kPairAndReal) <= 1e-8);
  CHECK(r.residual <= 1e-8 * 4);
}

TEST_CASE("symmetric mode stays exactly symmetric") {
  const Spectrum s({}, {1, 2, 3});
  const Pattern p(3, 0, {{0, 1, true}, {1, 2, true}});
  const SlotTargets targets = default_targets(p, disc_radius(s), Mode::Symmetric, 0.1);
  const SolveReport r = continuation_solve(
      s, p, targets, Mode::Symmetric, {}, [&](const ContinuationState& st, const ComplexVector&) {
        const DenseMatrix m = assemble(p, st.theta);
        CHECK(m == m.transpose());
      });
  CHECK(r.matrix == r.matrix.transpose());
  CHECK(spectrum_error(eig_all(r.matrix), s) <= 1e-8);
}

TEST_CASE("skew mode keeps the off-diagonal skew-symmetric") {
  const Spectrum s({{0, 1}, {0, 2.5}}, {0});
  const Pattern p(5, 2, {{0, 2, true}, {1, 4, true}, {3, 4, true}});
  const SlotTargets targets = default_targets(p, disc_radius(s), Mode::Skew, 0.1);
  const SolveReport r = continuation_solve(
      s, p, targets, Mode::Skew, {}, [&](const ContinuationState& st, const ComplexVector&) {
        const DenseMatrix m = assemble(p, st.theta);
        for (std::size_t i = 0; i < 5; ++i)
          for (std::size_t j = 0; j < 5; ++j)
            if (i != j) CHECK(m(i, j) + m(j, i) == 0.0);
      });
  CHECK(spectrum_error(eig_all(r.matrix), s) <= 1e-8);
}

TEST_CASE("continuation_solve argument checks") {
  const Pattern p(3, 1, {{1, 2, true}});
  CHECK(kind_of([&] {
          continuation_solve(kPairAndReal, p, {{0.1}, {0.1}}, Mode::Symmetric);
        }) == ErrorKind::ModeMismatch);
  CHECK(kind_of([&] { continuation_solve(kPairAndReal, p, {{0.1}, {0.1}}, Mode::Skew); }) ==
        ErrorKind::ModeMismatch);
  CHECK(kind_of([&] { continuation_solve(kPairAndReal, p, {{0.0}, {0.1}}, Mode::Generic); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { continuation_solve(kPairAndReal, p, {{0.1}, {}}, Mode::Generic); }) ==
        ErrorKind::DimensionMismatch);
  const Pattern one_way(3, 0, {{0, 1, false}});
  CHECK(kind_of([&] {
          continuation_solve(Spectrum({}, {1, 2, 3}), one_way, {{0.1}, {0.0}}, Mode::Symmetric);
        }) == ErrorKind::ModeMismatch);
  CHECK(kind_of([&] {
          continuation_solve(Spectrum({}, {1, 2}), p, {{0.1}, {0.1}}, Mode::Generic);
        }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("an unreachable fill ends in StepUnderflow") {
  // [[a, u], [w, c]] with eigenvalues {1, 2} needs u*w <= 1/4.
  const Spectrum s({}, {1, 2});
  const Pattern p(2, 0, {{0, 1, true}});
  try {
    continuation_solve(s, p, {{10.0}, {10.0}}, Mode::Generic);
    FAIL("expected StepUnderflow");
  } catch (const StepUnderflowError& e) {
    CHECK(e.kind() == ErrorKind::StepUnderflow);
    CHECK(e.t_reached() > 0.0);
    CHECK(e.t_reached() * e.t_reached() * 100.0 <= 0.25 + 1e-6);
  }
}

TEST_CASE("one-way slots are ramped without a reverse entry") {
  const Spectrum s({{0, 1}}, {2, -1});
  const Pattern p(4, 1, {{0, 2, false}, {3, 1, false}, {2, 3, true}});
  const SlotTargets targets = default_targets(p, disc_radius(s), Mode::Generic, 0.1);
  const SolveReport r = continuation_solve(s, p, targets, Mode::Generic);
  CHECK(r.matrix(2, 0) == 0.0);
  CHECK(r.matrix(1, 3) == 0.0);
  CHECK(r.matrix(0, 2) != 0.0);
  CHECK(r.matrix(3, 1) != 0.0);
  CHECK(spectrum_error(eig_all(r.matrix), s) <= 1e-8 * (1 + s.max_abs()));
}

TEST_CASE("parse_mode") {
  CHECK(parse_mode("generic") == Mode::Generic);
  CHECK(parse_mode("symmetric") == Mode::Symmetric);
  CHECK(parse_mode("skew") == Mode::Skew);
  CHECK(kind_of([] { parse_mode("hermitian"); }) == ErrorKind::InvalidArgument);
}
