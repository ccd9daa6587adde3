#include "giep/apps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "giep/error.hpp"

namespace giep {

SolveReport solve_instance(const Spectrum& s, const Graph& g, Mode mode,
                           const SolverConfig& cfg, const StateObserver& observer) {
  if (g.vertex_count() != s.n()) {
    throw Error(ErrorKind::DimensionMismatch,
                "graph has " + std::to_string(g.vertex_count()) + " vertices but the spectrum has " +
                    std::to_string(s.n()) + " values");
  }
  const Matching matching = max_matching(g);
  if (matching.size() < s.k()) {
    throw Error(ErrorKind::MatchingTooSmall,
                "spectrum has k = " + std::to_string(s.k()) +
                    " conjugate pairs but the graph's maximum matching has size " +
                    std::to_string(matching.size()));
  }
  const RelabelPlan plan = plan_relabeling(g, matching, s.k());
  const Pattern pattern(s.n(), s.k(), plan.slots);
  const SlotTargets targets = default_targets(pattern, disc_radius(s), mode, cfg.fill_scale);

  SolveReport report = continuation_solve(s, pattern, targets, mode, cfg, observer);
  report.matrix = plan.relabeling.revert(report.matrix);
  return report;
}

Spectrum distinct_spectrum(const DenseMatrix& m) {
  const ComplexVector eigs = eig_all(m);
  const double gap_tol = 1e-8 * (1.0 + m.frobenius_norm());
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    for (std::size_t j = i + 1; j < eigs.size(); ++j) {
      if (std::abs(eigs[i] - eigs[j]) <= gap_tol) {
        throw Error(ErrorKind::RepeatedEigenvalues,
                    "eigenvalues " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                        " are within " + std::to_string(gap_tol) + " of each other");
      }
    }
  }
  std::vector<ConjugatePair> pairs;
  std::vector<double> reals;
  for (const Complex& z : eigs) {
    if (z.imag() > 0.0) pairs.push_back({z.real(), z.imag()});
    if (z.imag() == 0.0) reals.push_back(z.real());
  }
  std::sort(pairs.begin(), pairs.end(), [](const ConjugatePair& a, const ConjugatePair& b) {
    return std::make_pair(a.re, a.im) < std::make_pair(b.re, b.im);
  });
  std::sort(reals.begin(), reals.end());
  return Spectrum(std::move(pairs), std::move(reals));
}

SolveReport tridiagonalize(const DenseMatrix& m, const SolverConfig& cfg) {
  const Spectrum s = distinct_spectrum(m);
  return solve_instance(s, Graph::path(s.n()), Mode::Generic, cfg);
}

VerificationReport verify(const DenseMatrix& m, const Spectrum& s, const Graph& g,
                          const VerifyTolerances& tol) {
  VerificationReport r;
  r.spectrum_tolerance = tol.spectrum_rel * (1.0 + s.max_abs());
  const std::size_t n = g.vertex_count();
  if (!m.square() || m.rows() != n || s.n() != n) {
    r.note = "dimension mismatch: matrix " + std::to_string(m.rows()) + "x" +
             std::to_string(m.cols()) + ", graph " + std::to_string(n) + " vertices, spectrum " +
             std::to_string(s.n()) + " values";
    r.spectrum_error = INFINITY;
    return r;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool edge = g.has_edge(i, j);
      const double v = m(i, j);
      if (edge && !(std::abs(v) >= tol.nonzero_floor)) r.issues.push_back({i, j, v, true});
      if (!edge && v != 0.0) r.issues.push_back({i, j, v, false});
    }
  }
  r.pattern_ok = r.issues.empty();
  try {
    r.spectrum_error = spectrum_error(eig_all(m), s);
  } catch (const Error& e) {
    r.spectrum_error = INFINITY;
    r.note = e.what();
  }
  r.spectrum_ok = r.spectrum_error <= r.spectrum_tolerance;
  return r;
}

}  // namespace giep
