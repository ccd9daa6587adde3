#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "giep/graph.hpp"
#include "giep/model.hpp"
#include "giep/solver.hpp"

namespace giep {

/// Builds a real matrix with spectrum s whose graph is g, in g's labels.
///
/// Finds a maximum matching, moves k matched edges onto the leading 2x2
/// blocks, ramps every other edge to its default fill and maps the result
/// back. Throws DimensionMismatch when g has n != 2k + l vertices and
/// MatchingTooSmall when g has no k disjoint bidirected edges; solver
/// errors propagate.
SolveReport solve_instance(const Spectrum& s, const Graph& g, Mode mode,
                           const SolverConfig& cfg = {},
                           const StateObserver& observer = {});

/// Spectrum of m as a target set. Throws RepeatedEigenvalues if two
/// eigenvalues are within gap_tol = 1e-8 (1 + ||m||_F) of each other.
Spectrum distinct_spectrum(const DenseMatrix& m);

/// An irreducible tridiagonal matrix with the spectrum of m (hence similar
/// to m). Throws RepeatedEigenvalues as distinct_spectrum does.
SolveReport tridiagonalize(const DenseMatrix& m, const SolverConfig& cfg = {});

struct VerifyTolerances {
  double nonzero_floor = 1e-12;
  double spectrum_rel = 1e-8;  // times (1 + max|target|)
};

struct PatternIssue {
  std::size_t row;
  std::size_t col;
  double value;
  bool expected_nonzero;
};

struct VerificationReport {
  bool pattern_ok = false;
  bool spectrum_ok = false;
  std::vector<PatternIssue> issues;
  double spectrum_error = 0.0;
  double spectrum_tolerance = 0.0;
  std::string note;  // set when the inputs could not be compared at all

  bool passed() const noexcept { return pattern_ok && spectrum_ok; }
};

/// Checks that m's off-diagonal pattern is exactly g (edges at least
/// nonzero_floor in magnitude, non-edges exactly zero; diagonal free) and
/// that its eigenvalues match s. Never throws on a failed check.
VerificationReport verify(const DenseMatrix& m, const Spectrum& s, const Graph& g,
                          const VerifyTolerances& tol = {});

}  // namespace giep
