#pragma once

#include <cstddef>
#include <vector>

#include "giep/graph.hpp"
#include "giep/linalg.hpp"

namespace giep {

struct ConjugatePair {
  double re;
  double im;  // > 0; the conjugate re - im i is implicit
  friend bool operator==(const ConjugatePair&, const ConjugatePair&) = default;
};

/// Target eigenvalues: k conjugate pairs and l reals, all 2k + l distinct.
class Spectrum {
 public:
  /// Throws InvalidArgument for non-finite values or im <= 0, and
  /// DegenerateSpectrum when two values coincide.
  Spectrum(std::vector<ConjugatePair> pairs, std::vector<double> reals);

  std::size_t k() const noexcept { return pairs_.size(); }
  std::size_t l() const noexcept { return reals_.size(); }
  std::size_t n() const noexcept { return 2 * k() + l(); }
  const std::vector<ConjugatePair>& pairs() const noexcept { return pairs_; }
  const std::vector<double>& reals() const noexcept { return reals_; }

  /// re + im i, re - im i for each pair in order, then the reals.
  ComplexVector values() const;
  /// max |value|
  double max_abs() const noexcept;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  std::vector<ConjugatePair> pairs_;
  std::vector<double> reals_;
};

/// Disjoint discs of a common radius about every target value. The minus
/// discs are the conjugates of the plus discs.
struct DiscSystem {
  double radius;
  ComplexVector plus_centers;
  std::vector<double> real_centers;
};

/// radius = min(g / 3, mu_min / 2), g the smallest pairwise distance between
/// target values (mu term dropped when there are no pairs). A lone real value
/// gets radius 1.
DiscSystem disc_radius(const Spectrum& s);

/// Sizes and slot layout of the parameterised matrix family. Matched blocks
/// occupy rows/columns (2j, 2j+1), j < k; the reals follow on the diagonal.
class Pattern {
 public:
  /// Throws InvalidArgument when a slot is on the diagonal, inside a matched
  /// block, out of range, or reuses a position.
  Pattern(std::size_t n, std::size_t k, std::vector<Slot> slots);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t l() const noexcept { return n_ - 2 * k_; }
  std::size_t m() const noexcept { return slots_.size(); }
  const std::vector<Slot>& slots() const noexcept { return slots_; }
  bool all_bidirected() const noexcept;

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<Slot> slots_;
};

/// Block parameters x, y (length k), diagonal z (length l) and slot values
/// u, omega (length m). omega entries of one-way slots are ignored.
struct ParameterPoint {
  RealVector x, y, z, u, omega;
};

/// (x, y, z) of the point where the family equals the block-diagonal seed.
ParameterPoint seed_point(const Spectrum& s, std::size_t slot_count);

/// Labeled eigenvalue coordinates: real and imaginary parts in the plus
/// discs, real eigenvalues in the real intervals.
struct LabeledValue {
  RealVector lambda, mu, gamma;

  /// Concatenation (lambda, mu, gamma).
  RealVector flatten() const;
  friend bool operator==(const LabeledValue&, const LabeledValue&) = default;
};

LabeledValue target_coordinates(const Spectrum& s);

/// Block-diagonal seed: [[re, im], [-im, re]] per pair, then the reals.
DenseMatrix build_seed(const Spectrum& s);

/// The parameterised matrix: x_j on (2j,2j) and (2j+1,2j+1), y_j on
/// (2j,2j+1), -y_j on (2j+1,2j), z_j on (2k+j,2k+j), u_r on slot r and
/// omega_r on its reverse when bidirected. Every other entry is zero.
DenseMatrix assemble(const Pattern& p, const ParameterPoint& theta);

/// Eigenvalues sorted into discs: one per plus disc and one exactly real
/// value per real interval.
struct DiscAssignment {
  ComplexVector plus;
  std::vector<double> reals;
};

/// Throws DiscViolation if any eigenvalue lies in no disc, a disc holds zero
/// or several eigenvalues, a real interval receives a non-real value, or an
/// eigenvalue is equidistant from two centers.
DiscAssignment assign_to_discs(const ComplexVector& eigs, const DiscSystem& d);
LabeledValue label_eigenvalues(const ComplexVector& eigs, const DiscSystem& d);

/// Greedy nearest-neighbour pairing of eigenvalues to targets; returns the
/// largest paired distance (infinity on a length mismatch).
double spectrum_error(const ComplexVector& eigs, const Spectrum& s);

}  // namespace giep
