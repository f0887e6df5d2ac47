#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cremona/birmap.hpp"
#include "cremona/piclattice.hpp"

namespace cremona {

/// Integer matrix acting on classes in the basis (L, E_1, ..., E_r); column j
/// is the image of basis vector j. Construction checks that the intersection
/// form and the canonical class are preserved.
class LatticeIsometry {
 public:
  /// rows[i][j] = entry in row i, column j.
  explicit LatticeIsometry(std::vector<std::vector<int>> rows);
  static LatticeIsometry identity(int r);

  int rank() const { return static_cast<int>(rows_.size()) - 1; }  // r
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  int trace() const;
  DivisorClass apply(const DivisorClass& c) const;
  LatticeIsometry pow(int k) const;  // k >= 0
  bool is_identity() const;
  std::string to_string() const;  // "[[1,0],[0,1]]"

  /// Matrix product: b is applied first.
  friend LatticeIsometry operator*(const LatticeIsometry& a, const LatticeIsometry& b);
  friend bool operator==(const LatticeIsometry& a, const LatticeIsometry& b) { return a.rows_ == b.rows_; }
  friend bool operator!=(const LatticeIsometry& a, const LatticeIsometry& b) { return !(a == b); }

 private:
  struct Unchecked {};
  LatticeIsometry(std::vector<std::vector<int>> rows, Unchecked) : rows_(std::move(rows)) {}
  std::vector<std::vector<int>> rows_;
};

/// The linear map sending sources[i] to targets[i], when it is an integral
/// isometry fixing K. Raises NonSpanning, Inconsistent, NonIntegral,
/// FormViolation or CanonicalViolation.
LatticeIsometry extend_linearly(const std::vector<DivisorClass>& sources, const std::vector<DivisorClass>& targets);

/// images[i] = index of the image of negative curve i.
LatticeIsometry from_curve_permutation(const SurfaceModel& model, const std::vector<std::size_t>& images);
/// Cycles of curve labels, e.g. {{"E1","D23"},{"E2","D12"}}; unlisted curves are fixed.
LatticeIsometry from_curve_cycles(const SurfaceModel& model, const std::vector<std::vector<std::string>>& cycles);
/// Permutation of the negative curves induced by m; fails if m does not permute them.
std::vector<std::size_t> curve_permutation(const LatticeIsometry& m, const SurfaceModel& model);

using ActionGroup = FiniteGroup<LatticeIsometry>;

ActionGroup closure(const std::vector<LatticeIsometry>& generators, std::size_t cap = kDefaultClosureCap);
int invariant_rank(const ActionGroup& group);
/// Product of generator matrices along a word (word.front() applied first).
LatticeIsometry evaluate_word(const std::vector<LatticeIsometry>& generators, const std::vector<std::size_t>& word);

struct FixedLocus {
  int isolated_points = 0;
  std::vector<int> curve_genera;
  std::optional<int> euler_override;
  int euler_characteristic() const;
};

struct LefschetzReport {
  int trace = 0;
  int euler = 0;
  int order = 0;
  bool holds = false;
};
/// trace(M) = chi(Fix) - 2. Raises InfiniteOrder when M has no finite order within cap.
LefschetzReport lefschetz_check(const LatticeIsometry& m, const FixedLocus& fix, std::size_t cap = kDefaultClosureCap);

struct OrbitInfo {
  std::vector<std::size_t> members;  // indices into negative_curves(), ascending
  DivisorClass sum;
  bool size_divisible = true;       // checked when the invariant rank is 1
  std::optional<int> multiple_of_k;  // a with sum = a K, if any
};

struct OrbitReport {
  std::vector<OrbitInfo> orbits;  // sorted by smallest member
  int invariant_rank = 0;
  bool rank_one_checks = false;  // divisibility and K-multiples were required
  bool holds = true;
};
OrbitReport orbits(const ActionGroup& group, const SurfaceModel& model);

struct MinimalityReport {
  bool minimal = true;
  std::vector<std::size_t> witness;  // curve indices of a contractible orbit
};
MinimalityReport is_pair_minimal(const ActionGroup& group, const SurfaceModel& model);

/// Indices of fibers whose two components m exchanges.
std::vector<std::size_t> twisted_fibers(const LatticeIsometry& m, const ConicBundle& cb, const SurfaceModel& model);
bool is_triple_minimal(const ActionGroup& group, const ConicBundle& cb, const SurfaceModel& model);

struct TwistParityReport {
  int case_number = 0;  // 1..4
  int n = 0;
  int two_k = 0;        // fibers twisted by M^n
  int r = 0;            // fibers twisted by M
  bool holds = false;
  std::string detail;
};
/// Raises Inconsistent when M^n is not an involution of the lattice.
TwistParityReport twist_parity_check(const LatticeIsometry& m, const ConicBundle& cb, const SurfaceModel& model, int n);

struct CharacterProfiles {
  std::vector<int> divisors;                // d | n, ascending
  std::vector<std::vector<int>> profiles;   // m_d aligned with divisors
};
/// Eigenvalue multiplicity profiles of an order-n isometry of a rank-rho
/// lattice fixing a vector, with lower bounds on traces of powers.
CharacterProfiles character_admissibility(int n, int rho, const std::map<int, int>& trace_bounds);
/// Trace of the e-th power on the primitive d-th roots of unity.
int ramanujan_sum(int d, int e);

}  // namespace cremona
