#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cremona/birmap.hpp"
#include "cremona/scalar.hpp"

namespace cremona {

/// ell*L + sum e_i*E_i in the Picard lattice of an r-point blow-up of the
/// plane. A curve of degree m with multiplicities a_i has ell = m, e_i = -a_i.
class DivisorClass {
 public:
  DivisorClass() = default;
  DivisorClass(int ell, std::vector<int> e) : ell_(ell), e_(std::move(e)) {}

  static DivisorClass line(int r);
  static DivisorClass exceptional(int r, int i);  // 1-based index
  static DivisorClass canonical(int r);           // -3L + sum E_i
  /// From (ell, e_1, ..., e_r).
  static DivisorClass from_vector(const std::vector<int>& v);
  /// Parses "2L-E1-E2", "E1-E5", "D23", "-K", "L+E1-2E3", ...
  static DivisorClass parse(std::string_view text, int r);

  int ell() const { return ell_; }
  const std::vector<int>& e() const { return e_; }
  int rank() const { return static_cast<int>(e_.size()); }
  /// Multiplicity a_i = -e_i (1-based).
  int multiplicity(int i) const { return -e_.at(static_cast<std::size_t>(i - 1)); }
  std::vector<int> to_vector() const;

  /// Short name: "E2", "E1-E5", "D12", "L-E2-E3-E4", "2L-E1-E2-E3-E4-E5".
  std::string label() const;

  DivisorClass& operator+=(const DivisorClass& rhs);
  DivisorClass& operator-=(const DivisorClass& rhs);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(int k, DivisorClass a);
  DivisorClass operator-() const { return (-1) * *this; }

  friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
    return a.ell_ == b.ell_ && a.e_ == b.e_;
  }
  friend bool operator!=(const DivisorClass& a, const DivisorClass& b) { return !(a == b); }

 private:
  int ell_ = 0;
  std::vector<int> e_;
};

/// Canonical output order: degree ascending, then the curve with the
/// earliest largest multiplicity pattern first (E1 < E1-E5 < E2, D12 < D13).
bool class_less(const DivisorClass& a, const DivisorClass& b);

int intersect(const DivisorClass& a, const DivisorClass& b);
int self_intersection(const DivisorClass& c);
/// g with C.(C+K) = 2g-2.
int arithmetic_genus(const DivisorClass& c);

/// Genus-0 classes with min_self <= C^2 <= -1, degree >= 0 and
/// non-negative multiplicities for positive degree. min_self in {-1,-2,-3}.
std::vector<DivisorClass> negative_candidates(int r, int min_self);
/// Same enumeration without the restriction on min_self.
std::vector<DivisorClass> negative_candidates_unchecked(int r, int min_self);

/// A blown-up point: proper, or on the exceptional curve of a proper parent
/// in the direction of a line through the parent.
struct BlowupPoint {
  std::optional<ProjPoint> proper;
  int parent = -1;  // 0-based index, for infinitely-near points
  std::array<CycScalar, 3> line{};

  static BlowupPoint at(ProjPoint p) { return BlowupPoint{std::move(p), -1, {}}; }
  static BlowupPoint near(int parent, std::array<CycScalar, 3> line) {
    return BlowupPoint{std::nullopt, parent, std::move(line)};
  }
  bool is_proper() const { return proper.has_value(); }
};

class SurfaceModel {
 public:
  explicit SurfaceModel(std::vector<BlowupPoint> points);
  /// The model is a pure lattice of rank r (no coordinates): curve queries fail.
  static SurfaceModel lattice_only(int r);

  int rank() const { return rank_; }
  bool has_coordinates() const { return has_coordinates_; }
  const std::vector<BlowupPoint>& points() const { return points_; }
  DivisorClass canonical() const { return DivisorClass::canonical(rank_); }
  int degree() const { return 9 - rank_; }  // K^2

  /// Irreducible curves of negative self-intersection, in class_less order.
  const std::vector<DivisorClass>& negative_curves() const;
  std::vector<std::string> curve_labels() const;
  std::optional<std::size_t> curve_index(const DivisorClass& c) const;
  /// Decides whether the class is the class of an irreducible curve, from
  /// the coordinates (degrees 0, 1, 2 only).
  bool is_irreducible_curve(const DivisorClass& c) const;

 private:
  SurfaceModel() = default;
  std::vector<int> children_of(int i) const;

  int rank_ = 0;
  bool has_coordinates_ = false;
  std::vector<BlowupPoint> points_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

struct ConicBundle {
  DivisorClass fiber;
  /// Pairs (i, j), i < j, of indices into the model's negative_curves().
  std::vector<std::pair<std::size_t, std::size_t>> singular_fibers;
};

std::vector<ConicBundle> conic_bundle_structures(const SurfaceModel& model);
/// Rebuilds the singular fibers of the given fiber class; fails when the
/// class is not a conic bundle structure of the model.
ConicBundle conic_bundle_for(const SurfaceModel& model, const DivisorClass& fiber);

/// Sections t of self-intersection -n, genus 0, of the form
/// s + b f - sum over a subset of fibers of the component missed by s.
std::vector<DivisorClass> enumerate_sections(const SurfaceModel& model, const ConicBundle& cb, int n);

struct SectionBound {
  int n = 0;
  std::size_t count = 0;        // sections of self-intersection -n
  std::size_t fibers = 0;       // singular fibers
  bool holds = true;            // count >= 2 implies fibers >= 2n
  bool tight = false;           // fibers == 2n
};
SectionBound section_bound(const SurfaceModel& model, const ConicBundle& cb, int n);

}  // namespace cremona
