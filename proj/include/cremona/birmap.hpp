#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cremona/poly.hpp"
#include "cremona/scalar.hpp"

namespace cremona {

/// Point of the projective plane, scaled so the first nonzero coordinate is 1.
class ProjPoint {
 public:
  explicit ProjPoint(std::array<CycScalar, 3> coords);
  static ProjPoint parse(const std::array<std::string, 3>& coords);

  const std::array<CycScalar, 3>& coords() const { return coords_; }
  const CycScalar& operator[](std::size_t i) const { return coords_[i]; }
  std::array<std::string, 3> coord_strings() const;
  std::string to_string() const;  // "(1 : 0 : 0)"

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }

 private:
  std::array<CycScalar, 3> coords_;
};

/// Rational map of the plane, kept reduced (components coprime) and
/// normalized (first nonzero coefficient equal to 1), so equality of maps
/// is structural.
class ProjMap {
 public:
  explicit ProjMap(std::array<HomPoly, 3> components);
  static ProjMap identity();
  static ProjMap parse(const std::array<std::string, 3>& components);

  int degree() const { return degree_; }
  const std::array<HomPoly, 3>& components() const { return components_; }
  std::array<std::string, 3> component_strings() const;
  std::string to_string() const;  // "(y*z : x*z : x*y)"

  friend bool operator==(const ProjMap& a, const ProjMap& b) { return a.components_ == b.components_; }
  friend bool operator!=(const ProjMap& a, const ProjMap& b) { return !(a == b); }

 private:
  int degree_ = 1;
  std::array<HomPoly, 3> components_;
};

/// f after g: substitutes g into f.
ProjMap compose(const ProjMap& f, const ProjMap& g);
/// Degrees of f, f^2, ..., f^n.
std::vector<int> degree_sequence(const ProjMap& f, int n);
bool projective_eq(const ProjMap& f, const ProjMap& g);

/// nullopt when p is a base point of f.
std::optional<ProjPoint> evaluate(const ProjMap& f, const ProjPoint& p);

/// Map (y : z) -> (p : q) of the pencil of lines through (1:0:0), with p, q
/// coprime binary forms and the first nonzero coefficient equal to 1.
struct PencilMap {
  HomPoly p;
  HomPoly q;
  std::string to_string() const;
  bool is_identity() const;
  friend bool operator==(const PencilMap& a, const PencilMap& b) { return a.p == b.p && a.q == b.q; }
};

PencilMap make_pencil_map(HomPoly p, HomPoly q);
/// nullopt when f does not preserve the pencil.
std::optional<PencilMap> pencil_action(const ProjMap& f);
/// a after b.
PencilMap compose(const PencilMap& a, const PencilMap& b);

struct OrbitFailure {
  enum class Kind { HitsAvoidSet, Indeterminate };
  Kind kind;
  std::size_t point_index;
  int step;
  std::size_t avoid_index;  // meaningful for HitsAvoidSet
};

struct OrbitCertificate {
  bool avoids = true;
  /// orbits[i][m] = f^m(B_i) for every step reached.
  std::vector<std::vector<ProjPoint>> orbits;
  std::optional<OrbitFailure> failure;
};

/// Checks f^m(B_i) is defined and outside A for 0 <= m <= n.
OrbitCertificate orbit_avoids(const ProjMap& f, const std::vector<ProjPoint>& starts,
                              const std::vector<ProjPoint>& avoid, int n);

/// Finite group generated by maps (or lattice isometries), with elements
/// sorted deterministically and a full multiplication table.
template <class Element>
struct FiniteGroup {
  std::vector<Element> elements;
  /// words[i] lists generator indices; element = g[w.back()] * ... * g[w.front()].
  std::vector<std::vector<std::size_t>> words;
  std::size_t identity = 0;
  /// table[i][j] = index of elements[i] * elements[j] (j applied first).
  std::vector<std::vector<std::size_t>> table;
  std::vector<int> orders;
  std::vector<std::size_t> generators;  // element index of each generator

  std::size_t order() const { return elements.size(); }
  bool is_abelian() const {
    for (std::size_t i = 0; i < table.size(); ++i) {
      for (std::size_t j = i + 1; j < table.size(); ++j) {
        if (table[i][j] != table[j][i]) return false;
      }
    }
    return true;
  }
};

using MapGroup = FiniteGroup<ProjMap>;

constexpr std::size_t kDefaultClosureCap = 256;

MapGroup closure(const std::vector<ProjMap>& generators, std::size_t cap = kDefaultClosureCap);

}  // namespace cremona
