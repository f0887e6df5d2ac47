#include "cremona/action.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "cremona/error.hpp"
#include "cremona/linalg.hpp"
#include "group_closure.hpp"

namespace cremona {
namespace {

int form_sign(std::size_t i) { return i == 0 ? 1 : -1; }

std::string index_list(const std::vector<std::size_t>& v) {
  std::string out;
  for (auto i : v) out += (out.empty() ? "" : ",") + std::to_string(i + 1);
  return out;
}

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace

LatticeIsometry::LatticeIsometry(std::vector<std::vector<int>> rows) : rows_(std::move(rows)) {
  const std::size_t n = rows_.size();
  if (n == 0) fail(ErrorKind::Malformed, "empty isometry matrix");
  for (const auto& row : rows_) {
    if (row.size() != n) fail(ErrorKind::Malformed, "isometry matrix is not square");
  }
  // M^T Q M = Q
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      long v = 0;
      for (std::size_t k = 0; k < n; ++k) v += static_cast<long>(form_sign(k)) * rows_[k][a] * rows_[k][b];
      const long expected = a == b ? form_sign(a) : 0;
      if (v != expected) {
        fail(ErrorKind::FormViolation, "matrix does not preserve the intersection form (entry " + std::to_string(a) +
                                           "," + std::to_string(b) + ")");
      }
    }
  }
  const DivisorClass k = DivisorClass::canonical(rank());
  if (apply(k) != k) fail(ErrorKind::CanonicalViolation, "matrix does not fix the canonical class");
}

LatticeIsometry LatticeIsometry::identity(int r) {
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(r) + 1, std::vector<int>(static_cast<std::size_t>(r) + 1, 0));
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i][i] = 1;
  return LatticeIsometry(std::move(rows), Unchecked{});
}

int LatticeIsometry::trace() const {
  int t = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) t += rows_[i][i];
  return t;
}

DivisorClass LatticeIsometry::apply(const DivisorClass& c) const {
  if (c.rank() != rank()) fail(ErrorKind::RankMismatch, "class rank differs from isometry rank");
  const auto v = c.to_vector();
  std::vector<int> out(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += rows_[i][j] * v[j];
  }
  return DivisorClass::from_vector(out);
}

LatticeIsometry operator*(const LatticeIsometry& a, const LatticeIsometry& b) {
  if (a.rows_.size() != b.rows_.size()) fail(ErrorKind::RankMismatch, "multiplying isometries of different rank");
  const std::size_t n = a.rows_.size();
  std::vector<std::vector<int>> out(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a.rows_[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a.rows_[i][k] * b.rows_[k][j];
    }
  }
  return LatticeIsometry(std::move(out), LatticeIsometry::Unchecked{});
}

LatticeIsometry LatticeIsometry::pow(int k) const {
  if (k < 0) fail(ErrorKind::Usage, "negative isometry power");
  LatticeIsometry result = identity(rank());
  for (int i = 0; i < k; ++i) result = result * *this;
  return result;
}

bool LatticeIsometry::is_identity() const { return *this == identity(rank()); }

std::string LatticeIsometry::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    out << (i ? ",[" : "[");
    for (std::size_t j = 0; j < rows_[i].size(); ++j) out << (j ? "," : "") << rows_[i][j];
    out << ']';
  }
  out << ']';
  return out.str();
}

LatticeIsometry extend_linearly(const std::vector<DivisorClass>& sources, const std::vector<DivisorClass>& targets) {
  if (sources.empty() || sources.size() != targets.size()) {
    fail(ErrorKind::Malformed, "extension needs equally many sources and targets");
  }
  const int r = sources.front().rank();
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (sources[i].rank() != r || targets[i].rank() != r) fail(ErrorKind::RankMismatch, "classes of mixed rank");
  }
  const std::size_t n = static_cast<std::size_t>(r) + 1;
  const std::size_t k = sources.size();
  std::vector<std::vector<int>> src, dst;
  for (std::size_t i = 0; i < k; ++i) {
    src.push_back(sources[i].to_vector());
    dst.push_back(targets[i].to_vector());
  }
  Matrix<Rational> span(k, n);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) span(i, j) = src[i][j];
  }
  if (rank(span) < n) fail(ErrorKind::NonSpanning, "source classes do not span the lattice over Q");

  std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
  for (std::size_t row = 0; row < n; ++row) {
    // sum_j M[row][j] * src[i][j] = dst[i][row] for every i
    Matrix<Rational> system(k, n + 1);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < n; ++j) system(i, j) = src[i][j];
      system(i, n) = dst[i][row];
    }
    const auto sol = solve_augmented(system);
    if (!sol) fail(ErrorKind::Inconsistent, "source/target assignment is not linear");
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = (*sol)[j];
      if (v.get_den() != 1) {
        fail(ErrorKind::NonIntegral, "extension has entry " + v.get_str() + " at row " + std::to_string(row) +
                                         ", column " + std::to_string(j) + "; the image of a basis class is not in the lattice");
      }
      rows[row][j] = static_cast<int>(v.get_num().get_si());
    }
  }
  return LatticeIsometry(std::move(rows));
}

LatticeIsometry from_curve_permutation(const SurfaceModel& model, const std::vector<std::size_t>& images) {
  const auto& curves = model.negative_curves();
  if (images.size() != curves.size()) fail(ErrorKind::InvalidClass, "permutation size differs from curve count");
  std::vector<bool> seen(curves.size(), false);
  std::vector<DivisorClass> targets;
  for (auto i : images) {
    if (i >= curves.size() || seen[i]) fail(ErrorKind::InvalidClass, "curve images do not form a permutation");
    seen[i] = true;
    targets.push_back(curves[i]);
  }
  return extend_linearly(curves, targets);
}

LatticeIsometry from_curve_cycles(const SurfaceModel& model, const std::vector<std::vector<std::string>>& cycles) {
  const auto& curves = model.negative_curves();
  std::vector<std::size_t> images(curves.size());
  std::iota(images.begin(), images.end(), 0);
  std::vector<bool> used(curves.size(), false);
  auto lookup = [&](const std::string& label) {
    const auto idx = model.curve_index(DivisorClass::parse(label, model.rank()));
    if (!idx) fail(ErrorKind::InvalidClass, label + " is not a negative curve of the model");
    if (used[*idx]) fail(ErrorKind::InvalidClass, label + " appears in two cycles");
    used[*idx] = true;
    return *idx;
  };
  for (const auto& cycle : cycles) {
    std::vector<std::size_t> idx;
    for (const auto& label : cycle) idx.push_back(lookup(label));
    for (std::size_t i = 0; i < idx.size(); ++i) images[idx[i]] = idx[(i + 1) % idx.size()];
  }
  return from_curve_permutation(model, images);
}

std::vector<std::size_t> curve_permutation(const LatticeIsometry& m, const SurfaceModel& model) {
  const auto& curves = model.negative_curves();
  std::vector<std::size_t> perm;
  for (const auto& c : curves) {
    const auto idx = model.curve_index(m.apply(c));
    if (!idx) fail(ErrorKind::InvalidClass, "isometry maps " + c.label() + " outside the negative curves");
    perm.push_back(*idx);
  }
  return perm;
}

ActionGroup closure(const std::vector<LatticeIsometry>& generators, std::size_t cap) {
  if (generators.empty()) fail(ErrorKind::Usage, "closure needs at least one generator");
  return detail::close_group(
      generators, LatticeIsometry::identity(generators.front().rank()), cap,
      [](const LatticeIsometry& a, const LatticeIsometry& b) { return a * b; },
      [](const LatticeIsometry& m) { return m.to_string(); },
      [](const LatticeIsometry& a, const std::vector<std::size_t>& wa, const LatticeIsometry& b,
         const std::vector<std::size_t>& wb) {
        if (wa.size() != wb.size()) return wa.size() < wb.size();
        return a.to_string() < b.to_string();
      });
}

int invariant_rank(const ActionGroup& group) {
  const std::size_t n = static_cast<std::size_t>(group.elements.front().rank()) + 1;
  Matrix<Rational> stacked(group.elements.size() * n, n);
  for (std::size_t g = 0; g < group.elements.size(); ++g) {
    const auto& rows = group.elements[g].rows();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) stacked(g * n + i, j) = rows[i][j] - (i == j ? 1 : 0);
    }
  }
  return static_cast<int>(n - rank(stacked));
}

LatticeIsometry evaluate_word(const std::vector<LatticeIsometry>& generators, const std::vector<std::size_t>& word) {
  if (generators.empty()) fail(ErrorKind::Usage, "no generators");
  LatticeIsometry m = LatticeIsometry::identity(generators.front().rank());
  for (auto g : word) m = generators.at(g) * m;
  return m;
}

int FixedLocus::euler_characteristic() const {
  if (euler_override) return *euler_override;
  int chi = isolated_points;
  for (int g : curve_genera) chi += 2 - 2 * g;
  return chi;
}

LefschetzReport lefschetz_check(const LatticeIsometry& m, const FixedLocus& fix, std::size_t cap) {
  LefschetzReport rep;
  try {
    rep.order = static_cast<int>(closure({m}, cap).order());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CapExceeded) throw;
    fail(ErrorKind::InfiniteOrder, "isometry has no finite order within cap " + std::to_string(cap));
  }
  rep.trace = m.trace();
  rep.euler = fix.euler_characteristic();
  rep.holds = rep.trace == rep.euler - 2;
  return rep;
}

namespace {

std::vector<std::vector<std::size_t>> all_permutations(const ActionGroup& group, const SurfaceModel& model) {
  std::vector<std::vector<std::size_t>> perms;
  for (const auto& m : group.elements) perms.push_back(curve_permutation(m, model));
  return perms;
}

std::vector<std::vector<std::size_t>> orbit_partition(const std::vector<std::vector<std::size_t>>& perms,
                                                      std::size_t count) {
  std::vector<bool> done(count, false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (done[i]) continue;
    std::set<std::size_t> orbit;
    for (const auto& p : perms) orbit.insert(p[i]);
    for (auto j : orbit) done[j] = true;
    out.emplace_back(orbit.begin(), orbit.end());
  }
  return out;
}

}  // namespace

OrbitReport orbits(const ActionGroup& group, const SurfaceModel& model) {
  const auto& curves = model.negative_curves();
  OrbitReport rep;
  rep.invariant_rank = invariant_rank(group);
  rep.rank_one_checks = rep.invariant_rank == 1;
  const DivisorClass k = model.canonical();
  const int degree = model.degree();
  for (auto& members : orbit_partition(all_permutations(group, model), curves.size())) {
    OrbitInfo info;
    info.sum = DivisorClass(0, std::vector<int>(static_cast<std::size_t>(model.rank()), 0));
    for (auto i : members) info.sum += curves[i];
    const int a = info.sum.e().empty() ? -info.sum.ell() / 3 : info.sum.e().front();
    if (a * k == info.sum) info.multiple_of_k = a;
    if (rep.rank_one_checks) {
      info.size_divisible = degree != 0 && static_cast<int>(members.size()) % degree == 0;
      const bool negative_multiple = info.multiple_of_k && *info.multiple_of_k < 0;
      if (!info.size_divisible || !negative_multiple) rep.holds = false;
    }
    info.members = std::move(members);
    rep.orbits.push_back(std::move(info));
  }
  return rep;
}

MinimalityReport is_pair_minimal(const ActionGroup& group, const SurfaceModel& model) {
  const auto& curves = model.negative_curves();
  MinimalityReport rep;
  // A union of orbits is pairwise disjoint iff each of its orbits is, so a
  // single disjoint orbit of (-1)-curves decides non-minimality.
  std::optional<std::pair<int, int>> best_key;
  for (const auto& orbit : orbit_partition(all_permutations(group, model), curves.size())) {
    if (self_intersection(curves[orbit.front()]) != -1) continue;
    bool disjoint = true;
    for (std::size_t a = 0; a < orbit.size() && disjoint; ++a) {
      for (std::size_t b = a + 1; b < orbit.size(); ++b) {
        if (intersect(curves[orbit[a]], curves[orbit[b]]) != 0) {
          disjoint = false;
          break;
        }
      }
    }
    if (!disjoint) continue;
    // Preference: lowest degree member, then the latest exceptional index.
    int low = curves[orbit.front()].ell();
    int last_index = 0;
    for (auto i : orbit) low = std::min(low, curves[i].ell());
    for (auto i : orbit) {
      if (curves[i].ell() != low) continue;
      const auto& e = curves[i].e();
      for (std::size_t j = e.size(); j-- > 0;) {
        if (e[j] != 0) {
          last_index = std::max(last_index, static_cast<int>(j) + 1);
          break;
        }
      }
    }
    const std::pair<int, int> key{low, -last_index};
    if (!best_key || key < *best_key) {
      best_key = key;
      rep.minimal = false;
      rep.witness = orbit;
    }
  }
  return rep;
}

std::vector<std::size_t> twisted_fibers(const LatticeIsometry& m, const ConicBundle& cb, const SurfaceModel& model) {
  const auto perm = curve_permutation(m, model);
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < cb.singular_fibers.size(); ++f) {
    const auto [i, j] = cb.singular_fibers[f];
    if (perm[i] == j) out.push_back(f);
  }
  return out;
}

bool is_triple_minimal(const ActionGroup& group, const ConicBundle& cb, const SurfaceModel& model) {
  std::vector<bool> twisted(cb.singular_fibers.size(), false);
  for (const auto& m : group.elements) {
    for (auto f : twisted_fibers(m, cb, model)) twisted[f] = true;
  }
  return std::all_of(twisted.begin(), twisted.end(), [](bool b) { return b; });
}

TwistParityReport twist_parity_check(const LatticeIsometry& m, const ConicBundle& cb, const SurfaceModel& model, int n) {
  if (n < 1) fail(ErrorKind::Usage, "base order must be positive");
  const LatticeIsometry mn = m.pow(n);
  if (!(mn * mn).is_identity()) {
    fail(ErrorKind::Inconsistent, "M^" + std::to_string(n) + " is not an involution of the lattice");
  }
  TwistParityReport rep;
  rep.n = n;
  const auto twisted_m = twisted_fibers(m, cb, model);
  const auto twisted_mn = twisted_fibers(mn, cb, model);
  rep.r = static_cast<int>(twisted_m.size());
  rep.two_k = static_cast<int>(twisted_mn.size());
  if (rep.two_k % 2 != 0) {
    rep.detail = "M^n twists an odd number of fibers";
    rep.case_number = n == 1 ? 1 : (rep.two_k == 0 ? 2 : (n % 2 ? 3 : 4));
    return rep;
  }
  const auto perm = curve_permutation(m, model);
  auto fiber_image = [&](std::size_t f) {
    const std::size_t img = perm[cb.singular_fibers[f].first];
    for (std::size_t g = 0; g < cb.singular_fibers.size(); ++g) {
      if (cb.singular_fibers[g].first == img || cb.singular_fibers[g].second == img) return g;
    }
    fail(ErrorKind::InvalidClass, "isometry does not preserve the conic bundle");
  };
  auto contains = [](const std::vector<std::size_t>& v, std::size_t x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  if (n == 1) {
    rep.case_number = 1;
    rep.holds = true;
    rep.detail = "n = 1: M twists " + std::to_string(rep.two_k) + " fibers";
  } else if (rep.two_k == 0) {
    rep.case_number = 2;
    rep.holds = n % 2 == 0;
    rep.detail = rep.holds ? "n > 1, k = 0 and n is even" : "n > 1, k = 0 but n is odd";
  } else if (n % 2 == 1) {
    rep.case_number = 3;
    std::vector<std::size_t> expected;
    for (auto f : twisted_mn) {
      if (fiber_image(f) == f) expected.push_back(f);
    }
    rep.holds = (rep.r == 1 || rep.r == 2) && twisted_m == expected;
    rep.detail = rep.holds ? "n odd: M twists exactly the M-invariant fibers twisted by M^n"
                           : "n odd: twisted fibers of M {" + index_list(twisted_m) +
                                 "} differ from the invariant fibers twisted by M^n {" + index_list(expected) + "}";
  } else {
    rep.case_number = 4;
    bool disjoint = true;
    for (auto f : twisted_m) disjoint = disjoint && !contains(twisted_mn, f);
    bool free_action = true;
    for (auto f : twisted_mn) free_action = free_action && fiber_image(f) != f;
    const bool divides = rep.two_k % n == 0;
    const bool parity = divides && ((rep.two_k / n) % 2) == (rep.r % 2);
    rep.holds = (rep.r == 1 || rep.r == 2) && disjoint && free_action && divides && parity;
    std::ostringstream d;
    d << "n even, 2k = " << rep.two_k << ", r = " << rep.r << ": " << (divides ? "n | 2k" : "n does not divide 2k")
      << ", " << (parity ? "2k/n = r mod 2" : "parity fails") << ", "
      << (disjoint ? "disjoint twisted sets" : "overlapping twisted sets") << ", "
      << (free_action ? "free action" : "fixed fiber");
    rep.detail = d.str();
  }
  return rep;
}

int ramanujan_sum(int d, int e) {
  if (d < 1) fail(ErrorKind::Domain, "ramanujan_sum needs d >= 1");
  const int g = std::gcd(d, e);
  const int q = d / g;
  return mobius(q) * euler_phi(d) / euler_phi(q);
}

CharacterProfiles character_admissibility(int n, int rho, const std::map<int, int>& trace_bounds) {
  if (n < 1 || n > 12) fail(ErrorKind::Usage, "order must be in 1..12");
  if (rho < 1 || rho > 9) fail(ErrorKind::Usage, "rank must be in 1..9");
  CharacterProfiles out;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) out.divisors.push_back(d);
  }
  const std::size_t nd = out.divisors.size();
  std::vector<int> m(nd, 0);
  // depth-first over m_d with sum phi(d) m_d = rho
  auto recurse = [&](auto&& self, std::size_t idx, int remaining) -> void {
    if (idx == nd) {
      if (remaining != 0 || m[0] < 1) return;
      int l = 1;
      for (std::size_t i = 0; i < nd; ++i) {
        if (m[i] > 0) l = std::lcm(l, out.divisors[i]);
      }
      if (l != n) return;
      for (const auto& [e, bound] : trace_bounds) {
        int tr = 0;
        for (std::size_t i = 0; i < nd; ++i) tr += m[i] * ramanujan_sum(out.divisors[i], e);
        if (tr < bound) return;
      }
      out.profiles.push_back(m);
      return;
    }
    const int phi = euler_phi(out.divisors[idx]);
    for (int k = 0; k * phi <= remaining; ++k) {
      m[idx] = k;
      self(self, idx + 1, remaining - k * phi);
    }
    m[idx] = 0;
  };
  recurse(recurse, 0, rho);
  std::sort(out.profiles.begin(), out.profiles.end(), std::greater<>());
  return out;
}

}  // namespace cremona
