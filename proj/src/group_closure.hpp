#pragma once

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "cremona/birmap.hpp"
#include "cremona/error.hpp"

namespace cremona::detail {

// Breadth-first closure under left multiplication by generators. `mul(a, b)`
// is a after b, `key` a canonical string, `less(a, wa, b, wb)` the output
// order given elements and their words.
template <class E, class Mul, class Key, class Less>
FiniteGroup<E> close_group(const std::vector<E>& gens, const E& identity, std::size_t cap, Mul mul,
                           Key key, Less less) {
  if (cap < 1) fail(ErrorKind::Usage, "closure cap must be at least 1");
  std::vector<E> elems{identity};
  std::vector<std::vector<std::size_t>> words{{}};
  std::unordered_map<std::string, std::size_t> index{{key(identity), 0}};
  std::vector<std::vector<std::size_t>> left(gens.size());
  for (std::size_t x = 0; x < elems.size(); ++x) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      E y = mul(gens[g], elems[x]);
      std::string k = key(y);
      auto it = index.find(k);
      std::size_t idx;
      if (it == index.end()) {
        idx = elems.size();
        if (idx + 1 > cap) {
          fail(ErrorKind::CapExceeded, "closure exceeded cap " + std::to_string(cap) +
                                           " (group possibly infinite or cap too small)");
        }
        index.emplace(std::move(k), idx);
        auto w = words[x];
        w.push_back(g);
        words.push_back(std::move(w));
        elems.push_back(std::move(y));
      } else {
        idx = it->second;
      }
      if (left[g].size() <= x) left[g].resize(x + 1);
      left[g][x] = idx;
    }
  }
  const std::size_t n = elems.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return less(elems[a], words[a], elems[b], words[b]);
  });
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[perm[i]] = i;

  FiniteGroup<E> out;
  out.elements.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.elements.push_back(elems[perm[i]]);
    out.words.push_back(words[perm[i]]);
  }
  out.identity = rank[0];
  out.table.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& w = words[perm[i]];
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t cur = perm[j];
      for (std::size_t g : w) cur = left[g][cur];
      out.table[i][j] = rank[cur];
    }
  }
  out.orders.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int ord = 1;
    std::size_t cur = i;
    while (cur != out.identity) {
      cur = out.table[i][cur];
      ++ord;
    }
    out.orders[i] = ord;
  }
  for (const auto& g : gens) out.generators.push_back(rank[index.at(key(g))]);
  return out;
}

}  // namespace cremona::detail
