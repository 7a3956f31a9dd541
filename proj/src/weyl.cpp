#include "amf/weyl.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace amf {

namespace {

std::vector<Int> key_of(const IntMat& m) {
  std::vector<Int> k;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) k.push_back(m(i, j));
  return k;
}

WeylGroup build(WeylType type) {
  WeylGroup g;
  if (type == WeylType::A2) {
    // S_3 on three letters: adjacent transpositions.
    IntMat s1{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
    IntMat s2{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
    g.simple = {s1, s2};
  } else {
    // Hyperoctahedral group of rank 2: coordinate swap and a sign flip.
    IntMat s1{{0, 1}, {1, 0}};
    IntMat s2{{1, 0}, {0, -1}};
    g.simple = {s1, s2};
  }
  const std::size_t n = g.simple[0].rows();
  std::map<std::vector<Int>, std::size_t> seen;
  std::deque<std::size_t> queue;
  g.elements.push_back(IntMat::identity(n));
  g.lengths.push_back(0);
  seen[key_of(g.elements[0])] = 0;
  queue.push_back(0);
  while (!queue.empty()) {
    std::size_t idx = queue.front();
    queue.pop_front();
    for (const auto& s : g.simple) {
      IntMat next = g.elements[idx] * s;
      auto key = key_of(next);
      if (seen.count(key)) continue;
      seen[key] = g.elements.size();
      g.elements.push_back(next);
      g.lengths.push_back(g.lengths[idx] + 1);
      queue.push_back(g.elements.size() - 1);
    }
  }
  return g;
}

std::vector<std::size_t> subgroup_elements(const WeylGroup& g, const std::vector<int>& gens) {
  std::map<std::vector<Int>, std::size_t> index;
  for (std::size_t i = 0; i < g.elements.size(); ++i) index[key_of(g.elements[i])] = i;
  std::vector<bool> in(g.elements.size(), false);
  std::deque<std::size_t> queue;
  in[index.at(key_of(IntMat::identity(g.elements[0].rows())))] = true;
  queue.push_back(0);
  while (!queue.empty()) {
    std::size_t idx = queue.front();
    queue.pop_front();
    for (int s : gens) {
      if (s < 0 || s > 1) throw std::invalid_argument("generator index must be 0 or 1");
      std::size_t nx = index.at(key_of(g.elements[idx] * g.simple[s]));
      if (!in[nx]) {
        in[nx] = true;
        queue.push_back(nx);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) out.push_back(i);
  return out;
}

}  // namespace

const WeylGroup& WeylGroup::get(WeylType type) {
  static const WeylGroup a2 = build(WeylType::A2);
  static const WeylGroup c2 = build(WeylType::C2);
  return type == WeylType::A2 ? a2 : c2;
}

std::size_t weyl_double_cosets(WeylType type, const std::vector<int>& left_gens,
                               const std::vector<int>& right_gens) {
  const WeylGroup& g = WeylGroup::get(type);
  std::map<std::vector<Int>, std::size_t> index;
  for (std::size_t i = 0; i < g.elements.size(); ++i) index[key_of(g.elements[i])] = i;
  auto left = subgroup_elements(g, left_gens);
  auto right = subgroup_elements(g, right_gens);
  std::vector<bool> assigned(g.elements.size(), false);
  std::size_t count = 0;
  for (std::size_t w = 0; w < g.elements.size(); ++w) {
    if (assigned[w]) continue;
    ++count;
    for (auto l : left)
      for (auto r : right) {
        IntMat x = g.elements[l] * g.elements[w] * g.elements[r];
        assigned[index.at(key_of(x))] = true;
      }
  }
  return count;
}

Int bruhat_index(WeylType type, const std::vector<int>& parabolic_gens, const Int& q) {
  const WeylGroup& g = WeylGroup::get(type);
  std::map<std::vector<Int>, std::size_t> index;
  for (std::size_t i = 0; i < g.elements.size(); ++i) index[key_of(g.elements[i])] = i;
  auto sub = subgroup_elements(g, parabolic_gens);
  std::vector<bool> seen(g.elements.size(), false);
  Int total = 0;
  for (std::size_t w = 0; w < g.elements.size(); ++w) {
    if (seen[w]) continue;
    unsigned min_len = g.lengths[w];
    for (auto s : sub) {
      std::size_t x = index.at(key_of(g.elements[s] * g.elements[w]));
      seen[x] = true;
      min_len = std::min(min_len, g.lengths[x]);
    }
    total += pow_int(q, min_len);
  }
  return total;
}

}  // namespace amf
