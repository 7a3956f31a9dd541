#include "amf/coset_model.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace amf {

std::string level_name(Level level) {
  switch (level) {
    case Level::K: return "K";
    case Level::Kp: return "Kp";
    case Level::J: return "J";
  }
  return "?";
}

std::size_t DoubleCosetModel::size(Level level) const {
  switch (level) {
    case Level::K: return x_k.size();
    case Level::Kp: return x_kp.size();
    case Level::J: return x_j.size();
  }
  return 0;
}

const std::vector<Int>& DoubleCosetModel::weights(Level level) const {
  switch (level) {
    case Level::K: return w_k;
    case Level::Kp: return w_kp;
    case Level::J: return w_j;
  }
  throw std::logic_error("bad level");
}

const ModelOperator* DoubleCosetModel::find_operator(const std::string& name) const {
  for (const auto& op : operators)
    if (op.name == name) return &op;
  return nullptr;
}

std::vector<const ModelOperator*> DoubleCosetModel::operators_at(Level level) const {
  std::vector<const ModelOperator*> out;
  for (const auto& op : operators)
    if (op.level == level) out.push_back(&op);
  return out;
}

std::vector<const ModelOperator*> DoubleCosetModel::central_operators() const {
  std::vector<const ModelOperator*> out;
  for (const auto& op : operators)
    if (op.central_at_j) out.push_back(&op);
  return out;
}

namespace {

const std::vector<std::size_t>& projection(const DoubleCosetModel& model, Level side) {
  if (side == Level::K) return model.pi;
  if (side == Level::Kp) return model.pip;
  throw std::logic_error("projection side must be K or K'");
}

// Mass formula at one side: w(x) * sum_{fiber} 1/w_J(y) must be one integer
// for every x; returns it, or nullopt with a witness message.
std::optional<Int> mass_formula(const DoubleCosetModel& model, Level side, std::string* witness) {
  const auto& proj = projection(model, side);
  const auto& w = model.weights(side);
  const auto& labels = side == Level::K ? model.x_k : model.x_kp;
  std::optional<Int> index;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    Rat sum = 0;
    for (std::size_t y = 0; y < model.x_j.size(); ++y)
      if (proj[y] == x) sum += Rat(1) / Rat(model.w_j[y]);
    Rat ind = sum * Rat(w[x]);
    if (!is_int(ind) || num(ind) <= 0) {
      if (witness)
        *witness = "at " + labels[x] + ": w(x)*sum 1/w_J = " + to_string(ind) +
                   " is not a positive integer";
      return std::nullopt;
    }
    if (index && *index != num(ind)) {
      if (witness)
        *witness = "at " + labels[x] + ": index " + num(ind).str() + " != " + index->str();
      return std::nullopt;
    }
    index = num(ind);
  }
  return index;
}

}  // namespace

Int mass_index(const DoubleCosetModel& model, Level side) {
  std::string witness;
  auto idx = mass_formula(model, side, &witness);
  if (!idx) throw std::domain_error("mass formula fails: " + witness);
  return *idx;
}

IntMat pullback(const DoubleCosetModel& model, Level side) {
  const auto& proj = projection(model, side);
  IntMat p(model.x_j.size(), model.size(side));
  for (std::size_t y = 0; y < proj.size(); ++y) p(y, proj[y]) = 1;
  return p;
}

RatMat pullback_adjoint(const DoubleCosetModel& model, Level side) {
  const auto& proj = projection(model, side);
  const auto& w = model.weights(side);
  RatMat a(model.size(side), model.x_j.size());
  for (std::size_t y = 0; y < proj.size(); ++y)
    a(proj[y], y) = Rat(w[proj[y]]) / Rat(model.w_j[y]);
  return a;
}

RatMat averaging_projector(const DoubleCosetModel& model, Level side) {
  Int index = mass_index(model, side);
  RatMat e = to_rat(pullback(model, side)) * pullback_adjoint(model, side);
  return e * (Rat(1) / Rat(index));
}

RatMat gram_matrix(const DoubleCosetModel& model, Level level) {
  const auto& w = model.weights(level);
  RatMat g(w.size(), w.size());
  for (std::size_t i = 0; i < w.size(); ++i) g(i, i) = Rat(1) / Rat(w[i]);
  return g;
}

AnnihilatorData annihilators(const DoubleCosetModel& model, Level level) {
  const auto& w = model.weights(level);
  AnnihilatorData out{1, 1};
  for (const Int& x : w) out.a_min = lcm_int(out.a_min, x);
  // Dual lattice of Z^X under the weighted pairing is spanned by w(x) e_x;
  // b_min is the exponent needed to push it into Z^X.
  const std::size_t n = w.size();
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<Int> v(n, 0);
    v[x] = w[x];
    // minimal b with b*v in Z^X is 1 here; kept as a lattice computation so
    // the invariant is checked rather than assumed
    Lattice full = Lattice::full(n);
    if (!full.contains(v)) throw std::logic_error("dual basis vector not integral");
  }
  out.b_min = 1;
  return out;
}

ValidationReport validate(const DoubleCosetModel& model) {
  ValidationReport report;
  auto fail = [&report](const std::string& code, const std::string& msg) {
    report.failures.push_back({code, msg});
  };

  if (model.x_k.empty() || model.x_kp.empty() || model.x_j.empty())
    fail("empty_set", "all three index sets must be nonempty");
  if (model.pi.size() != model.x_j.size() || model.pip.size() != model.x_j.size())
    fail("projection_size", "pi and pip must be defined on all of X_J");
  const std::vector<std::pair<const std::vector<Int>*, Level>> weight_sets = {
      {&model.w_k, Level::K}, {&model.w_kp, Level::Kp}, {&model.w_j, Level::J}};
  for (auto [w, lvl] : weight_sets) {
    if (w->size() != model.size(lvl)) fail("weight_size", "weights missing at " + level_name(lvl));
    for (const Int& x : *w)
      if (x <= 0) fail("weight_positive", "weight " + x.str() + " at " + level_name(lvl));
  }
  if (!report.failures.empty()) return report;

  for (std::size_t y = 0; y < model.x_j.size(); ++y) {
    if (model.pi[y] >= model.x_k.size()) fail("projection_range", "pi out of range");
    if (model.pip[y] >= model.x_kp.size()) fail("projection_range", "pip out of range");
  }
  if (!report.failures.empty()) return report;

  // Surjectivity.
  for (Level side : {Level::K, Level::Kp}) {
    const auto& proj = projection(model, side);
    std::vector<bool> hit(model.size(side), false);
    for (auto x : proj) hit[x] = true;
    for (std::size_t x = 0; x < hit.size(); ++x)
      if (!hit[x])
        fail("not_surjective", (side == Level::K ? model.x_k[x] : model.x_kp[x]) +
                                   " has empty fiber under " +
                                   (side == Level::K ? "pi" : "pip"));
  }

  // Mass formula; records the indices.
  for (Level side : {Level::K, Level::Kp}) {
    std::string witness;
    auto idx = mass_formula(model, side, &witness);
    if (!idx) fail("mass_formula", level_name(side) + ": " + witness);
    else if (side == Level::K)
      report.index_k = *idx;
    else
      report.index_kp = *idx;
  }
  if (!report.failures.empty()) return report;

  // Operators: shapes, adjoint pairing, centrality claims.
  for (const auto& op : model.operators) {
    const std::size_t n = model.size(op.level);
    if (op.matrix.rows() != n || op.matrix.cols() != n) {
      fail("operator_shape", op.name + ": matrix is not " + std::to_string(n) + "x" +
                                 std::to_string(n));
      continue;
    }
    const ModelOperator* partner = model.find_operator(op.adjoint);
    if (!partner) {
      fail("adjoint_missing", op.name + ": adjoint partner '" + op.adjoint + "' not registered");
      continue;
    }
    if (partner->level != op.level)
      fail("adjoint_level", op.name + ": adjoint partner lives at another level");
    if (partner->adjoint != op.name)
      fail("adjoint_symmetry", op.name + ": partner declares a different adjoint");
    if (op.central_at_j && op.level != Level::J)
      fail("central_level", op.name + ": central-at-J flag on a non-J operator");
    if (partner->level == op.level && op.matrix.rows() == n && partner->matrix.rows() == n) {
      // <Mf,g> = <f,M~g>  iff  M^T G = G M~.
      RatMat g = gram_matrix(model, op.level);
      RatMat lhs = to_rat(op.matrix).transpose() * g;
      RatMat rhs = g * to_rat(partner->matrix);
      if (!(lhs == rhs))
        fail("adjointness", op.name + " / " + op.adjoint + ": pairing adjointness fails");
    }
  }
  if (!report.failures.empty()) return report;

  auto central = model.central_operators();
  if (!central.empty()) {
    RatMat ek = averaging_projector(model, Level::K);
    RatMat ekp = averaging_projector(model, Level::Kp);
    for (std::size_t i = 0; i < central.size(); ++i) {
      RatMat m = to_rat(central[i]->matrix);
      if (!(m * ek == ek * m))
        fail("centrality", central[i]->name + ": does not commute with the K-projector");
      if (!(m * ekp == ekp * m))
        fail("centrality", central[i]->name + ": does not commute with the K'-projector");
      for (std::size_t j = i + 1; j < central.size(); ++j)
        if (!(central[i]->matrix * central[j]->matrix ==
              central[j]->matrix * central[i]->matrix))
          fail("centrality",
               central[i]->name + " and " + central[j]->name + " do not commute");
    }
  }

  report.accepted = report.failures.empty();
  return report;
}

ClassPartition class_partition(const DoubleCosetModel& model) {
  const std::size_t n = model.x_j.size();
  // Union-find over X_J, merging pi-fibers and pip-fibers.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };

  for (Level side : {Level::K, Level::Kp}) {
    const auto& proj = projection(model, side);
    std::vector<std::size_t> first(model.size(side), n);
    for (std::size_t y = 0; y < n; ++y) {
      if (first[proj[y]] == n) first[proj[y]] = y;
      else unite(y, first[proj[y]]);
    }
  }

  ClassPartition out;
  out.class_of.assign(n, 0);
  std::vector<std::size_t> root_to_class;
  std::vector<std::size_t> seen_root;
  for (std::size_t y = 0; y < n; ++y) {
    std::size_t r = find(y);
    auto it = std::find(seen_root.begin(), seen_root.end(), r);
    if (it == seen_root.end()) {
      seen_root.push_back(r);
      out.representative.push_back(y);  // smallest in input order
      out.class_of[y] = seen_root.size() - 1;
    } else {
      out.class_of[y] = static_cast<std::size_t>(it - seen_root.begin());
    }
  }
  out.num_classes = seen_root.size();

  // Chain radius: BFS where one step stays inside a pi-fiber or pip-fiber.
  out.radius.assign(n, 0);
  std::vector<bool> visited(n, false);
  std::deque<std::size_t> bfs;
  for (std::size_t c = 0; c < out.num_classes; ++c) {
    bfs.push_back(out.representative[c]);
    visited[out.representative[c]] = true;
  }
  while (!bfs.empty()) {
    std::size_t y = bfs.front();
    bfs.pop_front();
    for (std::size_t u = 0; u < n; ++u) {
      if (visited[u]) continue;
      if (model.pi[u] == model.pi[y] || model.pip[u] == model.pip[y]) {
        visited[u] = true;
        out.radius[u] = out.radius[y] + 1;
        bfs.push_back(u);
      }
    }
  }

  // Induced blocks at K and K': image of each class.
  out.block_of_k.assign(model.x_k.size(), 0);
  out.block_of_kp.assign(model.x_kp.size(), 0);
  for (std::size_t y = 0; y < n; ++y) {
    out.block_of_k[model.pi[y]] = out.class_of[y];
    out.block_of_kp[model.pip[y]] = out.class_of[y];
  }
  return out;
}

IntMat class_constant_basis(const DoubleCosetModel& model, Level side) {
  ClassPartition part = class_partition(model);
  const auto& block = side == Level::K ? part.block_of_k : part.block_of_kp;
  IntMat basis(part.num_classes, block.size());
  for (std::size_t x = 0; x < block.size(); ++x) basis(block[x], x) = 1;
  return basis;
}

}  // namespace amf
