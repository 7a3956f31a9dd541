#include "amf/corpus.hpp"

#include <numeric>
#include <sstream>

namespace amf {

DoubleCosetModel tiny_model() {
  DoubleCosetModel m;
  m.x_k = {"a"};
  m.x_kp = {"b"};
  m.x_j = {"1", "2"};
  m.pi = {0, 0};
  m.pip = {0, 0};
  m.w_k = {1};
  m.w_kp = {1};
  m.w_j = {1, 1};
  return m;
}

DoubleCosetModel broken_mass_model() {
  DoubleCosetModel m = tiny_model();
  m.w_j = {2, 1};  // 1/2 + 1 is no integer multiple of 1
  return m;
}

namespace {

// Vertex order: u+, u-, v+, v-.
IntMat cover_adjacency(const Int& q, unsigned plus_edges) {
  Int k = plus_edges;
  Int m = q + 1 - k;
  return IntMat{{0, 0, k, m}, {0, 0, m, k}, {k, m, 0, 0}, {m, k, 0, 0}};
}

IntMat deck_matrix() { return IntMat{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}; }

std::string edge_label(bool from_u, unsigned bundle, bool sign_plus) {
  std::ostringstream os;
  os << (from_u ? "uv" : "vu") << bundle << (sign_plus ? "+" : "-");
  return os.str();
}

}  // namespace

DoubleCosetModel double_cover_model(const Int& q, unsigned plus_edges) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  unsigned total = (q + 1).convert_to<unsigned>();
  if (plus_edges < 1 || plus_edges >= total)
    throw std::invalid_argument("both edge signs must occur");

  DoubleCosetModel m;
  m.x_k = {"u+", "u-", "v+", "v-"};
  m.x_kp = m.x_k;
  m.prime_q = q;
  m.rank_one = true;

  // Directed lifted edges: each base bundle i with sign eps lifts to
  // (u,s) -> (v, s*eps) and (v,s) -> (u, s*eps).
  for (unsigned dir = 0; dir < 2; ++dir)
    for (unsigned i = 0; i < total; ++i)
      for (unsigned s = 0; s < 2; ++s) {
        bool from_u = dir == 0;
        bool s_plus = s == 0;
        bool eps_plus = i < plus_edges;
        bool head_plus = s_plus == eps_plus;
        m.x_j.push_back(edge_label(from_u, i, s_plus));
        std::size_t tail = (from_u ? 0 : 2) + (s_plus ? 0 : 1);
        std::size_t head = (from_u ? 2 : 0) + (head_plus ? 0 : 1);
        m.pi.push_back(tail);
        m.pip.push_back(head);
      }
  m.w_k.assign(4, 1);
  m.w_kp.assign(4, 1);
  m.w_j.assign(m.x_j.size(), 1);

  IntMat adj = cover_adjacency(q, plus_edges);
  IntMat deck = deck_matrix();
  // Deck transformation lifted to edges: flip the sign coordinate.
  const std::size_t nj = m.x_j.size();
  IntMat deck_j(nj, nj);
  for (std::size_t y = 0; y < nj; ++y) deck_j(y ^ 1u, y) = 1;  // s is the low bit

  ModelOperator t;
  t.name = "t";
  t.level = Level::K;
  t.matrix = adj;
  t.adjoint = "t";
  ModelOperator t_kp = t;
  t_kp.name = "t_kp";
  t_kp.level = Level::Kp;
  t_kp.adjoint = "t_kp";
  ModelOperator d;
  d.name = "deck";
  d.level = Level::K;
  d.matrix = deck;
  d.adjoint = "deck";
  ModelOperator d_kp = d;
  d_kp.name = "deck_kp";
  d_kp.level = Level::Kp;
  d_kp.adjoint = "deck_kp";
  ModelOperator dj;
  dj.name = "deck_j";
  dj.level = Level::J;
  dj.matrix = deck_j;
  dj.adjoint = "deck_j";
  dj.central_at_j = true;
  m.operators = {d, dj, d_kp, t, t_kp};  // sorted by name
  std::sort(m.operators.begin(), m.operators.end(),
            [](const ModelOperator& a, const ModelOperator& b) { return a.name < b.name; });
  return m;
}

DoubleCosetModel double_cover_aux_model(const Int& q, unsigned plus_edges) {
  DoubleCosetModel base = double_cover_model(q, plus_edges);
  DoubleCosetModel m;
  m.prime_q = base.prime_q;
  m.rank_one = false;  // the auxiliary factor breaks the Iwahori shape
  auto expand_labels = [](const std::vector<std::string>& in) {
    std::vector<std::string> out;
    for (const auto& l : in)
      for (const char* tag : {".1", ".2"}) out.push_back(l + tag);
    return out;
  };
  m.x_k = expand_labels(base.x_k);
  m.x_kp = expand_labels(base.x_kp);
  m.x_j = expand_labels(base.x_j);
  for (std::size_t y = 0; y < base.x_j.size(); ++y)
    for (std::size_t a = 0; a < 2; ++a) {
      m.pi.push_back(2 * base.pi[y] + a);
      m.pip.push_back(2 * base.pip[y] + a);
    }
  m.w_k.assign(m.x_k.size(), 1);
  m.w_kp.assign(m.x_kp.size(), 1);
  m.w_j.assign(m.x_j.size(), 1);

  auto tensor_identity = [](const IntMat& a) {
    IntMat out(2 * a.rows(), 2 * a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t s = 0; s < 2; ++s) out(2 * i + s, 2 * j + s) = a(i, j);
    return out;
  };
  auto swap_factor = [](std::size_t n) {
    IntMat out(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      out(2 * i, 2 * i + 1) = 1;
      out(2 * i + 1, 2 * i) = 1;
    }
    return out;
  };

  for (const auto& op : base.operators) {
    ModelOperator lifted = op;
    lifted.matrix = tensor_identity(op.matrix);
    m.operators.push_back(std::move(lifted));
  }
  ModelOperator aux;
  aux.name = "aux";
  aux.level = Level::K;
  aux.matrix = swap_factor(base.x_k.size());
  aux.adjoint = "aux";
  ModelOperator aux_kp = aux;
  aux_kp.name = "aux_kp";
  aux_kp.level = Level::Kp;
  aux_kp.adjoint = "aux_kp";
  ModelOperator aux_j;
  aux_j.name = "aux_j";
  aux_j.level = Level::J;
  aux_j.matrix = swap_factor(base.x_j.size());
  aux_j.adjoint = "aux_j";
  aux_j.central_at_j = true;
  m.operators.push_back(aux);
  m.operators.push_back(aux_kp);
  m.operators.push_back(aux_j);
  std::sort(m.operators.begin(), m.operators.end(),
            [](const ModelOperator& a, const ModelOperator& b) { return a.name < b.name; });
  return m;
}

std::vector<RaisingInstance> raising_corpus() {
  std::vector<RaisingInstance> out;
  auto add = [&out](std::string name, DoubleCosetModel model, Int ell, Int theta,
                    long expected_n) {
    out.push_back({std::move(name), std::move(model), std::move(ell), std::move(theta),
                   expected_n});
  };
  // theta = 2*plus - (q+1); the congruence is ell^n | theta^2 - (q+1)^2.
  add("raising_q3_l3", double_cover_model(3, 3), 3, 2, 1);    // 4 - 16 = -12
  add("raising_q4_l3", double_cover_model(4, 3), 3, 1, 1);    // 1 - 25 = -24
  add("raising_q5_l5", double_cover_model(5, 5), 5, 4, 1);    // 16 - 36 = -20
  add("raising_q6_l5", double_cover_model(6, 5), 5, 3, 1);    // 9 - 49 = -40
  add("raising_q13_l3", double_cover_model(13, 9), 3, 4, 2);  // 16 - 196 = -180
  add("raising_q3_l3_aux", double_cover_aux_model(3, 3), 3, 2, 1);
  return out;
}

DoubleCosetModel random_valid_model(std::mt19937_64& rng) {
  DoubleCosetModel m;
  const std::size_t nk = 1 + rng() % 4;
  const std::size_t nkp = 1 + rng() % 4;
  const std::size_t base = std::lcm(nk, nkp);
  std::size_t nj = base * (1 + rng() % (12 / base + 1));
  if (nj > 50) nj = base;

  for (std::size_t i = 0; i < nk; ++i) m.x_k.push_back("k" + std::to_string(i));
  for (std::size_t i = 0; i < nkp; ++i) m.x_kp.push_back("p" + std::to_string(i));
  for (std::size_t i = 0; i < nj; ++i) m.x_j.push_back("j" + std::to_string(i));

  // Balanced fibers: pi cycles through X_K; pip through X_K' after a random
  // shuffle, so both projections are surjective with even fiber sizes.
  std::vector<std::size_t> order(nj);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  m.pi.resize(nj);
  m.pip.resize(nj);
  for (std::size_t y = 0; y < nj; ++y) {
    m.pi[y] = y % nk;
    m.pip[order[y]] = y % nkp;
  }

  m.w_j.resize(nj);
  for (std::size_t y = 0; y < nj; ++y) m.w_j[y] = 1 + rng() % 4;

  for (Level side : {Level::K, Level::Kp}) {
    const auto& proj = side == Level::K ? m.pi : m.pip;
    const std::size_t n = side == Level::K ? nk : nkp;
    std::vector<Rat> mass(n, Rat(0));
    for (std::size_t y = 0; y < nj; ++y) mass[proj[y]] += Rat(1) / Rat(m.w_j[y]);
    Int index = 1;
    for (const Rat& s : mass) index = lcm_int(index, num(s));
    std::vector<Int> w(n);
    for (std::size_t x = 0; x < n; ++x) {
      Rat wx = Rat(index) / mass[x];
      w[x] = num(wx);
      if (!is_int(wx)) throw std::logic_error("weight synthesis failed");
    }
    if (side == Level::K) m.w_k = std::move(w);
    else m.w_kp = std::move(w);
  }
  return m;
}

}  // namespace amf
