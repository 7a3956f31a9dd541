#include "amf/gf.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <random>
#include <sstream>

namespace amf {

namespace {

std::mutex registry_mutex;
std::mutex embedding_mutex;

std::uint64_t power_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * b) % p);
    b = static_cast<std::uint64_t>((static_cast<unsigned __int128>(b) * b) % p);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::uint64_t GFCtx::inv_mod_p(std::uint64_t a) const {
  a %= p_;
  if (a == 0) throw std::domain_error("inverse of zero");
  return power_mod(a, p_ - 2, p_);
}

GFElem GFCtx::zero() const { return GFElem(this, std::vector<std::uint64_t>(k_, 0)); }

GFElem GFCtx::one() const {
  std::vector<std::uint64_t> c(k_, 0);
  c[0] = 1 % p_;
  return GFElem(this, c);
}

GFElem GFCtx::from_int(const Int& a) const {
  Int r = a % Int(p_);
  if (r < 0) r += Int(p_);
  std::vector<std::uint64_t> c(k_, 0);
  c[0] = r.convert_to<std::uint64_t>();
  return GFElem(this, c);
}

GFElem GFCtx::generator() const {
  if (k_ == 1) throw std::domain_error("prime field has no polynomial generator");
  std::vector<std::uint64_t> c(k_, 0);
  c[1] = 1;
  return GFElem(this, c);
}

GFElem GFCtx::from_coeffs(std::vector<std::uint64_t> c) const {
  c.resize(k_, 0);
  for (auto& x : c) x %= p_;
  return GFElem(this, std::move(c));
}

GFElem GFCtx::decode(const Int& e) const {
  Int v = e;
  std::vector<std::uint64_t> c(k_, 0);
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = (v % Int(p_)).convert_to<std::uint64_t>();
    v /= Int(p_);
  }
  if (v != 0) throw std::domain_error("encoding out of range");
  return GFElem(this, c);
}

bool GFElem::is_zero() const {
  if (!ctx_) return true;
  for (auto x : c_)
    if (x != 0) return false;
  return true;
}

const GFCtx* GFElem::resolved(const GFElem& o) const {
  const GFCtx* c = ctx_ ? ctx_ : o.ctx_;
  if (!c) throw std::domain_error("operation on two null field elements");
  if (ctx_ && o.ctx_ && ctx_ != o.ctx_) throw std::domain_error("field context mismatch");
  return c;
}

GFElem GFElem::operator+(const GFElem& o) const {
  const GFCtx* ctx = resolved(o);
  if (!ctx_) return o;
  if (!o.ctx_) return *this;
  std::vector<std::uint64_t> r(ctx->k());
  for (unsigned i = 0; i < ctx->k(); ++i) r[i] = ctx->add(c_[i], o.c_[i]);
  return GFElem(ctx, r);
}

GFElem GFElem::operator-(const GFElem& o) const { return *this + (-o); }

GFElem GFElem::operator-() const {
  if (!ctx_) return *this;
  std::vector<std::uint64_t> r(ctx_->k());
  for (unsigned i = 0; i < ctx_->k(); ++i) r[i] = ctx_->sub(0, c_[i]);
  return GFElem(ctx_, r);
}

GFElem GFElem::operator*(const GFElem& o) const {
  const GFCtx* ctx = resolved(o);
  if (!ctx_ || !o.ctx_) return GFElem(ctx, std::vector<std::uint64_t>(ctx->k(), 0));
  const unsigned k = ctx->k();
  std::vector<std::uint64_t> prod(2 * k - 1, 0);
  for (unsigned i = 0; i < k; ++i) {
    if (c_[i] == 0) continue;
    for (unsigned j = 0; j < k; ++j)
      prod[i + j] = ctx->add(prod[i + j], ctx->mul(c_[i], o.c_[j]));
  }
  // Reduce by x^k = -(defining).
  for (unsigned d = 2 * k - 2; d >= k; --d) {
    std::uint64_t top = prod[d];
    if (top == 0) continue;
    prod[d] = 0;
    for (unsigned i = 0; i < k; ++i)
      prod[d - k + i] = ctx->sub(prod[d - k + i], ctx->mul(top, ctx->defining()[i]));
    if (d == k) break;
  }
  prod.resize(k);
  return GFElem(ctx, prod);
}

GFElem GFElem::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  // a^(q-2) with q = p^k.
  return pow(ctx_->order() - 2);
}

GFElem GFElem::operator/(const GFElem& o) const { return *this * o.inverse(); }

GFElem GFElem::pow(Int e) const {
  if (!ctx_) {
    if (e == 0) throw std::domain_error("0^0 of null element");
    return *this;
  }
  if (e < 0) return inverse().pow(-e);
  GFElem base = *this, r = ctx_->one();
  while (e > 0) {
    if ((e & 1) != 0) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool GFElem::operator==(const GFElem& o) const {
  if (!ctx_ || !o.ctx_) return is_zero() && o.is_zero();
  if (ctx_ != o.ctx_) throw std::domain_error("field context mismatch");
  return c_ == o.c_;
}

Int GFElem::encode() const {
  if (!ctx_) return 0;
  Int r = 0;
  for (unsigned i = ctx_->k(); i-- > 0;) r = r * Int(ctx_->p()) + Int(c_[i]);
  return r;
}

std::string GFElem::to_string() const { return encode().str(); }

// ---------------------------------------------------------------------------
// Polynomials

GFPoly::GFPoly(const GFCtx* ctx, std::vector<GFElem> c) : ctx_(ctx), c_(std::move(c)) {
  trim();
}

void GFPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

GFPoly GFPoly::from_int_coeffs(const GFCtx* ctx, const std::vector<Int>& c) {
  std::vector<GFElem> e;
  e.reserve(c.size());
  for (const Int& x : c) e.push_back(ctx->from_int(x));
  return GFPoly(ctx, std::move(e));
}

GFPoly GFPoly::x_power(const GFCtx* ctx, std::size_t n) {
  std::vector<GFElem> c(n + 1, ctx->zero());
  c[n] = ctx->one();
  return GFPoly(ctx, std::move(c));
}

GFElem GFPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : ctx_->zero(); }

GFElem GFPoly::leading() const {
  if (c_.empty()) return ctx_->zero();
  return c_.back();
}

GFPoly GFPoly::operator+(const GFPoly& o) const {
  std::vector<GFElem> r(std::max(c_.size(), o.c_.size()), ctx_->zero());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < c_.size()) r[i] = r[i] + c_[i];
    if (i < o.c_.size()) r[i] = r[i] + o.c_[i];
  }
  return GFPoly(ctx_, std::move(r));
}

GFPoly GFPoly::operator-(const GFPoly& o) const { return *this + o.scaled(-ctx_->one()); }

GFPoly GFPoly::operator*(const GFPoly& o) const {
  if (is_zero() || o.is_zero()) return GFPoly(ctx_);
  std::vector<GFElem> r(c_.size() + o.c_.size() - 1, ctx_->zero());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
  }
  return GFPoly(ctx_, std::move(r));
}

GFPoly GFPoly::scaled(const GFElem& s) const {
  std::vector<GFElem> r = c_;
  for (auto& x : r) x = x * s;
  return GFPoly(ctx_, std::move(r));
}

GFPoly GFPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().inverse());
}

GFPoly GFPoly::derivative() const {
  if (c_.size() <= 1) return GFPoly(ctx_);
  std::vector<GFElem> r(c_.size() - 1, ctx_->zero());
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * ctx_->from_int(Int(i));
  return GFPoly(ctx_, std::move(r));
}

GFElem GFPoly::eval(const GFElem& x) const {
  GFElem r = ctx_->zero();
  for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

bool GFPoly::operator==(const GFPoly& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

void GFPoly::divmod(const GFPoly& a, const GFPoly& b, GFPoly& q, GFPoly& r) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const GFCtx* ctx = b.ctx_;
  std::vector<GFElem> rem = a.c_;
  std::vector<GFElem> quo;
  const std::size_t db = b.degree();
  if (a.degree() >= db && !a.is_zero()) quo.assign(a.degree() - db + 1, ctx->zero());
  GFElem lead_inv = b.leading().inverse();
  for (;;) {
    while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
    if (rem.size() < db + 1) break;
    std::size_t shift = rem.size() - 1 - db;
    GFElem f = rem.back() * lead_inv;
    quo[shift] = f;
    for (std::size_t i = 0; i <= db; ++i) rem[shift + i] = rem[shift + i] - f * b.c_[i];
  }
  q = GFPoly(ctx, std::move(quo));
  r = GFPoly(ctx, std::move(rem));
}

GFPoly GFPoly::operator%(const GFPoly& o) const {
  GFPoly q, r;
  divmod(*this, o, q, r);
  return r;
}

GFPoly GFPoly::operator/(const GFPoly& o) const {
  GFPoly q, r;
  divmod(*this, o, q, r);
  return q;
}

GFPoly GFPoly::gcd(GFPoly a, GFPoly b) {
  while (!b.is_zero()) {
    GFPoly r = a % b;
    a = b;
    b = r;
  }
  return a.monic();
}

GFPoly GFPoly::powmod(const GFPoly& a, Int e, const GFPoly& m) {
  GFPoly base = a % m;
  GFPoly r(m.ctx());
  r = GFPoly(m.ctx(), {m.ctx()->one()});
  while (e > 0) {
    if ((e & 1) != 0) r = (r * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return r;
}

std::string GFPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    os << c_[i].to_string();
    if (i > 0) os << "*x^" << i;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Factorization

namespace {

// Deterministic pseudo-random polynomial source for the equal-degree split,
// seeded from the input so results are reproducible.
struct SplitRng {
  std::mt19937_64 gen;
  explicit SplitRng(const GFPoly& f) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ULL;
    };
    mix(f.ctx()->p());
    mix(f.ctx()->k());
    for (const auto& c : f.coeffs())
      for (auto digit : c.coeffs()) mix(digit + 0x9e3779b97f4a7c15ULL);
    gen.seed(h);
  }
  GFPoly draw(const GFCtx* ctx, std::size_t max_deg) {
    std::vector<GFElem> c;
    c.reserve(max_deg + 1);
    for (std::size_t i = 0; i <= max_deg; ++i) {
      std::vector<std::uint64_t> digits(ctx->k());
      for (auto& d : digits) d = gen() % ctx->p();
      c.emplace_back(ctx, digits);
    }
    return GFPoly(ctx, std::move(c));
  }
};

void equal_degree_split(const GFPoly& f, unsigned d, SplitRng& rng,
                        std::vector<GFPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  const GFCtx* ctx = f.ctx();
  const Int q = ctx->order();
  for (;;) {
    GFPoly r = rng.draw(ctx, f.degree() - 1);
    if (r.is_zero()) continue;
    GFPoly g = GFPoly::gcd(r, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(f / g, d, rng, out);
      return;
    }
    GFPoly s(ctx);
    if (ctx->p() == 2) {
      // Trace map sum r^(2^i), i < k*d.
      s = r % f;
      GFPoly t = s;
      for (unsigned i = 1; i < ctx->k() * d; ++i) {
        t = (t * t) % f;
        s = s + t;
      }
    } else {
      Int e = (pow_int(q, d) - 1) / 2;
      s = GFPoly::powmod(r, e, f) - GFPoly(ctx, {ctx->one()});
    }
    GFPoly g2 = GFPoly::gcd(s, f);
    if (g2.degree() > 0 && g2.degree() < f.degree()) {
      equal_degree_split(g2, d, rng, out);
      equal_degree_split(f / g2, d, rng, out);
      return;
    }
  }
}

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<GFPoly, unsigned>> distinct_degree(const GFPoly& f0) {
  const GFCtx* ctx = f0.ctx();
  const Int q = ctx->order();
  std::vector<std::pair<GFPoly, unsigned>> out;
  GFPoly f = f0;
  GFPoly x = GFPoly::x_power(ctx, 1);
  GFPoly h = x;
  unsigned d = 0;
  while (f.degree() > 0) {
    ++d;
    if (2 * d > f.degree()) {
      out.emplace_back(f, static_cast<unsigned>(f.degree()));
      break;
    }
    h = GFPoly::powmod(h, q, f);
    GFPoly g = GFPoly::gcd(h - x, f);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  return out;
}

// p-th root in F_{p^k}: x -> x^(p^(k-1)).
GFElem pth_root(const GFElem& a) {
  const GFCtx* ctx = a.ctx();
  return a.pow(pow_int(Int(ctx->p()), ctx->k() - 1));
}

void factor_rec(const GFPoly& f, unsigned outer_mult, std::map<Int, GFFactor>& acc,
                std::vector<GFPoly>& order);

void record(const GFPoly& fac, unsigned mult, std::map<Int, GFFactor>& acc,
            std::vector<GFPoly>& order) {
  // Key by coefficient encoding for dedup.
  Int key = 0;
  for (std::size_t i = 0; i <= fac.degree(); ++i)
    key = key * fac.ctx()->order() + fac.coeff(i).encode();
  auto it = acc.find(key);
  if (it == acc.end()) {
    acc.emplace(key, GFFactor{fac, mult});
    order.push_back(fac);
  } else {
    it->second.multiplicity += mult;
  }
}

void factor_squarefree(const GFPoly& f, unsigned mult, std::map<Int, GFFactor>& acc,
                       std::vector<GFPoly>& order) {
  SplitRng rng(f);
  for (auto& [part, d] : distinct_degree(f)) {
    if (part.degree() == d) {
      record(part.monic(), mult, acc, order);
      continue;
    }
    std::vector<GFPoly> irr;
    equal_degree_split(part, d, rng, irr);
    for (auto& g : irr) record(g, mult, acc, order);
  }
}

void factor_rec(const GFPoly& f, unsigned outer_mult, std::map<Int, GFFactor>& acc,
                std::vector<GFPoly>& order) {
  if (f.degree() == 0) return;
  const GFCtx* ctx = f.ctx();
  GFPoly fp = f.derivative();
  if (fp.is_zero()) {
    // f = g(x^p); take p-th roots of coefficients.
    std::vector<GFElem> g(f.degree() / ctx->p() + 1, ctx->zero());
    for (std::size_t i = 0; i <= f.degree(); i += ctx->p())
      g[i / ctx->p()] = pth_root(f.coeff(i));
    factor_rec(GFPoly(ctx, std::move(g)), outer_mult * static_cast<unsigned>(ctx->p()), acc,
               order);
    return;
  }
  GFPoly g = GFPoly::gcd(f, fp);
  if (g.degree() == 0) {
    factor_squarefree(f.monic(), outer_mult, acc, order);
    return;
  }
  factor_rec(f / g, outer_mult, acc, order);
  factor_rec(g, outer_mult, acc, order);
}

}  // namespace

std::vector<GFFactor> gf_factor(const GFPoly& f) {
  if (f.is_zero()) throw std::domain_error("factor of zero polynomial");
  std::map<Int, GFFactor> acc;
  std::vector<GFPoly> order;
  factor_rec(f.monic(), 1, acc, order);
  // Re-derive true multiplicities by division (the squarefree recursion
  // over-counts shared factors between f/g and g).
  std::vector<GFFactor> out;
  GFPoly rem = f.monic();
  std::vector<std::pair<Int, GFPoly>> sorted;
  for (auto& fac : order) {
    Int key = 0;
    for (std::size_t i = 0; i <= fac.degree(); ++i)
      key = key * f.ctx()->order() + fac.coeff(i).encode();
    sorted.emplace_back(key, fac);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [key, fac] : sorted) {
    unsigned m = 0;
    for (;;) {
      GFPoly q, r;
      GFPoly::divmod(rem, fac, q, r);
      if (!r.is_zero()) break;
      rem = q;
      ++m;
    }
    if (m > 0) out.push_back(GFFactor{fac, m});
  }
  if (rem.degree() != 0) throw std::logic_error("factorization incomplete");
  return out;
}

std::vector<std::pair<GFElem, unsigned>> gf_roots(const GFPoly& f) {
  std::vector<std::pair<GFElem, unsigned>> out;
  for (const auto& fac : gf_factor(f)) {
    if (fac.factor.degree() != 1) continue;
    // x + c0 -> root -c0.
    out.emplace_back(-fac.factor.coeff(0), fac.multiplicity);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first.encode() < b.first.encode(); });
  return out;
}

bool gf_is_irreducible(const GFPoly& f) {
  if (f.degree() == 0) return false;
  auto fac = gf_factor(f);
  return fac.size() == 1 && fac[0].multiplicity == 1;
}

// ---------------------------------------------------------------------------
// Context construction

namespace {

// Monic polynomial of degree k over F_p with coefficient encoding n.
std::vector<std::uint64_t> defining_from_index(std::uint64_t p, unsigned k, const Int& n) {
  std::vector<std::uint64_t> c(k);
  Int v = n;
  for (unsigned i = 0; i < k; ++i) {
    c[i] = (v % Int(p)).convert_to<std::uint64_t>();
    v /= Int(p);
  }
  return c;
}

}  // namespace

GFCtx::GFCtx(std::uint64_t p, unsigned k) : p_(p), k_(k) {
  if (!is_prime(Int(p))) throw std::domain_error("characteristic must be prime");
  if (k == 0) throw std::domain_error("degree must be positive");
  Int bits = Int(1) << 64;
  if (pow_int(Int(p), k) > bits) throw std::domain_error("field size exceeds 2^64");
  if (k == 1) {
    defining_ = {0};  // f = x
    return;
  }
  const GFCtx* base = GFCtx::get(p, 1);
  for (Int n = 0;; ++n) {
    std::vector<std::uint64_t> cand = defining_from_index(p, k, n);
    std::vector<GFElem> c;
    for (unsigned i = 0; i < k; ++i) c.push_back(base->from_int(Int(cand[i])));
    c.push_back(base->one());
    GFPoly f(base, std::move(c));
    if (gf_is_irreducible(f)) {
      defining_ = cand;
      return;
    }
  }
}

const GFCtx* GFCtx::get(std::uint64_t p, unsigned k) {
  static std::map<std::pair<std::uint64_t, unsigned>, std::unique_ptr<GFCtx>> registry;
  auto key = std::make_pair(p, k);
  {
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto it = registry.find(key);
    if (it != registry.end()) return it->second.get();
  }
  // Construct outside the lock: building F_{p^k} recurses into get(p, 1).
  auto fresh = std::unique_ptr<GFCtx>(new GFCtx(p, k));
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto it = registry.find(key);
  if (it == registry.end()) it = registry.emplace(key, std::move(fresh)).first;
  return it->second.get();
}

GFElem GFCtx::embed(const GFElem& a, const GFCtx* big) const {
  if (big == this) return a;
  if (big->p_ != p_ || big->k_ % k_ != 0)
    throw std::domain_error("no embedding between these fields");
  GFElem image;
  {
    std::lock_guard<std::mutex> lock(embedding_mutex);
    auto it = embeddings_.find(big);
    if (it != embeddings_.end()) image = it->second;
  }
  if (image.ctx() == nullptr) {
    // Canonical image of the generator: smallest root of the defining
    // polynomial in the big field.
    std::vector<Int> coeffs;
    for (unsigned i = 0; i < k_; ++i) coeffs.push_back(Int(defining_[i]));
    coeffs.push_back(1);
    GFPoly f = GFPoly::from_int_coeffs(big, coeffs);
    auto roots = gf_roots(f);
    if (roots.empty()) throw std::logic_error("defining polynomial has no root in extension");
    image = roots.front().first;
    std::lock_guard<std::mutex> lock(embedding_mutex);
    embeddings_.emplace(big, image);
  }
  // Evaluate a's coordinate polynomial at the generator image.
  GFElem r = big->zero();
  for (unsigned i = k_; i-- > 0;) r = r * image + big->from_int(Int(a.coeffs()[i]));
  return r;
}

}  // namespace amf
