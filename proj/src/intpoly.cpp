#include "amf/intpoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace amf {

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return IntPoly();
  std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return IntPoly(std::move(r));
}

bool IntPoly::operator<(const IntPoly& o) const {
  if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
  for (std::size_t i = c_.size(); i-- > 0;)
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  return false;
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return IntPoly();
  std::vector<Int> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Int(i);
  return IntPoly(std::move(r));
}

Int IntPoly::eval(const Int& x) const {
  Int r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

Rat IntPoly::eval(const Rat& x) const {
  Rat r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = r * x + Rat(c_[i]);
  return r;
}

IntMat IntPoly::eval(const IntMat& a) const {
  assert(a.rows() == a.cols());
  IntMat r(a.rows(), a.cols());
  for (std::size_t i = c_.size(); i-- > 0;) {
    r = r * a;
    for (std::size_t d = 0; d < a.rows(); ++d) r(d, d) += c_[i];
  }
  return r;
}

RatMat IntPoly::eval(const RatMat& a) const {
  assert(a.rows() == a.cols());
  RatMat r(a.rows(), a.cols());
  for (std::size_t i = c_.size(); i-- > 0;) {
    r = r * a;
    for (std::size_t d = 0; d < a.rows(); ++d) r(d, d) += Rat(c_[i]);
  }
  return r;
}

Int IntPoly::content() const {
  Int g = 0;
  for (const Int& x : c_) g = gcd_int(g, x);
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return *this;
  Int g = content();
  if (leading() < 0) g = -g;
  std::vector<Int> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] / g;
  return IntPoly(std::move(r));
}

bool IntPoly::try_divide(const IntPoly& d, IntPoly* q) const {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  std::vector<Int> rem = c_;
  std::vector<Int> quo;
  const std::size_t dd = d.degree();
  if (c_.size() >= d.c_.size()) quo.assign(c_.size() - d.c_.size() + 1, Int(0));
  for (;;) {
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    if (rem.size() < dd + 1) break;
    if (rem.back() % d.leading() != 0) return false;
    Int f = rem.back() / d.leading();
    std::size_t shift = rem.size() - 1 - dd;
    quo[shift] = f;
    for (std::size_t i = 0; i <= dd; ++i) rem[shift + i] -= f * d.c_[i];
  }
  if (!rem.empty()) return false;
  if (q) *q = IntPoly(std::move(quo));
  return true;
}

IntPoly IntPoly::divide_exact(const IntPoly& d) const {
  IntPoly q;
  if (!try_divide(d, &q)) throw std::domain_error("inexact polynomial division");
  return q;
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) os << (c_[i] > 0 ? " + " : " - ");
    else if (c_[i] < 0)
      os << "-";
    Int a = abs_int(c_[i]);
    if (a != 1 || i == 0) os << a.str();
    if (i >= 1) {
      os << "x";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

namespace {

// Rational-coefficient Euclid, used only to get gcds of integer polynomials.
std::vector<Rat> rat_mod(std::vector<Rat> a, const std::vector<Rat>& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

IntPoly int_gcd_poly(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero()) return g.primitive_part();
  if (g.is_zero()) return f.primitive_part();
  std::vector<Rat> a, b;
  for (const Int& x : f.coeffs()) a.emplace_back(x);
  for (const Int& x : g.coeffs()) b.emplace_back(x);
  while (!b.empty()) {
    auto r = rat_mod(a, b);
    a = b;
    b = r;
  }
  // Clear denominators, take primitive part.
  Int d = 1;
  for (const Rat& x : a) d = lcm_int(d, den(x));
  std::vector<Int> c;
  for (const Rat& x : a) c.push_back(num(x * Rat(d)));
  return IntPoly(std::move(c)).primitive_part();
}

Int isqrt_ceil(const Int& n) {
  if (n <= 0) return 0;
  Int x = 1;
  while (x * x < n) x <<= 1;
  Int lo = x / 2, hi = x;
  while (lo < hi) {
    Int mid = (lo + hi) / 2;
    if (mid * mid >= n) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

bool miller_rabin(const Int& n) {
  if (n < 2) return false;
  for (int small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == small) return true;
    if (n % small == 0) return false;
  }
  Int d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  auto powm = [&n](Int b, Int e) {
    Int r = 1;
    b %= n;
    while (e > 0) {
      if ((e & 1) != 0) r = r * b % n;
      b = b * b % n;
      e >>= 1;
    }
    return r;
  };
  for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    Int x = powm(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Int next_prime(Int n) {
  if (n % 2 == 0) ++n;
  while (!miller_rabin(n)) n += 2;
  return n;
}

// Symmetric residue in (-p/2, p/2].
Int symmetric_lift(const GFElem& e, const Int& p) {
  Int v = e.encode();
  if (2 * v > p) v -= p;
  return v;
}

// Factor a primitive squarefree polynomial with positive leading coefficient
// via one factorization modulo a single prime exceeding twice the
// Landau-Mignotte coefficient bound, followed by subset recombination.
std::vector<IntPoly> factor_squarefree_primitive(const IntPoly& f) {
  const std::size_t n = f.degree();
  if (n == 0) return {};
  if (n == 1) return {f};

  // Coefficient bound for factors: 2^n * |f|_2 * |lc(f)|.
  Int norm2 = 0;
  for (const Int& c : f.coeffs()) norm2 += c * c;
  Int bound = (Int(1) << n) * isqrt_ceil(norm2) * abs_int(f.leading());
  Int p = next_prime(2 * bound + 3);
  if (p >= (Int(1) << 62)) throw std::domain_error("coefficient bound too large to factor");

  // Ensure f stays squarefree mod p (guaranteed for p beyond the
  // discriminant's prime divisors only; just retry).
  const GFCtx* ctx;
  GFPoly fbar;
  for (;;) {
    ctx = GFCtx::get(p.convert_to<std::uint64_t>(), 1);
    fbar = f.reduce(ctx);
    if (fbar.degree() == n && GFPoly::gcd(fbar, fbar.derivative()).degree() == 0) break;
    p = next_prime(p + 2);
  }

  std::vector<GFPoly> mod_factors;
  for (const auto& fac : gf_factor(fbar)) {
    assert(fac.multiplicity == 1);
    mod_factors.push_back(fac.factor);
  }
  std::sort(mod_factors.begin(), mod_factors.end(), [](const GFPoly& a, const GFPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.degree() + 1; i-- > 0;) {
      Int ea = a.coeff(i).encode(), eb = b.coeff(i).encode();
      if (ea != eb) return ea < eb;
    }
    return false;
  });

  std::vector<IntPoly> out;
  IntPoly rest = f;
  std::vector<bool> used(mod_factors.size(), false);
  const GFElem lc = ctx->from_int(rest.leading());

  // Subsets by increasing popcount so irreducible pieces come off smallest
  // first; desk-scale degrees keep this cheap.
  std::size_t m = mod_factors.size();
  for (std::size_t take = 1; take <= m; ++take) {
    bool progress = true;
    while (progress) {
      progress = false;
      std::vector<std::size_t> avail;
      for (std::size_t i = 0; i < m; ++i)
        if (!used[i]) avail.push_back(i);
      if (avail.size() < take) break;
      std::vector<std::size_t> idx(take);
      // Iterate combinations of `avail` of size `take`.
      std::vector<std::size_t> comb(take);
      for (std::size_t i = 0; i < take; ++i) comb[i] = i;
      for (;;) {
        GFPoly prod(ctx, {lc});
        for (std::size_t i = 0; i < take; ++i) prod = prod * mod_factors[avail[comb[i]]];
        std::vector<Int> lifted(prod.degree() + 1);
        for (std::size_t i = 0; i <= prod.degree(); ++i)
          lifted[i] = symmetric_lift(prod.coeff(i), p);
        IntPoly cand = IntPoly(std::move(lifted)).primitive_part();
        IntPoly q;
        if (rest.try_divide(cand, &q)) {
          out.push_back(cand);
          rest = q;
          for (std::size_t i = 0; i < take; ++i) used[avail[comb[i]]] = true;
          progress = true;
          break;
        }
        // Next combination.
        std::size_t i = take;
        while (i > 0) {
          --i;
          if (comb[i] != i + avail.size() - take) {
            ++comb[i];
            for (std::size_t j = i + 1; j < take; ++j) comb[j] = comb[j - 1] + 1;
            break;
          }
          if (i == 0) {
            i = take + 1;
            break;
          }
        }
        if (i == take + 1) break;
      }
    }
  }
  if (rest.degree() > 0) out.push_back(rest.primitive_part());
  return out;
}

}  // namespace

IntPoly squarefree_part(const IntPoly& f) {
  if (f.is_zero() || f.degree() == 0) return IntPoly::constant(1);
  IntPoly g = int_gcd_poly(f, f.derivative());
  IntPoly q;
  IntPoly fp = f.primitive_part();
  // g divides f over Q; over Z after primitive normalization.
  if (!fp.try_divide(g, &q)) {
    // Scale to force divisibility over Z, then take the primitive part.
    IntPoly scaled = fp * IntPoly::constant(g.leading());
    q = scaled.divide_exact(g);
  }
  return q.primitive_part();
}

bool is_squarefree(const IntPoly& f) {
  return int_gcd_poly(f, f.derivative()).degree() == 0;
}

std::vector<IntFactor> factor_int_poly(const IntPoly& f) {
  if (f.is_zero()) throw std::domain_error("factor of zero polynomial");
  std::vector<IntFactor> out;
  IntPoly rest = f.primitive_part();
  if (rest.degree() == 0) return out;
  IntPoly sf = squarefree_part(rest);
  for (const IntPoly& irr : factor_squarefree_primitive(sf)) {
    unsigned mult = 0;
    IntPoly q;
    while (rest.try_divide(irr, &q)) {
      rest = q;
      ++mult;
    }
    out.push_back(IntFactor{irr, mult});
  }
  if (rest.degree() != 0) throw std::logic_error("integer factorization incomplete");
  std::sort(out.begin(), out.end(),
            [](const IntFactor& a, const IntFactor& b) { return a.factor < b.factor; });
  return out;
}

std::vector<Rat> charpoly(const RatMat& a) {
  assert(a.rows() == a.cols());
  const std::size_t n = a.rows();
  // Faddeev-LeVerrier: exact over Q, division only by integers.
  std::vector<Rat> c(n + 1, Rat(0));
  c[n] = 1;
  RatMat m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t d = 0; d < n; ++d) m(d, d) += c[n - k + 1];
    m = a * m;
    c[n - k] = -m.trace() / Rat(Int(k));
  }
  return c;
}

IntPoly charpoly(const IntMat& a) {
  auto c = charpoly(to_rat(a));
  std::vector<Int> r(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    assert(is_int(c[i]));
    r[i] = num(c[i]);
  }
  return IntPoly(std::move(r));
}

}  // namespace amf
