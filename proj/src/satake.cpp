#include "amf/satake.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace amf {

std::string group_name(Group g) { return g == Group::GL3 ? "gl3" : "gsp4"; }

namespace {

std::vector<RepTypeInfo> build_gl3() {
  using R = UnitaryRemark;
  using F = FlagWhen;
  std::vector<RepTypeInfo> t;
  auto row = [&t](std::string label, std::string family, std::string rep, R remark, F temp,
                  F l2, bool generic, std::vector<int> dims) {
    t.push_back({Group::GL3, std::move(label), std::move(family), std::move(rep), remark, temp,
                 l2, generic, std::move(dims)});
  };
  row("I", "I", "chi1 x chi2 x chi3", R::None, F::IfUnitaryParams, F::No, true, {1, 3, 6});
  row("IIa", "II", "chi1 St(2) x chi2", R::None, F::IfUnitaryParams, F::No, true, {0, 1, 3});
  row("IIb", "II", "chi1 1(2) x chi2", R::None, F::No, F::No, false, {1, 2, 3});
  row("IIIa", "III", "chi St(3)", R::None, F::IfUnitaryParams, F::IfUnitaryParams, true,
      {0, 0, 1});
  row("IIIb", "III", "chi V_P", R::NotUnitary, F::No, F::No, false, {0, 1, 2});
  row("IIIc", "III", "chi V_Q", R::NotUnitary, F::No, F::No, false, {0, 1, 2});
  row("IIId", "III", "chi 1(3)", R::Irrelevant, F::No, F::No, false, {1, 1, 1});
  return t;
}

std::vector<RepTypeInfo> build_gsp4() {
  using R = UnitaryRemark;
  using F = FlagWhen;
  std::vector<RepTypeInfo> t;
  auto row = [&t](std::string label, std::string family, std::string rep, R remark, F temp,
                  F l2, bool generic, std::vector<int> dims) {
    t.push_back({Group::GSp4, std::move(label), std::move(family), std::move(rep), remark, temp,
                 l2, generic, std::move(dims)});
  };
  row("I", "I", "chi1 x chi2 x| sigma", R::None, F::IfUnitaryParams, F::No, true,
      {1, 2, 4, 4, 8});
  row("IIa", "II", "chi St(2) x| sigma", R::None, F::IfUnitaryParams, F::No, true,
      {0, 1, 2, 1, 4});
  row("IIb", "II", "chi 1(2) x| sigma", R::None, F::No, F::No, false, {1, 1, 2, 3, 4});
  row("IIIa", "III", "chi x| sigma St(2)", R::None, F::IfUnitaryParams, F::No, true,
      {0, 0, 1, 2, 4});
  row("IIIb", "III", "chi x| sigma 1(2)", R::None, F::No, F::No, false, {1, 2, 3, 2, 4});
  row("IVa", "IV", "sigma St(4)", R::None, F::Always, F::Always, true, {0, 0, 0, 0, 1});
  row("IVb", "IV", "L(nu^2, nu^-1 sigma St(2))", R::NotUnitary, F::No, F::No, false,
      {0, 0, 1, 2, 3});
  row("IVc", "IV", "L(nu^3/2 St(2), nu^-3/2 sigma)", R::NotUnitary, F::No, F::No, false,
      {0, 1, 2, 1, 3});
  row("IVd", "IV", "sigma 1(4)", R::Irrelevant, F::No, F::No, false, {1, 1, 1, 1, 1});
  row("Va", "V", "delta([xi0, nu xi0], nu^-1/2 sigma)", R::None, F::Always, F::Always, true,
      {0, 0, 1, 0, 2});
  row("Vb", "V", "L(nu^1/2 xi0 St(2), nu^-1/2 sigma)", R::None, F::No, F::No, false,
      {0, 1, 1, 1, 2});
  row("Vc", "V", "L(nu^1/2 xi0 St(2), xi0 nu^-1/2 sigma)", R::None, F::No, F::No, false,
      {0, 1, 1, 1, 2});
  row("Vd", "V", "L(nu xi0, xi0 x| nu^-1/2 sigma)", R::None, F::No, F::No, false,
      {1, 0, 1, 2, 2});
  row("VIa", "VI", "tau(S, nu^-1/2 sigma)", R::None, F::Always, F::No, true, {0, 0, 1, 1, 3});
  row("VIb", "VI", "tau(T, nu^-1/2 sigma)", R::None, F::Always, F::No, false, {0, 0, 0, 1, 1});
  row("VIc", "VI", "L(nu^1/2 St(2), nu^-1/2 sigma)", R::None, F::No, F::No, false,
      {0, 1, 1, 0, 1});
  row("VId", "VI", "L(nu, 1 x| nu^-1/2 sigma)", R::None, F::No, F::No, false, {1, 1, 2, 2, 3});
  return t;
}

}  // namespace

const std::vector<RepTypeInfo>& rep_table(Group g) {
  static const std::vector<RepTypeInfo> gl3 = build_gl3();
  static const std::vector<RepTypeInfo> gsp4 = build_gsp4();
  return g == Group::GL3 ? gl3 : gsp4;
}

const RepTypeInfo& profile(Group g, const std::string& label) {
  for (const auto& row : rep_table(g))
    if (row.label == label) return row;
  throw BadParams("unknown type label " + label + " for " + group_name(g));
}

std::uint64_t table_checksum() {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix_byte = [&h](unsigned char b) {
    h ^= b;
    h *= 1099511628211ULL;
  };
  auto mix = [&mix_byte](const std::string& s) {
    for (unsigned char c : s) mix_byte(c);
    mix_byte(0);
  };
  for (Group g : {Group::GL3, Group::GSp4})
    for (const auto& row : rep_table(g)) {
      mix(group_name(g));
      mix(row.label);
      mix(row.family);
      mix(row.representation);
      mix(std::to_string(static_cast<int>(row.remark)));
      mix(std::to_string(static_cast<int>(row.tempered)));
      mix(std::to_string(static_cast<int>(row.square_integrable)));
      mix(row.generic ? "1" : "0");
      for (int d : row.dims) mix(std::to_string(d));
    }
  return h;
}

bool tables_intact() { return table_checksum() == kExpectedTableChecksum; }

// ---------------------------------------------------------------------------
// Classification

namespace {

// Field operations shared by the exact-rational and mod-ell paths.
struct RatOps {
  using E = Rat;
  Rat nu;  // nu(q) = 1/q
  static bool eq(const Rat& a, const Rat& b) { return a == b; }
  static Rat mul(const Rat& a, const Rat& b) { return a * b; }
  static Rat inv(const Rat& a) { return Rat(1) / a; }
  Rat one() const { return Rat(1); }
};

struct GFOps {
  using E = GFElem;
  GFElem nu;
  static bool eq(const GFElem& a, const GFElem& b) { return a == b; }
  static GFElem mul(const GFElem& a, const GFElem& b) { return a * b; }
  static GFElem inv(const GFElem& a) { return a.inverse(); }
  GFElem one() const { return nu.ctx()->one(); }
};

template <typename Ops>
std::vector<std::string> classify_gl3_impl(const Ops& ops, const std::vector<typename Ops::E>& chi) {
  using E = typename Ops::E;
  if (chi.size() != 3) throw BadParams("gl3 needs three Satake values");
  const E& nu = ops.nu;
  // Full chain chi*nu, chi, chi/nu as a multiset?
  for (const E& middle : chi) {
    std::vector<E> want{Ops::mul(middle, nu), middle, Ops::mul(middle, Ops::inv(nu))};
    std::vector<bool> used(3, false);
    bool all = true;
    for (const E& w : want) {
      bool hit = false;
      for (std::size_t i = 0; i < 3 && !hit; ++i)
        if (!used[i] && Ops::eq(chi[i], w)) {
          used[i] = true;
          hit = true;
        }
      all = all && hit;
    }
    if (all) return {"IIIa", "IIIb", "IIIc", "IIId"};
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      if (Ops::eq(chi[i], Ops::mul(chi[j], nu))) return {"IIa", "IIb"};
    }
  return {"I"};
}

template <typename Ops>
std::vector<std::string> classify_gsp4_impl(const Ops& ops, const typename Ops::E& chi1,
                                            const typename Ops::E& chi2) {
  using E = typename Ops::E;
  const E& nu = ops.nu;
  const E one = ops.one();
  const E nu2 = Ops::mul(nu, nu);
  const E nu_inv = Ops::inv(nu);
  const E nu3 = Ops::mul(nu2, nu);

  // Weyl orbit of (chi1, chi2): swaps and inversions.
  std::vector<std::pair<E, E>> orbit;
  for (const auto& base : {std::make_pair(chi1, chi2), std::make_pair(chi2, chi1)})
    for (int ia = 0; ia < 2; ++ia)
      for (int ib = 0; ib < 2; ++ib) {
        E a = ia ? Ops::inv(base.first) : base.first;
        E b = ib ? Ops::inv(base.second) : base.second;
        orbit.emplace_back(a, b);
      }

  auto any = [&orbit](auto&& pred) {
    for (const auto& [a, b] : orbit)
      if (pred(a, b)) return true;
    return false;
  };

  if (any([&](const E& a, const E& b) { return Ops::eq(a, nu2) && Ops::eq(b, nu); }))
    return {"IVa", "IVb", "IVc", "IVd"};
  if (any([&](const E& a, const E& b) {
        return Ops::eq(Ops::mul(b, b), one) && !Ops::eq(b, one) && Ops::eq(a, Ops::mul(nu, b));
      }))
    return {"Va", "Vb", "Vc", "Vd"};
  if (any([&](const E& a, const E& b) { return Ops::eq(a, nu) && Ops::eq(b, one); }))
    return {"VIa", "VIb", "VIc", "VId"};
  if (any([&](const E& a, const E& b) {
        E prod = Ops::mul(a, b);
        return Ops::eq(a, Ops::mul(nu, b)) && !Ops::eq(prod, nu) && !Ops::eq(prod, nu_inv) &&
               !Ops::eq(prod, nu3) && !Ops::eq(prod, Ops::inv(nu3));
      }))
    return {"IIa", "IIb"};
  if (any([&](const E& a, const E& b) {
        return Ops::eq(b, nu) && !Ops::eq(a, one) && !Ops::eq(a, nu2) && !Ops::eq(a, Ops::inv(nu2));
      }))
    return {"IIIa", "IIIb"};
  return {"I"};
}

void require_unit(const Rat& x) {
  if (x == 0) throw BadParams("Satake values must be nonzero");
}

}  // namespace

std::vector<std::string> classify_gl3(const Int& q, const std::vector<Rat>& chi) {
  if (q < 2) throw BadParams("q must be at least 2");
  for (const Rat& c : chi) require_unit(c);
  RatOps ops{Rat(1) / Rat(q)};
  return classify_gl3_impl(ops, chi);
}

std::vector<std::string> classify_gl3(const Int& q, const std::vector<GFElem>& chi) {
  if (chi.size() != 3) throw BadParams("gl3 needs three Satake values");
  const GFCtx* ctx = chi[0].ctx();
  if (!ctx) throw BadParams("mod-ell values need a field");
  GFElem qbar = ctx->from_int(q);
  if (qbar.is_zero()) throw BadParams("q vanishes mod ell");
  for (const auto& c : chi)
    if (c.is_zero()) throw BadParams("Satake values must be nonzero");
  GFOps ops{qbar.inverse()};
  return classify_gl3_impl(ops, chi);
}

std::vector<std::string> classify_gsp4(const Int& q, const Rat& chi1, const Rat& chi2) {
  if (q < 2) throw BadParams("q must be at least 2");
  require_unit(chi1);
  require_unit(chi2);
  RatOps ops{Rat(1) / Rat(q)};
  return classify_gsp4_impl(ops, chi1, chi2);
}

std::vector<std::string> classify_gsp4(const Int& q, const GFElem& chi1, const GFElem& chi2) {
  const GFCtx* ctx = chi1.ctx() ? chi1.ctx() : chi2.ctx();
  if (!ctx) throw BadParams("mod-ell values need a field");
  GFElem qbar = ctx->from_int(q);
  if (qbar.is_zero()) throw BadParams("q vanishes mod ell");
  if (chi1.is_zero() || chi2.is_zero()) throw BadParams("Satake values must be nonzero");
  GFOps ops{qbar.inverse()};
  return classify_gsp4_impl(ops, chi1, chi2);
}

std::vector<std::string> unitary_dual_filter(Group g, const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  for (const auto& label : labels)
    if (profile(g, label).remark == UnitaryRemark::None) out.push_back(label);
  return out;
}

std::vector<std::string> raising_candidate_types(Group g) {
  std::vector<std::string> out;
  for (const auto& row : rep_table(g)) {
    if (row.remark != UnitaryRemark::None) continue;
    int dim_j, dim_k, dim_kp;
    if (g == Group::GL3) {
      dim_k = row.dims[0];
      dim_kp = row.dims[0];  // the second maximal compact is conjugate to K
      dim_j = row.dims[1];
    } else {
      dim_k = row.dims[0];
      dim_kp = row.dims[1];
      dim_j = row.dims[2];
    }
    if (dim_j > dim_k + dim_kp) out.push_back(row.label);
  }
  return out;
}

ParahoricIndices parahoric_indices(Group g, const Int& q) {
  if (q < 2) throw BadParams("q must be at least 2");
  ParahoricIndices out{0, std::nullopt};
  if (g == Group::GL3) {
    out.k_over_j = 1 + q + q * q;
  } else {
    out.k_over_j = 1 + q + q * q + q * q * q;
    out.kp_over_j = q;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Congruence conditions

namespace {

GFElem reduce_rat(const GFCtx* ctx, const Rat& x) {
  GFElem d = ctx->from_int(den(x));
  if (d.is_zero()) throw BadParams("denominator vanishes mod ell");
  return ctx->from_int(num(x)) / d;
}

bool multiset_eq(std::vector<GFElem> a, std::vector<GFElem> b) {
  auto cmp = [](const GFElem& x, const GFElem& y) { return x.encode() < y.encode(); };
  std::sort(a.begin(), a.end(), cmp);
  std::sort(b.begin(), b.end(), cmp);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

ConditionResult check_u3_condition(const std::vector<Rat>& t, const Int& q, const Int& ell) {
  if (!is_prime(ell)) throw BadParams("ell must be prime");
  if (q % ell == 0) throw BadParams("ell must differ from q");
  if (t.size() != 3) throw BadParams("u3 condition needs a diagonal triple");
  ConditionResult out;
  Int index = 1 + q + q * q;
  if (index % ell == 0) {
    out.reasons.push_back("ell divides 1+q+q^2 = " + index.str());
    return out;
  }
  const GFCtx* ctx = GFCtx::get(ell.convert_to<std::uint64_t>(), 1);
  GFElem qbar = ctx->from_int(q);
  std::vector<GFElem> tbar;
  for (const Rat& x : t) tbar.push_back(reduce_rat(ctx, x));
  std::vector<GFElem> want{qbar, ctx->one(), qbar.inverse()};
  if (!multiset_eq(tbar, want)) {
    out.reasons.push_back("Hecke tuple is not diag(q, 1, q^-1) mod ell");
    return out;
  }
  out.satisfied = true;
  return out;
}

GSp4Condition check_gsp4_condition(const std::vector<Rat>& t, const Int& q, const Int& ell) {
  if (!is_prime(ell)) throw BadParams("ell must be prime");
  if (q % ell == 0) throw BadParams("ell must differ from q");
  if (t.size() != 4) throw BadParams("gsp4 condition needs a diagonal quadruple");
  GSp4Condition out;
  const GFCtx* ctx = GFCtx::get(ell.convert_to<std::uint64_t>(), 1);
  GFElem qbar = ctx->from_int(q);
  std::vector<GFElem> tbar;
  for (const Rat& x : t) tbar.push_back(reduce_rat(ctx, x));
  std::vector<GFElem> want{ctx->one(), qbar, qbar * qbar, qbar * qbar * qbar};
  if (!multiset_eq(tbar, want)) {
    out.reasons.push_back("Hecke tuple is not diag(1, q, q^2, q^3) mod ell");
    return out;
  }
  out.main = true;
  GFElem q4 = qbar.pow(4);
  if (q4 == ctx->one()) {
    out.reasons.push_back("q^4 = 1 mod ell; Va/VIa cannot be ruled out");
  } else {
    out.refinement = true;
  }
  return out;
}

std::set<std::string> exclusions(const Int& q, const Int& ell) {
  if (!is_prime(ell)) throw BadParams("ell must be prime");
  if (q % ell == 0) throw BadParams("ell must differ from q");
  const GFCtx* ctx = GFCtx::get(ell.convert_to<std::uint64_t>(), 1);
  GFElem qbar = ctx->from_int(q);
  GFElem one = ctx->one();
  std::set<std::string> out;
  if (!(qbar == -one) && !(qbar * qbar == -one)) out.insert("Va");
  if (!(qbar * qbar == one)) out.insert("VIa");
  return out;
}

std::set<std::string> exclusions_by_search(const Int& q, const Int& ell) {
  if (!is_prime(ell)) throw BadParams("ell must be prime");
  if (q % ell == 0) throw BadParams("ell must differ from q");
  const GFCtx* ext = GFCtx::get(ell.convert_to<std::uint64_t>(), 2);
  GFElem qbar = ext->from_int(q);

  // Square roots of q in the quadratic extension.
  std::vector<GFElem> roots;
  GFPoly sq(ext, {-qbar, ext->zero(), ext->one()});
  for (auto& [r, m] : gf_roots(sq)) roots.push_back(r);

  auto rhs = [&](const GFElem& r) {
    GFElem r3 = r * r * r;
    return std::vector<GFElem>{r3.inverse(), r.inverse(), r, r3};
  };

  bool va_solvable = false, via_solvable = false;
  const Int order = ext->order();
  for (const GFElem& r : roots) {
    std::vector<GFElem> target = rhs(r);
    for (Int e = 1; e < order; ++e) {
      GFElem s = ext->decode(e);
      GFElem a = s / r, b = s * r;
      if (!va_solvable && multiset_eq({a, -a, b, -b}, target)) va_solvable = true;
      if (!via_solvable && multiset_eq({a, a, b, b}, target)) via_solvable = true;
      if (va_solvable && via_solvable) break;
    }
    if (va_solvable && via_solvable) break;
  }
  std::set<std::string> out;
  if (!va_solvable) out.insert("Va");
  if (!via_solvable) out.insert("VIa");
  return out;
}

std::vector<std::string> allowed_types(const Int& q, const Int& ell) {
  auto excluded = exclusions(q, ell);
  std::vector<std::string> out;
  for (const auto& label : raising_candidate_types(Group::GSp4))
    if (!excluded.count(label)) out.push_back(label);
  return out;
}

Unitarity gl3_type_i_unitary(const Int& q, const std::vector<Rat>& chi) {
  if (chi.size() != 3) throw BadParams("gl3 needs three Satake values");
  if (classify_gl3(q, chi) != std::vector<std::string>{"I"})
    throw BadParams("parameters are not an irreducible type-I series");
  bool all_unit = true;
  for (const Rat& c : chi) all_unit = all_unit && (c == 1 || c == -1);
  if (all_unit) return Unitarity::Yes;
  // Complementary range: some ratio chi_i/chi_j = q^{-alpha} with
  // 0 < alpha < 1 and the third value unitary. q^{-alpha} is irrational for
  // rational alpha in (0,1) and q >= 2, so no exact rational input meets it.
  return Unitarity::No;
}

std::vector<Rat> hecke_tuple_gsp4(const Int& q, const Rat& chi1, const Rat& chi2,
                                  const Rat& sigma, bool twist_half_powers) {
  require_unit(chi1);
  require_unit(chi2);
  require_unit(sigma);
  std::vector<Rat> tuple{sigma, sigma * chi1, sigma * chi2, sigma * chi1 * chi2};
  if (twist_half_powers) {
    // Multiply by q^{3/2}; over Q this needs an exact square root of q.
    Int root = 0;
    while (root * root < q) ++root;
    if (root * root != q)
      throw AmbiguousHalfPower("q^{1/2} does not exist over Q for q = " + q.str());
    Rat factor = Rat(root * root * root);
    for (Rat& x : tuple) x *= factor;
  }
  return tuple;
}

}  // namespace amf
