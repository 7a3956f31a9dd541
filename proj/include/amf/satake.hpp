#pragma once

#include "amf/bigint.hpp"
#include "amf/gf.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace amf {

struct AmbiguousHalfPower : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadParams : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Group { GL3, GSp4 };

std::string group_name(Group g);

enum class UnitaryRemark { None, NotUnitary, Irrelevant };
enum class FlagWhen { No, IfUnitaryParams, Always };

// One row of the classification tables: constituent labels of unramified
// principal series together with parahoric fixed-space dimensions.
struct RepTypeInfo {
  Group group;
  std::string label;        // "I", "IIa", ...
  std::string family;       // "I".."VI"
  std::string representation;
  UnitaryRemark remark;
  FlagWhen tempered;
  FlagWhen square_integrable;
  bool generic;
  std::vector<int> dims;    // GL3: (K, J, I); GSp4: (K, K', J, J', I)
};

const std::vector<RepTypeInfo>& rep_table(Group g);
const RepTypeInfo& profile(Group g, const std::string& label);

// FNV-1a over the canonical serialization of both tables; the pinned value
// guards against accidental edits.
std::uint64_t table_checksum();
inline constexpr std::uint64_t kExpectedTableChecksum = 0x8d9b30dc221e069dULL;
bool tables_intact();

// Constituent labels of the unramified principal series with the given
// Satake values; chi entries are values at the uniformizer.
std::vector<std::string> classify_gl3(const Int& q, const std::vector<Rat>& chi);
std::vector<std::string> classify_gl3(const Int& q, const std::vector<GFElem>& chi);
std::vector<std::string> classify_gsp4(const Int& q, const Rat& chi1, const Rat& chi2);
std::vector<std::string> classify_gsp4(const Int& q, const GFElem& chi1, const GFElem& chi2);

// Labels surviving the tables' "not unitary"/"irrelevant" remarks.
std::vector<std::string> unitary_dual_filter(Group g, const std::vector<std::string>& labels);

// Unitary types with dim at J exceeding the sum of the dims at the two
// maximal levels (for GL3 the second maximal compact is conjugate to K).
std::vector<std::string> raising_candidate_types(Group g);

struct ParahoricIndices {
  Int k_over_j;
  std::optional<Int> kp_over_j;  // GSp4 paramodular over Klingen-intersection
};

ParahoricIndices parahoric_indices(Group g, const Int& q);

struct ConditionResult {
  bool satisfied = false;
  std::vector<std::string> reasons;
};

// t == diag(q, 1, q^-1) mod ell as a multiset, and ell coprime to 1+q+q^2.
ConditionResult check_u3_condition(const std::vector<Rat>& t, const Int& q, const Int& ell);

struct GSp4Condition {
  bool main = false;        // t == diag(1, q, q^2, q^3) mod ell, multiset
  bool refinement = false;  // additionally q^4 != 1 mod ell
  std::vector<std::string> reasons;
};

GSp4Condition check_gsp4_condition(const std::vector<Rat>& t, const Int& q, const Int& ell);

// Closed-form exclusions: Va unless q = -1 or q^2 = -1 mod ell; VIa unless
// q^2 = 1 mod ell.
std::set<std::string> exclusions(const Int& q, const Int& ell);

// The same set decided by brute-force solvability of the two Satake
// congruence systems over F_{ell^2} (sigma value and a square root of q
// range over the quadratic extension).
std::set<std::string> exclusions_by_search(const Int& q, const Int& ell);

// Raising candidates minus exclusions.
std::vector<std::string> allowed_types(const Int& q, const Int& ell);

// Multiset of Hecke eigenvalues {sigma, sigma chi1, sigma chi2,
// sigma chi1 chi2}(q), optionally twisted by |nu|^{-3/2} (multiplication by
// q^{3/2}; over Q this needs q to be a perfect square).
std::vector<Rat> hecke_tuple_gsp4(const Int& q, const Rat& chi1, const Rat& chi2,
                                  const Rat& sigma, bool twist_half_powers);

enum class Unitarity { Yes, No, Indeterminate };

// Unitarity of the irreducible type-I principal series on exact rational
// values: all values on the unit circle (so +-1 over Q), or the
// complementary-series ratio nu^alpha with 0 < alpha < 1 -- which no
// rational value attains, making the predicate decidable over Q. Mod-ell
// values carry no absolute value; those inputs are indeterminate.
Unitarity gl3_type_i_unitary(const Int& q, const std::vector<Rat>& chi);
inline Unitarity gl3_type_i_unitary(const Int&, const std::vector<GFElem>&) {
  return Unitarity::Indeterminate;
}

}  // namespace amf
