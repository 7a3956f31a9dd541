#pragma once

#include "amf/degeneracy.hpp"
#include "amf/spectra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace amf {

struct MZero : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EllDividesIndex : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoCentralOps : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AbelianInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotRankOne : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integral eigensystem at level K: values on the registered K-level
// operators plus a primitive integral eigenvector.
struct IntCharacter {
  std::map<std::string, Int> values;
  std::vector<Int> witness;
};

// Mod-ell eigensystem at level K with values in F_{ell^k}.
struct ModCharacter {
  const GFCtx* field = nullptr;
  std::map<std::string, GFElem> values;
};

// An eigensystem on the new subspace mod ell, value per central operator.
struct NewEigenCharacter {
  std::vector<std::string> op_names;
  std::uint64_t ell = 0;
  unsigned field_degree = 1;            // values live in F_{ell^field_degree}
  std::vector<Int> value_encodings;     // per op, GF element encodings
  std::vector<Int> witness_encodings;   // ambient X_J coordinates, encoded
  std::size_t multiplicity = 0;
};

struct CongruenceCertificate {
  std::string model_hash;
  Int ell = 0;
  unsigned residue_degree = 1;
  std::map<std::string, Int> eta_values;  // the input K-level eigensystem
  Rat m_value = 0;                        // eta(e_KK') - [K:J][K':J]
  long v_m = 0;                           // ell-valuation of m
  long v_error = 0;                       // of E = A_U B_V C^2
  long v_index_kp = 0;                    // of [K':J]
  long v_primitivity = 0;                 // witness depth mod class-constants
  long bound_n = 0;                       // max(0, v_m - v_error - v_index_kp - v_prim)
  std::optional<NewEigenCharacter> witness_character;
  std::vector<NewEigenCharacter> new_characters;  // full new-space spectrum
  bool rank_one_checked = false;
  bool rank_one_flag = false;  // new character absent at level K mod ell
  std::vector<std::string> diagnostics;
};

// The integer operator e_{K,K'} = iota~ iota' . iota'~ iota on level-K
// functions ([K:J][K':J] e_K * e_K' * e_K).
RatMat e_kkp_matrix(const DoubleCosetModel& model);

// Level-K action of a central J-operator: [K:J]^-1 iota~ . Phi . iota.
RatMat push_to_level(const DoubleCosetModel& model, Level side, const IntMat& phi);

// Valuation bound for the supplied integral eigensystem.
// Throws MZero when eta(e_KK') equals [K:J][K':J] (raising vacuous) and
// EllDividesIndex when ell | [K':J].
CongruenceCertificate raising_bound(const DoubleCosetModel& model, const IntCharacter& eta,
                                    const Int& ell);

// True iff eta_bar occurs, as a generalized eigensystem of the registered
// K-level operators mod ell, on the span of the class-partition indicator
// functions (the class-abelian subspace).
bool abelian_check(const DoubleCosetModel& model, const ModCharacter& eta_bar);

struct DetectResult {
  std::vector<NewEigenCharacter> matches;   // new characters congruent to eta_bar
  std::vector<NewEigenCharacter> all_new;   // diagnostics: the whole new spectrum
  std::vector<std::string> notes;
};

// Searches the new subspace mod ell for eigensystems eta' with
// eta'(phi) = eta_bar(e_K * phi) for every registered central operator.
DetectResult detect_new_congruence(const DoubleCosetModel& model, const ModCharacter& eta_bar);

// Rank-one refinement: checks occurrence of the found new character at
// levels K and K' mod ell and sets the flag / contradiction diagnostics.
void rank_one_refine(const DoubleCosetModel& model, CongruenceCertificate& cert);

// Reduction of an integral character to F_ell.
ModCharacter reduce_character(const IntCharacter& eta, const Int& ell);

// Integral rational characters of the registered K-level operators together
// with e_{K,K'}, ordered deterministically; the raw material for the CLI's
// --character selection.
std::vector<IntCharacter> k_level_integral_characters(const DoubleCosetModel& model);

}  // namespace amf
