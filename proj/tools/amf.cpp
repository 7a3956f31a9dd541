#include "amf/corpus.hpp"
#include "amf/model_io.hpp"
#include "amf/raising.hpp"
#include "amf/satake.hpp"
#include "amf/selftest.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

using namespace amf;
using nlohmann::json;

namespace {

// Exit codes: 0 ok, 1 parse, 2 validation/params, 3 abelian input,
// 4 vacuous raising, 5 no congruent character, 6 suite failure.
enum ExitCode {
  kOk = 0,
  kParse = 1,
  kValidation = 2,
  kAbelian = 3,
  kVacuous = 4,
  kNotFound = 5,
  kSuite = 6,
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_validate(const std::string& path) {
  DoubleCosetModel model = model_from_file(path);
  ValidationReport report = validate(model);
  emit(validation_report_json(model, report));
  return report.accepted ? kOk : kValidation;
}

int cmd_raise(const std::string& path, const std::string& ell_str,
              const std::string& character, bool rank_one) {
  DoubleCosetModel model = model_from_file(path);
  ValidationReport report = validate(model);
  if (!report.accepted) {
    emit(validation_report_json(model, report));
    return kValidation;
  }
  Int ell;
  try {
    ell = Int(ell_str);
  } catch (const std::exception&) {
    throw ParseError("--ell: not an integer");
  }
  if (!is_prime(ell)) throw ParseError("--ell must be prime");

  auto characters = k_level_integral_characters(model);
  if (characters.empty()) throw std::runtime_error("no integral eigensystems at level K");

  // Selection by index, or by name=value pair on a registered operator.
  std::optional<IntCharacter> eta;
  try {
    std::size_t idx = std::stoul(character);
    if (idx < characters.size()) eta = characters[idx];
  } catch (const std::exception&) {
    auto eq = character.find('=');
    if (eq != std::string::npos) {
      std::string name = character.substr(0, eq);
      Int value(character.substr(eq + 1));
      for (const auto& ch : characters) {
        auto it = ch.values.find(name);
        if (it != ch.values.end() && it->second == value) {
          eta = ch;
          break;
        }
      }
    }
  }
  if (!eta) throw ParseError("--character: no eigensystem matches '" + character + "'");

  ModCharacter eta_bar = reduce_character(*eta, ell);
  if (abelian_check(model, eta_bar)) {
    json j;
    j["command"] = "raise";
    j["input_digest"] = model_hash(model);
    j["error"] = "abelian";
    j["detail"] = "eigensystem is congruent to a class-constant system mod ell";
    emit(j);
    return kAbelian;
  }

  CongruenceCertificate cert;
  try {
    cert = raising_bound(model, *eta, ell);
  } catch (const MZero& e) {
    json j;
    j["command"] = "raise";
    j["input_digest"] = model_hash(model);
    j["error"] = "vacuous";
    j["detail"] = e.what();
    emit(j);
    return kVacuous;
  } catch (const EllDividesIndex& e) {
    json j;
    j["command"] = "raise";
    j["input_digest"] = model_hash(model);
    j["error"] = "ell_divides_index";
    j["detail"] = e.what();
    emit(j);
    return kValidation;
  }
  cert.model_hash = model_hash(model);

  DetectResult det = detect_new_congruence(model, eta_bar);
  cert.new_characters = det.all_new;
  for (const auto& note : det.notes) cert.diagnostics.push_back(note);
  cert.diagnostics.push_back("abelianity tested against the class-partition surrogate");
  if (!det.matches.empty()) {
    cert.witness_character = det.matches.front();
    cert.residue_degree = det.matches.front().field_degree;
  }
  if (rank_one) rank_one_refine(model, cert);

  json j;
  j["command"] = "raise";
  j["input_digest"] = cert.model_hash;
  j["certificate"] = certificate_to_json(cert);
  j["congruent_matches"] = det.matches.size();
  emit(j);
  return det.matches.empty() ? kNotFound : kOk;
}

std::vector<Rat> parse_rat_list(const std::vector<std::string>& parts) {
  std::vector<Rat> out;
  for (const auto& s : parts) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) out.push_back(Rat(Int(s)));
      else out.push_back(Rat(Int(s.substr(0, slash))) / Rat(Int(s.substr(slash + 1))));
    } catch (const std::exception&) {
      throw ParseError("bad rational '" + s + "'");
    }
  }
  return out;
}

json type_json(Group group, const std::string& label) {
  const RepTypeInfo& row = profile(group, label);
  json j;
  j["label"] = row.label;
  j["representation"] = row.representation;
  j["dims"] = row.dims;
  j["generic"] = row.generic;
  switch (row.remark) {
    case UnitaryRemark::None: j["remark"] = ""; break;
    case UnitaryRemark::NotUnitary: j["remark"] = "not unitary"; break;
    case UnitaryRemark::Irrelevant: j["remark"] = "irrelevant"; break;
  }
  return j;
}

int cmd_classify(const std::string& group_str, const std::string& q_str,
                 const std::vector<std::string>& chi, const std::string& ell_str,
                 const std::vector<std::string>& t_parts, const std::string& profile_label) {
  Group group;
  if (group_str == "gl3") group = Group::GL3;
  else if (group_str == "gsp4") group = Group::GSp4;
  else throw BadParams("--group must be gl3 or gsp4");
  Int q(q_str);
  json j;
  j["command"] = "classify";
  j["group"] = group_str;
  j["q"] = q.str();

  if (!profile_label.empty()) {
    j["profile"] = type_json(group, profile_label);
    emit(j);
    return kOk;
  }

  if (!chi.empty()) {
    std::vector<Rat> values = parse_rat_list(chi);
    std::vector<std::string> labels;
    if (group == Group::GL3) {
      labels = classify_gl3(q, values);
    } else {
      if (values.size() != 2 && values.size() != 3)
        throw BadParams("gsp4 needs chi1,chi2[,sigma]");
      labels = classify_gsp4(q, values[0], values[1]);
    }
    json params = json::array();
    for (const Rat& v : values) params.push_back(to_string(v));
    j["params"] = params;
    json types = json::array();
    for (const auto& label : labels) types.push_back(type_json(group, label));
    j["types"] = types;
    json unitary = json::array();
    for (const auto& label : unitary_dual_filter(group, labels)) unitary.push_back(label);
    j["unitary_types"] = unitary;
    if (group == Group::GL3 && labels == std::vector<std::string>{"I"}) {
      switch (gl3_type_i_unitary(q, values)) {
        case Unitarity::Yes: j["type_i_unitary"] = "yes"; break;
        case Unitarity::No: j["type_i_unitary"] = "no"; break;
        case Unitarity::Indeterminate: j["type_i_unitary"] = "indeterminate"; break;
      }
    }
  }

  if (!ell_str.empty()) {
    Int ell(ell_str);
    j["ell"] = ell.str();
    auto indices = parahoric_indices(group, q);
    j["indices"] = {{"k_over_j", indices.k_over_j.str()}};
    if (indices.kp_over_j) j["indices"]["kp_over_j"] = indices.kp_over_j->str();
    if (!t_parts.empty()) {
      std::vector<Rat> t = parse_rat_list(t_parts);
      if (group == Group::GL3) {
        Int index = 1 + q + q * q;
        if (index % ell == 0) {
          j["error"] = "ell divides 1+q+q^2 = " + index.str();
          emit(j);
          return kValidation;
        }
        auto cond = check_u3_condition(t, q, ell);
        j["condition"] = {{"satisfied", cond.satisfied}, {"reasons", cond.reasons}};
        if (cond.satisfied) j["allowed_types"] = raising_candidate_types(Group::GL3);
      } else {
        auto cond = check_gsp4_condition(t, q, ell);
        j["condition"] = {{"main", cond.main},
                          {"refinement", cond.refinement},
                          {"reasons", cond.reasons}};
        json excl = json::array();
        for (const auto& label : exclusions(q, ell)) excl.push_back(label);
        j["exclusions"] = excl;
        if (cond.main) {
          if (cond.refinement) j["allowed_types"] = allowed_types(q, ell);
          else j["allowed_types"] = raising_candidate_types(Group::GSp4);
        }
      }
    }
  }
  emit(j);
  return kOk;
}

int cmd_selftest(std::uint64_t seed) {
  auto results = run_acceptance(seed);
  json j;
  j["command"] = "selftest";
  j["seed"] = seed;
  json criteria = json::array();
  bool all = true;
  for (const auto& r : results) {
    criteria.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    all = all && r.pass;
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name
              << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
  }
  j["criteria"] = criteria;
  j["pass"] = all;
  emit(j);
  return all ? kOk : kSuite;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"level-raising congruences for algebraic modular forms on finite coset models"};
  app.require_subcommand(1);

  std::string model_path, ell, character = "0", group, q, profile_label;
  std::vector<std::string> chi, t_parts;
  bool rank_one = false;
  std::uint64_t seed = kDefaultAcceptanceSeed;

  auto* validate_cmd = app.add_subcommand("validate", "check a model document");
  validate_cmd->add_option("path", model_path, "model JSON file")->required();

  auto* raise_cmd = app.add_subcommand("raise", "run the level-raising pipeline");
  raise_cmd->add_option("path", model_path, "model JSON file")->required();
  raise_cmd->add_option("--ell", ell, "prime modulus")->required();
  raise_cmd->add_option("--character", character,
                        "eigensystem index or name=value selector (default 0)");
  raise_cmd->add_flag("--rank-one", rank_one, "apply the rank-one refinement");

  auto* classify_cmd = app.add_subcommand("classify", "classify Satake parameters");
  classify_cmd->add_option("--group", group, "gl3 or gsp4")->required();
  classify_cmd->add_option("--q", q, "residue field size")->required();
  classify_cmd->add_option("--chi", chi, "Satake values (rationals)");
  classify_cmd->add_option("--ell", ell, "prime modulus for congruence checks");
  classify_cmd->add_option("--t", t_parts, "Hecke tuple mod ell (3 or 4 rationals)");
  classify_cmd->add_option("--profile", profile_label, "print one table row");

  auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance suite");
  selftest_cmd->add_option("--seed", seed, "seed for randomized properties");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) return cmd_validate(model_path);
    if (raise_cmd->parsed()) return cmd_raise(model_path, ell, character, rank_one);
    if (classify_cmd->parsed())
      return cmd_classify(group, q, chi, ell, t_parts, profile_label);
    if (selftest_cmd->parsed()) return cmd_selftest(seed);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const BadParams& e) {
    std::cerr << "bad parameters: " << e.what() << "\n";
    return kValidation;
  } catch (const AbelianInput& e) {
    std::cerr << "abelian input: " << e.what() << "\n";
    return kAbelian;
  } catch (const MZero& e) {
    std::cerr << "vacuous: " << e.what() << "\n";
    return kVacuous;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kOk;
}
