#include "amf/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace amf {

using nlohmann::json;

Int parse_big(const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
  } catch (const std::exception&) {
  }
  throw ParseError(where + ": expected an integer or decimal string");
}

namespace {

std::vector<std::string> parse_labels(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_array() || j[field].empty())
    throw ParseError(field + ": expected a nonempty array of labels");
  std::vector<std::string> out;
  for (const auto& x : j[field]) {
    if (!x.is_string()) throw ParseError(field + ": labels must be strings");
    out.push_back(x.get<std::string>());
  }
  std::vector<std::string> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError(field + ": duplicate label");
  return out;
}

std::size_t label_index(const std::vector<std::string>& labels, const std::string& label,
                        const std::string& where) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw ParseError(where + ": unknown label '" + label + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

std::vector<std::size_t> parse_projection(const json& j, const std::string& field,
                                          const std::vector<std::string>& from,
                                          const std::vector<std::string>& to) {
  if (!j.contains(field) || !j[field].is_object())
    throw ParseError(field + ": expected an object mapping labels");
  std::vector<std::size_t> out(from.size());
  std::vector<bool> seen(from.size(), false);
  for (const auto& [key, value] : j[field].items()) {
    std::size_t y = label_index(from, key, field);
    if (!value.is_string()) throw ParseError(field + ": image must be a label string");
    out[y] = label_index(to, value.get<std::string>(), field);
    seen[y] = true;
  }
  for (std::size_t y = 0; y < from.size(); ++y)
    if (!seen[y]) throw ParseError(field + ": no image for '" + from[y] + "'");
  return out;
}

std::vector<Int> parse_weights(const json& j, const std::string& field,
                               const std::vector<std::string>& labels) {
  if (!j.contains(field) || !j[field].is_object())
    throw ParseError(field + ": expected an object of positive integers");
  std::vector<Int> out(labels.size(), 0);
  for (const auto& [key, value] : j[field].items()) {
    std::size_t x = label_index(labels, key, field);
    out[x] = parse_big(value, field + "." + key);
    if (out[x] <= 0) throw ParseError(field + "." + key + ": weight must be positive");
  }
  for (std::size_t x = 0; x < labels.size(); ++x)
    if (out[x] == 0) throw ParseError(field + ": missing weight for '" + labels[x] + "'");
  return out;
}

Level parse_level(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": level must be 'K', 'Kp' or 'J'");
  std::string s = j.get<std::string>();
  if (s == "K") return Level::K;
  if (s == "Kp") return Level::Kp;
  if (s == "J") return Level::J;
  throw ParseError(where + ": unknown level '" + s + "'");
}

json big_str(const Int& x) { return x.str(); }

json rat_str(const Rat& x) { return to_string(x); }

Rat parse_rat(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rat(Int(s));
      return Rat(Int(s.substr(0, slash))) / Rat(Int(s.substr(slash + 1)));
    } catch (const std::exception&) {
    }
  }
  throw ParseError(where + ": expected a rational");
}

}  // namespace

DoubleCosetModel model_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("model document must be an object");
  if (j.contains("schema_version") && parse_big(j["schema_version"], "schema_version") != 1)
    throw ParseError("unsupported schema_version");

  DoubleCosetModel m;
  m.x_k = parse_labels(j, "x_k");
  m.x_kp = parse_labels(j, "x_kp");
  m.x_j = parse_labels(j, "x_j");
  m.pi = parse_projection(j, "pi", m.x_j, m.x_k);
  m.pip = parse_projection(j, "pip", m.x_j, m.x_kp);
  m.w_k = parse_weights(j, "w_k", m.x_k);
  m.w_kp = parse_weights(j, "w_kp", m.x_kp);
  m.w_j = parse_weights(j, "w_j", m.x_j);

  if (j.contains("operators")) {
    if (!j["operators"].is_object()) throw ParseError("operators: expected an object");
    for (const auto& [name, spec] : j["operators"].items()) {
      ModelOperator op;
      op.name = name;
      if (!spec.is_object()) throw ParseError("operators." + name + ": expected an object");
      op.level = parse_level(spec.value("level", json()), "operators." + name + ".level");
      const std::size_t n = m.size(op.level);
      if (!spec.contains("matrix") || !spec["matrix"].is_array() || spec["matrix"].size() != n)
        throw ParseError("operators." + name + ".matrix: expected " + std::to_string(n) +
                         " rows");
      op.matrix = IntMat(n, n);
      for (std::size_t r = 0; r < n; ++r) {
        const auto& row = spec["matrix"][r];
        if (!row.is_array() || row.size() != n)
          throw ParseError("operators." + name + ".matrix: ragged row");
        for (std::size_t c = 0; c < n; ++c)
          op.matrix(r, c) = parse_big(row[c], "operators." + name + ".matrix");
      }
      if (!spec.contains("adjoint") || !spec["adjoint"].is_string())
        throw ParseError("operators." + name + ": missing adjoint partner name");
      op.adjoint = spec["adjoint"].get<std::string>();
      op.central_at_j = spec.value("central_at_j", false);
      m.operators.push_back(std::move(op));
    }
    std::sort(m.operators.begin(), m.operators.end(),
              [](const ModelOperator& a, const ModelOperator& b) { return a.name < b.name; });
  }

  if (j.contains("metadata")) {
    const auto& meta = j["metadata"];
    if (!meta.is_object()) throw ParseError("metadata: expected an object");
    m.rank_one = meta.value("rank_one", false);
    if (meta.contains("prime_q")) m.prime_q = parse_big(meta["prime_q"], "metadata.prime_q");
    m.provenance = meta.value("provenance", std::string());
  }
  return m;
}

DoubleCosetModel model_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return model_from_json(j);
}

json model_to_json(const DoubleCosetModel& m) {
  json j;
  j["schema_version"] = 1;
  j["x_k"] = m.x_k;
  j["x_kp"] = m.x_kp;
  j["x_j"] = m.x_j;
  json pi, pip, wk, wkp, wj;
  for (std::size_t y = 0; y < m.x_j.size(); ++y) {
    pi[m.x_j[y]] = m.x_k[m.pi[y]];
    pip[m.x_j[y]] = m.x_kp[m.pip[y]];
  }
  for (std::size_t x = 0; x < m.x_k.size(); ++x) wk[m.x_k[x]] = big_str(m.w_k[x]);
  for (std::size_t x = 0; x < m.x_kp.size(); ++x) wkp[m.x_kp[x]] = big_str(m.w_kp[x]);
  for (std::size_t y = 0; y < m.x_j.size(); ++y) wj[m.x_j[y]] = big_str(m.w_j[y]);
  j["pi"] = pi;
  j["pip"] = pip;
  j["w_k"] = wk;
  j["w_kp"] = wkp;
  j["w_j"] = wj;
  json ops = json::object();
  for (const auto& op : m.operators) {
    json spec;
    spec["level"] = level_name(op.level);
    json rows = json::array();
    for (std::size_t r = 0; r < op.matrix.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < op.matrix.cols(); ++c) row.push_back(big_str(op.matrix(r, c)));
      rows.push_back(row);
    }
    spec["matrix"] = rows;
    spec["adjoint"] = op.adjoint;
    spec["central_at_j"] = op.central_at_j;
    ops[op.name] = spec;
  }
  j["operators"] = ops;
  json meta;
  meta["rank_one"] = m.rank_one;
  if (m.prime_q) meta["prime_q"] = big_str(*m.prime_q);
  if (!m.provenance.empty()) meta["provenance"] = m.provenance;
  j["metadata"] = meta;
  return j;
}

std::string model_hash(const DoubleCosetModel& model) {
  std::string dump = model_to_json(model).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) os << ((h >> shift) & 0xf);
  return os.str();
}

namespace {

json new_character_json(const NewEigenCharacter& ch) {
  json j;
  j["ops"] = ch.op_names;
  j["ell"] = std::to_string(ch.ell);
  j["field_degree"] = ch.field_degree;
  json values = json::array(), witness = json::array();
  for (const Int& v : ch.value_encodings) values.push_back(big_str(v));
  for (const Int& w : ch.witness_encodings) witness.push_back(big_str(w));
  j["values"] = values;
  j["witness"] = witness;
  j["multiplicity"] = ch.multiplicity;
  return j;
}

NewEigenCharacter new_character_from(const json& j) {
  NewEigenCharacter ch;
  for (const auto& s : j.at("ops")) ch.op_names.push_back(s.get<std::string>());
  ch.ell = Int(j.at("ell").get<std::string>()).convert_to<std::uint64_t>();
  ch.field_degree = j.at("field_degree").get<unsigned>();
  for (const auto& v : j.at("values")) ch.value_encodings.push_back(parse_big(v, "values"));
  for (const auto& w : j.at("witness")) ch.witness_encodings.push_back(parse_big(w, "witness"));
  ch.multiplicity = j.at("multiplicity").get<std::size_t>();
  return ch;
}

}  // namespace

json certificate_to_json(const CongruenceCertificate& cert) {
  json j;
  j["model_hash"] = cert.model_hash;
  j["ell"] = big_str(cert.ell);
  j["residue_degree"] = cert.residue_degree;
  json eta;
  for (const auto& [name, value] : cert.eta_values) eta[name] = big_str(value);
  j["eta"] = eta;
  j["m"] = rat_str(cert.m_value);
  j["valuations"] = {{"m", cert.v_m},
                     {"error_term", cert.v_error},
                     {"index_kp", cert.v_index_kp},
                     {"primitivity", cert.v_primitivity}};
  j["n"] = cert.bound_n;
  if (cert.witness_character) j["witness_character"] = new_character_json(*cert.witness_character);
  else j["witness_character"] = nullptr;
  json others = json::array();
  for (const auto& ch : cert.new_characters) others.push_back(new_character_json(ch));
  j["new_characters"] = others;
  j["rank_one"] = {{"checked", cert.rank_one_checked}, {"flag", cert.rank_one_flag}};
  j["diagnostics"] = cert.diagnostics;
  return j;
}

CongruenceCertificate certificate_from_json(const json& j) {
  CongruenceCertificate cert;
  cert.model_hash = j.at("model_hash").get<std::string>();
  cert.ell = parse_big(j.at("ell"), "ell");
  cert.residue_degree = j.at("residue_degree").get<unsigned>();
  for (const auto& [name, value] : j.at("eta").items())
    cert.eta_values[name] = parse_big(value, "eta." + name);
  cert.m_value = parse_rat(j.at("m"), "m");
  cert.v_m = j.at("valuations").at("m").get<long>();
  cert.v_error = j.at("valuations").at("error_term").get<long>();
  cert.v_index_kp = j.at("valuations").at("index_kp").get<long>();
  cert.v_primitivity = j.at("valuations").at("primitivity").get<long>();
  cert.bound_n = j.at("n").get<long>();
  if (!j.at("witness_character").is_null())
    cert.witness_character = new_character_from(j.at("witness_character"));
  for (const auto& ch : j.at("new_characters")) cert.new_characters.push_back(new_character_from(ch));
  cert.rank_one_checked = j.at("rank_one").at("checked").get<bool>();
  cert.rank_one_flag = j.at("rank_one").at("flag").get<bool>();
  for (const auto& d : j.at("diagnostics")) cert.diagnostics.push_back(d.get<std::string>());
  return cert;
}

json validation_report_json(const DoubleCosetModel& model, const ValidationReport& report) {
  json j;
  j["command"] = "validate";
  j["input_digest"] = model_hash(model);
  j["accepted"] = report.accepted;
  j["index_k"] = big_str(report.index_k);
  j["index_kp"] = big_str(report.index_kp);
  json failures = json::array();
  for (const auto& f : report.failures) failures.push_back({{"code", f.code}, {"message", f.message}});
  j["failures"] = failures;
  if (report.accepted) {
    json ann;
    for (auto [lvl, name] : {std::make_pair(Level::K, "K"), std::make_pair(Level::Kp, "Kp"),
                             std::make_pair(Level::J, "J")}) {
      auto a = annihilators(model, lvl);
      ann[name] = {{"a_min", big_str(a.a_min)}, {"b_min", big_str(a.b_min)}};
    }
    j["annihilators"] = ann;
    ClassPartition part = class_partition(model);
    json classes;
    classes["count"] = part.num_classes;
    json reps = json::array();
    for (auto r : part.representative) reps.push_back(model.x_j[r]);
    classes["representatives"] = reps;
    json radius;
    for (std::size_t y = 0; y < model.x_j.size(); ++y)
      radius[model.x_j[y]] = part.radius[y];
    classes["radius"] = radius;
    j["class_partition"] = classes;
  }
  return j;
}

}  // namespace amf
