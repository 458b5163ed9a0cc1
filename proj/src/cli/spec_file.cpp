#include "povm_discrim/cli/spec_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "povm_discrim/error.hpp"

namespace povm_discrim::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

Complex parse_complex(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  fail(where + ": complex entry must be [re, im] or a number");
}

Operator parse_matrix(const json& rows, std::size_t dim, const std::string& where) {
  if (!rows.is_array() || rows.size() != dim) fail(where + ": expected " + std::to_string(dim) + " rows");
  Operator op(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != dim)
      fail(where + ": row " + std::to_string(i) + " must have " + std::to_string(dim) + " entries");
    for (std::size_t j = 0; j < dim; ++j) op(i, j) = parse_complex(row[j], where);
  }
  return op;
}

std::size_t parse_count(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 1) fail(where + " must be a positive integer");
  return static_cast<std::size_t>(v.get<long long>());
}

}  // namespace

TaskSpec parse_spec(const json& doc) {
  if (!doc.is_object()) fail("spec must be a JSON object");
  const std::size_t dim = parse_count(require(doc, "dimension", "spec"), "dimension");
  const json& list = require(doc, "observables", "spec");
  if (!list.is_array() || list.empty()) fail("\"observables\" must be a nonempty array");

  std::vector<Povm> observables;
  std::vector<std::string> names;
  std::vector<double> priors;
  std::size_t with_prior = 0;
  for (std::size_t x = 0; x < list.size(); ++x) {
    const json& entry = list[x];
    const std::string where = "observable " + std::to_string(x);
    if (!entry.is_object()) fail(where + " must be an object");
    const json& name = require(entry, "name", where);
    if (!name.is_string()) fail(where + ": name must be a string");
    if (std::find(names.begin(), names.end(), name.get<std::string>()) != names.end())
      fail(where + ": duplicate name \"" + name.get<std::string>() + "\"");
    names.push_back(name.get<std::string>());

    const bool has_bloch = entry.contains("bloch");
    const bool has_effects = entry.contains("effects");
    if (has_bloch == has_effects) fail(where + ": give exactly one of \"effects\" or \"bloch\"");

    std::vector<std::string> labels;
    if (entry.contains("outcomes")) {
      const json& out = entry.at("outcomes");
      if (!out.is_array()) fail(where + ": outcomes must be an array of strings");
      for (const auto& l : out) {
        if (!l.is_string()) fail(where + ": outcomes must be an array of strings");
        labels.push_back(l.get<std::string>());
      }
    }

    try {
      if (has_bloch) {
        if (dim != 2) fail(where + ": bloch shorthand requires dimension 2");
        const json& v = entry.at("bloch");
        if (!v.is_array() || v.size() != 3) fail(where + ": bloch must be a 3-vector");
        Vec3 a{};
        for (std::size_t i = 0; i < 3; ++i) {
          if (!v[i].is_number()) fail(where + ": bloch entries must be numbers");
          a[i] = v[i].get<double>();
        }
        Povm p = from_bloch(a);
        observables.push_back(labels.empty() ? std::move(p) : Povm(p.effects(), labels));
      } else {
        const json& effects = entry.at("effects");
        if (!effects.is_array() || effects.empty()) fail(where + ": effects must be a nonempty array");
        std::vector<Operator> ops;
        for (std::size_t j = 0; j < effects.size(); ++j)
          ops.push_back(parse_matrix(effects[j], dim, where + " effect " + std::to_string(j)));
        observables.emplace_back(std::move(ops), labels);
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DimensionMismatch || e.kind() == ErrorKind::InvalidArgument)
        fail(where + ": " + e.what());
      throw;
    }

    if (entry.contains("prior")) {
      if (!entry.at("prior").is_number()) fail(where + ": prior must be a number");
      priors.push_back(entry.at("prior").get<double>());
      ++with_prior;
    }
  }
  if (with_prior != 0 && with_prior != list.size()) fail("priors must be given for all observables or none");

  Mode mode = Mode::PD;
  std::size_t shots = 2;
  std::vector<std::size_t> targets;
  if (doc.contains("task")) {
    const json& task = doc.at("task");
    if (!task.is_object()) fail("\"task\" must be an object");
    if (task.contains("mode")) {
      if (!task.at("mode").is_string()) fail("task.mode must be a string");
      auto m = parse_mode(task.at("mode").get<std::string>());
      if (!m) fail("task.mode must be one of pd, ud, pi, ui");
      mode = *m;
    }
    if (task.contains("shots")) shots = parse_count(task.at("shots"), "task.shots");
    if (task.contains("targets")) {
      const json& t = task.at("targets");
      if (!t.is_array()) fail("task.targets must be an array of observable names");
      for (const auto& name : t) {
        if (!name.is_string()) fail("task.targets must be an array of observable names");
        auto it = std::find(names.begin(), names.end(), name.get<std::string>());
        if (it == names.end()) fail("unknown target \"" + name.get<std::string>() + "\"");
        targets.push_back(static_cast<std::size_t>(it - names.begin()));
      }
      if (targets.empty()) fail("task.targets must not be empty");
    }
  }

  try {
    return TaskSpec::make(std::move(observables), mode, shots, std::move(targets), std::move(priors),
                          std::move(names));
  } catch (const Error& e) {
    fail(e.what());
  }
}

TaskSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(path.string() + ": " + e.what());
  }
  return parse_spec(doc);
}

json to_json(const Operator& op) {
  json rows = json::array();
  for (std::size_t i = 0; i < op.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < op.dim(); ++j) row.push_back({op(i, j).real(), op(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const StateVector& psi) {
  json amps = json::array();
  for (std::size_t i = 0; i < psi.dim(); ++i) amps.push_back({psi[i].real(), psi[i].imag()});
  return amps;
}

json to_json(const TaskSpec& task) {
  json doc;
  doc["dimension"] = task.observables.front().dim();
  json list = json::array();
  for (std::size_t x = 0; x < task.observables.size(); ++x) {
    const Povm& obs = task.observables[x];
    json entry;
    entry["name"] = task.names[x];
    entry["prior"] = task.priors[x];
    entry["outcomes"] = obs.outcomes();
    json effects = json::array();
    for (const auto& e : obs.effects()) effects.push_back(to_json(e));
    entry["effects"] = std::move(effects);
    list.push_back(std::move(entry));
  }
  doc["observables"] = std::move(list);
  json targets = json::array();
  for (std::size_t x : task.targets) targets.push_back(task.names[x]);
  doc["task"] = {{"mode", std::string(to_string(task.mode))}, {"shots", task.shots}, {"targets", targets}};
  return doc;
}

}  // namespace povm_discrim::cli
