#include "nchatl/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nchatl {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_document(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw LoadError("document is not valid JSON");
  return doc;
}

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object() || !obj.contains(name))
    throw LoadError(where + ": missing field '" + name + "'");
  return obj.at(name);
}

int int_field(const json& obj, const char* name, const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_number_integer())
    throw LoadError(where + ": field '" + name + "' must be an integer");
  return v.get<int>();
}

std::string str_field(const json& obj, const char* name,
                      const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_string())
    throw LoadError(where + ": field '" + name + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw LoadError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string())
      throw LoadError(where + ": expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

Model parse_model(const std::string& text) {
  json doc = parse_document(text);
  Model model;
  model.agent_count = int_field(doc, "agents", "model");
  model.propositions = string_array(field(doc, "propositions", "model"),
                                    "model propositions");

  const json& states = field(doc, "states", "model");
  if (!states.is_array()) throw LoadError("model: 'states' must be an array");

  // First pass collects names so transition targets can refer forward.
  std::vector<std::string> names;
  for (const auto& s : states)
    names.push_back(str_field(s, "id", "state"));
  auto lookup = [&](const std::string& id, const std::string& where) {
    auto it = std::find(names.begin(), names.end(), id);
    if (it == names.end())
      throw LoadError(where + ": unknown state id '" + id + "'");
    return static_cast<int>(it - names.begin());
  };

  for (const auto& s : states) {
    State st;
    st.name = str_field(s, "id", "state");
    const std::string where = "state '" + st.name + "'";
    st.label = string_array(field(s, "label", where), where + " label");
    std::sort(st.label.begin(), st.label.end());
    st.action_count = int_field(s, "actions", where);

    const json& t = field(s, "transitions", where);
    if (!t.is_object())
      throw LoadError(where + ": 'transitions' must be an object");
    bool has_table = t.contains("table");
    bool has_rules = t.contains("rules");
    if (has_table && has_rules)
      throw LoadError(where + ": give either 'table' or 'rules', not both");

    TransitionSpec& spec = st.transitions;
    if (has_table) {
      spec.form = TransitionSpec::Form::Table;
      const json& table = t.at("table");
      if (!table.is_array())
        throw LoadError(where + ": 'table' must be an array");
      for (const auto& e : table) {
        TableEntry entry;
        const json& prof = field(e, "profile", where + " table entry");
        if (!prof.is_array())
          throw LoadError(where + ": table 'profile' must be an array");
        for (const auto& c : prof) {
          if (!c.is_number_integer())
            throw LoadError(where + ": table profile counts must be integers");
          entry.profile.push_back(c.get<Count>());
        }
        entry.target = lookup(str_field(e, "to", where + " table entry"), where);
        spec.table.push_back(std::move(entry));
      }
    } else {
      spec.form = TransitionSpec::Form::Rules;
      if (has_rules) {
        const json& rules = t.at("rules");
        if (!rules.is_array())
          throw LoadError(where + ": 'rules' must be an array");
        for (const auto& r : rules) {
          GuardedRule rule;
          const json& guards = field(r, "guards", where + " rule");
          if (!guards.is_array())
            throw LoadError(where + ": rule 'guards' must be an array");
          for (const auto& g : guards) {
            Guard guard;
            guard.action = int_field(g, "action", where + " guard");
            guard.min = int_field(g, "min", where + " guard");
            guard.max = int_field(g, "max", where + " guard");
            rule.guards.push_back(guard);
          }
          rule.target = lookup(str_field(r, "to", where + " rule"), where);
          spec.rules.push_back(std::move(rule));
        }
      }
    }
    if (t.contains("default"))
      spec.default_target =
          lookup(str_field(t, "default", where), where + " default");

    model.states.push_back(std::move(st));
  }
  return model;
}

Model load_model(const std::string& path) {
  return parse_model(read_file(path));
}

std::string model_to_json(const Model& model) {
  json doc;
  doc["agents"] = model.agent_count;
  doc["propositions"] = model.propositions;
  json states = json::array();
  for (const auto& st : model.states) {
    json s;
    s["id"] = st.name;
    s["label"] = st.label;
    s["actions"] = st.action_count;
    json t = json::object();
    if (st.transitions.form == TransitionSpec::Form::Table) {
      json table = json::array();
      for (const auto& e : st.transitions.table) {
        json entry;
        entry["profile"] = e.profile;
        entry["to"] = model.states[static_cast<size_t>(e.target)].name;
        table.push_back(std::move(entry));
      }
      t["table"] = std::move(table);
    } else if (!st.transitions.rules.empty()) {
      json rules = json::array();
      for (const auto& r : st.transitions.rules) {
        json rule;
        json guards = json::array();
        for (const auto& g : r.guards) {
          json guard;
          guard["action"] = g.action;
          guard["min"] = g.min;
          guard["max"] = g.max;
          guards.push_back(std::move(guard));
        }
        rule["guards"] = std::move(guards);
        rule["to"] = model.states[static_cast<size_t>(r.target)].name;
        rules.push_back(std::move(rule));
      }
      t["rules"] = std::move(rules);
    }
    if (st.transitions.default_target)
      t["default"] =
          model.states[static_cast<size_t>(*st.transitions.default_target)].name;
    s["transitions"] = std::move(t);
    states.push_back(std::move(s));
  }
  doc["states"] = std::move(states);
  return doc.dump(2) + "\n";
}

namespace {

// "3" or "3-5" → the listed agents.
std::vector<int> parse_agent_spec(const json& v, const std::string& where) {
  if (v.is_number_integer()) return {v.get<int>()};
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    size_t dash = s.find('-', 1);  // permit nothing before a leading digit
    auto to_int = [&](const std::string& part) {
      size_t used = 0;
      int value = 0;
      try {
        value = std::stoi(part, &used);
      } catch (const std::exception&) {
        throw LoadError(where + ": bad agent range '" + s + "'");
      }
      if (used != part.size())
        throw LoadError(where + ": bad agent range '" + s + "'");
      return value;
    };
    if (dash == std::string::npos)
      throw LoadError(where + ": agent entry '" + s +
                      "' is neither an integer nor a range 'i-j'");
    int lo = to_int(s.substr(0, dash));
    int hi = to_int(s.substr(dash + 1));
    if (lo > hi)
      throw LoadError(where + ": empty agent range '" + s + "'");
    std::vector<int> out;
    for (int a = lo; a <= hi; ++a) out.push_back(a);
    return out;
  }
  throw LoadError(where + ": agent entries must be integers or 'i-j' strings");
}

}  // namespace

NormativeSystem parse_norm(const std::string& text, const Model& model) {
  json doc = parse_document(text);
  NormativeSystem norm;
  const json& rules = field(doc, "rules", "norm");
  if (!rules.is_array()) throw LoadError("norm: 'rules' must be an array");
  for (const auto& r : rules) {
    const std::string state_id = str_field(r, "state", "norm rule");
    int q = model.state_index(state_id);
    if (q < 0)
      throw LoadError("norm rule: unknown state id '" + state_id + "'");
    const std::string where = "norm rule at '" + state_id + "'";
    const json& agents = field(r, "agents", where);
    if (!agents.is_array())
      throw LoadError(where + ": 'agents' must be an array");
    const json& forbid = field(r, "forbid", where);
    if (!forbid.is_array())
      throw LoadError(where + ": 'forbid' must be an array");
    std::vector<int> actions;
    for (const auto& a : forbid) {
      if (!a.is_number_integer())
        throw LoadError(where + ": 'forbid' entries must be integers");
      actions.push_back(a.get<int>());
    }
    for (const auto& spec : agents)
      for (int agent : parse_agent_spec(spec, where))
        for (int act : actions) norm.add(q, agent, act);
  }
  return norm;
}

NormativeSystem load_norm(const std::string& path, const Model& model) {
  return parse_norm(read_file(path), model);
}

std::string norm_to_json(const NormativeSystem& norm, const Model& model) {
  json rules = json::array();
  for (const auto& [key, actions] : norm.forbids) {
    if (actions.empty()) continue;
    json rule;
    rule["state"] = model.states[static_cast<size_t>(key.first)].name;
    rule["agents"] = json::array({key.second});
    rule["forbid"] = actions;
    rules.push_back(std::move(rule));
  }
  json doc;
  doc["rules"] = std::move(rules);
  return doc.dump(2) + "\n";
}

}  // namespace nchatl
